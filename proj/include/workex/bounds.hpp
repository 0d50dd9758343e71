#pragma once

#include <optional>

namespace workex {

// Analytic lower bound on a success probability. A bound that evaluates <= 0
// constrains nothing; it is clamped to 0 and flagged instead of erroring so
// sweeps over wide gamma grids never abort.
struct ProbabilityBound {
    double value = 0.0;
    bool vacuous = false;
};

inline ProbabilityBound make_bound(double raw) {
    if (raw > 0.0) return {raw, false};
    return {0.0, true};
}

// Which reference state the deviation is measured against.
enum class ReferenceMode { passive, thermal };

enum class CorrectionOrder { leading, with_inverse_n };

// Setting a bound coefficient was derived in.
enum class BoundMode { passive, thermal, bath };

// Exponent-rate constant c of a 1 - d exp(-N gamma^2 c^2) bound.
struct BoundCoefficient {
    double c = 0.0;
    BoundMode mode = BoundMode::passive;
    CorrectionOrder order = CorrectionOrder::leading;
    // ρ already equals its reference state: the rate is undefined and
    // reported as a tagged zero instead of an error.
    bool degenerate = false;
    // Bath mode only: the alternate form of the rate without the sqrt(2)
    // carried by the union-bound derivation.
    std::optional<double> alternate_c;
};

}  // namespace workex
