#pragma once

#include <cstdint>
#include <vector>

#include "workex/bounds.hpp"
#include "workex/compositions.hpp"
#include "workex/log_value.hpp"
#include "workex/state.hpp"

namespace workex {

// Per-level integer transfer counts defining a protocol's work target.
// sum(k) == 0 always; work = sum(k_i nu_i).
struct ShiftVector {
    std::vector<std::int64_t> k;
    double work = 0.0;
    double gamma = 0.0;
};

// Entropy-matched Gibbs state on the same spectrum. The pure-state and
// maximally-mixed corners are exact limits tagged instead of bisected.
struct ThermalMatch {
    enum class Limit { none, pure_state, maximally_mixed };
    double beta = 0.0;
    std::vector<double> populations;
    Limit limit = Limit::none;
};

DiagonalState passive_state(const DiagonalState& rho);

// Tr(h (rho - rho_pas)) >= 0.
double ergotropy(const DiagonalState& rho);

// Gibbs state with the same entropy as rho, bisected on beta >= 0 from a
// geometrically expanded [0, 1] bracket. Throws BracketFailure when no
// nonnegative beta matches (degenerate ground level below the target
// entropy); matching is verified to 1e-10 in entropy.
ThermalMatch entropy_matched_thermal(const DiagonalState& rho);

// Tr(h (rho - omega_beta)) with the entropy-matched beta: the per-copy
// ergotropy of infinitely many collectively processed copies.
double global_ergotropy_rate(const DiagonalState& rho);

// Floor of N (1-gamma) (p_i - r_i) per level against the passive or thermal
// reference r, repaired to sum zero by bumping the largest remainders
// (lowest level index on ties).
ShiftVector shift_vector(const DiagonalState& rho, std::int64_t copies,
                         double gamma, ReferenceMode mode);

// Success probability of the shift-vector protocol:
// sum over compositions n of min(C_N^n, C_N^(n-k)) prod(p_i^n_i).
// OpenMP-parallel over the leading component; serial twin in
// workex::reference.
LogValue protocol_success_log(const DiagonalState& rho, std::int64_t copies,
                              const ShiftVector& shift,
                              std::int64_t max_compositions = k_default_composition_guard);
double protocol_success(const DiagonalState& rho, std::int64_t copies,
                        const ShiftVector& shift,
                        std::int64_t max_compositions = k_default_composition_guard);

// Exact optimum over all energy-conserving protocols at work w: per total
// energy, target capacity is the state count at energy E - w, filled with
// the most probable initial blocks first. Requires a commensurate spectrum;
// throws OffLattice when w is not an achievable lattice difference.
LogValue exact_isolated_success_log(const DiagonalState& rho, std::int64_t copies,
                                    double w,
                                    std::int64_t max_compositions = k_default_composition_guard,
                                    std::optional<double> base_quantum = std::nullopt);
double exact_isolated_success(const DiagonalState& rho, std::int64_t copies,
                              double w,
                              std::int64_t max_compositions = k_default_composition_guard,
                              std::optional<double> base_quantum = std::nullopt);

// All nonnegative work values w achievable as an energy difference of two
// N-copy compositions, ascending.
std::vector<double> isolated_work_lattice(const DiagonalState& rho,
                                          std::int64_t copies,
                                          std::int64_t max_compositions = k_default_composition_guard,
                                          std::optional<double> base_quantum = std::nullopt);

// Exponent rate of the isolated-system bound; thermal mode swaps the passive
// reference for the entropy-matched Gibbs state. Supplying a copy count adds
// the 1/N correction terms to numerator and denominator.
BoundCoefficient bound_coefficient(const DiagonalState& rho, ReferenceMode mode,
                                   std::optional<std::int64_t> copies = std::nullopt);

// 1 - d exp(-N gamma^2 c^2) at leading order in c, clamped at zero with a
// vacuous flag.
ProbabilityBound isolated_bound(const DiagonalState& rho, std::int64_t copies,
                                double gamma, ReferenceMode mode,
                                CorrectionOrder order = CorrectionOrder::leading);

}  // namespace workex
