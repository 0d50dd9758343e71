#include "workex/bath.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "workex/errors.hpp"
#include "workex/numerics.hpp"

namespace workex {

namespace {

void require_beta(double beta) {
    if (!(beta > 0.0)) throw DomainError("inverse temperature must be positive");
}

void require_copies(std::int64_t copies) {
    if (copies < 1) throw DomainError("copy count must be positive");
}

struct LeanBlock {
    double log_state_prob = 0.0;
    double log_capacity = 0.0;
};

// Per-composition capacity and state probability (per unit g), sorted for
// the greedy fill: state probability descending, enumeration order on ties.
std::vector<LeanBlock> build_bath_blocks(const DiagonalState& rho, double beta,
                                         std::int64_t copies,
                                         std::int64_t max_compositions) {
    const int d = rho.dim();
    check_composition_guard(copies, d, max_compositions);
    const std::vector<std::int64_t> offsets = composition_offsets(copies, d);
    const std::int64_t count = offsets.back();

    const auto p = rho.probs();
    const auto nu = rho.energies();
    std::vector<double> log_p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        log_p[static_cast<std::size_t>(i)] =
            p[i] > 0.0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    }

    std::vector<LeanBlock> blocks(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t lead = 0; lead <= copies; ++lead) {
        std::vector<std::int64_t> n(static_cast<std::size_t>(d));
        n[0] = lead;
        std::span<std::int64_t> tail(n.data() + 1, static_cast<std::size_t>(d - 1));
        first_composition_lex(tail, copies - lead);
        std::int64_t idx = offsets[static_cast<std::size_t>(lead)];
        do {
            double energy = 0.0;
            double log_prob = 0.0;
            for (int i = 0; i < d; ++i) {
                const std::int64_t ni = n[static_cast<std::size_t>(i)];
                if (ni > 0) {
                    energy += static_cast<double>(ni) * nu[i];
                    log_prob += static_cast<double>(ni) * log_p[static_cast<std::size_t>(i)];
                }
            }
            LeanBlock& b = blocks[static_cast<std::size_t>(idx++)];
            b.log_state_prob = beta * energy + log_prob;
            b.log_capacity = -beta * energy + log_multinomial(copies, n).log();
        } while (next_composition_lex(tail));
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const LeanBlock& a, const LeanBlock& b) {
                         return a.log_state_prob > b.log_state_prob;
                     });
    return blocks;
}

}  // namespace

double free_energy(const DiagonalState& rho, double beta) {
    require_beta(beta);
    const auto p = rho.probs();
    const auto nu = rho.energies();
    double mean_energy = 0.0;
    for (int i = 0; i < rho.dim(); ++i) mean_energy += p[i] * nu[i];
    return mean_energy - shannon_entropy(p) / beta;
}

double extractable_work_bath(const DiagonalState& rho, double beta) {
    require_beta(beta);
    // F(omega_beta) = -ln(Z)/beta, the equilibrium identity.
    return free_energy(rho, beta) + rho.log_partition_function(beta) / beta;
}

BoundCoefficient bath_bound_coefficient(const DiagonalState& rho, double beta) {
    require_beta(beta);
    if (!rho.strictly_positive()) {
        throw SupportError(
            "bath_bound_coefficient: populations must be strictly positive");
    }
    const auto p = rho.probs();
    const auto nu = rho.energies();
    const double nu_min = nu.front();

    double shifted_energy_sum = 0.0;
    double log_p_sum = 0.0;
    for (int i = 0; i < rho.dim(); ++i) {
        shifted_energy_sum += nu[i] - nu_min;
        log_p_sum += std::log(p[i]);
    }
    const double denominator = beta * shifted_energy_sum - log_p_sum;
    const double w_th = extractable_work_bath(rho, beta);

    BoundCoefficient coeff;
    coeff.mode = BoundMode::bath;
    coeff.order = CorrectionOrder::leading;
    // beta W_th = S(rho||omega_beta) is dimensionless; treat sub-roundoff
    // values as an already-thermal state.
    if (beta * w_th <= 1e-13) {
        coeff.degenerate = true;
        coeff.alternate_c = 0.0;
        return coeff;
    }
    const double main_text = beta * w_th / denominator;
    const double c = std::sqrt(2.0) * main_text;
    if (!(c > 0.0) || !std::isfinite(c)) {
        coeff.degenerate = true;
        coeff.alternate_c = 0.0;
        return coeff;
    }
    coeff.c = c;
    coeff.alternate_c = main_text;
    return coeff;
}

ProbabilityBound bath_bound(const DiagonalState& rho, double beta,
                            std::int64_t copies, double gamma) {
    require_copies(copies);
    if (!(gamma >= 0.0 && gamma <= 1.0)) throw RangeError("gamma outside [0, 1]");
    const BoundCoefficient coeff = bath_bound_coefficient(rho, beta);
    const double raw =
        1.0 - static_cast<double>(rho.dim()) *
                  std::exp(-static_cast<double>(copies) * gamma * gamma *
                           coeff.c * coeff.c);
    return make_bound(raw);
}

std::vector<BathBlock> bath_blocks(const DiagonalState& rho, double beta,
                                   std::int64_t copies,
                                   std::int64_t max_compositions) {
    require_beta(beta);
    require_copies(copies);
    const int d = rho.dim();
    check_composition_guard(copies, d, max_compositions);

    const auto p = rho.probs();
    const auto nu = rho.energies();
    std::vector<BathBlock> blocks;
    for_each_composition(copies, d, [&](std::span<const std::int64_t> n) {
        BathBlock b;
        b.composition.assign(n.begin(), n.end());
        double energy = 0.0;
        double log_prob = 0.0;
        for (int i = 0; i < d; ++i) {
            if (n[static_cast<std::size_t>(i)] > 0) {
                energy += static_cast<double>(n[static_cast<std::size_t>(i)]) * nu[i];
                log_prob += static_cast<double>(n[static_cast<std::size_t>(i)]) *
                            std::log(p[i]);
            }
        }
        const LogValue count = log_multinomial(copies, n);
        b.log_state_prob = LogValue::from_log(beta * energy + log_prob);
        b.log_capacity = LogValue::from_log(-beta * energy) * count;
        b.log_total_prob = b.log_state_prob * b.log_capacity;
        blocks.push_back(std::move(b));
    });
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const BathBlock& a, const BathBlock& b) {
                         return a.log_state_prob > b.log_state_prob;
                     });
    return blocks;
}

LogValue bath_exact_success_log(const DiagonalState& rho, double beta,
                                std::int64_t copies, double w,
                                std::int64_t max_compositions) {
    require_beta(beta);
    require_copies(copies);
    if (!(w >= 0.0)) throw DomainError("bath_exact_success: negative work value");
    // Zero work: the target capacity is the whole initial block structure.
    if (w == 0.0) return LogValue::one();

    const std::vector<LeanBlock> blocks =
        build_bath_blocks(rho, beta, copies, max_compositions);

    // Target state count per unit g: e^(-beta w) Z^N.
    LogValue remaining = LogValue::from_log(
        -beta * w + static_cast<double>(copies) * rho.log_partition_function(beta));

    LogAccumulator moved;
    for (const LeanBlock& b : blocks) {
        if (remaining.is_zero()) break;
        const LogValue capacity = LogValue::from_log(b.log_capacity);
        const LogValue state_prob = LogValue::from_log(b.log_state_prob);
        if (capacity <= remaining) {
            moved.add(capacity * state_prob);
            remaining = log_diff(remaining, capacity);
        } else {
            moved.add(remaining * state_prob);
            break;
        }
    }
    LogValue result = moved.total();
    if (result.log() > 0.0) result = LogValue::one();
    return result;
}

double bath_exact_success(const DiagonalState& rho, double beta,
                          std::int64_t copies, double w,
                          std::int64_t max_compositions) {
    return bath_exact_success_log(rho, beta, copies, w, max_compositions).linear();
}

}  // namespace workex
