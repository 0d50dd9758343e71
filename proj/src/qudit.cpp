#include "workex/qudit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "workex/errors.hpp"
#include "workex/numerics.hpp"

namespace workex {

namespace {

void require_copies(std::int64_t copies) {
    if (copies < 1) throw DomainError("copy count must be positive");
}

void require_gamma_unit(double gamma) {
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw RangeError("gamma outside [0, 1]");
    }
}

std::vector<double> reference_populations(const DiagonalState& rho,
                                          ReferenceMode mode) {
    if (mode == ReferenceMode::passive) {
        const DiagonalState pas = rho.passive();
        return {pas.probs().begin(), pas.probs().end()};
    }
    return entropy_matched_thermal(rho).populations;
}

}  // namespace

DiagonalState passive_state(const DiagonalState& rho) { return rho.passive(); }

double ergotropy(const DiagonalState& rho) {
    const auto p = rho.probs();
    const auto nu = rho.energies();
    const DiagonalState pas = rho.passive();
    const auto passive = pas.probs();
    double w = 0.0;
    for (int i = 0; i < rho.dim(); ++i) w += (p[i] - passive[i]) * nu[i];
    return w;
}

ThermalMatch entropy_matched_thermal(const DiagonalState& rho) {
    const auto energies = rho.energies();
    const int d = rho.dim();
    const double target = shannon_entropy(rho.probs());
    constexpr double corner_tol = 1e-12;

    if (target >= std::log(static_cast<double>(d)) - corner_tol) {
        return {0.0, std::vector<double>(static_cast<std::size_t>(d), 1.0 / d),
                ThermalMatch::Limit::maximally_mixed};
    }

    const double e_scale =
        std::max(1.0, std::max(std::abs(energies.front()), std::abs(energies.back())));
    int ground_degeneracy = 0;
    for (double e : energies) {
        if (e - energies.front() <= 1e-12 * e_scale) ++ground_degeneracy;
    }
    const double entropy_floor = std::log(static_cast<double>(ground_degeneracy));

    if (target < entropy_floor - corner_tol) {
        throw BracketFailure(
            "entropy_matched_thermal: ground-level degeneracy pins the Gibbs "
            "entropy above the target");
    }
    if (target <= entropy_floor + corner_tol) {
        // Infinite-beta limit: all population on the ground level(s).
        std::vector<double> pops(static_cast<std::size_t>(d), 0.0);
        for (int i = 0; i < ground_degeneracy; ++i) {
            pops[static_cast<std::size_t>(i)] = 1.0 / ground_degeneracy;
        }
        return {std::numeric_limits<double>::infinity(), std::move(pops),
                ThermalMatch::Limit::pure_state};
    }

    const auto entropy_at = [&](double beta) {
        return shannon_entropy(rho.gibbs_populations(beta));
    };

    double lo = 0.0;
    double hi = 1.0;
    int expansions = 0;
    while (entropy_at(hi) > target) {
        lo = hi;
        hi *= 2.0;
        if (++expansions > 128) {
            throw BracketFailure("entropy_matched_thermal: bracket expansion failed");
        }
    }
    while (hi - lo > 1e-15 * (1.0 + hi)) {
        const double mid = 0.5 * (lo + hi);
        if (entropy_at(mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    const double beta = 0.5 * (lo + hi);
    std::vector<double> pops = rho.gibbs_populations(beta);
    if (std::abs(shannon_entropy(pops) - target) > 1e-10) {
        throw BracketFailure("entropy_matched_thermal: residual above 1e-10");
    }
    return {beta, std::move(pops), ThermalMatch::Limit::none};
}

double global_ergotropy_rate(const DiagonalState& rho) {
    const auto p = rho.probs();
    const auto nu = rho.energies();
    const std::vector<double> th = entropy_matched_thermal(rho).populations;
    double w = 0.0;
    for (int i = 0; i < rho.dim(); ++i) w += (p[i] - th[i]) * nu[i];
    return w;
}

ShiftVector shift_vector(const DiagonalState& rho, std::int64_t copies,
                         double gamma, ReferenceMode mode) {
    require_copies(copies);
    require_gamma_unit(gamma);
    const auto p = rho.probs();
    const auto nu = rho.energies();
    const int d = rho.dim();
    const std::vector<double> ref = reference_populations(rho, mode);

    ShiftVector shift;
    shift.gamma = gamma;
    shift.k.resize(static_cast<std::size_t>(d));
    std::vector<double> remainder(static_cast<std::size_t>(d));
    std::int64_t sum = 0;
    for (int i = 0; i < d; ++i) {
        const double raw =
            static_cast<double>(copies) * (1.0 - gamma) * (p[i] - ref[i]);
        const double fl = std::floor(raw);
        shift.k[static_cast<std::size_t>(i)] = static_cast<std::int64_t>(fl);
        remainder[static_cast<std::size_t>(i)] = raw - fl;
        sum += shift.k[static_cast<std::size_t>(i)];
    }
    // The floors sum to -m for some m in [0, d); bump the m largest
    // remainders back up, lowest level first on ties.
    std::int64_t deficit = -sum;
    std::vector<int> order(static_cast<std::size_t>(d));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return remainder[static_cast<std::size_t>(a)] >
               remainder[static_cast<std::size_t>(b)];
    });
    for (int i = 0; i < d && deficit > 0; ++i, --deficit) {
        shift.k[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] += 1;
    }

    shift.work = 0.0;
    for (int i = 0; i < d; ++i) {
        shift.work += static_cast<double>(shift.k[static_cast<std::size_t>(i)]) * nu[i];
    }
    return shift;
}

LogValue protocol_success_log(const DiagonalState& rho, std::int64_t copies,
                              const ShiftVector& shift,
                              std::int64_t max_compositions) {
    require_copies(copies);
    const int d = rho.dim();
    if (static_cast<int>(shift.k.size()) != d) {
        throw DomainError("protocol_success: shift dimension mismatch");
    }
    std::int64_t k_sum = 0;
    bool all_zero = true;
    for (std::int64_t k : shift.k) {
        k_sum += k;
        all_zero = all_zero && k == 0;
    }
    if (k_sum != 0) throw DomainError("protocol_success: shift does not sum to zero");
    if (all_zero) return LogValue::one();

    check_composition_guard(copies, d, max_compositions);

    const auto p = rho.probs();
    std::vector<double> log_p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        log_p[static_cast<std::size_t>(i)] =
            p[i] > 0.0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    }

    std::vector<LogAccumulator> partial(static_cast<std::size_t>(copies) + 1);

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t lead = 0; lead <= copies; ++lead) {
        LogAccumulator acc;
        std::vector<std::int64_t> n(static_cast<std::size_t>(d));
        std::vector<std::int64_t> m(static_cast<std::size_t>(d));
        n[0] = lead;
        std::span<std::int64_t> tail(n.data() + 1, static_cast<std::size_t>(d - 1));
        first_composition_lex(tail, copies - lead);
        do {
            double log_prob = 0.0;
            for (int i = 0; i < d; ++i) {
                const std::int64_t ni = n[static_cast<std::size_t>(i)];
                m[static_cast<std::size_t>(i)] = ni - shift.k[static_cast<std::size_t>(i)];
                if (ni > 0) {
                    log_prob += static_cast<double>(ni) * log_p[static_cast<std::size_t>(i)];
                }
            }
            const LogValue count = std::min(log_multinomial(copies, n),
                                            log_multinomial(copies, m));
            if (!count.is_zero()) acc.add_log(count.log() + log_prob);
        } while (next_composition_lex(tail));
        partial[static_cast<std::size_t>(lead)] = acc;
    }

    LogAccumulator total;
    for (const LogAccumulator& acc : partial) total.merge(acc);
    LogValue result = total.total();
    if (result.log() > 0.0) result = LogValue::one();
    return result;
}

double protocol_success(const DiagonalState& rho, std::int64_t copies,
                        const ShiftVector& shift, std::int64_t max_compositions) {
    return protocol_success_log(rho, copies, shift, max_compositions).linear();
}

namespace {

struct LatticeBlock {
    std::int64_t energy = 0;      // sum n_i q_i in base-quantum units
    double log_state_prob = 0.0;  // ln prod p_i^n_i
    double log_count = 0.0;       // ln C_N^n
};

struct EnergyGroup {
    std::int64_t energy = 0;
    std::size_t begin = 0;
    std::size_t end = 0;
    LogValue total_count;
};

// Enumerate all N-copy blocks on the integer energy lattice, sorted by
// (energy ascending, state probability descending, enumeration order).
std::vector<LatticeBlock> build_lattice_blocks(const DiagonalState& rho,
                                               std::int64_t copies,
                                               const EnergyLattice& lattice,
                                               std::int64_t max_compositions) {
    const int d = rho.dim();
    check_composition_guard(copies, d, max_compositions);
    const std::vector<std::int64_t> offsets = composition_offsets(copies, d);
    const std::int64_t count = offsets.back();

    const auto p = rho.probs();
    std::vector<double> log_p(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        log_p[static_cast<std::size_t>(i)] =
            p[i] > 0.0 ? std::log(p[i]) : -std::numeric_limits<double>::infinity();
    }

    std::vector<LatticeBlock> blocks(static_cast<std::size_t>(count));

#pragma omp parallel for schedule(dynamic)
    for (std::int64_t lead = 0; lead <= copies; ++lead) {
        std::vector<std::int64_t> n(static_cast<std::size_t>(d));
        n[0] = lead;
        std::span<std::int64_t> tail(n.data() + 1, static_cast<std::size_t>(d - 1));
        first_composition_lex(tail, copies - lead);
        std::int64_t idx = offsets[static_cast<std::size_t>(lead)];
        do {
            LatticeBlock& b = blocks[static_cast<std::size_t>(idx++)];
            b.energy = 0;
            b.log_state_prob = 0.0;
            for (int i = 0; i < d; ++i) {
                const std::int64_t ni = n[static_cast<std::size_t>(i)];
                b.energy += ni * lattice.levels[static_cast<std::size_t>(i)];
                if (ni > 0) {
                    b.log_state_prob +=
                        static_cast<double>(ni) * log_p[static_cast<std::size_t>(i)];
                }
            }
            b.log_count = log_multinomial(copies, n).log();
        } while (next_composition_lex(tail));
    }

    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const LatticeBlock& a, const LatticeBlock& b) {
                         if (a.energy != b.energy) return a.energy < b.energy;
                         return a.log_state_prob > b.log_state_prob;
                     });
    return blocks;
}

std::vector<EnergyGroup> group_by_energy(const std::vector<LatticeBlock>& blocks) {
    std::vector<EnergyGroup> groups;
    std::size_t i = 0;
    while (i < blocks.size()) {
        EnergyGroup g;
        g.energy = blocks[i].energy;
        g.begin = i;
        LogAccumulator count;
        while (i < blocks.size() && blocks[i].energy == g.energy) {
            count.add_log(blocks[i].log_count);
            ++i;
        }
        g.end = i;
        g.total_count = count.total();
        groups.push_back(g);
    }
    return groups;
}

const EnergyGroup* find_group(const std::vector<EnergyGroup>& groups,
                              std::int64_t energy) {
    const auto it = std::lower_bound(
        groups.begin(), groups.end(), energy,
        [](const EnergyGroup& g, std::int64_t e) { return g.energy < e; });
    if (it == groups.end() || it->energy != energy) return nullptr;
    return &*it;
}

// Move the most probable initial blocks into a target capacity; the final
// block fills partially. Counts stay in log space throughout.
LogValue fill_capacity(const std::vector<LatticeBlock>& blocks, std::size_t begin,
                       std::size_t end, LogValue capacity) {
    LogAccumulator moved;
    LogValue remaining = capacity;
    for (std::size_t i = begin; i < end; ++i) {
        if (remaining.is_zero()) break;
        const LogValue count = LogValue::from_log(blocks[i].log_count);
        const LogValue state_prob = LogValue::from_log(blocks[i].log_state_prob);
        if (count <= remaining) {
            moved.add(count * state_prob);
            remaining = log_diff(remaining, count);
        } else {
            moved.add(remaining * state_prob);
            break;
        }
    }
    return moved.total();
}

}  // namespace

LogValue exact_isolated_success_log(const DiagonalState& rho, std::int64_t copies,
                                    double w, std::int64_t max_compositions,
                                    std::optional<double> base_quantum) {
    require_copies(copies);
    const EnergyLattice lattice = energy_lattice(rho, base_quantum);
    const std::int64_t w_index = lattice.work_index(w);
    // Identity shift: every level's capacity equals its own state count.
    if (w_index == 0) return LogValue::one();

    const std::vector<LatticeBlock> blocks =
        build_lattice_blocks(rho, copies, lattice, max_compositions);
    const std::vector<EnergyGroup> groups = group_by_energy(blocks);

    bool achievable = false;
    LogAccumulator success;
    for (const EnergyGroup& g : groups) {
        const EnergyGroup* target = find_group(groups, g.energy - w_index);
        if (target == nullptr) continue;
        achievable = true;
        success.add(fill_capacity(blocks, g.begin, g.end, target->total_count));
    }
    if (!achievable) {
        std::ostringstream msg;
        msg << "work value " << w << " is not an achievable lattice difference";
        throw OffLattice(msg.str());
    }
    LogValue result = success.total();
    if (result.log() > 0.0) result = LogValue::one();
    return result;
}

double exact_isolated_success(const DiagonalState& rho, std::int64_t copies,
                              double w, std::int64_t max_compositions,
                              std::optional<double> base_quantum) {
    return exact_isolated_success_log(rho, copies, w, max_compositions, base_quantum)
        .linear();
}

std::vector<double> isolated_work_lattice(const DiagonalState& rho,
                                          std::int64_t copies,
                                          std::int64_t max_compositions,
                                          std::optional<double> base_quantum) {
    require_copies(copies);
    const EnergyLattice lattice = energy_lattice(rho, base_quantum);
    const std::int64_t span = copies * lattice.max_level();
    if (span + 1 > 100'000'000) {
        throw TooManyCompositions("isolated_work_lattice: lattice span too large");
    }

    // Reachable total energies: N-fold sumset of the level set.
    std::vector<char> reach(static_cast<std::size_t>(span) + 1, 0);
    reach[0] = 1;
    for (std::int64_t copy = 0; copy < copies; ++copy) {
        std::vector<char> next(static_cast<std::size_t>(span) + 1, 0);
        for (std::int64_t e = 0; e <= copy * lattice.max_level(); ++e) {
            if (!reach[static_cast<std::size_t>(e)]) continue;
            for (std::int64_t q : lattice.levels) {
                next[static_cast<std::size_t>(e + q)] = 1;
            }
        }
        reach = std::move(next);
    }

    std::vector<std::int64_t> energies;
    for (std::int64_t e = 0; e <= span; ++e) {
        if (reach[static_cast<std::size_t>(e)]) energies.push_back(e);
    }
    if (energies.size() * energies.size() >
        static_cast<std::size_t>(std::max<std::int64_t>(max_compositions, 1)) * 16) {
        throw TooManyCompositions("isolated_work_lattice: too many energy pairs");
    }

    std::vector<char> diff(static_cast<std::size_t>(span) + 1, 0);
    for (std::size_t a = 0; a < energies.size(); ++a) {
        for (std::size_t b = 0; b <= a; ++b) {
            diff[static_cast<std::size_t>(energies[a] - energies[b])] = 1;
        }
    }

    std::vector<double> works;
    for (std::int64_t e = 0; e <= span; ++e) {
        if (diff[static_cast<std::size_t>(e)]) {
            works.push_back(static_cast<double>(e) * lattice.quantum);
        }
    }
    return works;
}

BoundCoefficient bound_coefficient(const DiagonalState& rho, ReferenceMode mode,
                                   std::optional<std::int64_t> copies) {
    if (!rho.strictly_positive()) {
        throw SupportError("bound_coefficient: populations must be strictly positive");
    }
    const auto p = rho.probs();
    const int d = rho.dim();
    const std::vector<double> ref = reference_populations(rho, mode);

    BoundCoefficient coeff;
    coeff.mode =
        mode == ReferenceMode::passive ? BoundMode::passive : BoundMode::thermal;
    coeff.order = copies ? CorrectionOrder::with_inverse_n : CorrectionOrder::leading;

    double numerator = relative_entropy(ref, p);
    if (numerator <= 1e-13) {
        coeff.degenerate = true;
        return coeff;
    }
    if (copies) {
        require_copies(*copies);
        double correction = 0.0;
        for (int i = 0; i < d; ++i) {
            correction += (p[i] - ref[static_cast<std::size_t>(i)]) /
                          ref[static_cast<std::size_t>(i)];
        }
        numerator += correction / (2.0 * static_cast<double>(*copies));
    }

    std::vector<double> ratios(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) {
        ratios[static_cast<std::size_t>(i)] = ref[static_cast<std::size_t>(i)] / p[i];
    }
    std::sort(ratios.begin(), ratios.end(), std::greater<>());

    const auto term = [&](std::size_t i) {
        double t = std::log(ratios[i]);
        if (copies) {
            t += (ratios[i] - 1.0) / (ratios[i] * static_cast<double>(*copies));
        }
        return t;
    };
    double denominator = 0.0;
    for (std::size_t i = 0; i < static_cast<std::size_t>(d / 2); ++i) {
        denominator += term(i);
    }
    for (std::size_t i = static_cast<std::size_t>((d + 1) / 2);
         i < static_cast<std::size_t>(d); ++i) {
        denominator -= term(i);
    }

    const double c = std::sqrt(2.0) * numerator / denominator;
    if (!(c > 0.0) || !std::isfinite(c)) {
        coeff.degenerate = true;
        return coeff;
    }
    coeff.c = c;
    return coeff;
}

ProbabilityBound isolated_bound(const DiagonalState& rho, std::int64_t copies,
                                double gamma, ReferenceMode mode,
                                CorrectionOrder order) {
    require_copies(copies);
    require_gamma_unit(gamma);
    const BoundCoefficient coeff =
        bound_coefficient(rho, mode,
                          order == CorrectionOrder::with_inverse_n
                              ? std::optional<std::int64_t>(copies)
                              : std::nullopt);
    const double c = coeff.c;
    const double raw = 1.0 - static_cast<double>(rho.dim()) *
                                 std::exp(-static_cast<double>(copies) * gamma *
                                          gamma * c * c);
    return make_bound(raw);
}

}  // namespace workex
