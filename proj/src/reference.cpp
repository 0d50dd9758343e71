#include "workex/reference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>
#include <vector>

#include "workex/errors.hpp"
#include "workex/numerics.hpp"

namespace workex::reference {

namespace {

struct Block {
    double log_state_prob;
    double log_weight;  // state count (isolated) or capacity per g (bath)
};

// Greedy fill shared by both serial exact computations.
LogValue fill(std::vector<Block> blocks, LogValue capacity) {
    std::stable_sort(blocks.begin(), blocks.end(), [](const Block& a, const Block& b) {
        return a.log_state_prob > b.log_state_prob;
    });
    LogAccumulator moved;
    LogValue remaining = capacity;
    for (const Block& b : blocks) {
        if (remaining.is_zero()) break;
        const LogValue weight = LogValue::from_log(b.log_weight);
        const LogValue state_prob = LogValue::from_log(b.log_state_prob);
        if (weight <= remaining) {
            moved.add(weight * state_prob);
            remaining = log_diff(remaining, weight);
        } else {
            moved.add(remaining * state_prob);
            break;
        }
    }
    return moved.total();
}

double log_population(const DiagonalState& rho, std::span<const std::int64_t> n) {
    const auto p = rho.probs();
    double log_prob = 0.0;
    for (std::size_t i = 0; i < n.size(); ++i) {
        if (n[i] > 0) {
            log_prob += static_cast<double>(n[i]) *
                        (p[i] > 0.0 ? std::log(p[i])
                                    : -std::numeric_limits<double>::infinity());
        }
    }
    return log_prob;
}

}  // namespace

LogValue exact_success_qubits_log(std::int64_t copies, double p, std::int64_t k) {
    if (copies < 1) throw DomainError("copy count must be positive");
    if (!(p > 0.0 && p < 1.0)) throw DomainError("p outside (0,1)");
    if (k < 0 || k > copies) throw RangeError("k outside [0, N]");
    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    std::vector<LogValue> terms;
    for (std::int64_t j = k; j <= copies; ++j) {
        const LogValue count =
            std::min(log_binomial(copies, j - k), log_binomial(copies, j));
        terms.push_back(count *
                        LogValue::from_log(static_cast<double>(j) * log_p +
                                           static_cast<double>(copies - j) * log_q));
    }
    return log_sum_exp(terms);
}

LogValue protocol_success_log(const DiagonalState& rho, std::int64_t copies,
                              const ShiftVector& shift,
                              std::int64_t max_compositions) {
    const int d = rho.dim();
    if (static_cast<int>(shift.k.size()) != d) {
        throw DomainError("protocol_success: shift dimension mismatch");
    }
    check_composition_guard(copies, d, max_compositions);
    std::vector<LogValue> terms;
    std::vector<std::int64_t> shifted(static_cast<std::size_t>(d));
    for_each_composition(copies, d, [&](std::span<const std::int64_t> n) {
        for (int i = 0; i < d; ++i) {
            shifted[static_cast<std::size_t>(i)] =
                n[static_cast<std::size_t>(i)] - shift.k[static_cast<std::size_t>(i)];
        }
        const LogValue count = std::min(log_multinomial(copies, n),
                                        log_multinomial(copies, shifted));
        if (!count.is_zero()) {
            terms.push_back(count * LogValue::from_log(log_population(rho, n)));
        }
    });
    return log_sum_exp(terms);
}

LogValue exact_isolated_success_log(const DiagonalState& rho, std::int64_t copies,
                                    double w, std::int64_t max_compositions,
                                    std::optional<double> base_quantum) {
    const int d = rho.dim();
    check_composition_guard(copies, d, max_compositions);
    const EnergyLattice lattice = energy_lattice(rho, base_quantum);
    const std::int64_t w_index = lattice.work_index(w);

    std::map<std::int64_t, std::vector<Block>> levels;
    std::map<std::int64_t, LogAccumulator> counts;
    for_each_composition(copies, d, [&](std::span<const std::int64_t> n) {
        std::int64_t energy = 0;
        for (int i = 0; i < d; ++i) {
            energy += n[static_cast<std::size_t>(i)] *
                      lattice.levels[static_cast<std::size_t>(i)];
        }
        const double log_count = log_multinomial(copies, n).log();
        levels[energy].push_back({log_population(rho, n), log_count});
        counts[energy].add_log(log_count);
    });

    bool achievable = false;
    LogAccumulator success;
    for (auto& [energy, blocks] : levels) {
        const auto target = counts.find(energy - w_index);
        if (target == counts.end()) continue;
        achievable = true;
        success.add(fill(std::move(blocks), target->second.total()));
    }
    if (!achievable) {
        std::ostringstream msg;
        msg << "work value " << w << " is not an achievable lattice difference";
        throw OffLattice(msg.str());
    }
    return success.total();
}

LogValue bath_exact_success_log(const DiagonalState& rho, double beta,
                                std::int64_t copies, double w,
                                std::int64_t max_compositions) {
    if (!(beta > 0.0)) throw DomainError("inverse temperature must be positive");
    if (!(w >= 0.0)) throw DomainError("negative work value");
    const int d = rho.dim();
    check_composition_guard(copies, d, max_compositions);
    const auto nu = rho.energies();

    std::vector<Block> blocks;
    for_each_composition(copies, d, [&](std::span<const std::int64_t> n) {
        double energy = 0.0;
        for (int i = 0; i < d; ++i) {
            energy += static_cast<double>(n[static_cast<std::size_t>(i)]) * nu[i];
        }
        blocks.push_back({beta * energy + log_population(rho, n),
                          -beta * energy + log_multinomial(copies, n).log()});
    });
    const LogValue capacity = LogValue::from_log(
        -beta * w + static_cast<double>(copies) * rho.log_partition_function(beta));
    return fill(std::move(blocks), capacity);
}

}  // namespace workex::reference
