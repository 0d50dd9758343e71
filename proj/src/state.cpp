#include "workex/state.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "workex/errors.hpp"
#include "workex/log_value.hpp"
#include "workex/numerics.hpp"

namespace workex {

DiagonalState::DiagonalState(std::vector<double> probs,
                             std::vector<double> energies)
    : probs_(std::move(probs)), energies_(std::move(energies)) {
    if (probs_.size() != energies_.size()) {
        throw DomainError("DiagonalState: probs/energies length mismatch");
    }
    if (probs_.size() < 2) {
        throw DomainError("DiagonalState: need at least two levels");
    }
    double sum = 0.0;
    for (double p : probs_) {
        if (!(p >= 0.0)) throw DomainError("DiagonalState: negative population");
        sum += p;
    }
    for (double e : energies_) {
        if (!std::isfinite(e)) throw DomainError("DiagonalState: non-finite energy");
    }
    if (std::abs(sum - 1.0) > k_normalization_tol) {
        std::ostringstream msg;
        msg << "DiagonalState: populations sum to " << sum;
        throw NotNormalized(msg.str());
    }
    for (double& p : probs_) p /= sum;

    std::vector<std::size_t> order(probs_.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return energies_[a] < energies_[b];
    });
    std::vector<double> p(probs_.size()), e(probs_.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        p[i] = probs_[order[i]];
        e[i] = energies_[order[i]];
    }
    probs_ = std::move(p);
    energies_ = std::move(e);
}

bool DiagonalState::strictly_positive() const {
    for (double p : probs_) {
        if (p <= 0.0) return false;
    }
    return true;
}

DiagonalState DiagonalState::passive() const {
    std::vector<double> sorted(probs_.begin(), probs_.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    return DiagonalState(std::move(sorted), energies_);
}

std::vector<double> DiagonalState::gibbs_populations(double beta) const {
    const double e_min = *std::min_element(energies_.begin(), energies_.end());
    std::vector<double> g(energies_.size());
    double z = 0.0;
    for (std::size_t i = 0; i < energies_.size(); ++i) {
        g[i] = std::exp(-beta * (energies_[i] - e_min));
        z += g[i];
    }
    for (double& x : g) x /= z;
    return g;
}

double DiagonalState::log_partition_function(double beta) const {
    std::vector<LogValue> terms;
    terms.reserve(energies_.size());
    for (double e : energies_) terms.push_back(LogValue::from_log(-beta * e));
    return log_sum_exp(terms).log();
}

std::int64_t EnergyLattice::max_level() const {
    std::int64_t m = 0;
    for (std::int64_t q : levels) m = std::max(m, q);
    return m;
}

std::int64_t EnergyLattice::work_index(double w) const {
    const double x = w / quantum;
    const double rounded = std::nearbyint(x);
    if (std::abs(x - rounded) > 1e-9 * std::max(1.0, std::abs(x))) {
        std::ostringstream msg;
        msg << "work value " << w << " is not a multiple of the base quantum "
            << quantum;
        throw OffLattice(msg.str());
    }
    return static_cast<std::int64_t>(rounded);
}

namespace {

// Largest integer quotient accepted before the spectrum is treated as
// incommensurate; beyond this the lattice would be useless anyway.
constexpr double k_max_quotient = 1e6;

std::int64_t integer_gcd(std::int64_t a, std::int64_t b) {
    while (b != 0) {
        const std::int64_t t = a % b;
        a = b;
        b = t;
    }
    return a;
}

}  // namespace

EnergyLattice energy_lattice(const DiagonalState& state,
                             std::optional<double> base_quantum) {
    const auto energies = state.energies();
    const double e_min = energies.front();

    double quantum = 0.0;
    if (base_quantum) {
        if (!(*base_quantum > 0.0)) {
            throw DomainError("energy_lattice: base quantum must be positive");
        }
        quantum = *base_quantum;
    } else {
        // gcd of the spacings via their decimal representation at 1e-9.
        constexpr double scale = 1e9;
        std::int64_t g = 0;
        for (double e : energies) {
            const double delta = e - e_min;
            if (delta == 0.0) continue;
            const double scaled = delta * scale;
            if (scaled > 9e18) {
                throw IncommensurateSpectrum(
                    "energy_lattice: level spacing too large for gcd inference");
            }
            g = integer_gcd(g, static_cast<std::int64_t>(std::llround(scaled)));
        }
        if (g == 0) {
            // Fully degenerate spectrum: any positive quantum works.
            quantum = 1.0;
        } else {
            quantum = static_cast<double>(g) / scale;
        }
    }

    EnergyLattice lattice;
    lattice.quantum = quantum;
    lattice.levels.resize(energies.size());
    for (std::size_t i = 0; i < energies.size(); ++i) {
        const double x = (energies[i] - e_min) / quantum;
        if (x > k_max_quotient) {
            throw IncommensurateSpectrum(
                "energy_lattice: no usable common quantum (quotient too large)");
        }
        const double rounded = std::nearbyint(x);
        if (std::abs(x - rounded) > 1e-9 * std::max(1.0, std::abs(x))) {
            std::ostringstream msg;
            msg << "energy_lattice: level " << i << " is off the lattice of quantum "
                << quantum;
            throw IncommensurateSpectrum(msg.str());
        }
        lattice.levels[i] = static_cast<std::int64_t>(rounded);
    }
    return lattice;
}

}  // namespace workex
