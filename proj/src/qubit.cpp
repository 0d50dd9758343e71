#include "workex/qubit.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "workex/errors.hpp"
#include "workex/numerics.hpp"

namespace workex {

namespace {

void require_probability(double p) {
    if (!(p > 0.0 && p < 1.0)) {
        throw DomainError("excitation probability must lie in (0,1)");
    }
}

void require_copies(std::int64_t copies) {
    if (copies < 1) throw DomainError("copy count must be positive");
}

}  // namespace

QubitEnsemble::QubitEnsemble(double p_, double nu_, std::int64_t copies_)
    : p(p_), nu(nu_), copies(copies_) {
    require_probability(p);
    if (!(nu > 0.0)) throw DomainError("level splitting must be positive");
    require_copies(copies);
}

double qubit_ergotropy(double p, double nu) { return (2.0 * p - 1.0) * nu; }

LogValue exact_success_qubits_log(std::int64_t copies, double p, std::int64_t k) {
    require_copies(copies);
    require_probability(p);
    if (k < 0 || k > copies) {
        std::ostringstream msg;
        msg << "work quanta k = " << k << " outside [0, " << copies << "]";
        throw RangeError(msg.str());
    }
    // k = 0 moves every level onto itself; the sum telescopes to 1.
    if (k == 0) return LogValue::one();

    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);

    // Fixed-size chunks with per-chunk accumulators merged in order keep the
    // result independent of the OpenMP thread count.
    constexpr std::int64_t chunk = 4096;
    const std::int64_t n_terms = copies - k + 1;
    const std::int64_t n_chunks = (n_terms + chunk - 1) / chunk;
    std::vector<LogAccumulator> partial(static_cast<std::size_t>(n_chunks));

#pragma omp parallel for schedule(static)
    for (std::int64_t c = 0; c < n_chunks; ++c) {
        LogAccumulator acc;
        const std::int64_t j_begin = k + c * chunk;
        const std::int64_t j_end = std::min(copies + 1, j_begin + chunk);
        for (std::int64_t j = j_begin; j < j_end; ++j) {
            const LogValue count =
                std::min(log_binomial(copies, j - k), log_binomial(copies, j));
            acc.add_log(count.log() + static_cast<double>(j) * log_p +
                        static_cast<double>(copies - j) * log_q);
        }
        partial[static_cast<std::size_t>(c)] = acc;
    }

    LogAccumulator total;
    for (const LogAccumulator& acc : partial) total.merge(acc);
    LogValue result = total.total();
    if (result.log() > 0.0) result = LogValue::one();
    return result;
}

double exact_success_qubits(std::int64_t copies, double p, std::int64_t k) {
    return exact_success_qubits_log(copies, p, k).linear();
}

std::int64_t qubit_work_quanta(std::int64_t copies, double p, double gamma) {
    return static_cast<std::int64_t>(
        std::floor(static_cast<double>(copies) * (2.0 * p - 1.0) * (1.0 - gamma)));
}

ProbabilityBound hoeffding_bound(std::int64_t copies, double p, std::int64_t k) {
    require_copies(copies);
    require_probability(p);
    const double ergotropy_quanta = static_cast<double>(copies) * (2.0 * p - 1.0);
    // Relative slack so the integer k sitting exactly on the real-arithmetic
    // boundary N(2p-1) is rejected despite last-ulp wobble in the product.
    if (k < 0 ||
        static_cast<double>(k) >= ergotropy_quanta * (1.0 - 1e-12)) {
        throw RangeError("hoeffding_bound: k outside [0, N(2p-1))");
    }
    const double gamma = 1.0 - static_cast<double>(k) / ergotropy_quanta;
    const double rate = gamma * gamma * 2.0 * (p - 0.5) * (p - 0.5);
    return make_bound(-std::expm1(-static_cast<double>(copies) * rate));
}

ProbabilityBound relent_bound(std::int64_t copies, double p, std::int64_t k) {
    require_copies(copies);
    require_probability(p);
    const double x = 0.5 + static_cast<double>(k) / (2.0 * static_cast<double>(copies));
    if (k < 0 || x >= p) {
        throw RangeError("relent_bound: requires 1/2 + k/2N < p");
    }
    const double d = binary_relative_entropy(x, p);
    return make_bound(-std::expm1(-static_cast<double>(copies) * d));
}

ProbabilityBound hoeffding_bound_gamma(std::int64_t copies, double p,
                                       double gamma) {
    require_copies(copies);
    require_probability(p);
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw RangeError("hoeffding_bound_gamma: gamma outside [0, 1]");
    }
    const double rate = gamma * gamma * 2.0 * (p - 0.5) * (p - 0.5);
    return make_bound(-std::expm1(-static_cast<double>(copies) * rate));
}

ProbabilityBound relent_bound_gamma(std::int64_t copies, double p, double gamma) {
    require_copies(copies);
    require_probability(p);
    if (!(gamma >= 0.0 && gamma <= 1.0)) {
        throw RangeError("relent_bound_gamma: gamma outside [0, 1]");
    }
    // The continuous work target N(2p-1)(1-gamma) puts the tail threshold at
    // x = p - (2p-1) gamma / 2.
    const double x = p - (2.0 * p - 1.0) * gamma / 2.0;
    const double d = binary_relative_entropy(x, p);
    return make_bound(-std::expm1(-static_cast<double>(copies) * d));
}

std::int64_t min_spins_bound(double p, double fraction, double target_success,
                             MinSpinsMethod method) {
    require_probability(p);
    if (!(target_success > 0.0 && target_success < 1.0)) {
        throw RangeError("min_spins_bound: target success outside (0,1)");
    }
    const double ergotropy_fraction = 2.0 * p - 1.0;
    if (!(fraction >= 0.0 && fraction < ergotropy_fraction)) {
        throw RangeError("min_spins_bound: fraction outside [0, 2p-1)");
    }
    const double needed = std::log(1.0 / (1.0 - target_success));
    double rate = 0.0;
    switch (method) {
        case MinSpinsMethod::relative_entropy:
            rate = binary_relative_entropy(0.5 + fraction / 2.0, p);
            break;
        case MinSpinsMethod::quadratic: {
            const double gamma = 1.0 - fraction / ergotropy_fraction;
            rate = gamma * gamma * 2.0 * (p - 0.5) * (p - 0.5);
            break;
        }
    }
    return std::max<std::int64_t>(1, std::llround(needed / rate));
}

std::int64_t min_spins_exact(double p, double fraction, double target_success,
                             std::int64_t n_max) {
    require_probability(p);
    if (!(target_success > 0.0 && target_success < 1.0)) {
        throw RangeError("min_spins_exact: target success outside (0,1)");
    }
    if (!(fraction >= 0.0 && fraction < 2.0 * p - 1.0)) {
        throw RangeError("min_spins_exact: fraction outside [0, 2p-1)");
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
        const std::int64_t k = std::llround(fraction * static_cast<double>(n));
        if (exact_success_qubits(n, p, k) >= target_success) return n;
    }
    std::ostringstream msg;
    msg << "min_spins_exact: no solution below N = " << n_max;
    throw NoSolution(msg.str());
}

WorkDistribution local_protocol_distribution(std::int64_t copies, double p,
                                             double nu) {
    require_copies(copies);
    if (!(p >= 0.0 && p <= 1.0)) {
        throw DomainError("excitation probability must lie in [0,1]");
    }
    if (!(nu > 0.0)) throw DomainError("level splitting must be positive");

    const double log_p = std::log(p);
    const double log_q = std::log1p(-p);
    WorkDistribution dist;
    dist.support.resize(static_cast<std::size_t>(copies) + 1);
    dist.probs.resize(static_cast<std::size_t>(copies) + 1);
    for (std::int64_t j = 0; j <= copies; ++j) {
        double t = log_binomial(copies, j).log();
        if (j > 0) t += static_cast<double>(j) * log_p;
        if (j < copies) t += static_cast<double>(copies - j) * log_q;
        dist.support[static_cast<std::size_t>(j)] =
            static_cast<double>(2 * j - copies) * nu;
        dist.probs[static_cast<std::size_t>(j)] = std::exp(t);
    }
    dist.mean = static_cast<double>(copies) * (2.0 * p - 1.0) * nu;
    dist.stddev = nu * std::sqrt(static_cast<double>(copies) * p * (1.0 - p));
    return dist;
}

}  // namespace workex
