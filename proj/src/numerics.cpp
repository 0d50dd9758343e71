#include "workex/numerics.hpp"

#include <cmath>
#include <sstream>

#include "workex/errors.hpp"

namespace workex {

namespace {

constexpr std::int64_t k_log_factorial_table_size = 10001;

double lgamma_threadsafe(double x) {
#ifdef __GLIBC__
    int sign = 0;
    return ::lgamma_r(x, &sign);
#else
    return std::lgamma(x);
#endif
}

const std::vector<double>& log_factorial_table() {
    static const std::vector<double> table = [] {
        std::vector<double> t(k_log_factorial_table_size);
        for (std::int64_t n = 0; n < k_log_factorial_table_size; ++n) {
            t[static_cast<std::size_t>(n)] =
                lgamma_threadsafe(static_cast<double>(n) + 1.0);
        }
        return t;
    }();
    return table;
}

}  // namespace

double log_factorial(std::int64_t n) {
    if (n < 0) throw DomainError("log_factorial: negative argument");
    if (n < k_log_factorial_table_size) {
        return log_factorial_table()[static_cast<std::size_t>(n)];
    }
    return lgamma_threadsafe(static_cast<double>(n) + 1.0);
}

LogValue log_binomial(std::int64_t n, std::int64_t k) {
    if (n < 0) throw DomainError("log_binomial: negative N");
    if (k < 0 || k > n) return LogValue::zero();
    return LogValue::from_log(log_factorial(n) - log_factorial(k) -
                              log_factorial(n - k));
}

LogValue log_multinomial(std::int64_t n, std::span<const std::int64_t> counts) {
    if (n < 0) throw DomainError("log_multinomial: negative N");
    std::int64_t total = 0;
    double denom = 0.0;
    for (std::int64_t c : counts) {
        if (c < 0) return LogValue::zero();
        total += c;
        denom += log_factorial(c);
    }
    if (total != n) {
        std::ostringstream msg;
        msg << "log_multinomial: counts sum to " << total << ", expected " << n;
        throw CompositionSumMismatch(msg.str());
    }
    return LogValue::from_log(log_factorial(n) - denom);
}

double binary_relative_entropy(double x, double y) {
    if (!(x >= 0.0 && x <= 1.0)) {
        throw DomainError("binary_relative_entropy: x outside [0,1]");
    }
    if (y <= 0.0 || y >= 1.0) {
        if (x == y) return 0.0;
        throw DomainError("binary_relative_entropy: y outside (0,1)");
    }
    double d = 0.0;
    if (x > 0.0) d += x * std::log(x / y);
    if (x < 1.0) d += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
    return d;
}

double shannon_entropy(std::span<const double> probs) {
    double sum = 0.0;
    for (double p : probs) {
        if (p < 0.0) throw DomainError("shannon_entropy: negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > k_normalization_tol) {
        std::ostringstream msg;
        msg << "shannon_entropy: probabilities sum to " << sum;
        throw NotNormalized(msg.str());
    }
    double h = 0.0;
    for (double p : probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    return h;
}

double relative_entropy(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) {
        throw DomainError("relative_entropy: length mismatch");
    }
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] <= 0.0) continue;
        if (q[i] <= 0.0) {
            throw SupportMismatch("relative_entropy: p has mass where q vanishes");
        }
        d += p[i] * std::log(p[i] / q[i]);
    }
    return d;
}

}  // namespace workex
