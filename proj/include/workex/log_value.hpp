#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <span>
#include <vector>

namespace workex {

// A nonnegative real stored as its natural logarithm. Zero is the explicit
// value -inf, so comparisons and min/max work without a separate flag.
class LogValue {
public:
    constexpr LogValue() : log_(-std::numeric_limits<double>::infinity()) {}

    static constexpr LogValue zero() { return LogValue(); }
    static constexpr LogValue one() { return from_log_unchecked(0.0); }

    // log must be a real number or -inf; +inf and NaN are not representable.
    static LogValue from_log(double log) {
        LogValue v;
        v.log_ = log;
        return v;
    }

    static LogValue from_linear(double x) {
        return from_log_unchecked(x > 0.0 ? std::log(x)
                                          : -std::numeric_limits<double>::infinity());
    }

    double log() const { return log_; }
    double linear() const { return std::exp(log_); }
    bool is_zero() const { return std::isinf(log_) && log_ < 0.0; }

    LogValue& operator*=(LogValue rhs) {
        // -inf + -inf = -inf: zero absorbs without producing NaN.
        log_ += rhs.log_;
        return *this;
    }
    friend LogValue operator*(LogValue a, LogValue b) { return a *= b; }

    auto operator<=>(const LogValue&) const = default;

private:
    static constexpr LogValue from_log_unchecked(double log) {
        LogValue v;
        v.log_ = log;
        return v;
    }

    double log_;
};

// a + b in linear space.
inline LogValue log_add(LogValue a, LogValue b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const double hi = std::max(a.log(), b.log());
    const double lo = std::min(a.log(), b.log());
    return LogValue::from_log(hi + std::log1p(std::exp(lo - hi)));
}

// a - b in linear space, clamped to zero when b >= a (callers rely on the
// clamp to absorb last-ulp wobble when a capacity is exactly exhausted).
inline LogValue log_diff(LogValue a, LogValue b) {
    if (b >= a) return LogValue::zero();
    if (b.is_zero()) return a;
    return LogValue::from_log(a.log() + std::log1p(-std::exp(b.log() - a.log())));
}

// ln(sum exp(v_i)), max-shifted with Kahan compensation. Empty input is zero.
inline LogValue log_sum_exp(std::span<const LogValue> values) {
    double hi = -std::numeric_limits<double>::infinity();
    for (const LogValue& v : values) hi = std::max(hi, v.log());
    if (std::isinf(hi) && hi < 0.0) return LogValue::zero();
    double sum = 0.0, comp = 0.0;
    for (const LogValue& v : values) {
        const double term = std::exp(v.log() - hi);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return LogValue::from_log(hi + std::log(sum));
}

inline LogValue log_sum_exp(const std::vector<LogValue>& values) {
    return log_sum_exp(std::span<const LogValue>(values));
}

// Streaming (max, compensated-sum) accumulator for log-space reductions.
// Partials merge associatively, so parallel chunks can be combined in a
// fixed order independent of how the work was scheduled.
struct LogAccumulator {
    double max = -std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double comp = 0.0;

    void add_log(double x) {
        if (std::isinf(x) && x < 0.0) return;
        if (x > max) {
            if (!std::isinf(max)) {
                const double scale = std::exp(max - x);
                sum *= scale;
                comp *= scale;
            }
            max = x;
        }
        const double term = std::exp(x - max);
        const double y = term - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }

    void add(LogValue v) { add_log(v.log()); }

    void merge(const LogAccumulator& other) {
        if (other.empty()) return;
        if (empty()) {
            *this = other;
            return;
        }
        if (other.max > max) {
            const double scale = std::exp(max - other.max);
            sum = sum * scale + other.sum;
            comp = comp * scale + other.comp;
            max = other.max;
        } else {
            const double scale = std::exp(other.max - max);
            const double y = other.sum * scale - comp;
            const double t = sum + y;
            comp = (t - sum) - y;
            sum = t;
        }
    }

    bool empty() const { return std::isinf(max) && max < 0.0; }

    LogValue total() const {
        if (empty() || sum <= 0.0) return LogValue::zero();
        return LogValue::from_log(max + std::log(sum));
    }
};

}  // namespace workex
