#include "workex/asymptotics.hpp"

#include <algorithm>
#include <cmath>

#include "workex/errors.hpp"

namespace workex {

namespace {

ScheduleGamma flagged(double gamma) {
    return {gamma, gamma > 0.0 && gamma < 1.0};
}

}  // namespace

ScheduleGamma gamma_logN_schedule(std::int64_t copies, double c) {
    if (copies < 2) throw RangeError("gamma_logN_schedule: requires N >= 2");
    if (!(c > 0.0)) throw RangeError("gamma_logN_schedule: requires c > 0");
    const double n = static_cast<double>(copies);
    return flagged(std::sqrt(std::log(n) / (c * c * n)));
}

ScheduleGamma gamma_fixed_error(double epsilon, int dim, double c,
                                std::int64_t copies) {
    if (dim < 2) throw RangeError("gamma_fixed_error: requires d >= 2");
    if (!(epsilon > 0.0 && epsilon < static_cast<double>(dim))) {
        throw RangeError("gamma_fixed_error: requires epsilon in (0, d)");
    }
    if (!(c > 0.0)) throw RangeError("gamma_fixed_error: requires c > 0");
    if (copies < 1) throw RangeError("gamma_fixed_error: requires N >= 1");
    const double n = static_cast<double>(copies);
    return flagged(std::sqrt(std::log(static_cast<double>(dim) / epsilon) / (c * c * n)));
}

std::int64_t min_copies(double epsilon, int dim, double c, double gamma) {
    if (dim < 2) throw RangeError("min_copies: requires d >= 2");
    if (!(epsilon > 0.0 && epsilon < static_cast<double>(dim))) {
        throw RangeError("min_copies: requires epsilon in (0, d)");
    }
    if (!(gamma > 0.0 && gamma < 1.0)) {
        throw RangeError("min_copies: requires gamma in (0, 1)");
    }
    if (!(c > 0.0)) throw RangeError("min_copies: requires c > 0");
    const double exact = std::log(static_cast<double>(dim) / epsilon) /
                         (gamma * gamma * c * c);
    // Relative slack keeps ceil from overshooting when the quotient is an
    // integer up to floating-point noise (the schedule round-trip case).
    const double slack = 1e-9 * std::max(1.0, exact);
    return std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(exact - slack)));
}

}  // namespace workex
