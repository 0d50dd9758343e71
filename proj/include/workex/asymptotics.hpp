#pragma once

#include <cstdint>

namespace workex {

// A gamma schedule value; schedules report values outside (0,1) with the
// flag cleared instead of clamping, so sweeps can see where the asymptotic
// regime stops being meaningful.
struct ScheduleGamma {
    double gamma = 0.0;
    bool in_range = false;
};

// gamma = sqrt(ln N / (c^2 N)); feeding it back into the matching bound
// gives exactly 1 - d/N. Throws RangeError for N < 2.
ScheduleGamma gamma_logN_schedule(std::int64_t copies, double c);

// gamma = sqrt(ln(d/eps) / (c^2 N)) for a fixed failure budget eps.
ScheduleGamma gamma_fixed_error(double epsilon, int dim, double c,
                                std::int64_t copies);

// Smallest N with N >= ln(d/eps) / (gamma^2 c^2).
std::int64_t min_copies(double epsilon, int dim, double c, double gamma);

}  // namespace workex
