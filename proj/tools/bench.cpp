// Compares the OpenMP kernels against their serial reference twins on
// benchmark-sized problems and reports timings plus the largest deviation.

#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#include "workex/bath.hpp"
#include "workex/qubit.hpp"
#include "workex/qudit.hpp"
#include "workex/reference.hpp"
#include "workex/state.hpp"

namespace {

using workex::DiagonalState;
using workex::LogValue;

double time_call(const std::function<LogValue()>& f, LogValue& result, int reps) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        result = f();
        const auto t1 = std::chrono::steady_clock::now();
        best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
    }
    return best;
}

void report(const char* name, const std::function<LogValue()>& parallel,
            const std::function<LogValue()>& serial, int reps = 3) {
    LogValue par_value, ser_value;
    const double par_s = time_call(parallel, par_value, reps);
    const double ser_s = time_call(serial, ser_value, reps);
    const double diff = std::abs(par_value.linear() - ser_value.linear());
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   |diff| %.2e\n",
                name, ser_s * 1e3, par_s * 1e3, ser_s / par_s, diff);
}

}  // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    constexpr std::int64_t guard = 50'000'000;

    {
        const std::int64_t n = 2'000'000;
        const std::int64_t k = n * 2 / 5;
        report("exact_success_qubits",
               [&] { return workex::exact_success_qubits_log(n, 0.8, k); },
               [&] { return workex::reference::exact_success_qubits_log(n, 0.8, k); });
    }
    {
        const DiagonalState rho({0.1, 0.15, 0.2, 0.25, 0.3}, {0, 1, 2, 3, 5});
        const std::int64_t n = 72;
        const workex::ShiftVector shift =
            workex::shift_vector(rho, n, 0.3, workex::ReferenceMode::passive);
        report("protocol_success (d=5)",
               [&] { return workex::protocol_success_log(rho, n, shift, guard); },
               [&] { return workex::reference::protocol_success_log(rho, n, shift, guard); });
    }
    {
        const DiagonalState rho({0.2, 0.2, 0.6}, {0, 1, 8});
        const std::int64_t n = 1200;
        const double w = 0.6 * n * workex::ergotropy(rho);
        const double w_lattice = std::floor(w);
        report("exact_isolated (d=3)",
               [&] { return workex::exact_isolated_success_log(rho, n, w_lattice, guard); },
               [&] {
                   return workex::reference::exact_isolated_success_log(rho, n, w_lattice,
                                                                        guard);
               });
    }
    {
        const DiagonalState rho({0.1, 0.2, 0.3, 0.4}, {0, 1, 2, 4});
        const std::int64_t n = 180;
        const double w = 0.5 * n * workex::extractable_work_bath(rho, 1.0);
        report("bath_exact (d=4)",
               [&] { return workex::bath_exact_success_log(rho, 1.0, n, w, guard); },
               [&] { return workex::reference::bath_exact_success_log(rho, 1.0, n, w, guard); });
    }
    return 0;
}
