#pragma once

#include <cstdint>

#include "workex/compositions.hpp"
#include "workex/log_value.hpp"
#include "workex/qudit.hpp"
#include "workex/state.hpp"

// Serial reference implementations of the OpenMP kernels. Kept deliberately
// plain; the tests check the parallel paths against these, and the benchmark
// tool compares their runtimes.
namespace workex::reference {

LogValue exact_success_qubits_log(std::int64_t copies, double p, std::int64_t k);

LogValue protocol_success_log(const DiagonalState& rho, std::int64_t copies,
                              const ShiftVector& shift,
                              std::int64_t max_compositions = k_default_composition_guard);

LogValue exact_isolated_success_log(const DiagonalState& rho, std::int64_t copies,
                                    double w,
                                    std::int64_t max_compositions = k_default_composition_guard,
                                    std::optional<double> base_quantum = std::nullopt);

LogValue bath_exact_success_log(const DiagonalState& rho, double beta,
                                std::int64_t copies, double w,
                                std::int64_t max_compositions = k_default_composition_guard);

}  // namespace workex::reference
