#pragma once

#include <cstdint>
#include <vector>

#include "workex/bounds.hpp"
#include "workex/compositions.hpp"
#include "workex/log_value.hpp"
#include "workex/state.hpp"

namespace workex {

// One degenerate-population block of the bath-assisted filling problem. The
// bath degeneracy g is factored out analytically: capacities and per-state
// probabilities are stored per unit g, and g cancels in every product the
// computation forms.
struct BathBlock {
    std::vector<std::int64_t> composition;
    LogValue log_capacity;    // e^(-beta E(n)) C_N^n
    LogValue log_state_prob;  // e^(+beta E(n)) prod p_i^n_i
    LogValue log_total_prob;  // their product: the multinomial probability
};

// F(rho, h) = Tr(rho h) - S(rho)/beta.
double free_energy(const DiagonalState& rho, double beta);

// W_th = F(rho, h) - F(omega_beta(h), h) >= 0; satisfies
// beta W_th = S(rho || omega_beta(h)).
double extractable_work_bath(const DiagonalState& rho, double beta);

// Appendix-style exponent rate sqrt(2) beta W_th / (beta sum nu_i - sum ln p_i)
// over the spectrum shifted to nu_min = 0; the main-text variant without the
// sqrt(2) is exposed as alternate_c. Throws SupportError on zero populations.
BoundCoefficient bath_bound_coefficient(const DiagonalState& rho, double beta);

// 1 - d exp(-N gamma^2 c^2); valid at every finite N.
ProbabilityBound bath_bound(const DiagonalState& rho, double beta,
                            std::int64_t copies, double gamma);

// All N-copy blocks, in the order the greedy fill consumes them (state
// probability descending, lexicographic composition on ties).
std::vector<BathBlock> bath_blocks(const DiagonalState& rho, double beta,
                                   std::int64_t copies,
                                   std::int64_t max_compositions = k_default_composition_guard);

// Exact optimal success probability of extracting w against the bath: fill
// the target capacity e^(-beta w) Z^N with the most probable blocks first,
// the final block fractionally. OpenMP-parallel block construction; serial
// twin in workex::reference.
LogValue bath_exact_success_log(const DiagonalState& rho, double beta,
                                std::int64_t copies, double w,
                                std::int64_t max_compositions = k_default_composition_guard);
double bath_exact_success(const DiagonalState& rho, double beta,
                          std::int64_t copies, double w,
                          std::int64_t max_compositions = k_default_composition_guard);

}  // namespace workex
