#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "workex/log_value.hpp"

namespace workex {

// Absolute tolerance on sum(p_i) at state ingestion; inputs inside it are
// renormalized exactly once.
inline constexpr double k_normalization_tol = 1e-12;

// ln(n!) via log-gamma, table-cached for n <= 10^4.
double log_factorial(std::int64_t n);

// ln C(N,k); log-zero for k outside [0, N]. Total function.
LogValue log_binomial(std::int64_t n, std::int64_t k);

// ln(N!/prod(counts_i!)). Log-zero if any count is negative; throws
// CompositionSumMismatch when nonnegative counts do not sum to N.
LogValue log_multinomial(std::int64_t n, std::span<const std::int64_t> counts);

// D(x||y) = x ln(x/y) + (1-x) ln((1-x)/(1-y)) in nats, with 0 ln 0 = 0.
// Throws DomainError for y in {0,1} unless x == y.
double binary_relative_entropy(double x, double y);

// -sum p_i ln p_i in nats. Throws NotNormalized beyond tolerance.
double shannon_entropy(std::span<const double> probs);

// sum p_i ln(p_i/q_i) in nats. Throws SupportMismatch where p_i > 0, q_i = 0.
double relative_entropy(std::span<const double> p, std::span<const double> q);

}  // namespace workex
