#pragma once

#include <cstdint>
#include <vector>

#include "workex/bounds.hpp"
#include "workex/log_value.hpp"

namespace workex {

// N identical two-level systems with excitation probability p and splitting
// nu. p > 1/2 (population inversion) is the regime where extraction pays,
// but it is not required.
struct QubitEnsemble {
    double p;
    double nu;
    std::int64_t copies;

    QubitEnsemble(double p_, double nu_, std::int64_t copies_);

    bool inverted() const { return p > 0.5; }
};

// Work distribution of a protocol: probabilities over a strictly increasing
// support, with its first two moments.
struct WorkDistribution {
    std::vector<double> support;
    std::vector<double> probs;
    double mean = 0.0;
    double stddev = 0.0;
};

// (2p-1) nu; negative when there is no population inversion.
double qubit_ergotropy(double p, double nu);

// Optimal probability of raising the repository by k quanta from N copies:
// sum over level occupations j of min(C(N,j-k), C(N,j)) p^j (1-p)^(N-j),
// accumulated in log space. OpenMP-parallel over j; workex::reference holds
// the serial twin.
LogValue exact_success_qubits_log(std::int64_t copies, double p, std::int64_t k);
double exact_success_qubits(std::int64_t copies, double p, std::int64_t k);

// Quadratic (Hoeffding) lower bound 1 - exp(-N gamma^2 2(p-1/2)^2) with gamma
// read off from k. Throws RangeError at or beyond the ergotropy target.
ProbabilityBound hoeffding_bound(std::int64_t copies, double p, std::int64_t k);

// Binomial-tail bound 1 - exp(-N D(1/2 + k/2N || p)); tighter than the
// quadratic one. Throws RangeError when 1/2 + k/2N >= p.
ProbabilityBound relent_bound(std::int64_t copies, double p, std::int64_t k);

// The same bounds as functions of the sub-optimality fraction itself, the
// form gamma sweeps plot. At gamma = 0 both evaluate to 0 and come back
// flagged vacuous instead of erroring, so wide grids never abort.
ProbabilityBound hoeffding_bound_gamma(std::int64_t copies, double p, double gamma);
ProbabilityBound relent_bound_gamma(std::int64_t copies, double p, double gamma);

enum class MinSpinsMethod { quadratic, relative_entropy };

// Copy count estimate from the chosen analytic bound at a fixed extraction
// fraction k_tot/N_tot. Rounded to nearest; see the min-spins tests for the
// frozen reference values.
std::int64_t min_spins_bound(double p, double fraction, double target_success,
                             MinSpinsMethod method);

// Smallest N whose exact success probability at k = round(fraction N) reaches
// the target. Linear upward scan: the rounding makes P-tilde jitter in N, so
// bisection is unsafe. Throws NoSolution past n_max.
std::int64_t min_spins_exact(double p, double fraction, double target_success,
                             std::int64_t n_max = 1'000'000);

// Binomial work distribution of the copy-by-copy swap protocol.
WorkDistribution local_protocol_distribution(std::int64_t copies, double p,
                                             double nu);

// Floor convention mapping a sub-optimality fraction to the integer work
// target, k = floor(N (2p-1) (1-gamma)).
std::int64_t qubit_work_quanta(std::int64_t copies, double p, double gamma);

}  // namespace workex
