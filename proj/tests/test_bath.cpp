#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "test_support.hpp"
#include "workex/bath.hpp"
#include "workex/errors.hpp"
#include "workex/numerics.hpp"
#include "workex/reference.hpp"

using namespace workex;

namespace {

DiagonalState qubit_state(double p, double nu = 1.0) {
    return DiagonalState({1.0 - p, p}, {0.0, nu});
}

// Two independent copies merged into one d^2-level system.
DiagonalState tensor_square(const DiagonalState& rho) {
    const auto p = rho.probs();
    const auto nu = rho.energies();
    std::vector<double> probs, energies;
    for (int i = 0; i < rho.dim(); ++i) {
        for (int j = 0; j < rho.dim(); ++j) {
            probs.push_back(p[i] * p[j]);
            energies.push_back(nu[i] + nu[j]);
        }
    }
    return DiagonalState(probs, energies);
}

}  // namespace

TEST_CASE("free energy") {
    // Equilibrium identity F(omega_beta) = -ln(Z)/beta.
    const DiagonalState rho = qubit_state(0.8);
    for (double beta : {0.5, 1.0, 2.0}) {
        const DiagonalState thermal(rho.gibbs_populations(beta),
                                    {rho.energies()[0], rho.energies()[1]});
        CHECK(free_energy(thermal, beta) ==
              doctest::Approx(-rho.log_partition_function(beta) / beta)
                  .epsilon(1e-12));
    }
    // Pure ground state at zero energy has zero free energy.
    CHECK(free_energy(DiagonalState({1.0, 0.0}, {0.0, 1.0}), 1.0) ==
          doctest::Approx(0.0).epsilon(1e-14));
    CHECK(free_energy(rho, 1.0) == doctest::Approx(0.29960).epsilon(1e-4));
    CHECK_THROWS_AS(free_energy(rho, 0.0), DomainError);
}

TEST_CASE("extractable work against the bath") {
    const DiagonalState rho = qubit_state(0.8);
    CHECK(extractable_work_bath(rho, 1.0) ==
          doctest::Approx(0.299598 + std::log1p(std::exp(-1.0))).epsilon(1e-5));
    CHECK(extractable_work_bath(rho, 1.0) == doctest::Approx(0.61286).epsilon(1e-4));

    // Thermal input extracts nothing.
    const DiagonalState thermal(rho.gibbs_populations(1.0), {0.0, 1.0});
    CHECK(extractable_work_bath(thermal, 1.0) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("identity beta W_th = S(rho || omega_beta)") {
    auto rng = testsupport::make_rng(211);
    for (int t = 0; t < 100; ++t) {
        const int d = 2 + t % 5;
        const DiagonalState rho = testsupport::random_state(rng, d);
        for (double beta : {0.5, 1.0, 2.0}) {
            const double lhs = beta * extractable_work_bath(rho, beta);
            const double rhs =
                relative_entropy(rho.probs(), rho.gibbs_populations(beta));
            CHECK(std::abs(lhs - rhs) <= 1e-10);
        }
    }
}

TEST_CASE("no activation with a bath: W_th is additive over copies") {
    auto rng = testsupport::make_rng(223);
    for (int t = 0; t < 20; ++t) {
        const DiagonalState rho = testsupport::random_state(rng, 2 + t % 3);
        const DiagonalState pair = tensor_square(rho);
        for (double beta : {0.7, 1.3}) {
            CHECK(extractable_work_bath(pair, beta) ==
                  doctest::Approx(2.0 * extractable_work_bath(rho, beta))
                      .epsilon(1e-10));
        }
    }
}

TEST_CASE("bath bound coefficient") {
    const DiagonalState rho = qubit_state(0.8);
    const BoundCoefficient c = bath_bound_coefficient(rho, 1.0);
    CHECK(c.c == doctest::Approx(std::sqrt(2.0) * 0.61286 / (1.0 + 1.83258))
                     .epsilon(1e-4));
    CHECK(c.c == doctest::Approx(0.30600).epsilon(1e-4));
    CHECK(c.mode == BoundMode::bath);
    REQUIRE(c.alternate_c.has_value());
    CHECK(*c.alternate_c == doctest::Approx(c.c / std::sqrt(2.0)).epsilon(1e-13));

    // Thermal input: zero rate, tagged degenerate.
    const DiagonalState thermal(rho.gibbs_populations(1.0), {0.0, 1.0});
    CHECK(bath_bound_coefficient(thermal, 1.0).degenerate);

    // Shifting the whole spectrum does not change the rate.
    const DiagonalState shifted({0.2, 0.8}, {5.0, 6.0});
    CHECK(bath_bound_coefficient(shifted, 1.0).c ==
          doctest::Approx(c.c).epsilon(1e-12));

    CHECK_THROWS_AS(
        bath_bound_coefficient(DiagonalState({1.0, 0.0}, {0.0, 1.0}), 1.0),
        SupportError);
}

TEST_CASE("bath bound values") {
    const DiagonalState rho = qubit_state(0.8);
    const BoundCoefficient c = bath_bound_coefficient(rho, 1.0);
    const ProbabilityBound b = bath_bound(rho, 1.0, 100, 1.0 / 3.0);
    CHECK(b.value ==
          doctest::Approx(1.0 - 2.0 * std::exp(-100.0 / 9.0 * c.c * c.c))
              .epsilon(1e-12));
    CHECK(b.value == doctest::Approx(0.293).epsilon(2e-3));
    CHECK(bath_bound(rho, 1.0, 5, 0.1).vacuous);
    CHECK_THROWS_AS(bath_bound(rho, 1.0, 100, 1.5), RangeError);
}

TEST_CASE("bath block structure") {
    const DiagonalState rho = qubit_state(0.8);
    const auto blocks = bath_blocks(rho, 1.0, 12);
    CHECK(blocks.size() == 13);
    // Blocks arrive in fill order: state probability descending.
    for (std::size_t i = 1; i < blocks.size(); ++i) {
        CHECK(blocks[i - 1].log_state_prob >= blocks[i].log_state_prob);
    }
    // Total probabilities are the multinomial distribution and sum to one.
    LogAccumulator total;
    for (const BathBlock& b : blocks) {
        CHECK(b.log_total_prob.log() ==
              doctest::Approx((b.log_state_prob * b.log_capacity).log())
                  .epsilon(1e-13));
        total.add(b.log_total_prob);
    }
    CHECK(total.total().linear() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("quoted bath success values at two thirds of the free energy") {
    const DiagonalState rho = qubit_state(0.8);
    const double w_th = extractable_work_bath(rho, 1.0);
    const std::vector<std::int64_t> copies = {10, 25, 50, 100};
    const std::vector<double> quoted = {0.92, 0.96, 0.98, 1.0};
    for (std::size_t i = 0; i < copies.size(); ++i) {
        const double w = (2.0 / 3.0) * static_cast<double>(copies[i]) * w_th;
        const double got = bath_exact_success(rho, 1.0, copies[i], w);
        CHECK(std::abs(got - quoted[i]) <= 0.01);
    }
    CHECK(bath_exact_success(rho, 1.0, 100, (2.0 / 3.0) * 100.0 * w_th) >= 0.995);
}

TEST_CASE("bath exact success endpoints and monotonicity") {
    const DiagonalState rho = qubit_state(0.8);
    CHECK(bath_exact_success_log(rho, 1.0, 25, 0.0).log() == 0.0);
    double previous = 2.0;
    for (int i = 0; i <= 40; ++i) {
        const double w = 0.5 * i;
        const double value = bath_exact_success(rho, 1.0, 25, w);
        CHECK(value <= previous + 1e-12);
        previous = value;
    }
    // Capacity shrinks to nothing as w grows.
    CHECK(bath_exact_success(rho, 1.0, 25, 200.0) < 1e-60);
    CHECK_THROWS_AS(bath_exact_success(rho, 1.0, 25, -1.0), DomainError);

    // Works for d >= 3 as well, including non-lattice spectra.
    const DiagonalState irr({0.3, 0.3, 0.4}, {0.0, 1.0, std::sqrt(2.0)});
    CHECK(bath_exact_success_log(irr, 1.0, 10, 0.0).log() == 0.0);
    CHECK(bath_exact_success(irr, 1.0, 10, 1.7) <= 1.0);
}

TEST_CASE("bath bound never beats the exact greedy value") {
    for (double p : {0.6, 0.8}) {
        const DiagonalState rho = qubit_state(p);
        for (double beta : {0.5, 1.0, 2.0}) {
            const double w_th = extractable_work_bath(rho, beta);
            for (std::int64_t copies : {10, 25, 50, 100, 200}) {
                for (int g = 1; g <= 9; ++g) {
                    const double gamma = g / 10.0;
                    const ProbabilityBound b = bath_bound(rho, beta, copies, gamma);
                    if (b.vacuous) continue;
                    const double w = (1.0 - gamma) * copies * w_th;
                    CHECK(b.value <= bath_exact_success(rho, beta, copies, w) + 1e-12);
                }
            }
        }
    }
}

TEST_CASE("continuum fill matches the finite-degeneracy oracle") {
    const double g = static_cast<double>(1 << 20);
    for (double p : {0.6, 0.8}) {
        for (int copies = 1; copies <= 4; ++copies) {
            for (double beta : {0.5, 1.0}) {
                const DiagonalState rho = qubit_state(p);
                const double w_th = extractable_work_bath(rho, beta);
                double max_state_prob = 0.0;
                for (int k = 0; k <= copies; ++k) {
                    max_state_prob = std::max(
                        max_state_prob, std::exp(beta * k) * std::pow(p, k) *
                                            std::pow(1.0 - p, copies - k));
                }
                // Whole-state rounding moves at most a few states per block.
                const double tolerance = 16.0 * (copies + 2) * max_state_prob / g;
                for (double frac : {0.2, 0.5, 0.8}) {
                    const double w = frac * copies * w_th;
                    const double cont = bath_exact_success(rho, beta, copies, w);
                    const double disc =
                        testoracle::bath_success_finite_g(p, beta, 1.0, copies, w, g);
                    CHECK(std::abs(cont - disc) <= tolerance);
                }
            }
        }
    }
}

TEST_CASE("success probability is invariant under spectrum shifts") {
    // Shifting every level by a constant rescales capacities, target and
    // state probabilities in compensating ways.
    auto rng = testsupport::make_rng(229);
    for (int t = 0; t < 10; ++t) {
        const int d = 2 + t % 3;
        const auto probs = testsupport::random_probs(rng, d);
        auto energies = testsupport::random_energies(rng, d);
        const DiagonalState rho(probs, energies);
        for (double& e : energies) e += 3.5;
        const DiagonalState shifted(probs, energies);
        const double beta = 0.8;
        const double w = 0.4 * (t + 1);
        CHECK(bath_exact_success(rho, beta, 12, w) ==
              doctest::Approx(bath_exact_success(shifted, beta, 12, w))
                  .epsilon(1e-12));
    }
}

TEST_CASE("parallel kernel agrees with the serial reference") {
    auto rng = testsupport::make_rng(227);
    for (int t = 0; t < 20; ++t) {
        const int d = 2 + t % 3;
        const DiagonalState rho = testsupport::random_state(rng, d);
        const std::int64_t copies = 2 + t * 3;
        const double beta = 0.5 + 0.5 * (t % 3);
        const double w = 0.3 * t * extractable_work_bath(rho, beta);
        CHECK(bath_exact_success_log(rho, beta, copies, w).linear() ==
              doctest::Approx(
                  reference::bath_exact_success_log(rho, beta, copies, w).linear())
                  .epsilon(1e-12));
    }
}
