#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "workex/cli.hpp"
#include "workex/errors.hpp"
#include "workex/statefile.hpp"
#include "workex/table.hpp"

using namespace workex;

namespace {

struct RunResult {
    int code;
    std::string out;
    std::string err;
};

RunResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

Table parse(const std::string& csv) {
    std::istringstream in(csv);
    return parse_csv(in);
}

std::string cell(const Table& t, std::size_t row, const std::string& column) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (t.columns[c] == column) {
            return std::get<std::string>(t.rows[row][c]);
        }
    }
    FAIL("no column ", column);
    return "";
}

std::string write_temp_state(const std::string& body) {
    static int counter = 0;
    const std::string path =
        "/tmp/workex_test_state_" + std::to_string(counter++) + ".state";
    std::ofstream file(path);
    file << body;
    return path;
}

}  // namespace

TEST_CASE("grid expansion") {
    CHECK(expand_grid({"0.5"}) == std::vector<double>{0.5});
    CHECK(expand_grid({"1", "2.5"}) == std::vector<double>{1.0, 2.5});
    const auto range = expand_grid({"0.1:0.3:0.1"});
    REQUIRE(range.size() == 3);
    CHECK(range[2] == doctest::Approx(0.3).epsilon(1e-12));
    CHECK_THROWS_AS(expand_grid({"abc"}), ParseError);
    CHECK_THROWS_AS(expand_grid({"1:2"}), ParseError);
    CHECK_THROWS_AS(expand_grid({"2:1:0.5"}), ParseError);
}

TEST_CASE("state file parsing") {
    {
        std::istringstream in("# comment\nprobs = 0.2, 0.8\nenergies = 0 1\nbeta=1\n");
        const StateSpec spec = parse_state_spec(in);
        CHECK(spec.probs == std::vector<double>{0.2, 0.8});
        CHECK(spec.energies == std::vector<double>{0.0, 1.0});
        REQUIRE(spec.beta.has_value());
        CHECK(*spec.beta == 1.0);
        CHECK_FALSE(spec.base_quantum.has_value());
        CHECK(spec.to_state().dim() == 2);
    }
    {
        std::istringstream in("probs = 0.5, 0.5\n");
        CHECK_THROWS_AS(parse_state_spec(in), ParseError);
    }
    {
        std::istringstream in("probs = 0.5, 0.5\nenergies = 0, 1\nspin = 3\n");
        CHECK_THROWS_AS(parse_state_spec(in), ParseError);
    }
    {
        std::istringstream in("probs = 0.5, zz\nenergies = 0, 1\n");
        CHECK_THROWS_AS(parse_state_spec(in), ParseError);
    }
    CHECK_THROWS_AS(load_state_spec("/nonexistent/path.state"), ParseError);
}

TEST_CASE("number formatting is fixed at 12 significant digits") {
    CHECK(format_number(0.5) == "0.5");
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(2598960.0) == "2598960");
    CHECK(format_number(1.23456789012345e-7) == "1.23456789012e-07");
}

TEST_CASE("CSV round trip is idempotent") {
    Table t;
    t.columns = {"a", "b,comma", "c"};
    t.add_row({1.0 / 3.0, std::string("x\"y"), std::int64_t{7}});
    t.add_row({std::monostate{}, true, 0.25});
    std::ostringstream first;
    write_csv(t, first);
    Table reparsed = parse(first.str());
    CHECK(reparsed.columns == t.columns);
    std::ostringstream second;
    write_csv(reparsed, second);
    CHECK(second.str() == first.str());
}

TEST_CASE("qubit sweep reproduces the quoted values") {
    const RunResult r = run({"qubit-sweep", "--p", "0.8", "--N", "10,25,50,100",
                             "--gamma", "0.3333"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 4);
    const std::vector<double> quoted = {0.90, 0.92, 0.97, 0.99};
    const std::vector<std::string> ks = {"4", "10", "20", "40"};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(cell(t, i, "k") == ks[i]);
        CHECK(std::stod(cell(t, i, "p_exact")) ==
              doctest::Approx(quoted[i]).epsilon(0.012));
        // Bounds sit below the exact value wherever they were emitted.
        const std::string quad = cell(t, i, "p_bound_quad");
        if (!quad.empty()) {
            CHECK(std::stod(quad) <= std::stod(cell(t, i, "p_exact")) + 1e-12);
        }
    }
}

TEST_CASE("qubit sweep gamma zero row flags the vacuous bound") {
    const RunResult r =
        run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma", "0,0.5"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 2);
    // gamma = 0 targets the full ergotropy: k = 6 and both bound formulas
    // evaluate to zero, clamped and flagged rather than erroring.
    CHECK(cell(t, 0, "k") == "6");
    CHECK(cell(t, 0, "p_bound_quad") == "0");
    CHECK(cell(t, 0, "quad_vacuous") == "true");
    CHECK(cell(t, 0, "p_bound_relent") == "0");
    CHECK(cell(t, 0, "relent_vacuous") == "true");
    CHECK_FALSE(cell(t, 0, "p_exact").empty());
    CHECK(cell(t, 1, "quad_vacuous") == "false");
}

TEST_CASE("k-grid rows leave out-of-domain bounds empty") {
    // k = 7 exceeds the ergotropy target N(2p-1) = 6: super-ergotropic,
    // negative gamma, no applicable tail bound.
    const RunResult r = run({"qubit-sweep", "--p", "0.8", "--N", "10", "--k", "7"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 1);
    CHECK(std::stod(cell(t, 0, "gamma")) < 0.0);
    CHECK(cell(t, 0, "p_bound_quad").empty());
    CHECK(cell(t, 0, "p_bound_relent").empty());
    CHECK_FALSE(cell(t, 0, "p_exact").empty());
}

TEST_CASE("qubit sweep accepts an explicit k grid") {
    const RunResult r =
        run({"qubit-sweep", "--p", "0.8", "--N", "10", "--k", "0,3,10"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 3);
    CHECK(std::stod(cell(t, 0, "p_exact")) == doctest::Approx(1.0));
    CHECK(std::stod(cell(t, 2, "p_exact")) ==
          doctest::Approx(std::pow(0.8, 10)).epsilon(1e-10));
}

TEST_CASE("range tokens expand inside grid options") {
    const RunResult r =
        run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma", "0.1:0.9:0.2"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    CHECK(t.rows.size() == 5);
    CHECK(cell(t, 0, "gamma") == "0.1");
    CHECK(cell(t, 4, "gamma") == "0.9");
}

TEST_CASE("commands are deterministic") {
    const std::vector<std::string> args = {"qubit-sweep", "--p",     "0.8",
                                           "--N",         "10,25",   "--gamma",
                                           "0.2,0.3333,0.9"};
    CHECK(run(args).out == run(args).out);
    const std::vector<std::string> bath = {
        "bath-sweep", "--state", "/root/proj/states/qubit_p08.state",
        "--N",        "10,25",   "--gamma",
        "0.2,0.5"};
    CHECK(run(bath).out == run(bath).out);
}

TEST_CASE("min-spins table and error rows") {
    const RunResult r = run({"min-spins", "--p", "0.95", "--p0", "0.99",
                             "--fractions", "0,0.8,0.95"});
    // fraction 0.95 >= 2p-1 = 0.9: error row, exit code 2.
    CHECK(r.code == 2);
    CHECK(r.err.find("super-ergotropy") != std::string::npos);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 3);
    CHECK(cell(t, 0, "n_exact") == "1");
    CHECK(cell(t, 1, "n_relent") == "223");
    CHECK(cell(t, 1, "n_quadratic") == "921");
    CHECK(cell(t, 1, "status") == "ok");
    CHECK(cell(t, 2, "status") == "super-ergotropy");
    CHECK(cell(t, 2, "n_exact").empty());
}

TEST_CASE("qudit sweep on a two-level state matches the qubit sweep") {
    // Gamma values where the shift repair (nearest integer) and the qubit
    // floor convention pick the same work target.
    const std::string path = write_temp_state("probs=0.2,0.8\nenergies=0,1\n");
    const RunResult qudit = run({"qudit-sweep", "--state", path, "--N", "10",
                                 "--mode", "passive", "--gamma", "0.3333,0.5,0.8"});
    const RunResult qubit =
        run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma", "0.3333,0.5,0.8"});
    CHECK(qudit.code == 0);
    const Table a = parse(qudit.out);
    const Table b = parse(qubit.out);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) {
        CHECK(cell(a, i, "w") == cell(b, i, "w"));
        CHECK(cell(a, i, "p_exact") == cell(b, i, "p_exact"));
        CHECK(cell(a, i, "p_protocol") == cell(b, i, "p_exact"));
    }
}

TEST_CASE("qudit sweep lattice mode emits the exact optimum per work value") {
    const RunResult r = run({"qudit-sweep", "--state",
                             "/root/proj/states/qutrit_fig2.state", "--N", "6",
                             "--all-lattice"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    CHECK(t.rows.size() > 20);
    CHECK(cell(t, 0, "w") == "0");
    CHECK(cell(t, 0, "p_exact") == "1");
    CHECK(cell(t, 0, "mode") == "lattice");
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        const double p = std::stod(cell(t, i, "p_exact"));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
    }
}

TEST_CASE("qudit sweep honors the composition guard") {
    const RunResult r = run({"qudit-sweep", "--state",
                             "/root/proj/states/qutrit_fig2.state", "--N", "20",
                             "--gamma", "0.5", "--max-compositions", "10"});
    CHECK(r.code == 2);
    CHECK(r.err.find("guard") != std::string::npos);

    // Environment variable sets the default guard.
    ::setenv("WORKEX_MAX_COMPOSITIONS", "10", 1);
    const RunResult env_run = run({"qudit-sweep", "--state",
                                   "/root/proj/states/qutrit_fig2.state", "--N",
                                   "20", "--gamma", "0.5"});
    ::unsetenv("WORKEX_MAX_COMPOSITIONS");
    CHECK(env_run.code == 2);

    // An explicit flag overrides the environment.
    ::setenv("WORKEX_MAX_COMPOSITIONS", "10", 1);
    const RunResult flag_run = run({"qudit-sweep", "--state",
                                    "/root/proj/states/qutrit_fig2.state", "--N",
                                    "20", "--gamma", "0.5", "--max-compositions",
                                    "1000000"});
    ::unsetenv("WORKEX_MAX_COMPOSITIONS");
    CHECK(flag_run.code == 0);
}

TEST_CASE("bath sweep reproduces the quoted values") {
    const RunResult r = run({"bath-sweep", "--state",
                             "/root/proj/states/qubit_p08.state", "--N",
                             "10,25,50,100", "--gamma", "0.333333333333"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 4);
    const std::vector<double> quoted = {0.92, 0.96, 0.98, 1.0};
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(std::stod(cell(t, i, "p_exact")) ==
              doctest::Approx(quoted[i]).epsilon(0.011));
        const std::string bound = cell(t, i, "p_bound");
        if (cell(t, i, "bound_vacuous") == "false") {
            CHECK(std::stod(bound) <= std::stod(cell(t, i, "p_exact")) + 1e-12);
        }
    }
    // beta must come from the file or the flag.
    const std::string no_beta = write_temp_state("probs=0.2,0.8\nenergies=0,1\n");
    CHECK(run({"bath-sweep", "--state", no_beta, "--N", "10", "--gamma", "0.5"})
              .code == 1);
    CHECK(run({"bath-sweep", "--state", no_beta, "--N", "10", "--gamma", "0.5",
               "--beta", "1"})
              .code == 0);
}

TEST_CASE("schedule command") {
    const RunResult r = run({"schedule", "--c", "0.3", "--d", "2", "--N",
                             "10,100,1000", "--epsilon", "0.01"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        const double n = std::stod(cell(t, i, "N"));
        CHECK(std::stod(cell(t, i, "p_bound_logn")) ==
              doctest::Approx(1.0 - 2.0 / n).epsilon(1e-12));
        // Fixed-error round trip: the minimal copy count is N itself.
        if (cell(t, i, "eps_in_range") == "true") {
            CHECK(cell(t, i, "n_min_eps") == cell(t, i, "N"));
        }
    }
}

TEST_CASE("local-dist command") {
    const RunResult r = run({"local-dist", "--p", "0.8", "--N", "4"});
    CHECK(r.code == 0);
    const Table t = parse(r.out);
    REQUIRE(t.rows.size() == 5);
    CHECK(cell(t, 0, "w") == "-4");
    CHECK(cell(t, 4, "w") == "4");
    CHECK(std::stod(cell(t, 4, "prob")) == doctest::Approx(0.4096).epsilon(1e-10));
    CHECK(r.err.find("mean=") != std::string::npos);
}

TEST_CASE("json output is an array of row objects") {
    const RunResult r = run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma",
                             "0.3333", "--format", "json"});
    CHECK(r.code == 0);
    CHECK(r.out.front() == '[');
    CHECK(r.out.find("\"N\": 10") != std::string::npos);
    CHECK(r.out.find("\"p_exact\": 0.8") != std::string::npos);
}

TEST_CASE("--out writes the table to a file") {
    const std::string path = "/tmp/workex_test_out.csv";
    std::remove(path.c_str());
    const RunResult direct =
        run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma", "0.5"});
    const RunResult filed = run({"qubit-sweep", "--p", "0.8", "--N", "10",
                                 "--gamma", "0.5", "--out", path});
    CHECK(filed.code == 0);
    CHECK(filed.out.empty());
    std::ifstream in(path);
    std::stringstream content;
    content << in.rdbuf();
    CHECK(content.str() == direct.out);
}

TEST_CASE("usage errors exit with code 1") {
    CHECK(run({"qubit-sweep", "--p", "0.8"}).code == 1);              // no --N
    CHECK(run({"qubit-sweep", "--p", "0.8", "--N", "10"}).code == 1); // no grid
    CHECK(run({"unknown-command"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"qubit-sweep", "--p", "0.8", "--N", "10", "--gamma", "2"}).code == 1);
    CHECK(run({"qudit-sweep", "--state", "/nonexistent", "--N", "5", "--gamma",
               "0.5"})
              .code == 1);
    // Help is not an error.
    CHECK(run({"--help"}).code == 0);
    CHECK(run({"qubit-sweep", "--help"}).code == 0);
}
