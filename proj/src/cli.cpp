#include "workex/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include "workex/asymptotics.hpp"
#include "workex/bath.hpp"
#include "workex/errors.hpp"
#include "workex/qubit.hpp"
#include "workex/qudit.hpp"
#include "workex/statefile.hpp"
#include "workex/table.hpp"

namespace workex {

namespace {

constexpr const char* k_guard_env = "WORKEX_MAX_COMPOSITIONS";

std::int64_t default_guard() {
    if (const char* env = std::getenv(k_guard_env)) {
        char* end = nullptr;
        const long long value = std::strtoll(env, &end, 10);
        if (end != env && *end == '\0' && value > 0) return value;
    }
    return k_default_composition_guard;
}

double parse_grid_number(const std::string& token) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0') {
        throw ParseError("bad grid value '" + token + "'");
    }
    return value;
}

struct CommonOptions {
    std::string format = "csv";
    std::string out_path;
    std::int64_t max_compositions = default_guard();
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--format", opts.format, "Output format: csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--out", opts.out_path, "Write output to a file");
    cmd->add_option("--max-compositions", opts.max_compositions,
                    "Composition-count guard for lattice sums");
}

void emit(const Table& table, const CommonOptions& opts, std::ostream& out) {
    const OutputFormat format = parse_format(opts.format);
    if (!opts.out_path.empty()) {
        std::ofstream file(opts.out_path);
        if (!file) throw Error("cannot open output file: " + opts.out_path);
        write_table(table, format, file);
    } else {
        write_table(table, format, out);
    }
}

Cell bound_cell(const ProbabilityBound& b) { return b.value; }

// ---- qubit-sweep ---------------------------------------------------------

struct QubitRow {
    std::int64_t copies = 0;
    double gamma = 0.0;
    std::int64_t k = 0;
    Cell exact, quad, quad_vacuous, relent, relent_vacuous;
    std::string error;
};

int cmd_qubit_sweep(double p, double nu, const std::vector<std::int64_t>& copies_list,
                    const std::vector<double>& gammas,
                    const std::vector<std::int64_t>& ks, bool use_gamma,
                    const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const std::size_t inner = use_gamma ? gammas.size() : ks.size();
    std::vector<QubitRow> rows(copies_list.size() * inner);

#pragma omp parallel for collapse(2) schedule(dynamic)
    for (std::size_t a = 0; a < copies_list.size(); ++a) {
        for (std::size_t b = 0; b < inner; ++b) {
            QubitRow& row = rows[a * inner + b];
            row.copies = copies_list[a];
            try {
                if (use_gamma) {
                    // Gamma grids evaluate the bounds in their gamma form, so
                    // the gamma = 0 boundary comes out clamped and flagged.
                    row.gamma = gammas[b];
                    row.k = qubit_work_quanta(row.copies, p, row.gamma);
                    row.exact = exact_success_qubits(row.copies, p, row.k);
                    const ProbabilityBound q =
                        hoeffding_bound_gamma(row.copies, p, row.gamma);
                    row.quad = bound_cell(q);
                    row.quad_vacuous = q.vacuous;
                    const ProbabilityBound r =
                        relent_bound_gamma(row.copies, p, row.gamma);
                    row.relent = bound_cell(r);
                    row.relent_vacuous = r.vacuous;
                } else {
                    row.k = ks[b];
                    row.gamma = 1.0 - static_cast<double>(row.k) /
                                          (static_cast<double>(row.copies) * (2.0 * p - 1.0));
                    row.exact = exact_success_qubits(row.copies, p, row.k);
                    try {
                        const ProbabilityBound q = hoeffding_bound(row.copies, p, row.k);
                        row.quad = bound_cell(q);
                        row.quad_vacuous = q.vacuous;
                    } catch (const RangeError&) {
                        // Bound inapplicable at this work target; cells stay empty.
                    }
                    try {
                        const ProbabilityBound r = relent_bound(row.copies, p, row.k);
                        row.relent = bound_cell(r);
                        row.relent_vacuous = r.vacuous;
                    } catch (const RangeError&) {
                    }
                }
            } catch (const Error& e) {
                row.error = e.what();
            }
        }
    }

    Table table;
    table.columns = {"N",       "gamma",        "k",      "w",
                     "p_exact", "p_bound_quad", "quad_vacuous",
                     "p_bound_relent", "relent_vacuous"};
    int error_rows = 0;
    for (const QubitRow& row : rows) {
        if (!row.error.empty()) {
            ++error_rows;
            err << "qubit-sweep: N=" << row.copies << ": " << row.error << "\n";
            continue;
        }
        table.add_row({row.copies, row.gamma, row.k,
                       static_cast<double>(row.k) * nu, row.exact, row.quad,
                       row.quad_vacuous, row.relent, row.relent_vacuous});
    }
    emit(table, opts, out);
    return error_rows > 0 ? 2 : 0;
}

// ---- min-spins ------------------------------------------------------------

int cmd_min_spins(double p, double p0, const std::vector<double>& fractions,
                  std::int64_t n_max, const CommonOptions& opts, std::ostream& out,
                  std::ostream& err) {
    Table table;
    table.columns = {"fraction", "n_exact", "n_relent", "n_quadratic", "status"};
    int error_rows = 0;
    for (double fraction : fractions) {
        Cell exact, relent, quadratic;
        std::string status = "ok";
        try {
            relent = min_spins_bound(p, fraction, p0, MinSpinsMethod::relative_entropy);
            quadratic = min_spins_bound(p, fraction, p0, MinSpinsMethod::quadratic);
            exact = min_spins_exact(p, fraction, p0, n_max);
        } catch (const NoSolution&) {
            status = "no-solution";
        } catch (const RangeError&) {
            status = "super-ergotropy";
        }
        if (status != "ok") {
            ++error_rows;
            err << "min-spins: fraction=" << format_number(fraction) << ": " << status
                << "\n";
        }
        table.add_row({fraction, exact, relent, quadratic, status});
    }
    emit(table, opts, out);
    return error_rows > 0 ? 2 : 0;
}

// ---- qudit-sweep ----------------------------------------------------------

int cmd_qudit_sweep(const DiagonalState& rho, std::optional<double> base_quantum,
                    std::int64_t copies, ReferenceMode mode,
                    const std::vector<double>& gammas, bool all_lattice,
                    const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const std::string mode_name = mode == ReferenceMode::passive ? "passive" : "thermal";
    const double per_copy_work = mode == ReferenceMode::passive
                                     ? ergotropy(rho)
                                     : global_ergotropy_rate(rho);

    Table table;
    table.columns = {"N",      "mode",       "gamma",        "w",
                     "p_exact", "p_protocol", "p_bound", "bound_vacuous"};
    int error_rows = 0;

    if (all_lattice) {
        const std::vector<double> works =
            isolated_work_lattice(rho, copies, opts.max_compositions, base_quantum);
        for (double w : works) {
            const double gamma =
                1.0 - w / (static_cast<double>(copies) * per_copy_work);
            Cell exact, bound, vacuous;
            try {
                exact = exact_isolated_success(rho, copies, w, opts.max_compositions,
                                               base_quantum);
            } catch (const Error& e) {
                ++error_rows;
                err << "qudit-sweep: w=" << format_number(w) << ": " << e.what() << "\n";
            }
            if (gamma >= 0.0 && gamma <= 1.0) {
                const ProbabilityBound b = isolated_bound(rho, copies, gamma, mode);
                bound = bound_cell(b);
                vacuous = b.vacuous;
            }
            table.add_row({copies, std::string("lattice"), gamma, w, exact,
                           std::monostate{}, bound, vacuous});
        }
    } else {
        for (double gamma : gammas) {
            Cell exact, protocol, bound, vacuous;
            double w = 0.0;
            try {
                const ShiftVector shift = shift_vector(rho, copies, gamma, mode);
                w = shift.work;
                protocol = protocol_success(rho, copies, shift, opts.max_compositions);
                try {
                    exact = exact_isolated_success(rho, copies, w,
                                                   opts.max_compositions, base_quantum);
                } catch (const OffLattice&) {
                    // Shift target unreachable at this copy count.
                }
                const ProbabilityBound b = isolated_bound(rho, copies, gamma, mode);
                bound = bound_cell(b);
                vacuous = b.vacuous;
            } catch (const Error& e) {
                ++error_rows;
                err << "qudit-sweep: gamma=" << format_number(gamma) << ": " << e.what()
                    << "\n";
                table.add_row({copies, mode_name, gamma, std::monostate{},
                               std::monostate{}, std::monostate{}, std::monostate{},
                               std::monostate{}});
                continue;
            }
            table.add_row({copies, mode_name, gamma, w, exact, protocol, bound,
                           vacuous});
        }
    }
    emit(table, opts, out);
    return error_rows > 0 ? 2 : 0;
}

// ---- bath-sweep -----------------------------------------------------------

int cmd_bath_sweep(const DiagonalState& rho, double beta,
                   const std::vector<std::int64_t>& copies_list,
                   const std::vector<double>& gammas, const CommonOptions& opts,
                   std::ostream& out, std::ostream& err) {
    const double w_th = extractable_work_bath(rho, beta);
    Table table;
    table.columns = {"N", "gamma", "w", "p_exact", "p_bound", "bound_vacuous"};
    int error_rows = 0;
    for (std::int64_t copies : copies_list) {
        for (double gamma : gammas) {
            const double w = (1.0 - gamma) * static_cast<double>(copies) * w_th;
            Cell exact, bound, vacuous;
            try {
                exact = bath_exact_success(rho, beta, copies, w, opts.max_compositions);
                const ProbabilityBound b = bath_bound(rho, beta, copies, gamma);
                bound = bound_cell(b);
                vacuous = b.vacuous;
            } catch (const Error& e) {
                ++error_rows;
                err << "bath-sweep: N=" << copies << " gamma=" << format_number(gamma)
                    << ": " << e.what() << "\n";
            }
            table.add_row({copies, gamma, w, exact, bound, vacuous});
        }
    }
    emit(table, opts, out);
    return error_rows > 0 ? 2 : 0;
}

// ---- schedule ------------------------------------------------------------

int cmd_schedule(double c, int dim, const std::vector<std::int64_t>& copies_list,
                 std::optional<double> epsilon, const CommonOptions& opts,
                 std::ostream& out, std::ostream& err) {
    Table table;
    table.columns = {"N",         "gamma_logn", "logn_in_range", "p_bound_logn",
                     "gamma_eps", "eps_in_range", "n_min_eps"};
    int error_rows = 0;
    for (std::int64_t copies : copies_list) {
        Cell g_logn, logn_ok, bound_logn, g_eps, eps_ok, n_min;
        try {
            if (copies >= 2) {
                const ScheduleGamma g = gamma_logN_schedule(copies, c);
                g_logn = g.gamma;
                logn_ok = g.in_range;
                bound_logn = 1.0 - static_cast<double>(dim) *
                                       std::exp(-static_cast<double>(copies) *
                                                g.gamma * g.gamma * c * c);
            }
            if (epsilon) {
                const ScheduleGamma g = gamma_fixed_error(*epsilon, dim, c, copies);
                g_eps = g.gamma;
                eps_ok = g.in_range;
                if (g.in_range) {
                    n_min = min_copies(*epsilon, dim, c, g.gamma);
                }
            }
        } catch (const Error& e) {
            ++error_rows;
            err << "schedule: N=" << copies << ": " << e.what() << "\n";
        }
        table.add_row({copies, g_logn, logn_ok, bound_logn, g_eps, eps_ok, n_min});
    }
    emit(table, opts, out);
    return error_rows > 0 ? 2 : 0;
}

// ---- local-dist -----------------------------------------------------------

int cmd_local_dist(double p, double nu, std::int64_t copies,
                   const CommonOptions& opts, std::ostream& out, std::ostream& err) {
    const WorkDistribution dist = local_protocol_distribution(copies, p, nu);
    Table table;
    table.columns = {"w", "prob"};
    for (std::size_t i = 0; i < dist.support.size(); ++i) {
        table.add_row({dist.support[i], dist.probs[i]});
    }
    err << "local-dist: mean=" << format_number(dist.mean)
        << " stddev=" << format_number(dist.stddev) << "\n";
    emit(table, opts, out);
    return 0;
}

}  // namespace

std::vector<double> expand_grid(const std::vector<std::string>& tokens) {
    std::vector<double> grid;
    for (const std::string& token : tokens) {
        const auto c1 = token.find(':');
        if (c1 == std::string::npos) {
            grid.push_back(parse_grid_number(token));
            continue;
        }
        const auto c2 = token.find(':', c1 + 1);
        if (c2 == std::string::npos) {
            throw ParseError("range token must be lo:hi:step, got '" + token + "'");
        }
        const double lo = parse_grid_number(token.substr(0, c1));
        const double hi = parse_grid_number(token.substr(c1 + 1, c2 - c1 - 1));
        const double step = parse_grid_number(token.substr(c2 + 1));
        if (!(step > 0.0) || hi < lo) {
            throw ParseError("bad range '" + token + "'");
        }
        for (int i = 0;; ++i) {
            const double x = lo + i * step;
            if (x > hi + 1e-12 * std::max(1.0, std::abs(hi))) break;
            grid.push_back(x);
        }
    }
    if (grid.empty()) throw ParseError("empty grid");
    return grid;
}

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"Success probabilities, bounds and resource estimates for "
                 "collective work extraction"};
    app.require_subcommand(1);

    // qubit-sweep
    double qs_p = 0.0, qs_nu = 1.0;
    std::vector<std::int64_t> qs_copies;
    std::vector<std::string> qs_gamma_tokens;
    std::vector<std::int64_t> qs_k;
    CommonOptions qs_opts;
    CLI::App* qubit_sweep = app.add_subcommand(
        "qubit-sweep", "Exact success probability and tail bounds for N qubits");
    qubit_sweep->add_option("--p", qs_p, "Excitation probability")->required();
    qubit_sweep->add_option("--nu", qs_nu, "Level splitting");
    qubit_sweep->add_option("--N", qs_copies, "Copy counts")->required()->delimiter(',');
    auto* qs_gamma_opt =
        qubit_sweep->add_option("--gamma", qs_gamma_tokens, "Gamma grid")->delimiter(',');
    auto* qs_k_opt =
        qubit_sweep->add_option("--k", qs_k, "Work-quanta grid")->delimiter(',');
    qs_gamma_opt->excludes(qs_k_opt);
    add_common(qubit_sweep, qs_opts);

    // min-spins
    double ms_p = 0.0, ms_p0 = 0.0;
    std::vector<std::string> ms_fraction_tokens;
    std::int64_t ms_nmax = 1'000'000;
    CommonOptions ms_opts;
    CLI::App* min_spins = app.add_subcommand(
        "min-spins", "Minimal copy counts reaching a target success probability");
    min_spins->add_option("--p", ms_p, "Excitation probability")->required();
    min_spins->add_option("--p0", ms_p0, "Target success probability")->required();
    min_spins->add_option("--fractions", ms_fraction_tokens, "Extraction fractions")
        ->required()
        ->delimiter(',');
    min_spins->add_option("--nmax", ms_nmax, "Scan limit for the exact search");
    add_common(min_spins, ms_opts);

    // qudit-sweep
    std::string qd_state_path;
    std::int64_t qd_copies = 0;
    std::string qd_mode = "passive";
    std::vector<std::string> qd_gamma_tokens;
    bool qd_all_lattice = false;
    CommonOptions qd_opts;
    CLI::App* qudit_sweep = app.add_subcommand(
        "qudit-sweep", "Isolated d-level sweep: exact optimum, protocol, bound");
    qudit_sweep->add_option("--state", qd_state_path, "State file")->required();
    qudit_sweep->add_option("--N", qd_copies, "Copy count")->required();
    qudit_sweep->add_option("--mode", qd_mode, "Shift reference: passive or thermal")
        ->check(CLI::IsMember({"passive", "thermal"}));
    auto* qd_gamma_opt =
        qudit_sweep->add_option("--gamma", qd_gamma_tokens, "Gamma grid")->delimiter(',');
    auto* qd_lattice_opt = qudit_sweep->add_flag(
        "--all-lattice", qd_all_lattice, "Sweep every achievable work value");
    qd_gamma_opt->excludes(qd_lattice_opt);
    add_common(qudit_sweep, qd_opts);

    // bath-sweep
    std::string bs_state_path;
    std::vector<std::int64_t> bs_copies;
    std::vector<std::string> bs_gamma_tokens;
    double bs_beta_override = 0.0;
    CommonOptions bs_opts;
    CLI::App* bath_sweep = app.add_subcommand(
        "bath-sweep", "Bath-assisted sweep: exact greedy optimum and bound");
    bath_sweep->add_option("--state", bs_state_path, "State file")->required();
    bath_sweep->add_option("--N", bs_copies, "Copy counts")->required()->delimiter(',');
    bath_sweep->add_option("--gamma", bs_gamma_tokens, "Gamma grid")
        ->required()
        ->delimiter(',');
    auto* bs_beta_opt = bath_sweep->add_option(
        "--beta", bs_beta_override, "Inverse temperature (overrides the state file)");
    add_common(bath_sweep, bs_opts);

    // schedule
    double sc_c = 0.0;
    int sc_dim = 0;
    std::vector<std::int64_t> sc_copies;
    double sc_epsilon = 0.0;
    CommonOptions sc_opts;
    CLI::App* schedule = app.add_subcommand(
        "schedule", "Gamma schedules bridging deterministic and single-shot regimes");
    schedule->add_option("--c", sc_c, "Bound coefficient")->required();
    schedule->add_option("--d", sc_dim, "Level count entering the bound")->required();
    schedule->add_option("--N", sc_copies, "Copy counts")->required()->delimiter(',');
    auto* sc_eps_opt =
        schedule->add_option("--epsilon", sc_epsilon, "Fixed failure budget");
    add_common(schedule, sc_opts);

    // local-dist
    double ld_p = 0.0, ld_nu = 1.0;
    std::int64_t ld_copies = 0;
    CommonOptions ld_opts;
    CLI::App* local_dist = app.add_subcommand(
        "local-dist", "Work distribution of the copy-by-copy swap protocol");
    local_dist->add_option("--p", ld_p, "Excitation probability")->required();
    local_dist->add_option("--nu", ld_nu, "Level splitting");
    local_dist->add_option("--N", ld_copies, "Copy count")->required();
    add_common(local_dist, ld_opts);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        std::ostringstream message;
        const int code = app.exit(e, message, message);
        (code == 0 ? out : err) << message.str();
        return code == 0 ? 0 : 1;
    }

    try {
        if (qubit_sweep->parsed()) {
            const bool use_gamma = qs_gamma_opt->count() > 0;
            if (!use_gamma && qs_k_opt->count() == 0) {
                err << "qubit-sweep: provide --gamma or --k\n";
                return 1;
            }
            std::vector<double> gammas;
            if (use_gamma) {
                gammas = expand_grid(qs_gamma_tokens);
                for (double g : gammas) {
                    if (!(g >= 0.0 && g <= 1.0)) {
                        err << "qubit-sweep: gamma " << g << " outside [0, 1]\n";
                        return 1;
                    }
                }
            }
            return cmd_qubit_sweep(qs_p, qs_nu, qs_copies, gammas, qs_k, use_gamma,
                                   qs_opts, out, err);
        }
        if (min_spins->parsed()) {
            return cmd_min_spins(ms_p, ms_p0, expand_grid(ms_fraction_tokens), ms_nmax,
                                 ms_opts, out, err);
        }
        if (qudit_sweep->parsed()) {
            if (!qd_all_lattice && qd_gamma_opt->count() == 0) {
                err << "qudit-sweep: provide --gamma or --all-lattice\n";
                return 1;
            }
            const StateSpec spec = load_state_spec(qd_state_path);
            const ReferenceMode mode =
                qd_mode == "passive" ? ReferenceMode::passive : ReferenceMode::thermal;
            const std::vector<double> gammas =
                qd_all_lattice ? std::vector<double>{} : expand_grid(qd_gamma_tokens);
            return cmd_qudit_sweep(spec.to_state(), spec.base_quantum, qd_copies, mode,
                                   gammas, qd_all_lattice, qd_opts, out, err);
        }
        if (bath_sweep->parsed()) {
            const StateSpec spec = load_state_spec(bs_state_path);
            double beta = 0.0;
            if (bs_beta_opt->count() > 0) {
                beta = bs_beta_override;
            } else if (spec.beta) {
                beta = *spec.beta;
            } else {
                err << "bath-sweep: no beta in the state file; pass --beta\n";
                return 1;
            }
            return cmd_bath_sweep(spec.to_state(), beta, bs_copies,
                                  expand_grid(bs_gamma_tokens), bs_opts, out, err);
        }
        if (schedule->parsed()) {
            return cmd_schedule(sc_c, sc_dim, sc_copies,
                                sc_eps_opt->count() > 0
                                    ? std::optional<double>(sc_epsilon)
                                    : std::nullopt,
                                sc_opts, out, err);
        }
        if (local_dist->parsed()) {
            return cmd_local_dist(ld_p, ld_nu, ld_copies, ld_opts, out, err);
        }
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "no subcommand given\n";
    return 1;
}

}  // namespace workex
