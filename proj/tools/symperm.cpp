// symperm: permanents and the geometric measure of entanglement of
// permutation-invariant states.
//
// Exit codes: 0 success, 1 validation/parse/size error, 2 optimizer did not
// converge (values still printed), 3 a proven inequality was violated.

#include <chrono>
#include <cstdint>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "symperm/error.hpp"
#include "symperm/families.hpp"
#include "symperm/geometric.hpp"
#include "symperm/inequality.hpp"
#include "symperm/io.hpp"
#include "symperm/permanent.hpp"
#include "symperm/symmetric.hpp"

namespace {

using namespace symperm;
using nlohmann::json;

constexpr const char *kVersion = "0.1.0";

enum ExitCode : int {
    kOk = 0,
    kInvalid = 1,
    kNotConverged = 2,
    kInequalityViolated = 3,
};

struct GlobalOptions {
    std::uint64_t seed = 1;
    double tol = 1e-10;
    int max_iter = 10000;
    int restarts = 20;
    std::optional<long long> guard_override;
    std::string output;
    std::string manifest;
};

/// What a command produced: the primary stdout text, any file written, and its exit code.
struct CommandResult {
    std::string stdout_text;
    std::string file_text;
    int exit_code = kOk;
    json parameters = json::object();
};

OptimizerConfig optimizer_config(const GlobalOptions &g) {
    OptimizerConfig cfg;
    cfg.seed = g.seed;
    cfg.tolerance = g.tol;
    cfg.max_iterations = g.max_iter;
    cfg.restarts = g.restarts;
    return cfg;
}

void write_output_file(const GlobalOptions &g, CommandResult &result, std::string text) {
    if (!g.output.empty()) {
        io::write_text_file(g.output, text);
    }
    result.file_text = std::move(text);
}

// perm ------------------------------------------------------------------------

struct PermArgs {
    std::string input;
    std::string algorithm = "ryser";
};

CommandResult run_perm(const PermArgs &a, const GlobalOptions &g) {
    const json doc = io::read_json_file(a.input);
    const bool is_multiset = doc.is_object() && doc.contains("columns");

    Complex value;
    if (a.algorithm == "multiset" || a.algorithm == "multiset-ryser") {
        if (!is_multiset) {
            throw ValidationError("perm: algorithm '" + a.algorithm + "' needs a multiset-columns file");
        }
        const auto cols = io::multiset_from_json(doc);
        const auto guard = g.guard_override ? static_cast<std::size_t>(*g.guard_override)
                                            : kMultisetMaxTuples;
        value = a.algorithm == "multiset" ? permanent_multiset(cols, guard)
                                          : permanent_multiset_ryser(cols, guard);
    } else {
        const ComplexMatrix m =
            is_multiset ? expand_multiset(io::multiset_from_json(doc)) : io::matrix_from_json(doc);
        if (a.algorithm == "naive") {
            value = permanent_naive(m, g.guard_override ? static_cast<int>(*g.guard_override)
                                                        : kNaiveMaxOrder);
        } else {
            value = permanent_ryser(m, g.guard_override ? static_cast<int>(*g.guard_override)
                                                        : kRyserMaxOrder);
        }
    }
    CommandResult result;
    result.stdout_text = io::format_complex(value) + "\n";
    result.parameters = {{"input", a.input}, {"algorithm", a.algorithm}};
    return result;
}

// lambda ----------------------------------------------------------------------

struct LambdaArgs {
    std::string kind = "dicke";
    int n = 0;
    std::vector<int> k;
};

std::string measures_text(double lambda) {
    std::string out = "lambda_max " + io::format_number(lambda) + "\n";
    out += "e_sin2 " + io::format_number(e_sin2(std::min(lambda, 1.0))) + "\n";
    out += "e_log " + io::format_number(lambda > 0.0 ? e_log(std::min(lambda, 1.0)) : INFINITY) + "\n";
    return out;
}

CommandResult run_lambda(const LambdaArgs &a, const GlobalOptions &) {
    double lambda = 0.0;
    if (a.kind == "qubit") {
        if (a.k.size() != 1) {
            throw ValidationError("lambda: qubit kind takes a single k");
        }
        lambda = lambda_qubit(a.n, a.k.front());
    } else {
        const Composition k(a.k);
        if (k.n() != a.n) {
            throw ValidationError("lambda: parts of k sum to " + std::to_string(k.n()) +
                                  ", expected n = " + std::to_string(a.n));
        }
        lambda = lambda_closed_form(k);
    }
    CommandResult result;
    result.stdout_text = measures_text(lambda);
    result.parameters = {{"kind", a.kind}, {"n", a.n}, {"k", a.k}};
    return result;
}

// optimize --------------------------------------------------------------------

struct OptimizeArgs {
    std::string state;
    std::string ansatz = "symmetric";
};

CommandResult run_optimize(const OptimizeArgs &a, const GlobalOptions &g) {
    const auto state = io::symmetric_state_from_json(io::read_json_file(a.state));
    const auto cfg = optimizer_config(g);
    OptimizerReport report;
    if (a.ansatz == "general") {
        const auto guard = g.guard_override ? static_cast<std::size_t>(*g.guard_override)
                                            : kGeneralMaxAmplitudes;
        report = maximize_general(symmetric_to_dense(state, std::max(guard, kDenseMaxAmplitudes)),
                                  cfg, guard);
    } else {
        report = maximize_symmetric(state, cfg);
    }

    CommandResult result;
    result.stdout_text = measures_text(report.lambda_max);
    result.stdout_text += std::string("converged ") + (report.converged ? "true" : "false") + "\n";
    result.stdout_text += "iterations " + std::to_string(report.iterations_used) + "\n";
    result.stdout_text += "restarts " + std::to_string(report.restarts_used) + "\n";
    write_output_file(g, result, io::to_json(report.maximizer).dump(2) + "\n");
    result.exit_code = report.converged ? kOk : kNotConverged;
    result.parameters = {{"state", a.state},          {"ansatz", a.ansatz},
                         {"restarts", cfg.restarts},  {"tol", cfg.tolerance},
                         {"max_iter", cfg.max_iterations}};
    return result;
}

// verify ----------------------------------------------------------------------

struct VerifyArgs {
    std::string target;
    int n = 3;
    int d = 2;
    int trials = 1000;
};

CommandResult run_verify(const VerifyArgs &a, const GlobalOptions &g) {
    SuiteParams params;
    params.n_min = params.n_max = a.n;
    params.d_min = params.d_max = a.d;
    params.trials = a.trials;
    params.seed = g.seed;

    SuiteSummary summary;
    bool proven = true;
    if (a.target == "cll") {
        summary = run_cll_suite(params);
    } else if (a.target == "averaging") {
        summary = run_averaging_suite(params);
    } else if (a.target == "maclaurin") {
        summary = run_maclaurin_suite(params);
    } else if (a.target == "probe") {
        summary = run_probe_suite(params, optimizer_config(g));
        proven = false;
    } else {
        summary = run_conjecture_suite(params, optimizer_config(g));
    }

    CommandResult result;
    std::string &out = result.stdout_text;
    out += "target " + a.target + "\n";
    out += "trials " + std::to_string(summary.trials) + "\n";
    out += "violations " + std::to_string(summary.violations) + "\n";
    out += "min_slack " + io::format_number(summary.min_slack) + "\n";
    out += "tight " + std::to_string(summary.tight_instances) + "\n";
    if (a.target == "probe") {
        out += "optimized_rhs_violations " + std::to_string(summary.secondary_violations) + "\n";
    }
    if (a.target == "conjecture") {
        out += "max_abs_gap " + io::format_number(summary.max_abs_gap) + "\n";
    }
    write_output_file(g, result, io::violations_to_jsonl(a.target, summary.violation_records));

    const int blocking = proven ? summary.violations : summary.secondary_violations;
    result.exit_code = blocking > 0 ? kInequalityViolated : kOk;
    result.parameters = {{"target", a.target}, {"n", a.n}, {"d", a.d}, {"trials", a.trials}};
    return result;
}

// sweep-wwbar -----------------------------------------------------------------

CommandResult run_sweep(int steps, const GlobalOptions &g) {
    if (g.output.empty()) {
        throw ValidationError("sweep-wwbar: --output is required");
    }
    CommandResult result;
    const auto points = ww_bar_sweep(steps);
    write_output_file(g, result, io::sweep_to_csv(points));
    result.stdout_text = "rows " + std::to_string(points.size()) + "\n";
    result.parameters = {{"steps", steps}};
    return result;
}

// manifest --------------------------------------------------------------------

void emit_manifest(const std::string &command, const CommandResult &result, const GlobalOptions &g,
                   double wall_seconds) {
    json params = result.parameters;
    params["output"] = g.output;
    if (g.guard_override) {
        params["guard_override"] = *g.guard_override;
    }
    const json manifest = {
        {"command", command},
        {"parameters", params},
        {"seed", g.seed},
        {"version", kVersion},
        {"wall_time_s", wall_seconds},
        {"exit_code", result.exit_code},
        {"output_checksum", io::checksum(result.stdout_text + result.file_text)},
    };
    if (g.manifest.empty()) {
        std::cerr << manifest.dump() << "\n";
    } else {
        io::write_text_file(g.manifest, manifest.dump(2) + "\n");
    }
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Matrix permanents and the geometric measure of entanglement of "
                 "permutation-invariant states"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kVersion);

    GlobalOptions g;
    app.add_option("--seed", g.seed, "Base RNG seed; restart/trial i uses seed + i");
    app.add_option("--tol", g.tol, "Optimizer tolerance on |delta Lambda|")->check(CLI::PositiveNumber);
    app.add_option("--max-iter", g.max_iter, "Optimizer iteration cap")->check(CLI::PositiveNumber);
    app.add_option("--restarts", g.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
    app.add_option("--guard-override", g.guard_override,
                   "Replace the size guard of the selected kernel (perm: max order or multiset "
                   "tuple count; optimize general: max dense amplitudes)");
    app.add_option("--output", g.output, "Output file (maximizer, violations, or sweep CSV)");
    app.add_option("--manifest", g.manifest, "Write the run manifest here instead of stderr");

    PermArgs perm;
    auto *perm_cmd = app.add_subcommand("perm", "Permanent of a matrix file");
    perm_cmd->fallthrough();
    perm_cmd->add_option("--input,input", perm.input, "ComplexMatrix or MultisetColumns JSON")->required();
    perm_cmd->add_option("--algorithm", perm.algorithm)
        ->check(CLI::IsMember({"naive", "ryser", "multiset", "multiset-ryser"}));

    LambdaArgs lambda;
    auto *lambda_cmd = app.add_subcommand("lambda", "Closed-form Lambda_max, E_sin2, E_log");
    lambda_cmd->fallthrough();
    lambda_cmd->add_option("--kind", lambda.kind)->check(CLI::IsMember({"dicke", "qubit"}));
    lambda_cmd->add_option("--n", lambda.n)->required();
    lambda_cmd->add_option("--k", lambda.k, "Composition parts (dicke) or excitation count (qubit)")
        ->required()
        ->delimiter(',');

    OptimizeArgs optimize;
    auto *optimize_cmd = app.add_subcommand("optimize", "Numerical Lambda_max of a symmetric state file");
    optimize_cmd->fallthrough();
    optimize_cmd->add_option("--state,state", optimize.state, "SymmetricState JSON")->required();
    optimize_cmd->add_option("--ansatz", optimize.ansatz)->check(CLI::IsMember({"symmetric", "general"}));

    VerifyArgs verify;
    auto *verify_cmd = app.add_subcommand("verify", "Randomized inequality / conjecture checks");
    verify_cmd->fallthrough();
    verify_cmd->add_option("--target", verify.target)
        ->required()
        ->check(CLI::IsMember({"cll", "averaging", "maclaurin", "probe", "conjecture"}));
    verify_cmd->add_option("--n", verify.n)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--d", verify.d)->check(CLI::PositiveNumber);
    verify_cmd->add_option("--trials", verify.trials)->check(CLI::PositiveNumber);

    int steps = 101;
    auto *sweep_cmd = app.add_subcommand("sweep-wwbar", "Tabulate Lambda over the WW-bar(s) family");
    sweep_cmd->fallthrough();
    sweep_cmd->add_option("--steps", steps);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInvalid;
    }

    const auto start = std::chrono::steady_clock::now();
    std::string command;
    CommandResult result;
    try {
        if (*perm_cmd) {
            command = "perm";
            result = run_perm(perm, g);
        } else if (*lambda_cmd) {
            command = "lambda";
            result = run_lambda(lambda, g);
        } else if (*optimize_cmd) {
            command = "optimize";
            result = run_optimize(optimize, g);
        } else if (*verify_cmd) {
            command = "verify";
            result = run_verify(verify, g);
        } else {
            command = "sweep-wwbar";
            result = run_sweep(steps, g);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    std::cout << result.stdout_text << std::flush;

    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    try {
        emit_manifest(command, result, g, wall);
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInvalid;
    }
    return result.exit_code;
}
