// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fail.

#include <sys/wait.h>

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "symperm/families.hpp"
#include "symperm/geometric.hpp"
#include "symperm/inequality.hpp"
#include "symperm/permanent.hpp"
#include "symperm/random.hpp"
#include "symperm/symmetric.hpp"

using namespace symperm;

namespace {

namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

struct Outcome {
    bool pass = true;
    std::string detail;
};

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string fmt(const char *format, double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, format, x);
    return buf;
}

// Tracks the largest error against a bound and records the first failure.
struct ErrorTracker {
    double bound;
    double worst = 0.0;
    std::string first_failure;
    void add(double err, const std::string &where) {
        if (!(err <= bound) && first_failure.empty()) {
            first_failure = where + " err " + fmt("%.3g", err);
        }
        worst = std::max(worst, std::isnan(err) ? std::numeric_limits<double>::infinity() : err);
    }
    bool ok() const { return first_failure.empty(); }
    std::string summary() const {
        return "max err " + fmt("%.3g", worst) + (ok() ? "" : "; first failure: " + first_failure);
    }
};

std::string label(const Composition &k) {
    std::string out = "(";
    for (int i = 0; i < k.d(); ++i) {
        out += (i ? "," : "") + std::to_string(k[i]);
    }
    return out + ")";
}

Outcome closed_form_values() {
    ErrorTracker err{1e-12};
    err.add(std::abs(lambda_closed_form({2, 1}) - 2.0 / 3.0), "(2,1)");
    err.add(std::abs(lambda_closed_form({1, 2}) - 2.0 / 3.0), "(1,2)");
    err.add(std::abs(lambda_closed_form({2, 0, 0, 1}) - 2.0 / 3.0), "(2,0,0,1)");
    err.add(std::abs(lambda_closed_form({1, 1, 1, 0}) - std::sqrt(2.0) / 3.0), "(1,1,1,0)");
    err.add(std::abs(lambda_qubit(3, 2) - 2.0 / 3.0), "qubit(3,2)");
    return {err.ok(), err.summary()};
}

Outcome ghz_optimizers() {
    const auto start = Clock::now();
    const OptimizerConfig cfg;
    ErrorTracker err{1e-8};
    err.add(std::abs(maximize_symmetric(ghz(3), cfg).lambda_max - 1.0 / std::numbers::sqrt2), "symmetric");
    err.add(std::abs(maximize_general(symmetric_to_dense(ghz(3)), cfg).lambda_max - 1.0 / std::numbers::sqrt2),
            "general");
    const double t = seconds_since(start);
    return {err.ok() && t < 1.0, err.summary() + ", " + fmt("%.2f s", t) + " (limit 1 s)"};
}

Outcome three_way_agreement() {
    const auto start = Clock::now();
    const OptimizerConfig cfg;
    ErrorTracker err{1e-6};
    int states = 0;
    for (int n = 1; n <= 8; ++n) {
        for (int d = 1; d <= 4; ++d) {
            for (const auto &k : compositions(n, d)) {
                const auto s = SymmetricState::basis(k);
                const double closed = lambda_closed_form(k);
                const double sym = maximize_symmetric(s, cfg).lambda_max;
                const double gen = maximize_general(symmetric_to_dense(s), cfg).lambda_max;
                const auto where = label(k);
                err.add(std::abs(closed - sym), where + " closed/symmetric");
                err.add(std::abs(closed - gen), where + " closed/general");
                err.add(std::abs(sym - gen), where + " symmetric/general");
                ++states;
            }
        }
    }
    const double t = seconds_since(start);
    return {err.ok() && t < 120.0,
            std::to_string(states) + " states, " + err.summary() + ", " + fmt("%.1f s", t) + " (limit 120 s)"};
}

Outcome permanent_identity() {
    const auto start = Clock::now();
    ErrorTracker err{1e-10};
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng(1000 + trial);
        const int n = 1 + trial % 7;
        const int d = 1 + (trial / 7) % 4;
        const auto p = random_product_state(rng, n, d);
        const auto all = compositions(n, d);
        const auto &k = all[rng() % all.size()];
        // <S(n,k)|phi>: Dicke amplitudes are real.
        const auto dicke = dicke_dense(k);
        const auto phi = product_to_dense(p);
        Complex dense = 0.0;
        for (std::size_t i = 0; i < phi.size(); ++i) {
            dense += dicke[i] * phi[i];
        }
        err.add(std::abs(overlap_via_permanent(p, k) - dense), "trial " + std::to_string(trial));
    }
    const double t = seconds_since(start);
    return {err.ok() && t < 30.0, "500 pairs, " + err.summary() + ", " + fmt("%.2f s", t) + " (limit 30 s)"};
}

Outcome kernel_oracles() {
    const auto start = Clock::now();
    ErrorTracker ryser{1e-10};
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng(2000 + trial);
        const int n = 1 + trial % 7;
        std::normal_distribution<double> gauss;
        std::vector<Complex> entries(static_cast<std::size_t>(n) * n);
        for (auto &z : entries) {
            z = {gauss(rng), gauss(rng)};
        }
        const ComplexMatrix m(n, entries);
        const Complex naive = permanent_naive(m);
        ryser.add(std::abs(permanent_ryser(m) - naive) / std::abs(naive), "ryser trial " + std::to_string(trial));
    }
    ErrorTracker multiset{1e-10};
    for (int trial = 0; trial < 500; ++trial) {
        Rng rng(3000 + trial);
        const int n = 1 + trial % 10;
        std::uniform_int_distribution<int> pick_d(1, n);
        const int d = pick_d(rng);
        const auto all = compositions(n, d);
        const auto &k = all[rng() % all.size()];
        std::vector<RepeatedColumn> columns;
        for (int i = 0; i < d; ++i) {
            if (k[i] > 0) {
                columns.push_back({random_unit_vector(rng, n), k[i]});
            }
        }
        const MultisetColumns cols(n, columns);
        const Complex expanded = permanent_ryser(expand_multiset(cols));
        multiset.add(std::abs(permanent_multiset(cols) - expanded) / std::abs(expanded),
                     "multiset trial " + std::to_string(trial));
    }
    const double t = seconds_since(start);
    return {ryser.ok() && multiset.ok() && t < 60.0,
            "ryser/naive " + ryser.summary() + "; multiset/expanded " + multiset.summary() + ", " +
                fmt("%.2f s", t) + " (limit 60 s)"};
}

Outcome inequality_suites() {
    const auto start = Clock::now();
    SuiteParams cll;
    cll.n_min = 2;
    cll.n_max = 8;
    cll.trials = 10000;
    cll.seed = 40000;
    SuiteParams averaging;
    averaging.n_min = 1;
    averaging.n_max = 8;
    averaging.d_min = 1;
    averaging.d_max = 4;
    averaging.trials = 10000;
    averaging.seed = 50000;
    SuiteParams maclaurin = averaging;
    maclaurin.seed = 60000;
    const auto a = run_cll_suite(cll);
    const auto b = run_averaging_suite(averaging);
    const auto c = run_maclaurin_suite(maclaurin);

    // Extremal instances where each bound is attained.
    double extremal = 0.0;
    for (int n = 2; n <= 8; ++n) {
        extremal = std::max(extremal,
                            std::abs(check_cll(ComplexMatrix::filled(n, 1.0 / std::sqrt(double(n)))).slack));
        const std::vector<double> equal(n, 0.5);
        for (int k = 1; k <= n; ++k) {
            extremal = std::max(extremal, std::abs(check_maclaurin(equal, k).slack));
        }
        Rng rng(70000 + n);
        const auto alpha = random_nonnegative_unit(rng, 3);
        const auto p = ProductState::uniform({alpha[0], alpha[1], alpha[2]}, n);
        for (const auto &k : compositions(n, 3)) {
            extremal = std::max(extremal, std::abs(check_averaging_bound(p, k).slack));
        }
    }
    const double t = seconds_since(start);
    const bool ok = a.violations == 0 && b.violations == 0 && c.violations == 0 && extremal <= 1e-12 && t < 300.0;
    return {ok, "violations cll " + std::to_string(a.violations) + "/" + std::to_string(a.trials) + ", averaging " +
                    std::to_string(b.violations) + "/" + std::to_string(b.trials) + ", maclaurin " +
                    std::to_string(c.violations) + "/" + std::to_string(c.trials) + "; extremal max |slack| " +
                    fmt("%.3g", extremal) + ", " + fmt("%.1f s", t) + " (limit 300 s)"};
}

Outcome conjecture_gap_suite() {
    const auto start = Clock::now();
    SuiteParams params;
    params.n_min = params.n_max = 3;
    params.d_min = 2;
    params.d_max = 3;
    params.trials = 200;
    params.seed = 80000;
    const auto summary = run_conjecture_suite(params, OptimizerConfig{}, 1e-6);
    const double t = seconds_since(start);
    return {summary.violations == 0 && t < 180.0,
            "200 states, max |gap| " + fmt("%.3g", summary.max_abs_gap) + ", " + fmt("%.1f s", t) +
                " (limit 180 s)"};
}

Outcome ww_bar_family() {
    const auto start = Clock::now();
    const auto points = ww_bar_sweep(101);
    ErrorTracker endpoints{1e-9}, reflection{1e-9}, residual{1e-10}, general{1e-6};
    endpoints.add(std::abs(points.front().lambda_max - 2.0 / 3.0), "s=0");
    endpoints.add(std::abs(points.back().lambda_max - 2.0 / 3.0), "s=1");
    bool bracketed = true;
    double prefactor_ulps = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto &p = points[i];
        reflection.add(std::abs(p.lambda_max - points[points.size() - 1 - i].lambda_max), "i=" + std::to_string(i));
        residual.add(std::abs(ww_bar_cubic(p.s, p.tan_theta)), "i=" + std::to_string(i));
        bracketed = bracketed && p.tan_theta >= 1.0 / std::numbers::sqrt2 && p.tan_theta <= std::numbers::sqrt2;
        const double scaled = p.lambda_max / std::sqrt(3.0);
        prefactor_ulps = std::max(prefactor_ulps, std::abs(p.lambda_paper_prefactor - scaled) /
                                                      (std::numeric_limits<double>::epsilon() * scaled));
    }
    const OptimizerConfig cfg;
    for (int i = 0; i <= 10; ++i) {
        const auto &p = points[10 * i];
        general.add(std::abs(maximize_general(symmetric_to_dense(ww_bar(p.s)), cfg).lambda_max - p.lambda_max),
                    "s=" + fmt("%.1f", p.s));
    }
    // The prefactor column is evaluated from its own expression, so equality holds to rounding.
    const bool prefactor_ok = prefactor_ulps <= 4.0;
    const double t = seconds_since(start);
    const bool ok = endpoints.ok() && reflection.ok() && residual.ok() && bracketed && general.ok() &&
                    prefactor_ok && t < 60.0;
    return {ok, "endpoints " + endpoints.summary() + "; reflection " + reflection.summary() + "; cubic residual " +
                    residual.summary() + "; tan in bracket " + (bracketed ? "yes" : "no") + "; general optimizer " +
                    general.summary() + "; prefactor column vs direct/sqrt3 " + fmt("%.1f ulp", prefactor_ulps) +
                    ", " + fmt("%.2f s", t) + " (limit 60 s)"};
}

Outcome scale_behavior() {
    using Big = boost::multiprecision::cpp_bin_float_50;

    // per of 50 copies of a and 50 copies of b with constant vectors is 100! a^50 b^50.
    const double a = 0.6, b = 0.8;
    const MultisetColumns constant(100, {{std::vector<Complex>(100, a), 50}, {std::vector<Complex>(100, b), 50}});
    auto start = Clock::now();
    const Complex value = permanent_multiset(constant);
    const double t_constant = seconds_since(start);
    const Big exact = boost::multiprecision::exp(boost::multiprecision::lgamma(Big(101)) +
                                                 50 * boost::multiprecision::log(Big(a)) +
                                                 50 * boost::multiprecision::log(Big(b)));
    const double perm_rel = std::abs(value - exact.convert_to<double>()) / exact.convert_to<double>();

    Rng rng(90000);
    const MultisetColumns random(100, {{random_unit_vector(rng, 100), 37}, {random_unit_vector(rng, 100), 63}});
    start = Clock::now();
    const Complex random_value = permanent_multiset(random);
    const double t_random = seconds_since(start);

    // Lambda((50,50)) = sqrt(100!/(50!)^2) (1/2)^50, evaluated in 50 digits.
    const Big log_lambda = 0.5 * (boost::multiprecision::lgamma(Big(101)) - 2 * boost::multiprecision::lgamma(Big(51))) +
                           100 * boost::multiprecision::log(Big(0.5)) / 2;
    const double reference = boost::multiprecision::exp(log_lambda).convert_to<double>();
    const double lambda = lambda_closed_form({50, 50});
    const double lambda_rel = std::abs(lambda - reference) / reference;

    const bool ok = t_constant < 1.0 && t_random < 1.0 && std::isfinite(random_value.real()) &&
                    std::isfinite(random_value.imag()) && perm_rel < 1e-9 && std::isfinite(lambda) &&
                    lambda_rel <= 1e-9;
    return {ok, "n=100 multiset " + fmt("%.3f s", t_constant) + " / " + fmt("%.3f s", t_random) +
                    " (limit 1 s), constant-column rel err " + fmt("%.3g", perm_rel) + "; Lambda(50,50) = " +
                    fmt("%.16g", lambda) + ", rel err vs 50-digit lgamma " + fmt("%.3g", lambda_rel)};
}

struct CliRun {
    int exit_code = -1;
    std::string out;
};

CliRun run_cli(const std::string &args) {
    const std::string cmd = std::string(SYMPERM_CLI_PATH) + " " + args + " 2>/dev/null";
    CliRun r;
    FILE *pipe = popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        return r;
    }
    std::array<char, 4096> buf{};
    std::size_t got = 0;
    while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        r.out.append(buf.data(), got);
    }
    const int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

std::string slurp(const fs::path &p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Outcome cli_determinism() {
    const auto dir = fs::temp_directory_path() / ("symperm_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    const auto state = (dir / "state.json").string();
    std::ofstream(state) << R"({"n": 3, "d": 3, "terms": [{"k": [2, 1, 0], "coeff": [0.6, 0]}, )"
                         << R"({"k": [0, 1, 2], "coeff": [0, 0.8]}]})";
    const std::vector<std::string> commands{
        "--seed 7 optimize " + state + " --ansatz general",
        "--seed 7 optimize " + state + " --ansatz symmetric",
        "--seed 7 verify --target probe --n 3 --d 2 --trials 20",
        "--seed 7 verify --target conjecture --n 3 --d 3 --trials 4",
        "--seed 7 verify --target averaging --n 6 --d 3 --trials 500",
        "sweep-wwbar --steps 101",
        "lambda --n 4 --k 2,1,1",
    };
    int identical = 0;
    std::string mismatch;
    for (const auto &args : commands) {
        const auto first = run_cli("--output " + (dir / "a").string() + " " + args);
        const auto second = run_cli("--output " + (dir / "b").string() + " " + args);
        const bool same = first.exit_code == 0 && second.exit_code == 0 && first.out == second.out &&
                          slurp(dir / "a") == slurp(dir / "b");
        identical += same ? 1 : 0;
        if (!same && mismatch.empty()) {
            mismatch = "; first mismatch: " + args;
        }
    }
    fs::remove_all(dir);
    const int total = static_cast<int>(commands.size());
    return {identical == total,
            std::to_string(identical) + "/" + std::to_string(total) + " commands byte-identical" + mismatch};
}

} // namespace

int main() {
    const std::vector<std::pair<const char *, std::function<Outcome()>>> criteria{
        {"closed-form values", closed_form_values},
        {"GHZ optimizers", ghz_optimizers},
        {"closed form / symmetric / general agreement on Dicke states", three_way_agreement},
        {"permanent overlap identity", permanent_identity},
        {"permanent kernel oracles", kernel_oracles},
        {"inequality suites", inequality_suites},
        {"symmetric optimum equals general optimum", conjecture_gap_suite},
        {"WW-bar family", ww_bar_family},
        {"scale behavior", scale_behavior},
        {"CLI determinism", cli_determinism},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome outcome;
        try {
            outcome = criteria[i].second();
        } catch (const std::exception &e) {
            outcome = {false, std::string("exception: ") + e.what()};
        }
        failures += outcome.pass ? 0 : 1;
        std::printf("%s %2zu %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].first,
                    outcome.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
