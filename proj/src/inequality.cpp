#include "symperm/inequality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "symperm/error.hpp"
#include "symperm/parallel.hpp"
#include "symperm/random.hpp"

namespace symperm {

namespace {

// The trial outcome before aggregation.
struct Trial {
    InequalityRecord record;
    InequalityRecord secondary;
    bool has_secondary = false;
    int n = 0;
    int d = 0;
    std::vector<int> k;
};

int cycle(int lo, int hi, std::size_t t) {
    return lo + static_cast<int>(t % static_cast<std::size_t>(hi - lo + 1));
}

void validate(const SuiteParams &params) {
    if (params.trials < 1 || params.n_min < 1 || params.n_max < params.n_min ||
        params.d_min < 1 || params.d_max < params.d_min) {
        throw ValidationError("suite: need trials >= 1 and nonempty n, d ranges");
    }
}

SuiteSummary aggregate(const std::vector<Trial> &trials) {
    SuiteSummary summary;
    summary.trials = static_cast<int>(trials.size());
    summary.min_slack = std::numeric_limits<double>::infinity();
    for (const auto &t : trials) {
        summary.min_slack = std::min(summary.min_slack, t.record.slack);
        if (t.record.tight()) {
            ++summary.tight_instances;
        }
        if (!t.record.holds) {
            ++summary.violations;
            summary.violation_records.push_back(
                {t.record.instance_seed, t.n, t.d, t.k, t.record.lhs, t.record.rhs});
        }
        if (t.has_secondary && !t.secondary.holds) {
            ++summary.secondary_violations;
        }
    }
    return summary;
}

Composition random_composition(Rng &rng, int n, int d) {
    const auto all = compositions(n, d);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    return all[pick(rng)];
}

} // namespace

InequalityRecord InequalityRecord::make(double lhs, double rhs, std::uint64_t seed) {
    InequalityRecord r;
    r.lhs = lhs;
    r.rhs = rhs;
    r.slack = rhs - lhs;
    r.holds = lhs <= rhs + kInequalityTolerance;
    r.instance_seed = seed;
    return r;
}

InequalityRecord check_cll(const ComplexMatrix &m, int max_order) {
    const int n = m.order();
    if (n > max_order) {
        throw SizeLimitError("check_cll: order " + std::to_string(n) + " exceeds guard " +
                             std::to_string(max_order));
    }
    const double lhs = std::abs(permanent_ryser_extended(m, max_order));
    // n! / n^{n/2} in the log domain.
    double rhs = std::exp(std::lgamma(n + 1.0) - 0.5 * n * std::log(static_cast<double>(n)));
    for (int c = 0; c < n; ++c) {
        double norm2 = 0.0;
        for (int r = 0; r < n; ++r) {
            norm2 += std::norm(m(r, c));
        }
        rhs *= std::sqrt(norm2);
    }
    return InequalityRecord::make(lhs, rhs);
}

InequalityRecord check_averaging_bound(const ProductState &p, const Composition &k) {
    if (k.n() > kInequalityMaxOrder) {
        throw SizeLimitError("check_averaging_bound: n exceeds " +
                             std::to_string(kInequalityMaxOrder));
    }
    const double lhs = std::abs(overlap_via_permanent(p, k));
    const auto alpha_bar = averaged_amplitudes(p);
    double rhs = std::exp(0.5 * log_multinomial(k));
    for (int i = 0; i < k.d(); ++i) {
        if (k[i] != 0) {
            rhs *= std::pow(alpha_bar[i], k[i]);
        }
    }
    return InequalityRecord::make(lhs, rhs);
}

InequalityRecord check_maclaurin(std::span<const double> x, int k) {
    const int n = static_cast<int>(x.size());
    if (k < 1 || k > n) {
        throw ValidationError("check_maclaurin: need 1 <= k <= n");
    }
    if (n > kMaclaurinMaxLength) {
        throw SizeLimitError("check_maclaurin: n exceeds " + std::to_string(kMaclaurinMaxLength));
    }
    double mean = 0.0;
    for (double xi : x) {
        if (!(xi >= 0.0) || !std::isfinite(xi)) {
            throw ValidationError("check_maclaurin: entries must be finite and nonnegative");
        }
        mean += xi;
    }
    mean /= n;

    // e[j] = elementary symmetric polynomial of degree j; the permutation
    // average of prod_{l <= k} x_{pi(l)} equals e_k / C(n, k).
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (double xi : x) {
        for (int j = k; j >= 1; --j) {
            e[j] += xi * e[j - 1];
        }
    }
    double binom = 1.0;
    for (int j = 1; j <= k; ++j) {
        binom = binom * (n - k + j) / j;
    }
    return InequalityRecord::make(e[k] / binom, std::pow(mean, k));
}

ProbeRecord probe_general_inequality(const SymmetricState &q, const ProductState &p,
                                     const OptimizerConfig &cfg) {
    if (q.n() != p.n() || q.d() != p.d()) {
        throw ValidationError("probe_general_inequality: shape mismatch");
    }
    if (q.n() > kMaclaurinMaxLength) {
        throw SizeLimitError("probe_general_inequality: n exceeds " +
                             std::to_string(kMaclaurinMaxLength));
    }
    // |<psi|phi>| = |sum_k conj(q_k) sqrt(C_k)/n! per(A_k)|.
    Complex overlap = 0.0;
    for (const auto &[k, c] : q.terms()) {
        overlap += std::conj(c) * overlap_via_permanent(p, k);
    }
    const double lhs = std::abs(overlap);

    const auto averaged_state = symmetric_product_state(averaged_amplitudes(p), q.n());
    const double rhs_averaged = std::abs(overlap_symmetric(q, averaged_state));
    const double rhs_optimized = maximize_symmetric(q, cfg).lambda_max;
    return {InequalityRecord::make(lhs, rhs_averaged), InequalityRecord::make(lhs, rhs_optimized)};
}

SuiteSummary run_cll_suite(const SuiteParams &params) {
    validate(params);
    std::vector<Trial> trials(params.trials);
    parallel_for(trials.size(), [&](std::size_t t) {
        const std::uint64_t seed = params.seed + t;
        Rng rng(seed);
        const int n = cycle(params.n_min, params.n_max, t);
        trials[t].n = n;
        trials[t].d = n;
        trials[t].record = check_cll(random_unit_column_matrix(rng, n));
        trials[t].record.instance_seed = seed;
    });
    return aggregate(trials);
}

SuiteSummary run_averaging_suite(const SuiteParams &params) {
    validate(params);
    std::vector<Trial> trials(params.trials);
    parallel_for(trials.size(), [&](std::size_t t) {
        const std::uint64_t seed = params.seed + t;
        Rng rng(seed);
        const int n = cycle(params.n_min, params.n_max, t);
        const int d = cycle(params.d_min, params.d_max, t / static_cast<std::size_t>(params.n_max - params.n_min + 1));
        const auto p = random_product_state(rng, n, d);
        const auto k = random_composition(rng, n, d);
        trials[t].n = n;
        trials[t].d = d;
        trials[t].k = k.parts();
        trials[t].record = check_averaging_bound(p, k);
        trials[t].record.instance_seed = seed;
    });
    return aggregate(trials);
}

SuiteSummary run_maclaurin_suite(const SuiteParams &params) {
    validate(params);
    std::vector<Trial> trials(params.trials);
    parallel_for(trials.size(), [&](std::size_t t) {
        const std::uint64_t seed = params.seed + t;
        Rng rng(seed);
        const int n = cycle(params.n_min, params.n_max, t);
        std::uniform_real_distribution<double> uniform(0.0, 1.0);
        std::vector<double> x(n);
        for (auto &xi : x) {
            xi = uniform(rng);
        }
        std::uniform_int_distribution<int> pick_k(1, n);
        const int k = pick_k(rng);
        trials[t].n = n;
        trials[t].d = 1;
        trials[t].k = {k};
        trials[t].record = check_maclaurin(x, k);
        trials[t].record.instance_seed = seed;
    });
    return aggregate(trials);
}

SuiteSummary run_probe_suite(const SuiteParams &params, const OptimizerConfig &cfg) {
    validate(params);
    std::vector<Trial> trials(params.trials);
    for (std::size_t t = 0; t < trials.size(); ++t) {
        // maximize_symmetric already parallelizes its restarts.
        const std::uint64_t seed = params.seed + t;
        Rng rng(seed);
        const int n = cycle(params.n_min, params.n_max, t);
        const int d = cycle(params.d_min, params.d_max, t / static_cast<std::size_t>(params.n_max - params.n_min + 1));
        const auto q = random_symmetric_state(rng, n, d, false);
        const auto p = random_product_state(rng, n, d);
        OptimizerConfig trial_cfg = cfg;
        trial_cfg.seed = cfg.seed + t * static_cast<std::uint64_t>(cfg.restarts);
        const auto probe = probe_general_inequality(q, p, trial_cfg);
        trials[t].n = n;
        trials[t].d = d;
        trials[t].record = probe.averaged;
        trials[t].record.instance_seed = seed;
        trials[t].secondary = probe.optimized;
        trials[t].has_secondary = true;
    }
    return aggregate(trials);
}

SuiteSummary run_conjecture_suite(const SuiteParams &params, const OptimizerConfig &cfg,
                                  double gap_tolerance) {
    validate(params);
    SuiteSummary summary;
    summary.trials = params.trials;
    summary.min_slack = std::numeric_limits<double>::infinity();
    for (int t = 0; t < params.trials; ++t) {
        const std::uint64_t seed = params.seed + static_cast<std::uint64_t>(t);
        Rng rng(seed);
        const int n = cycle(params.n_min, params.n_max, t);
        const int d = cycle(params.d_min, params.d_max, t / static_cast<std::size_t>(params.n_max - params.n_min + 1));
        SymmetricState state = random_symmetric_state(rng, n, d, true);
        // Alternate variants per full (n, d) cycle so every shape sees both.
        const int shapes = (params.n_max - params.n_min + 1) * (params.d_max - params.d_min + 1);
        if ((t / shapes) % 2 == 1) {
            state = apply_symmetric_unitary(state, random_unitary(rng, d));
        }
        OptimizerConfig trial_cfg = cfg;
        trial_cfg.seed = cfg.seed + static_cast<std::uint64_t>(t) * cfg.restarts;
        const double gap = conjecture_gap(state, trial_cfg);
        summary.max_abs_gap = std::max(summary.max_abs_gap, std::abs(gap));
        summary.min_slack = std::min(summary.min_slack, -std::abs(gap));
        if (std::abs(gap) > gap_tolerance) {
            ++summary.violations;
            std::vector<int> shape;
            summary.violation_records.push_back({seed, n, d, shape, std::abs(gap), gap_tolerance});
        }
    }
    return summary;
}

} // namespace symperm
