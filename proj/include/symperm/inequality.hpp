#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "symperm/geometric.hpp"
#include "symperm/permanent.hpp"
#include "symperm/symmetric.hpp"

namespace symperm {

/// Absolute slack tolerance used for both violation and equality detection.
inline constexpr double kInequalityTolerance = 1e-12;
/// Largest order for which the checkers compute exact permanents.
inline constexpr int kInequalityMaxOrder = 12;
inline constexpr int kMaclaurinMaxLength = 10;

struct InequalityRecord {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = true;
    double slack = 0.0;
    std::uint64_t instance_seed = 0;

    static InequalityRecord make(double lhs, double rhs, std::uint64_t seed = 0);
    /// Slack within tolerance of zero.
    bool tight() const { return std::abs(slack) <= kInequalityTolerance; }
};

/// |per(F)| <= n!/n^{n/2} prod ||f_i||_2 (Carlen-Lieb-Loss).
InequalityRecord check_cll(const ComplexMatrix &m, int max_order = kInequalityMaxOrder);

/// |<S(n,k)|phi>| <= sqrt(C_k) prod_{k_i != 0} abar_i^{k_i}.
InequalityRecord check_averaging_bound(const ProductState &p, const Composition &k);

/// (1/n!) sum_pi prod_{l <= k} x_{pi(l)} <= (mean x)^k, via elementary symmetric polynomials.
InequalityRecord check_maclaurin(std::span<const double> x, int k);

/// Candidate generalized permanent inequality for a superposition q, with two
/// choices of right-hand side: the averaged product state built from p, and the
/// best symmetric product state found by maximize_symmetric.
struct ProbeRecord {
    InequalityRecord averaged;
    InequalityRecord optimized;
};
ProbeRecord probe_general_inequality(const SymmetricState &q, const ProductState &p,
                                     const OptimizerConfig &cfg = {});

/// One failing random trial, enough to replay it from its seed.
struct TrialViolation {
    std::uint64_t seed = 0;
    int n = 0;
    int d = 0;
    std::vector<int> k;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct SuiteParams {
    int n_min = 2;
    int n_max = 2;
    int d_min = 2;
    int d_max = 2;
    int trials = 1000;
    std::uint64_t seed = 1;
};

struct SuiteSummary {
    int trials = 0;
    int violations = 0;
    /// Smallest rhs - lhs observed (for the conjecture suite: -max |gap|).
    double min_slack = 0.0;
    int tight_instances = 0;
    /// Probe only: violations of the optimized-rhs variant.
    int secondary_violations = 0;
    /// Conjecture only: largest |Lambda_general - Lambda_symmetric|.
    double max_abs_gap = 0.0;
    std::vector<TrialViolation> violation_records;
};

/// Trial t uses seed params.seed + t and cycles n (and d) through their ranges.
SuiteSummary run_cll_suite(const SuiteParams &params);
SuiteSummary run_averaging_suite(const SuiteParams &params);
SuiteSummary run_maclaurin_suite(const SuiteParams &params);
/// Violations are those of the averaged rhs; they are expected and only reported.
SuiteSummary run_probe_suite(const SuiteParams &params, const OptimizerConfig &cfg = {});
/// Random symmetric states, alternating nonnegative and U^{(x)n}-rotated
/// variants; a violation is |gap| > gap_tolerance.
SuiteSummary run_conjecture_suite(const SuiteParams &params, const OptimizerConfig &cfg = {},
                                  double gap_tolerance = 1e-6);

} // namespace symperm
