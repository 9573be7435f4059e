#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "symperm/permanent.hpp"
#include "symperm/symmetric.hpp"

namespace symperm {

/// maximize_general refuses dense states above this many amplitudes.
inline constexpr std::size_t kGeneralMaxAmplitudes = std::size_t{1} << 20;

struct OptimizerConfig {
    int max_iterations = 10000;
    /// Stop once |delta Lambda| over one iteration (or sweep) drops below this.
    double tolerance = 1e-10;
    int restarts = 20;
    /// Restart i draws its start point from seed + i.
    std::uint64_t seed = 1;

    /// Throws ValidationError unless max_iterations >= 1, tolerance > 0, restarts >= 1.
    void validate() const;
};

struct OptimizerReport {
    double lambda_max = 0.0;
    /// Best product state found. For the symmetric ansatz every row is identical.
    ProductState maximizer;
    /// Iterations (sweeps) taken by the winning restart.
    int iterations_used = 0;
    int restarts_used = 0;
    /// Whether the winning restart met the tolerance before max_iterations.
    bool converged = false;
    /// Lambda after each iteration of the winning restart, starting with the initial point.
    std::vector<double> lambda_history;
};

/// Distinct columns of A_k: v_i = (alpha_{1,i}, ..., alpha_{n,i}) with multiplicity k_i, k_i = 0 skipped.
MultisetColumns build_overlap_matrix(const ProductState &p, const Composition &k);

/// <S(n,k)|phi> = sqrt(C_k) / n! * per(A_k). No conjugate is applied to alpha.
Complex overlap_via_permanent(const ProductState &p, const Composition &k);

/// Closed-form Lambda_max of |S(n,k)>, evaluated in the log domain.
double lambda_closed_form(const Composition &k);
/// Qubit specialisation Lambda_max(n, k) = lambda_closed_form((k, n - k)).
double lambda_qubit(int n, int k);

double e_sin2(double lambda);
/// Throws DomainError for lambda <= 0.
double e_log(double lambda);

/// <alpha^{(x)n}|psi> evaluated on the symmetric coefficients.
Complex symmetric_product_overlap(const SymmetricState &s, std::span<const Complex> alpha);

/// |<phi|psi>| for an arbitrary product state against a dense state.
Complex product_overlap_dense(const ProductState &p, const DenseState &v);

/**
 * Lambda_max restricted to product states alpha^{(x)n}.
 *
 * Shifted higher-order power iteration: with g = <alpha^n|psi> and
 * G = dg/d(conj alpha) (psi contracted with n - 1 copies of alpha), the step is
 * alpha <- normalize(e^{-i arg g} G/|G| + alpha). Fixed points coincide with
 * the plain iteration alpha <- G/|G| up to global phase; the shift damps the
 * period-two oscillation the plain iteration shows on W-type states.
 */
OptimizerReport maximize_symmetric(const SymmetricState &s, const OptimizerConfig &cfg = {});

/**
 * Lambda_max over all product states by alternating single-party updates.
 * Each update replaces one row with the normalized contraction of psi against
 * the other rows, so Lambda never decreases within a restart. Makes no use of
 * permutation symmetry.
 */
OptimizerReport maximize_general(const DenseState &v, const OptimizerConfig &cfg = {},
                                 std::size_t max_amplitudes = kGeneralMaxAmplitudes);

/// Lambda_general - Lambda_symmetric for a symmetric state.
double conjecture_gap(const SymmetricState &s, const OptimizerConfig &cfg = {},
                      std::size_t max_amplitudes = kGeneralMaxAmplitudes);

} // namespace symperm
