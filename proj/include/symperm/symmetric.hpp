#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "symperm/permanent.hpp"

namespace symperm {

/// Tolerance on unit norms enforced by the state types.
inline constexpr double kNormTolerance = 1e-12;
/// Coefficients below this magnitude are dropped after transforms.
inline constexpr double kDropThreshold = 1e-15;
/// Dense operations are refused above this many amplitudes (d^n).
inline constexpr std::size_t kDenseMaxAmplitudes = std::size_t{1} << 24;

/**
 * Occupation vector (k_1, ..., k_d): k_i parties sit in level i.
 * Invariant: d >= 1, every k_i >= 0, n = sum k_i >= 1.
 */
class Composition {
public:
    Composition() = default;
    explicit Composition(std::vector<int> parts);
    Composition(std::initializer_list<int> parts) : Composition(std::vector<int>(parts)) {}

    int n() const noexcept { return n_; }
    int d() const noexcept { return static_cast<int>(parts_.size()); }
    int operator[](int i) const { return parts_[i]; }
    const std::vector<int> &parts() const noexcept { return parts_; }

    friend bool operator==(const Composition &a, const Composition &b) { return a.parts_ == b.parts_; }
    friend std::strong_ordering operator<=>(const Composition &a, const Composition &b) {
        return a.parts_ <=> b.parts_;
    }

private:
    std::vector<int> parts_;
    int n_ = 0;
};

/// Compositions of n into d parts, lexicographically descending in k_1:
/// (3,0), (2,1), (1,2), (0,3).
std::vector<Composition> compositions(int n, int d);

/// Number of compositions of n into d parts, C(n + d - 1, d - 1).
std::uint64_t composition_count(int n, int d);

/// Position of k within compositions(k.n(), k.d()).
std::size_t composition_rank(const Composition &k);

/// n! / prod k_i!, exact. Throws SizeLimitError if it does not fit in 64 bits.
std::uint64_t multinomial(const Composition &k);

/// log(n! / prod k_i!) via lgamma; usable for any n.
double log_multinomial(const Composition &k);

/// d^n, throwing SizeLimitError when it exceeds max_amplitudes.
std::size_t dense_dimension(int n, int d, std::size_t max_amplitudes = kDenseMaxAmplitudes);

/// Occupation counts of a computational-basis index (base-d digits, party 1 most significant).
std::vector<int> occupation_of_index(std::size_t index, int n, int d);

/// Composition-keyed coefficient map, ordered like compositions().
using CoefficientMap = std::map<Composition, Complex, std::greater<>>;

/**
 * Permutation-invariant pure state sum_k q_k |S(n, k)>.
 * Invariant: all keys share (n, d); sum |q_k|^2 = 1 within kNormTolerance.
 */
class SymmetricState {
public:
    SymmetricState() = default;
    SymmetricState(int n, int d, CoefficientMap terms);

    /// Scales the coefficients to unit norm; throws ValidationError on a zero vector.
    static SymmetricState normalized(int n, int d, CoefficientMap terms);
    /// Single basis state |S(n, k)>.
    static SymmetricState basis(const Composition &k);

    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    const CoefficientMap &terms() const noexcept { return terms_; }
    Complex coefficient(const Composition &k) const;

private:
    int n_ = 0;
    int d_ = 0;
    CoefficientMap terms_;
};

/// Amplitudes over the d^n computational basis, unit L2 norm.
class DenseState {
public:
    DenseState() = default;
    DenseState(int n, int d, std::vector<Complex> amplitudes);
    static DenseState normalized(int n, int d, std::vector<Complex> amplitudes);

    int n() const noexcept { return n_; }
    int d() const noexcept { return d_; }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    const Complex &operator[](std::size_t i) const { return amplitudes_[i]; }

private:
    int n_ = 0;
    int d_ = 0;
    std::vector<Complex> amplitudes_;
};

/**
 * Product state, one row of d amplitudes per party.
 * Invariant: every row has unit L2 norm within kNormTolerance.
 */
class ProductState {
public:
    ProductState() = default;
    explicit ProductState(std::vector<std::vector<Complex>> rows);
    static ProductState normalized(std::vector<std::vector<Complex>> rows);
    /// n copies of the same single-party vector.
    static ProductState uniform(std::vector<Complex> row, int n);

    int n() const noexcept { return static_cast<int>(rows_.size()); }
    int d() const noexcept { return rows_.empty() ? 0 : static_cast<int>(rows_.front().size()); }
    const std::vector<std::vector<Complex>> &rows() const noexcept { return rows_; }
    const Complex &operator()(int party, int level) const { return rows_[party][level]; }

private:
    std::vector<std::vector<Complex>> rows_;
};

DenseState dicke_dense(const Composition &k, std::size_t max_amplitudes = kDenseMaxAmplitudes);
DenseState symmetric_to_dense(const SymmetricState &s,
                              std::size_t max_amplitudes = kDenseMaxAmplitudes);
DenseState product_to_dense(const ProductState &p,
                            std::size_t max_amplitudes = kDenseMaxAmplitudes);

/// <a|b>, conjugate-linear in a.
Complex overlap_dense(const DenseState &a, const DenseState &b);
/// <a|b> computed in the symmetric basis.
Complex overlap_symmetric(const SymmetricState &a, const SymmetricState &b);

/// Coefficients <S(n,k)|v> of an arbitrary dense vector plus the norm of the
/// part of v outside the symmetric subspace.
struct SymmetricProjection {
    CoefficientMap coefficients;
    double residual_norm = 0.0;
};
SymmetricProjection project_to_symmetric(std::span<const Complex> amplitudes, int n, int d);

/// Largest entry of |U^dagger U - I|.
double unitarity_defect(const ComplexMatrix &u);

/**
 * Coefficients of U^{(x)n} |psi> in the symmetric basis, computed by dense
 * expansion and projection. U acts as U|j> = sum_i U(i, j) |i>. Throws
 * ValidationError if U is not unitary to 1e-10 and InternalError if the image
 * leaks out of the symmetric subspace by more than 1e-10.
 */
SymmetricState apply_symmetric_unitary(const SymmetricState &s, const ComplexMatrix &u,
                                       std::size_t max_amplitudes = kDenseMaxAmplitudes);

/// abar_l = sqrt(mean_j |alpha_{j,l}|^2).
std::vector<double> averaged_amplitudes(const ProductState &p);

/// (sum_l abar_l |l>)^{(x)n} in the symmetric basis: coefficients sqrt(C) prod abar_i^{k_i}.
SymmetricState symmetric_product_state(std::span<const double> alpha_bar, int n);

} // namespace symperm
