#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace symperm {

using Complex = std::complex<double>;

/// Default order guards. All are overridable per call (and via the CLI).
inline constexpr int kNaiveMaxOrder = 10;
inline constexpr int kRyserMaxOrder = 30;
/// Upper bound on the number of multiplicity tuples prod(k_i + 1) visited by
/// the multiset kernels.
inline constexpr std::size_t kMultisetMaxTuples = std::size_t{1} << 26;

/**
 * Dense square complex matrix, row-major. Construction checks that the entry
 * count is order^2 and that every entry is finite.
 */
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(int order, std::vector<Complex> entries);

    static ComplexMatrix identity(int order);
    static ComplexMatrix filled(int order, Complex value);
    /// Builds from nested rows; every row must have rows.size() entries.
    static ComplexMatrix from_rows(const std::vector<std::vector<Complex>> &rows);
    /// Builds from columns (the natural layout for A_k and CLL matrices).
    static ComplexMatrix from_columns(const std::vector<std::vector<Complex>> &columns);

    int order() const noexcept { return order_; }
    const Complex &operator()(int row, int col) const { return entries_[index(row, col)]; }
    Complex &operator()(int row, int col) { return entries_[index(row, col)]; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    std::vector<Complex> column(int col) const;
    ComplexMatrix with_permuted_columns(std::span<const int> perm) const;
    ComplexMatrix with_permuted_rows(std::span<const int> perm) const;

    friend bool operator==(const ComplexMatrix &, const ComplexMatrix &) = default;

private:
    std::size_t index(int row, int col) const noexcept {
        return static_cast<std::size_t>(row) * static_cast<std::size_t>(order_) +
               static_cast<std::size_t>(col);
    }

    int order_ = 0;
    std::vector<Complex> entries_;
};

/// A distinct column vector together with how many times it repeats.
struct RepeatedColumn {
    std::vector<Complex> vector;
    int multiplicity = 0;

    friend bool operator==(const RepeatedColumn &, const RepeatedColumn &) = default;
};

/**
 * Square matrix described by its distinct columns and their multiplicities.
 * Invariant: every vector has length `dimension` and the multiplicities are
 * positive and sum to `dimension`.
 */
class MultisetColumns {
public:
    MultisetColumns() = default;
    MultisetColumns(int dimension, std::vector<RepeatedColumn> columns);

    int dimension() const noexcept { return dimension_; }
    const std::vector<RepeatedColumn> &columns() const noexcept { return columns_; }

    friend bool operator==(const MultisetColumns &, const MultisetColumns &) = default;

private:
    int dimension_ = 0;
    std::vector<RepeatedColumn> columns_;
};

/// Sum over all n! permutations. Reference oracle; throws SizeLimitError above max_order.
Complex permanent_naive(const ComplexMatrix &m, int max_order = kNaiveMaxOrder);

/// Ryser inclusion-exclusion with Gray-code subset order, O(n 2^n).
Complex permanent_ryser(const ComplexMatrix &m, int max_order = kRyserMaxOrder);

/// Ryser accumulated in long double. Used where the cancellation between
/// subset terms would otherwise exceed a 1e-12 absolute budget.
Complex permanent_ryser_extended(const ComplexMatrix &m, int max_order = kRyserMaxOrder);

/**
 * Permanent of a matrix with repeated columns in O(n d prod(k_i + 1)).
 *
 * Extracts the coefficient of prod x_i^{k_i} from prod_j (sum_i v_{j,i} x_i),
 * carrying the k! normalization inside the table so no factorials are formed
 * and no alternating sums occur. Stable at n = 100.
 */
Complex permanent_multiset(const MultisetColumns &cols,
                           std::size_t max_tuples = kMultisetMaxTuples);

/**
 * Ryser's formula with subsets grouped by how many copies r_i of each distinct
 * column they select:
 *
 *   per = (-1)^n sum_r (-1)^{|r|} prod_i C(k_i, r_i) prod_j (sum_i r_i v_{j,i})
 *
 * Same cost as permanent_multiset but suffers catastrophic cancellation once
 * n grows past ~20; kept as an independent route for small n.
 */
Complex permanent_multiset_ryser(const MultisetColumns &cols,
                                 std::size_t max_tuples = kMultisetMaxTuples);

/// Repeats each distinct column multiplicity-many times, in declaration order.
ComplexMatrix expand_multiset(const MultisetColumns &cols);

} // namespace symperm
