#include "symperm/permanent.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "symperm/error.hpp"

namespace symperm {

namespace {

bool is_finite(const Complex &z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void check_order_guard(int order, int max_order, const char *kernel) {
    if (order > max_order) {
        throw SizeLimitError(std::string(kernel) + ": order " + std::to_string(order) +
                             " exceeds guard " + std::to_string(max_order));
    }
}

std::size_t tuple_count(const MultisetColumns &cols, std::size_t max_tuples) {
    std::size_t count = 1;
    for (const auto &c : cols.columns()) {
        const auto radix = static_cast<std::size_t>(c.multiplicity) + 1;
        if (count > max_tuples / radix) {
            throw SizeLimitError("multiset permanent: prod(k_i + 1) exceeds guard " +
                                 std::to_string(max_tuples));
        }
        count *= radix;
    }
    return count;
}

template <class Real>
std::complex<Real> ryser_kernel(const ComplexMatrix &m) {
    const int n = m.order();
    if (n > 62) {
        throw SizeLimitError("permanent_ryser: order exceeds 62-bit subset counter");
    }
    using Value = std::complex<Real>;

    // row_sums[i] = sum over selected columns c of m(i, c); the Gray code
    // toggles exactly one column per step.
    std::vector<Value> row_sums(n, Value{0});
    Value total = 0;
    std::uint64_t previous = 0;
    const std::uint64_t subsets = std::uint64_t{1} << n;
    for (std::uint64_t step = 1; step < subsets; ++step) {
        const std::uint64_t gray = step ^ (step >> 1);
        const std::uint64_t flipped = gray ^ previous;
        const int col = std::countr_zero(flipped);
        const bool added = (gray & flipped) != 0;
        for (int i = 0; i < n; ++i) {
            const Value entry(m(i, col).real(), m(i, col).imag());
            if (added) {
                row_sums[i] += entry;
            } else {
                row_sums[i] -= entry;
            }
        }
        previous = gray;

        Value prod = 1;
        for (int i = 0; i < n; ++i) {
            prod *= row_sums[i];
        }
        if (std::popcount(gray) % 2 == 0) {
            total += prod;
        } else {
            total -= prod;
        }
    }
    return (n % 2 == 0) ? total : -total;
}

} // namespace

ComplexMatrix::ComplexMatrix(int order, std::vector<Complex> entries)
    : order_(order), entries_(std::move(entries)) {
    if (order < 1) {
        throw ValidationError("ComplexMatrix: order must be positive");
    }
    if (entries_.size() != static_cast<std::size_t>(order) * static_cast<std::size_t>(order)) {
        throw ValidationError("ComplexMatrix: expected " + std::to_string(order * order) +
                              " entries, got " + std::to_string(entries_.size()));
    }
    if (!std::all_of(entries_.begin(), entries_.end(), is_finite)) {
        throw ValidationError("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix ComplexMatrix::identity(int order) {
    ComplexMatrix m = filled(order, 0.0);
    for (int i = 0; i < order; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::filled(int order, Complex value) {
    if (order < 1) {
        throw ValidationError("ComplexMatrix: order must be positive");
    }
    return {order, std::vector<Complex>(static_cast<std::size_t>(order) * order, value)};
}

ComplexMatrix ComplexMatrix::from_rows(const std::vector<std::vector<Complex>> &rows) {
    const int n = static_cast<int>(rows.size());
    std::vector<Complex> entries;
    entries.reserve(rows.size() * rows.size());
    for (const auto &row : rows) {
        if (row.size() != rows.size()) {
            throw ValidationError("ComplexMatrix: matrix is not square");
        }
        entries.insert(entries.end(), row.begin(), row.end());
    }
    return {n, std::move(entries)};
}

ComplexMatrix ComplexMatrix::from_columns(const std::vector<std::vector<Complex>> &columns) {
    const int n = static_cast<int>(columns.size());
    std::vector<Complex> entries(columns.size() * columns.size());
    for (int c = 0; c < n; ++c) {
        if (columns[c].size() != columns.size()) {
            throw ValidationError("ComplexMatrix: matrix is not square");
        }
        for (int r = 0; r < n; ++r) {
            entries[static_cast<std::size_t>(r) * n + c] = columns[c][r];
        }
    }
    return {n, std::move(entries)};
}

std::vector<Complex> ComplexMatrix::column(int col) const {
    std::vector<Complex> out(order_);
    for (int r = 0; r < order_; ++r) {
        out[r] = (*this)(r, col);
    }
    return out;
}

ComplexMatrix ComplexMatrix::with_permuted_columns(std::span<const int> perm) const {
    ComplexMatrix out = *this;
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) {
            out(r, c) = (*this)(r, perm[c]);
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::with_permuted_rows(std::span<const int> perm) const {
    ComplexMatrix out = *this;
    for (int r = 0; r < order_; ++r) {
        for (int c = 0; c < order_; ++c) {
            out(r, c) = (*this)(perm[r], c);
        }
    }
    return out;
}

MultisetColumns::MultisetColumns(int dimension, std::vector<RepeatedColumn> columns)
    : dimension_(dimension), columns_(std::move(columns)) {
    if (dimension < 1) {
        throw ValidationError("MultisetColumns: dimension must be positive");
    }
    long total = 0;
    for (const auto &c : columns_) {
        if (c.multiplicity < 1) {
            throw ValidationError("MultisetColumns: multiplicities must be positive");
        }
        if (c.vector.size() != static_cast<std::size_t>(dimension)) {
            throw ValidationError("MultisetColumns: column length " +
                                  std::to_string(c.vector.size()) + " != dimension " +
                                  std::to_string(dimension));
        }
        if (!std::all_of(c.vector.begin(), c.vector.end(), is_finite)) {
            throw ValidationError("MultisetColumns: non-finite entry");
        }
        total += c.multiplicity;
    }
    if (total != dimension) {
        throw ValidationError("MultisetColumns: multiplicities sum to " + std::to_string(total) +
                              ", expected " + std::to_string(dimension));
    }
}

Complex permanent_naive(const ComplexMatrix &m, int max_order) {
    const int n = m.order();
    check_order_guard(n, max_order, "permanent_naive");
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    Complex total = 0.0;
    do {
        Complex term = 1.0;
        for (int i = 0; i < n; ++i) {
            term *= m(i, perm[i]);
        }
        total += term;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

Complex permanent_ryser(const ComplexMatrix &m, int max_order) {
    check_order_guard(m.order(), max_order, "permanent_ryser");
    return ryser_kernel<double>(m);
}

Complex permanent_ryser_extended(const ComplexMatrix &m, int max_order) {
    check_order_guard(m.order(), max_order, "permanent_ryser_extended");
    const auto value = ryser_kernel<long double>(m);
    return {static_cast<double>(value.real()), static_cast<double>(value.imag())};
}

Complex permanent_multiset(const MultisetColumns &cols, std::size_t max_tuples) {
    const int n = cols.dimension();
    const auto &columns = cols.columns();
    const std::size_t d = columns.size();
    const std::size_t tuples = tuple_count(cols, max_tuples);

    // Mixed-radix layout: tuple m = (m_0, ..., m_{d-1}), m_i in [0, k_i],
    // flat index sum_i m_i * stride_i.
    std::vector<std::size_t> stride(d);
    std::size_t s = 1;
    for (std::size_t i = 0; i < d; ++i) {
        stride[i] = s;
        s *= static_cast<std::size_t>(columns[i].multiplicity) + 1;
    }

    // table[m] = (prod_i m_i!) * [x^m] prod_{j < rows} (sum_i v_{j,i} x_i).
    // Appending a row maps table[m - e_i] to table[m] with weight v_{j,i} m_i.
    std::vector<Complex> table(tuples, Complex{0.0});
    std::vector<Complex> next(tuples);
    std::vector<int> digits(d);
    table[0] = 1.0;
    for (int j = 0; j < n; ++j) {
        std::fill(next.begin(), next.end(), Complex{0.0});
        std::fill(digits.begin(), digits.end(), 0);
        for (std::size_t flat = 0; flat < tuples; ++flat) {
            int degree = 0;
            for (int digit : digits) {
                degree += digit;
            }
            if (degree == j + 1) {
                Complex acc = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    if (digits[i] > 0) {
                        acc += columns[i].vector[j] * static_cast<double>(digits[i]) *
                               table[flat - stride[i]];
                    }
                }
                next[flat] = acc;
            }
            for (std::size_t i = 0; i < d; ++i) {
                if (++digits[i] <= columns[i].multiplicity) {
                    break;
                }
                digits[i] = 0;
            }
        }
        std::swap(table, next);
    }
    return table[tuples - 1];
}

Complex permanent_multiset_ryser(const MultisetColumns &cols, std::size_t max_tuples) {
    const int n = cols.dimension();
    const auto &columns = cols.columns();
    const std::size_t d = columns.size();
    const std::size_t tuples = tuple_count(cols, max_tuples);

    // Binomial rows C(k_i, r) for each distinct column.
    std::vector<std::vector<double>> binom(d);
    for (std::size_t i = 0; i < d; ++i) {
        const int k = columns[i].multiplicity;
        binom[i].assign(k + 1, 1.0);
        for (int r = 1; r <= k; ++r) {
            binom[i][r] = binom[i][r - 1] * static_cast<double>(k - r + 1) / r;
        }
    }

    std::vector<int> r(d, 0);
    Complex total = 0.0;
    for (std::size_t flat = 0; flat < tuples; ++flat) {
        int selected = 0;
        double weight = 1.0;
        for (std::size_t i = 0; i < d; ++i) {
            selected += r[i];
            weight *= binom[i][r[i]];
        }
        if (selected > 0) {
            Complex prod = weight;
            for (int j = 0; j < n; ++j) {
                Complex row_sum = 0.0;
                for (std::size_t i = 0; i < d; ++i) {
                    row_sum += static_cast<double>(r[i]) * columns[i].vector[j];
                }
                prod *= row_sum;
            }
            if (selected % 2 == 0) {
                total += prod;
            } else {
                total -= prod;
            }
        }
        for (std::size_t i = 0; i < d; ++i) {
            if (++r[i] <= columns[i].multiplicity) {
                break;
            }
            r[i] = 0;
        }
    }
    return (n % 2 == 0) ? total : -total;
}

ComplexMatrix expand_multiset(const MultisetColumns &cols) {
    std::vector<std::vector<Complex>> expanded;
    expanded.reserve(cols.dimension());
    for (const auto &c : cols.columns()) {
        for (int copy = 0; copy < c.multiplicity; ++copy) {
            expanded.push_back(c.vector);
        }
    }
    return ComplexMatrix::from_columns(expanded);
}

} // namespace symperm
