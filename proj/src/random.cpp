#include "symperm/random.hpp"

#include <cmath>

namespace symperm {

namespace {

Complex gaussian(Rng &rng) {
    std::normal_distribution<double> normal(0.0, 1.0);
    const double re = normal(rng);
    const double im = normal(rng);
    return {re, im};
}

} // namespace

std::vector<Complex> random_unit_vector(Rng &rng, int d) {
    std::vector<Complex> v(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto &z : v) {
            z = gaussian(rng);
            norm2 += std::norm(z);
        }
    } while (norm2 == 0.0);
    const double norm = std::sqrt(norm2);
    for (auto &z : v) {
        z /= norm;
    }
    return v;
}

std::vector<double> random_nonnegative_unit(Rng &rng, int d) {
    std::uniform_real_distribution<double> uniform(0.0, 1.0);
    std::vector<double> v(d);
    double norm2 = 0.0;
    do {
        norm2 = 0.0;
        for (auto &x : v) {
            x = uniform(rng);
            norm2 += x * x;
        }
    } while (norm2 == 0.0);
    const double norm = std::sqrt(norm2);
    for (auto &x : v) {
        x /= norm;
    }
    return v;
}

ComplexMatrix random_unitary(Rng &rng, int d) {
    std::vector<std::vector<Complex>> columns;
    columns.reserve(d);
    while (static_cast<int>(columns.size()) < d) {
        std::vector<Complex> v(d);
        for (auto &z : v) {
            z = gaussian(rng);
        }
        // Two Gram-Schmidt passes keep the result unitary to ~1e-15.
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto &q : columns) {
                Complex dot = 0.0;
                for (int i = 0; i < d; ++i) {
                    dot += std::conj(q[i]) * v[i];
                }
                for (int i = 0; i < d; ++i) {
                    v[i] -= dot * q[i];
                }
            }
        }
        double norm2 = 0.0;
        for (const auto &z : v) {
            norm2 += std::norm(z);
        }
        if (norm2 < 1e-20) {
            continue;
        }
        const double norm = std::sqrt(norm2);
        for (auto &z : v) {
            z /= norm;
        }
        columns.push_back(std::move(v));
    }
    return ComplexMatrix::from_columns(columns);
}

ComplexMatrix random_unit_column_matrix(Rng &rng, int n) {
    std::vector<std::vector<Complex>> columns;
    columns.reserve(n);
    for (int c = 0; c < n; ++c) {
        columns.push_back(random_unit_vector(rng, n));
    }
    return ComplexMatrix::from_columns(columns);
}

ProductState random_product_state(Rng &rng, int n, int d) {
    std::vector<std::vector<Complex>> rows;
    rows.reserve(n);
    for (int j = 0; j < n; ++j) {
        rows.push_back(random_unit_vector(rng, d));
    }
    return ProductState::normalized(std::move(rows));
}

SymmetricState random_symmetric_state(Rng &rng, int n, int d, bool nonnegative) {
    const auto basis = compositions(n, d);
    CoefficientMap terms;
    if (nonnegative) {
        const auto coeffs = random_nonnegative_unit(rng, static_cast<int>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            terms.emplace(basis[i], coeffs[i]);
        }
    } else {
        const auto coeffs = random_unit_vector(rng, static_cast<int>(basis.size()));
        for (std::size_t i = 0; i < basis.size(); ++i) {
            terms.emplace(basis[i], coeffs[i]);
        }
    }
    return SymmetricState::normalized(n, d, std::move(terms));
}

} // namespace symperm
