#include "symperm/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "symperm/error.hpp"

namespace symperm {

namespace {

__extension__ using uint128 = unsigned __int128;

double squared_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return acc;
}

double squared_norm(const CoefficientMap &terms) {
    double acc = 0.0;
    for (const auto &[k, c] : terms) {
        acc += std::norm(c);
    }
    return acc;
}

void check_unit(double norm2, const char *what) {
    if (!std::isfinite(norm2) || std::abs(std::sqrt(norm2) - 1.0) > kNormTolerance) {
        throw ValidationError(std::string(what) + ": norm " + std::to_string(std::sqrt(norm2)) +
                              " is not 1");
    }
}

void append_compositions(int remaining, int slots, std::vector<int> &prefix,
                         std::vector<Composition> &out) {
    if (slots == 1) {
        prefix.push_back(remaining);
        out.emplace_back(prefix);
        prefix.pop_back();
        return;
    }
    for (int first = remaining; first >= 0; --first) {
        prefix.push_back(first);
        append_compositions(remaining - first, slots - 1, prefix, out);
        prefix.pop_back();
    }
}

// In-place action of U on one tensor axis of a d^n vector.
void apply_on_axis(std::vector<Complex> &v, int n, int d, int axis, const ComplexMatrix &u) {
    std::size_t inner = 1;
    for (int a = axis + 1; a < n; ++a) {
        inner *= static_cast<std::size_t>(d);
    }
    const std::size_t block = inner * static_cast<std::size_t>(d);
    std::vector<Complex> fiber(d);
    for (std::size_t outer = 0; outer < v.size(); outer += block) {
        for (std::size_t in = 0; in < inner; ++in) {
            for (int j = 0; j < d; ++j) {
                fiber[j] = v[outer + j * inner + in];
            }
            for (int i = 0; i < d; ++i) {
                Complex acc = 0.0;
                for (int j = 0; j < d; ++j) {
                    acc += u(i, j) * fiber[j];
                }
                v[outer + i * inner + in] = acc;
            }
        }
    }
}

} // namespace

Composition::Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) {
        throw ValidationError("Composition: needs at least one part");
    }
    long total = 0;
    for (int k : parts_) {
        if (k < 0) {
            throw ValidationError("Composition: parts must be nonnegative");
        }
        total += k;
    }
    if (total < 1 || total > std::numeric_limits<int>::max()) {
        throw ValidationError("Composition: parts must sum to a positive n");
    }
    n_ = static_cast<int>(total);
}

std::vector<Composition> compositions(int n, int d) {
    if (n < 1 || d < 1) {
        throw ValidationError("compositions: n and d must be positive");
    }
    std::vector<Composition> out;
    out.reserve(composition_count(n, d));
    std::vector<int> prefix;
    prefix.reserve(d);
    append_compositions(n, d, prefix, out);
    return out;
}

std::uint64_t composition_count(int n, int d) {
    // C(n + d - 1, d - 1) via the multiplicative formula; each partial
    // product is itself a binomial coefficient, so the division is exact.
    std::uint64_t result = 1;
    const int top = n + d - 1;
    const int r = std::min(d - 1, n);
    for (int i = 1; i <= r; ++i) {
        const auto numerator = static_cast<uint128>(result) * (top - r + i);
        result = static_cast<std::uint64_t>(numerator / i);
    }
    return result;
}

std::size_t composition_rank(const Composition &k) {
    std::size_t rank = 0;
    int remaining = k.n();
    for (int i = 0; i + 1 < k.d(); ++i) {
        const int slots = k.d() - i - 1;
        for (int first = remaining; first > k[i]; --first) {
            rank += composition_count(remaining - first, slots);
        }
        remaining -= k[i];
    }
    return rank;
}

std::uint64_t multinomial(const Composition &k) {
    // Product of binomials C(k_1 + ... + k_i, k_i).
    std::uint64_t result = 1;
    int running = 0;
    for (int part : k.parts()) {
        for (int j = 1; j <= part; ++j) {
            ++running;
            uint128 next = static_cast<uint128>(result) * running;
            next /= j;
            if (next > std::numeric_limits<std::uint64_t>::max()) {
                throw SizeLimitError("multinomial: result exceeds 64 bits; use log_multinomial");
            }
            result = static_cast<std::uint64_t>(next);
        }
    }
    return result;
}

double log_multinomial(const Composition &k) {
    double acc = std::lgamma(static_cast<double>(k.n()) + 1.0);
    for (int part : k.parts()) {
        acc -= std::lgamma(static_cast<double>(part) + 1.0);
    }
    return acc;
}

std::size_t dense_dimension(int n, int d, std::size_t max_amplitudes) {
    if (n < 1 || d < 1) {
        throw ValidationError("dense_dimension: n and d must be positive");
    }
    std::size_t size = 1;
    for (int i = 0; i < n; ++i) {
        if (size > max_amplitudes / static_cast<std::size_t>(d)) {
            throw SizeLimitError("dense state with d=" + std::to_string(d) + ", n=" +
                                 std::to_string(n) + " exceeds " +
                                 std::to_string(max_amplitudes) + " amplitudes");
        }
        size *= static_cast<std::size_t>(d);
    }
    return size;
}

std::vector<int> occupation_of_index(std::size_t index, int n, int d) {
    std::vector<int> counts(d, 0);
    for (int party = 0; party < n; ++party) {
        ++counts[index % static_cast<std::size_t>(d)];
        index /= static_cast<std::size_t>(d);
    }
    return counts;
}

SymmetricState::SymmetricState(int n, int d, CoefficientMap terms)
    : n_(n), d_(d), terms_(std::move(terms)) {
    if (n < 1 || d < 1) {
        throw ValidationError("SymmetricState: n and d must be positive");
    }
    for (const auto &[k, c] : terms_) {
        if (k.n() != n || k.d() != d) {
            throw ValidationError("SymmetricState: composition does not match (n, d)");
        }
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw ValidationError("SymmetricState: non-finite coefficient");
        }
    }
    check_unit(squared_norm(terms_), "SymmetricState");
}

SymmetricState SymmetricState::normalized(int n, int d, CoefficientMap terms) {
    const double norm = std::sqrt(squared_norm(terms));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("SymmetricState: cannot normalize a zero or non-finite vector");
    }
    for (auto &[k, c] : terms) {
        c /= norm;
    }
    return {n, d, std::move(terms)};
}

SymmetricState SymmetricState::basis(const Composition &k) {
    return {k.n(), k.d(), CoefficientMap{{k, Complex{1.0}}}};
}

Complex SymmetricState::coefficient(const Composition &k) const {
    const auto it = terms_.find(k);
    return it == terms_.end() ? Complex{0.0} : it->second;
}

DenseState::DenseState(int n, int d, std::vector<Complex> amplitudes)
    : n_(n), d_(d), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != dense_dimension(n, d, std::numeric_limits<std::size_t>::max())) {
        throw ValidationError("DenseState: amplitude count is not d^n");
    }
    check_unit(squared_norm(amplitudes_), "DenseState");
}

DenseState DenseState::normalized(int n, int d, std::vector<Complex> amplitudes) {
    const double norm = std::sqrt(squared_norm(amplitudes));
    if (!(norm > 0.0) || !std::isfinite(norm)) {
        throw ValidationError("DenseState: cannot normalize a zero or non-finite vector");
    }
    for (auto &z : amplitudes) {
        z /= norm;
    }
    return {n, d, std::move(amplitudes)};
}

ProductState::ProductState(std::vector<std::vector<Complex>> rows) : rows_(std::move(rows)) {
    if (rows_.empty() || rows_.front().empty()) {
        throw ValidationError("ProductState: needs n >= 1 rows of d >= 1 amplitudes");
    }
    for (const auto &row : rows_) {
        if (row.size() != rows_.front().size()) {
            throw ValidationError("ProductState: rows have different lengths");
        }
        check_unit(squared_norm(row), "ProductState row");
    }
}

ProductState ProductState::normalized(std::vector<std::vector<Complex>> rows) {
    for (auto &row : rows) {
        const double norm = std::sqrt(squared_norm(row));
        if (!(norm > 0.0) || !std::isfinite(norm)) {
            throw ValidationError("ProductState: cannot normalize a zero row");
        }
        for (auto &z : row) {
            z /= norm;
        }
    }
    return ProductState(std::move(rows));
}

ProductState ProductState::uniform(std::vector<Complex> row, int n) {
    if (n < 1) {
        throw ValidationError("ProductState: n must be positive");
    }
    return ProductState(std::vector<std::vector<Complex>>(n, std::move(row)));
}

DenseState dicke_dense(const Composition &k, std::size_t max_amplitudes) {
    const int n = k.n();
    const int d = k.d();
    const std::size_t size = dense_dimension(n, d, max_amplitudes);
    const double amplitude = std::exp(-0.5 * log_multinomial(k));
    std::vector<Complex> amps(size, Complex{0.0});
    for (std::size_t index = 0; index < size; ++index) {
        if (occupation_of_index(index, n, d) == k.parts()) {
            amps[index] = amplitude;
        }
    }
    return DenseState::normalized(n, d, std::move(amps));
}

DenseState symmetric_to_dense(const SymmetricState &s, std::size_t max_amplitudes) {
    const int n = s.n();
    const int d = s.d();
    const std::size_t size = dense_dimension(n, d, max_amplitudes);
    // Amplitude of a basis string of type k is q_k / sqrt(C_k).
    std::vector<Complex> per_type(composition_count(n, d), Complex{0.0});
    for (const auto &[k, c] : s.terms()) {
        per_type[composition_rank(k)] = c * std::exp(-0.5 * log_multinomial(k));
    }
    std::vector<Complex> amps(size);
    for (std::size_t index = 0; index < size; ++index) {
        amps[index] = per_type[composition_rank(Composition(occupation_of_index(index, n, d)))];
    }
    return DenseState::normalized(n, d, std::move(amps));
}

DenseState product_to_dense(const ProductState &p, std::size_t max_amplitudes) {
    const int n = p.n();
    const int d = p.d();
    const std::size_t size = dense_dimension(n, d, max_amplitudes);
    std::vector<Complex> amps{Complex{1.0}};
    amps.reserve(size);
    for (int party = 0; party < n; ++party) {
        std::vector<Complex> next;
        next.reserve(amps.size() * d);
        for (const auto &a : amps) {
            for (int l = 0; l < d; ++l) {
                next.push_back(a * p(party, l));
            }
        }
        amps = std::move(next);
    }
    return DenseState::normalized(n, d, std::move(amps));
}

Complex overlap_dense(const DenseState &a, const DenseState &b) {
    if (a.n() != b.n() || a.d() != b.d()) {
        throw ValidationError("overlap_dense: states have different (n, d)");
    }
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        acc += std::conj(a[i]) * b[i];
    }
    return acc;
}

Complex overlap_symmetric(const SymmetricState &a, const SymmetricState &b) {
    if (a.n() != b.n() || a.d() != b.d()) {
        throw ValidationError("overlap_symmetric: states have different (n, d)");
    }
    Complex acc = 0.0;
    for (const auto &[k, c] : a.terms()) {
        acc += std::conj(c) * b.coefficient(k);
    }
    return acc;
}

SymmetricProjection project_to_symmetric(std::span<const Complex> amplitudes, int n, int d) {
    const std::size_t size = dense_dimension(n, d, std::numeric_limits<std::size_t>::max());
    if (amplitudes.size() != size) {
        throw ValidationError("project_to_symmetric: amplitude count is not d^n");
    }
    const auto basis = compositions(n, d);
    std::vector<std::size_t> rank(size);
    std::vector<Complex> sums(basis.size(), Complex{0.0});
    for (std::size_t index = 0; index < size; ++index) {
        rank[index] = composition_rank(Composition(occupation_of_index(index, n, d)));
        sums[rank[index]] += amplitudes[index];
    }
    SymmetricProjection out;
    std::vector<Complex> orbit_mean(basis.size());
    for (std::size_t r = 0; r < basis.size(); ++r) {
        orbit_mean[r] = sums[r] / static_cast<double>(multinomial(basis[r]));
        const Complex coeff = sums[r] * std::exp(-0.5 * log_multinomial(basis[r]));
        if (std::abs(coeff) >= kDropThreshold) {
            out.coefficients.emplace(basis[r], coeff);
        }
    }
    // Distance to the orbit-averaged vector, summed directly to avoid the
    // cancellation of |v|^2 - |Pv|^2.
    double residual2 = 0.0;
    for (std::size_t index = 0; index < size; ++index) {
        residual2 += std::norm(amplitudes[index] - orbit_mean[rank[index]]);
    }
    out.residual_norm = std::sqrt(residual2);
    return out;
}

double unitarity_defect(const ComplexMatrix &u) {
    const int d = u.order();
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            Complex acc = 0.0;
            for (int r = 0; r < d; ++r) {
                acc += std::conj(u(r, i)) * u(r, j);
            }
            if (i == j) {
                acc -= 1.0;
            }
            worst = std::max(worst, std::abs(acc));
        }
    }
    return worst;
}

SymmetricState apply_symmetric_unitary(const SymmetricState &s, const ComplexMatrix &u,
                                       std::size_t max_amplitudes) {
    if (u.order() != s.d()) {
        throw ValidationError("apply_symmetric_unitary: U must be d x d");
    }
    if (unitarity_defect(u) > 1e-10) {
        throw ValidationError("apply_symmetric_unitary: U is not unitary to 1e-10");
    }
    const DenseState dense = symmetric_to_dense(s, max_amplitudes);
    std::vector<Complex> v(dense.amplitudes().begin(), dense.amplitudes().end());
    for (int axis = 0; axis < s.n(); ++axis) {
        apply_on_axis(v, s.n(), s.d(), axis, u);
    }
    auto projection = project_to_symmetric(v, s.n(), s.d());
    if (projection.residual_norm > 1e-10) {
        throw InternalError("apply_symmetric_unitary: image left the symmetric subspace");
    }
    return SymmetricState::normalized(s.n(), s.d(), std::move(projection.coefficients));
}

std::vector<double> averaged_amplitudes(const ProductState &p) {
    std::vector<double> out(p.d(), 0.0);
    for (const auto &row : p.rows()) {
        for (int l = 0; l < p.d(); ++l) {
            out[l] += std::norm(row[l]);
        }
    }
    for (auto &x : out) {
        x = std::sqrt(x / p.n());
    }
    return out;
}

SymmetricState symmetric_product_state(std::span<const double> alpha_bar, int n) {
    if (alpha_bar.empty() || n < 1) {
        throw ValidationError("symmetric_product_state: need d >= 1 and n >= 1");
    }
    double norm2 = 0.0;
    for (double a : alpha_bar) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw ValidationError("symmetric_product_state: amplitudes must be finite and nonnegative");
        }
        norm2 += a * a;
    }
    if (std::abs(norm2 - 1.0) > 1e-10) {
        throw ValidationError("symmetric_product_state: sum of squares is not 1");
    }
    const int d = static_cast<int>(alpha_bar.size());
    CoefficientMap terms;
    for (const auto &k : compositions(n, d)) {
        double coeff = std::exp(0.5 * log_multinomial(k));
        for (int i = 0; i < d; ++i) {
            for (int e = 0; e < k[i]; ++e) {
                coeff *= alpha_bar[i];
            }
        }
        if (coeff >= kDropThreshold) {
            terms.emplace(k, coeff);
        }
    }
    return SymmetricState::normalized(n, d, std::move(terms));
}

} // namespace symperm
