#include "symperm/geometric.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "symperm/error.hpp"
#include "symperm/parallel.hpp"
#include "symperm/random.hpp"

namespace symperm {

namespace {

struct RestartResult {
    double lambda = -1.0;
    std::vector<std::vector<Complex>> rows;
    int iterations = 0;
    bool converged = false;
    std::vector<double> history;
};

OptimizerReport reduce_restarts(std::vector<RestartResult> results) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        if (results[i].lambda > results[best].lambda) {
            best = i;
        }
    }
    auto &winner = results[best];
    OptimizerReport report;
    report.lambda_max = winner.lambda;
    report.maximizer = ProductState::normalized(std::move(winner.rows));
    report.iterations_used = winner.iterations;
    report.restarts_used = static_cast<int>(results.size());
    report.converged = winner.converged;
    report.lambda_history = std::move(winner.history);
    return report;
}

double vector_norm(std::span<const Complex> v) {
    double acc = 0.0;
    for (const auto &z : v) {
        acc += std::norm(z);
    }
    return std::sqrt(acc);
}

// Coefficients c_k = q_k sqrt(C_k) of <alpha^n|psi> = sum_k c_k prod conj(alpha_i)^{k_i}.
struct WeightedTerm {
    std::vector<int> parts;
    Complex weight;
};

std::vector<WeightedTerm> weighted_terms(const SymmetricState &s) {
    std::vector<WeightedTerm> out;
    out.reserve(s.terms().size());
    for (const auto &[k, q] : s.terms()) {
        out.push_back({k.parts(), q * std::exp(0.5 * log_multinomial(k))});
    }
    return out;
}

// powers[i][e] = conj(alpha_i)^e for e in [0, n].
std::vector<std::vector<Complex>> conj_powers(std::span<const Complex> alpha, int n) {
    std::vector<std::vector<Complex>> powers(alpha.size(), std::vector<Complex>(n + 1));
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        powers[i][0] = 1.0;
        for (int e = 1; e <= n; ++e) {
            powers[i][e] = powers[i][e - 1] * std::conj(alpha[i]);
        }
    }
    return powers;
}

// G_i = d/d(conj alpha_i) of <alpha^n|psi>.
std::vector<Complex> symmetric_gradient(const std::vector<WeightedTerm> &terms,
                                        std::span<const Complex> alpha, int n) {
    const auto powers = conj_powers(alpha, n);
    const std::size_t d = alpha.size();
    std::vector<Complex> grad(d, Complex{0.0});
    for (const auto &term : terms) {
        for (std::size_t i = 0; i < d; ++i) {
            if (term.parts[i] == 0) {
                continue;
            }
            Complex prod = term.weight * static_cast<double>(term.parts[i]) *
                           powers[i][term.parts[i] - 1];
            for (std::size_t l = 0; l < d; ++l) {
                if (l != i) {
                    prod *= powers[l][term.parts[l]];
                }
            }
            grad[i] += prod;
        }
    }
    return grad;
}

// By homogeneity, sum_i conj(alpha_i) G_i = n <alpha^n|psi>.
Complex overlap_from_gradient(std::span<const Complex> alpha, std::span<const Complex> grad,
                              int n) {
    Complex acc = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
        acc += std::conj(alpha[i]) * grad[i];
    }
    return acc / static_cast<double>(n);
}

RestartResult symmetric_restart(const std::vector<WeightedTerm> &terms, int n, int d,
                                const OptimizerConfig &cfg, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Complex> alpha = random_unit_vector(rng, d);
    std::vector<Complex> grad = symmetric_gradient(terms, alpha, n);
    double lambda = std::abs(overlap_from_gradient(alpha, grad, n));

    RestartResult result;
    result.history.push_back(lambda);
    result.lambda = lambda;
    result.rows.assign(n, alpha);

    for (int it = 1; it <= cfg.max_iterations; ++it) {
        const double grad_norm = vector_norm(grad);
        if (grad_norm == 0.0) {
            break;
        }
        const Complex g = overlap_from_gradient(alpha, grad, n);
        const Complex phase = std::abs(g) > 0.0 ? std::conj(g) / std::abs(g) : Complex{1.0};
        for (int i = 0; i < d; ++i) {
            alpha[i] = phase * grad[i] / grad_norm + alpha[i];
        }
        const double step_norm = vector_norm(alpha);
        if (step_norm == 0.0) {
            break;
        }
        for (auto &z : alpha) {
            z /= step_norm;
        }

        grad = symmetric_gradient(terms, alpha, n);
        const double next = std::abs(overlap_from_gradient(alpha, grad, n));
        result.history.push_back(next);
        result.iterations = it;
        if (next > result.lambda) {
            result.lambda = next;
            result.rows.assign(n, alpha);
        }
        if (std::abs(next - lambda) < cfg.tolerance) {
            result.converged = true;
            break;
        }
        lambda = next;
    }
    return result;
}

// Contracts every tensor axis except `keep` with the conjugated rows.
std::vector<Complex> contract_all_but(std::span<const Complex> psi, int n, int d,
                                      const std::vector<std::vector<Complex>> &conj_rows,
                                      int keep) {
    std::vector<Complex> t(psi.begin(), psi.end());
    // Trailing axes: t has shape (d^{axis}, d), contract the last index.
    for (int axis = n - 1; axis > keep; --axis) {
        const std::size_t outer = t.size() / d;
        std::vector<Complex> next(outer, Complex{0.0});
        for (std::size_t x = 0; x < outer; ++x) {
            Complex acc = 0.0;
            for (int l = 0; l < d; ++l) {
                acc += conj_rows[axis][l] * t[x * d + l];
            }
            next[x] = acc;
        }
        t = std::move(next);
    }
    // Leading axes: t has shape (d, rest), contract the first index.
    for (int axis = 0; axis < keep; ++axis) {
        const std::size_t rest = t.size() / d;
        std::vector<Complex> next(rest, Complex{0.0});
        for (int l = 0; l < d; ++l) {
            const Complex w = conj_rows[axis][l];
            const Complex *block = t.data() + l * rest;
            for (std::size_t y = 0; y < rest; ++y) {
                next[y] += w * block[y];
            }
        }
        t = std::move(next);
    }
    return t;
}

// Contracts the leading axis of a (d, rest) tensor with w.
// out[y] = sum_l w[l] t[l * rest + y]; out keeps its capacity across calls.
void contract_leading(std::span<const Complex> t, int d, std::span<const Complex> w,
                      std::vector<Complex> &out) {
    const std::size_t rest = t.size() / d;
    out.assign(rest, Complex{0.0});
    for (int l = 0; l < d; ++l) {
        const Complex *block = t.data() + l * rest;
        for (std::size_t y = 0; y < rest; ++y) {
            out[y] += w[l] * block[y];
        }
    }
}

RestartResult general_restart(const DenseState &v, const OptimizerConfig &cfg,
                              std::uint64_t seed) {
    const int n = v.n();
    const int d = v.d();
    Rng rng(seed);
    std::vector<std::vector<Complex>> rows;
    rows.reserve(n);
    for (int j = 0; j < n; ++j) {
        rows.push_back(random_unit_vector(rng, d));
    }
    std::vector<std::vector<Complex>> conj_rows(n, std::vector<Complex>(d));
    for (int j = 0; j < n; ++j) {
        for (int l = 0; l < d; ++l) {
            conj_rows[j][l] = std::conj(rows[j][l]);
        }
    }

    RestartResult result;
    std::vector<Complex> left, w, next;
    double lambda = std::abs(product_overlap_dense(ProductState(rows), v));
    result.history.push_back(lambda);
    for (int sweep = 1; sweep <= cfg.max_iterations; ++sweep) {
        double current = lambda;
        // left = psi contracted with the already-updated rows 0..j-1; its
        // leading axis is party j. Buffers are reused to avoid reallocation.
        left.assign(v.amplitudes().begin(), v.amplitudes().end());
        for (int j = 0; j < n; ++j) {
            // w = left contracted with rows n-1, ..., j+1 from the trailing end.
            std::span<const Complex> source = left;
            for (int axis = n - 1; axis > j; --axis) {
                const std::size_t outer = source.size() / d;
                w.resize(std::max(w.size(), outer));
                for (std::size_t x = 0; x < outer; ++x) {
                    Complex acc = 0.0;
                    for (int l = 0; l < d; ++l) {
                        acc += conj_rows[axis][l] * source[x * d + l];
                    }
                    w[x] = acc;
                }
                source = std::span<const Complex>(w.data(), outer);
            }
            const double w_norm = vector_norm(source);
            if (w_norm > 0.0) {
                for (int l = 0; l < d; ++l) {
                    rows[j][l] = source[l] / w_norm;
                    conj_rows[j][l] = std::conj(rows[j][l]);
                }
                current = w_norm;
            }
            if (j + 1 < n) {
                contract_leading(left, d, conj_rows[j], next);
                left.swap(next);
            }
        }
        result.history.push_back(current);
        result.iterations = sweep;
        if (std::abs(current - lambda) < cfg.tolerance) {
            result.converged = true;
            lambda = current;
            break;
        }
        lambda = current;
    }
    result.lambda = lambda;
    result.rows = std::move(rows);
    return result;
}

} // namespace

void OptimizerConfig::validate() const {
    if (max_iterations < 1) {
        throw ValidationError("OptimizerConfig: max_iterations must be >= 1");
    }
    if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
        throw ValidationError("OptimizerConfig: tolerance must be positive");
    }
    if (restarts < 1) {
        throw ValidationError("OptimizerConfig: restarts must be >= 1");
    }
}

MultisetColumns build_overlap_matrix(const ProductState &p, const Composition &k) {
    if (p.n() != k.n() || p.d() != k.d()) {
        throw ValidationError("build_overlap_matrix: product state is " + std::to_string(p.n()) +
                              "x" + std::to_string(p.d()) + ", composition has n=" +
                              std::to_string(k.n()) + ", d=" + std::to_string(k.d()));
    }
    std::vector<RepeatedColumn> columns;
    for (int i = 0; i < k.d(); ++i) {
        if (k[i] == 0) {
            continue;
        }
        RepeatedColumn col;
        col.vector.reserve(p.n());
        for (int j = 0; j < p.n(); ++j) {
            col.vector.push_back(p(j, i));
        }
        col.multiplicity = k[i];
        columns.push_back(std::move(col));
    }
    return {p.n(), std::move(columns)};
}

Complex overlap_via_permanent(const ProductState &p, const Composition &k) {
    const Complex per = permanent_multiset(build_overlap_matrix(p, k));
    const double scale =
        std::exp(0.5 * log_multinomial(k) - std::lgamma(static_cast<double>(k.n()) + 1.0));
    return scale * per;
}

double lambda_closed_form(const Composition &k) {
    const double n = k.n();
    double log_lambda = 0.5 * log_multinomial(k);
    for (int part : k.parts()) {
        if (part != 0) {
            log_lambda += 0.5 * part * std::log(part / n);
        }
    }
    return std::exp(log_lambda);
}

double lambda_qubit(int n, int k) {
    if (n < 1 || k < 0 || k > n) {
        throw ValidationError("lambda_qubit: need 0 <= k <= n and n >= 1");
    }
    return lambda_closed_form(Composition{k, n - k});
}

double e_sin2(double lambda) {
    if (!(lambda >= 0.0) || lambda > 1.0 + 1e-9) {
        throw DomainError("e_sin2: lambda must lie in [0, 1]");
    }
    return 1.0 - lambda * lambda;
}

double e_log(double lambda) {
    if (!(lambda > 0.0) || lambda > 1.0 + 1e-9) {
        throw DomainError("e_log: lambda must lie in (0, 1]");
    }
    return -2.0 * std::log2(lambda) + 0.0;
}

Complex symmetric_product_overlap(const SymmetricState &s, std::span<const Complex> alpha) {
    if (static_cast<int>(alpha.size()) != s.d()) {
        throw ValidationError("symmetric_product_overlap: alpha must have d entries");
    }
    const auto powers = conj_powers(alpha, s.n());
    Complex acc = 0.0;
    for (const auto &term : weighted_terms(s)) {
        Complex prod = term.weight;
        for (int i = 0; i < s.d(); ++i) {
            prod *= powers[i][term.parts[i]];
        }
        acc += prod;
    }
    return acc;
}

Complex product_overlap_dense(const ProductState &p, const DenseState &v) {
    if (p.n() != v.n() || p.d() != v.d()) {
        throw ValidationError("product_overlap_dense: shape mismatch");
    }
    std::vector<std::vector<Complex>> conj_rows(p.n(), std::vector<Complex>(p.d()));
    for (int j = 0; j < p.n(); ++j) {
        for (int l = 0; l < p.d(); ++l) {
            conj_rows[j][l] = std::conj(p(j, l));
        }
    }
    const auto w = contract_all_but(v.amplitudes(), v.n(), v.d(), conj_rows, 0);
    Complex acc = 0.0;
    for (int l = 0; l < p.d(); ++l) {
        acc += conj_rows[0][l] * w[l];
    }
    return acc;
}

OptimizerReport maximize_symmetric(const SymmetricState &s, const OptimizerConfig &cfg) {
    cfg.validate();
    const auto terms = weighted_terms(s);
    std::vector<RestartResult> results(cfg.restarts);
    parallel_for(results.size(), [&](std::size_t i) {
        results[i] = symmetric_restart(terms, s.n(), s.d(), cfg, cfg.seed + i);
    });
    return reduce_restarts(std::move(results));
}

OptimizerReport maximize_general(const DenseState &v, const OptimizerConfig &cfg,
                                 std::size_t max_amplitudes) {
    cfg.validate();
    dense_dimension(v.n(), v.d(), max_amplitudes);
    std::vector<RestartResult> results(cfg.restarts);
    parallel_for(results.size(), [&](std::size_t i) {
        results[i] = general_restart(v, cfg, cfg.seed + i);
    });
    return reduce_restarts(std::move(results));
}

double conjecture_gap(const SymmetricState &s, const OptimizerConfig &cfg,
                      std::size_t max_amplitudes) {
    const auto dense = symmetric_to_dense(s, max_amplitudes);
    const double general = maximize_general(dense, cfg, max_amplitudes).lambda_max;
    const double symmetric = maximize_symmetric(s, cfg).lambda_max;
    return general - symmetric;
}

} // namespace symperm
