#include "symperm/families.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "symperm/error.hpp"
#include "symperm/parallel.hpp"

namespace symperm {

namespace {

void require_parties(int n, const char *name) {
    if (n < 2) {
        throw ValidationError(std::string(name) + ": n must be at least 2");
    }
}

void require_unit_interval(double s, const char *name) {
    if (!(s >= 0.0 && s <= 1.0)) {
        throw ValidationError(std::string(name) + ": s must lie in [0, 1]");
    }
}

} // namespace

SymmetricState ghz(int n) {
    require_parties(n, "ghz");
    const double c = 1.0 / std::numbers::sqrt2;
    return SymmetricState(n, 2, CoefficientMap{{Composition{n, 0}, c}, {Composition{0, n}, c}});
}

SymmetricState w_state(int n) {
    require_parties(n, "w_state");
    return SymmetricState::basis(Composition{n - 1, 1});
}

SymmetricState w_bar_state(int n) {
    require_parties(n, "w_bar_state");
    return SymmetricState::basis(Composition{1, n - 1});
}

SymmetricState example_a() { return SymmetricState::basis(Composition{2, 0, 0, 1}); }

SymmetricState example_b() { return SymmetricState::basis(Composition{1, 1, 1, 0}); }

SymmetricState ww_bar(double s) {
    require_unit_interval(s, "ww_bar");
    CoefficientMap terms;
    if (s > 0.0) {
        terms.emplace(Composition{2, 1}, std::sqrt(s));
    }
    if (s < 1.0) {
        terms.emplace(Composition{1, 2}, std::sqrt(1.0 - s));
    }
    return SymmetricState::normalized(3, 2, std::move(terms));
}

double ww_bar_cubic(double s, double t) {
    const double a = std::sqrt(1.0 - s);
    const double b = std::sqrt(s);
    return ((a * t + 2.0 * b) * t - 2.0 * a) * t - b;
}

double ww_bar_overlap(double s, double theta) {
    const double c = std::cos(theta);
    const double sn = std::sin(theta);
    return std::sqrt(3.0) * sn * c * (std::sqrt(s) * c + std::sqrt(1.0 - s) * sn);
}

WWBarPoint ww_bar_theta(double s) {
    require_unit_interval(s, "ww_bar_theta");
    constexpr double kEndpointResidual = 1e-14;
    double lo = 1.0 / std::numbers::sqrt2;
    double hi = std::numbers::sqrt2;
    const double g_lo = ww_bar_cubic(s, lo);
    const double g_hi = ww_bar_cubic(s, hi);

    double t = 0.0;
    if (std::abs(g_lo) <= kEndpointResidual) {
        t = lo;
    } else if (std::abs(g_hi) <= kEndpointResidual) {
        t = hi;
    } else {
        if (g_lo > 0.0 || g_hi < 0.0) {
            throw InternalError("ww_bar_theta: cubic root not bracketed at s=" + std::to_string(s));
        }
        for (;;) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) {
                break;
            }
            if (ww_bar_cubic(s, mid) <= 0.0) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        t = 0.5 * (lo + hi);
    }

    WWBarPoint point;
    point.s = s;
    point.tan_theta = t;
    point.theta = std::atan(t);
    point.lambda_max = ww_bar_overlap(s, point.theta);
    point.lambda_paper_prefactor =
        0.5 * (std::sqrt(s) * std::cos(point.theta) + std::sqrt(1.0 - s) * std::sin(point.theta)) *
        std::sin(2.0 * point.theta);
    return point;
}

std::vector<WWBarPoint> ww_bar_sweep(int steps) {
    if (steps < 2) {
        throw ValidationError("ww_bar_sweep: steps must be at least 2");
    }
    std::vector<WWBarPoint> points(steps);
    parallel_for(points.size(), [&](std::size_t i) {
        points[i] = ww_bar_theta(static_cast<double>(i) / (steps - 1));
    });
    return points;
}

} // namespace symperm
