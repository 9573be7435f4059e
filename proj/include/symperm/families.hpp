#pragma once

#include <vector>

#include "symperm/symmetric.hpp"

namespace symperm {

/// (|0...0> + |1...1>)/sqrt(2), n >= 2.
SymmetricState ghz(int n);
/// Single excitation |S(n, (n-1, 1))>, n >= 2.
SymmetricState w_state(int n);
/// Bit-flipped W, |S(n, (1, n-1))>.
SymmetricState w_bar_state(int n);
/// Three parties, four levels: k = (2,0,0,1).
SymmetricState example_a();
/// Three parties, four levels: k = (1,1,1,0).
SymmetricState example_b();

/// sqrt(s)|W> + sqrt(1-s)|W-bar> on three qubits, s in [0, 1].
SymmetricState ww_bar(double s);

struct WWBarPoint {
    double s = 0.0;
    double theta = 0.0;
    double tan_theta = 0.0;
    /// <(cos t|0> + sin t|1>)^{(x)3} | WW(s)> at the stationary angle.
    double lambda_max = 0.0;
    /// (1/2)(sqrt(s) cos + sqrt(1-s) sin) sin(2 theta): the 1/2-prefactor form, lambda_max / sqrt(3).
    double lambda_paper_prefactor = 0.0;
};

/// sqrt(1-s) t^3 + 2 sqrt(s) t^2 - 2 sqrt(1-s) t - sqrt(s).
double ww_bar_cubic(double s, double t);
/// sqrt(3) sin(theta) cos(theta) (sqrt(s) cos(theta) + sqrt(1-s) sin(theta)).
double ww_bar_overlap(double s, double theta);

/// Root of the cubic in tan(theta) on [1/sqrt(2), sqrt(2)] by bisection to machine precision.
WWBarPoint ww_bar_theta(double s);

/// Points at s = i/(steps-1), i = 0..steps-1.
std::vector<WWBarPoint> ww_bar_sweep(int steps);

} // namespace symperm
