// Test-side oracles, independent of the library implementation paths they
// check: a Bessel J0 via its integral representation, plain composite
// Simpson, and the reference parameter set used throughout.
#pragma once

#include <cmath>
#include <functional>

#include "hml/model.hpp"

namespace oracle {

inline constexpr double pi = 3.14159265358979323846;

// J0(x) = (1/pi) int_0^pi cos(x sin t) dt, composite Simpson
inline double bessel_j0(double x, int n = 200000) {
    if (n % 2) ++n;
    const double dt = pi / n;
    double sum = std::cos(x * std::sin(0.0)) + std::cos(x * std::sin(pi));
    for (int i = 1; i < n; ++i)
        sum += (i % 2 ? 4.0 : 2.0) * std::cos(x * std::sin(i * dt));
    return sum * dt / 3.0 / pi;
}

// first positive zero of J0 by bisection on the integral representation
inline double bessel_j0_first_zero() {
    double lo = 2.0, hi = 3.0;
    for (int i = 0; i < 60 && hi - lo > 1e-14; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (bessel_j0(lo) * bessel_j0(mid) <= 0.0) hi = mid;
        else lo = mid;
    }
    return 0.5 * (lo + hi);
}

inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int n) {
    if (n % 2) ++n;
    const double h = (b - a) / n;
    double sum = f(a) + f(b);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

// Omega = 12, omega_c = 0.5, omega0 = 1, h = 1.5, N = 200, t' = T/2
inline hml::ModelParams reference_params(double amplitude = 0.0) {
    hml::ModelParams p;
    p.omega0 = 1.0;
    p.omega_c = 0.5;
    p.hopping = 1.5;
    p.coupling = 1.0;
    p.n_sites = 200;
    p.drive.amplitude = amplitude;
    p.drive.period = 2.0 * pi / 12.0;
    p.drive.on_fraction = 0.5 * p.drive.period;
    return p;
}

} // namespace oracle
