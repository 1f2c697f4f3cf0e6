#include "hml/entanglement.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace hml {

namespace {

void check_contraction(cxd c) {
    if (std::abs(c) > 1.0 + 1e-9)
        throw DomainError("amplitude modulus exceeds 1");
}

Eigen::Matrix4cd sigma_y_pair() {
    Eigen::Matrix4cd y = Eigen::Matrix4cd::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

} // namespace

TwoQubitState two_qubit_state(cxd c) {
    check_contraction(c);
    const double p = std::min(std::norm(c), 1.0);
    TwoQubitState rho = TwoQubitState::Zero();
    rho(0, 0) = p * p / 2.0;
    rho(1, 1) = p * (1.0 - p) / 2.0;
    rho(2, 2) = p * (1.0 - p) / 2.0;
    rho(3, 3) = ((1.0 - p) * (1.0 - p) + 1.0) / 2.0;
    rho(0, 3) = c * c / 2.0;
    rho(3, 0) = std::conj(rho(0, 3));
    return rho;
}

double wootters_concurrence(const TwoQubitState& rho) {
    const Eigen::Matrix4cd y = sigma_y_pair();
    const Eigen::Matrix4cd rho_tilde = y * rho.conjugate() * y;
    Eigen::ComplexEigenSolver<Eigen::Matrix4cd> es(rho * rho_tilde, false);

    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) {
        double v = es.eigenvalues()[i].real();
        if (v < 0.0) {
            if (v < -1e-10)
                throw NonPhysical("wootters_concurrence: negative eigenvalue");
            v = 0.0;
        }
        lam[i] = v;
    }
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const double c = std::sqrt(lam[0]) - std::sqrt(lam[1]) -
                     std::sqrt(lam[2]) - std::sqrt(lam[3]);
    return std::max(0.0, c);
}

double steady_concurrence(double z) {
    return z * z * z * z;
}

GaussianState tmsv_covariance(double r) {
    const double ch = std::cosh(2.0 * r), sh = std::sinh(2.0 * r);
    GaussianState v = GaussianState::Zero();
    v(0, 0) = v(1, 1) = v(2, 2) = v(3, 3) = 0.5 * ch;
    v(0, 2) = v(2, 0) = -0.5 * sh;
    v(1, 3) = v(3, 1) = 0.5 * sh;
    return v;
}

GaussianState propagate_covariance(const GaussianState& v0, cxd c) {
    check_contraction(c);
    const double mod = std::min(std::abs(c), 1.0);
    const double phi = -std::arg(c);
    Eigen::Matrix2d k;
    k << std::cos(phi), -std::sin(phi), std::sin(phi), std::cos(phi);
    k *= mod;
    Eigen::Matrix4d s = Eigen::Matrix4d::Zero();
    s.block<2, 2>(0, 0) = k;
    s.block<2, 2>(2, 2) = k;
    return s * v0 * s.transpose() +
           0.5 * (1.0 - mod * mod) * Eigen::Matrix4d::Identity();
}

double logarithmic_negativity(const GaussianState& v) {
    const double det_a = v.block<2, 2>(0, 0).determinant();
    const double det_b = v.block<2, 2>(2, 2).determinant();
    const double det_c = v.block<2, 2>(0, 2).determinant();
    const double det_v = v.determinant();
    if (det_v < -1e-12)
        throw NonPhysical("logarithmic_negativity: negative determinant");

    const double delta = det_a + det_b - 2.0 * det_c;
    double disc = delta * delta - 4.0 * det_v;
    if (disc < 0.0) disc = 0.0; // roundoff at symmetric points
    // smaller root of nu^4 - delta nu^2 + det_v = 0 without cancellation
    const double denom = delta + std::sqrt(disc);
    double nu2 = denom > 0.0 ? 2.0 * std::max(det_v, 0.0) / denom
                             : 0.5 * delta;
    if (nu2 < 0.0) {
        if (nu2 < -1e-12)
            throw NonPhysical("logarithmic_negativity: nu^2 < 0");
        nu2 = 0.0;
    }
    const double nu = std::sqrt(nu2);
    if (nu <= 0.0) throw NonPhysical("logarithmic_negativity: nu = 0");
    return std::max(0.0, -std::log2(2.0 * nu));
}

double steady_log_negativity(double z, double r) {
    const double arg = std::abs(1.0 - z * z * (1.0 - std::exp(-2.0 * r)));
    if (arg <= 0.0) return 0.0;
    return std::max(0.0, -std::log2(arg));
}

PropagatorCoefficients propagator_coefficients(cxd c, double r) {
    check_contraction(c);
    const double th = std::tanh(r);
    const double p2 = std::norm(c);
    const double xi = 1.0 / (1.0 - (1.0 - p2) * (1.0 - p2) * th * th);
    PropagatorCoefficients out;
    out.xi = xi;
    out.o = xi / (std::cosh(r) * std::cosh(r));
    out.p = -xi * c * c * th;
    out.q = xi * th * th * (1.0 - p2) * p2;
    return out;
}

} // namespace hml
