#pragma once

#include <Eigen/Dense>

#include "hml/model.hpp"

namespace hml {

struct DomainError : ModelError {
    using ModelError::ModelError;
};
struct NonPhysical : ModelError {
    using ModelError::ModelError;
};

/// 4x4 density matrix of the two qubits, basis |ee>, |eg>, |ge>, |gg>.
using TwoQubitState = Eigen::Matrix4cd;

/// 4x4 covariance matrix in quadrature order (x1, p1, x2, p2),
/// vacuum variance 1/2.
using GaussianState = Eigen::Matrix4d;

/// Reduced two-qubit state for the shared-amplitude decoherence channel,
/// starting from (|ee> + |gg>)/sqrt(2). Only the X-state entries are
/// nonzero: populations from P = |c|^2 and the |ee><gg| coherence c^2/2.
TwoQubitState two_qubit_state(cxd c);

double wootters_concurrence(const TwoQubitState& rho);

/// Steady-state concurrence from the bound-state residue: Z^4.
double steady_concurrence(double z);

/// Two-mode squeezed vacuum covariance for squeezing r >= 0.
GaussianState tmsv_covariance(double r);

/// Per-mode Gaussian channel a -> c*a plus vacuum noise:
/// V -> (K (+) K) V (K (+) K)^T + (1-|c|^2)/2 * I, K = |c| R(-arg c).
GaussianState propagate_covariance(const GaussianState& v0, cxd c);

/// E_N = max{0, -log2(2 nu_min)} with nu_min the smaller symplectic
/// eigenvalue of the partially transposed covariance matrix.
double logarithmic_negativity(const GaussianState& v);

/// Steady-state E_N from the residue: -log2|1 - Z^2 (1 - e^{-2r})|, floored at 0.
double steady_log_negativity(double z, double r);

/// Coefficients of the Gaussian-integrated coherent-state kernel; kept as an
/// independent cross-check of the covariance route.
struct PropagatorCoefficients {
    cxd xi;
    cxd o;
    cxd p;
    double q;
};

PropagatorCoefficients propagator_coefficients(cxd c, double r);

} // namespace hml
