#pragma once

#include <vector>

#include "hml/model.hpp"

namespace hml {

struct GridMisaligned : ModelError {
    using ModelError::ModelError;
};
struct StepTooLarge : ModelError {
    using ModelError::ModelError;
};
struct EdgeSingular : ModelError {
    using ModelError::ModelError;
};

/// Uniform grid t_j = j*dt, j = 0..n_steps. For driven runs the drive switch
/// times jT and jT+t' must land on grid nodes.
struct TimeGrid {
    double dt = 1e-3;
    int n_steps = 0;

    double time(int j) const { return j * dt; }
    double t_final() const { return n_steps * dt; }
    int size() const { return n_steps + 1; }

    /// Throws GridMisaligned if T/dt or t'/dt is not an integer,
    /// StepTooLarge if the per-step phase winding is unsafe.
    void validate_for(const ModelParams& p) const;

    /// Grid covering [0, m*T] with steps_per_period nodes per period.
    static TimeGrid periods(const DrivingProtocol& d, int m, int steps_per_period = 512);
};

enum class Backend { volterra, lattice, markovian };

struct AmplitudeTrajectory {
    TimeGrid grid;
    std::vector<cxd> values; // c(t_j), c(0) = 1
    Backend backend = Backend::volterra;

    const cxd& at(int j) const { return values[j]; }
    /// c at the stroboscopic time m*T (node index m*T/dt).
    cxd at_time(double t) const;
};

struct MasterEqCoefficients {
    TimeGrid grid;
    std::vector<double> renormalized_frequency; // Omega(t_j) = -Im[cdot/c]
    std::vector<double> decay_rate;             // Gamma(t_j) = -Re[cdot/c]
    std::vector<bool> valid;                    // false where |c| < guard
};

struct MarkovianRates {
    double gamma = 0.0;      // pi J(omega0)
    double lamb_shift = 0.0; // principal-value integral of J/(omega0 - omega)
};

/// Amplitude equation
///   cdot + i[w0 + A(t)] c + int_0^t F(t-s) c(s) ds = 0,  c(0) = 1,
/// solved by trapezoidal product integration of the convolution with one
/// predictor-corrector pass per step. The piecewise-constant local phase
/// is applied as an exact integrating factor, so the dt^2 error constant
/// is set by the kernel scales rather than by omega0 + F.
AmplitudeTrajectory solve_volterra(const ModelParams& p, const TimeGrid& grid);

/// Brute-force oracle: single-excitation Schroedinger evolution of the
/// (N+1)-component wavefunction under the piecewise-constant Hamiltonian,
/// exact per segment via Hermitian eigendecomposition. Returns the amplitude
/// on the system-excited basis state.
AmplitudeTrajectory solve_lattice(const ModelParams& p, const TimeGrid& grid);

/// Born-Markov decay rate and Lamb shift. Outside the band gamma = 0; at a
/// band edge throws EdgeSingular. The Lamb shift uses symmetric-excision
/// principal-value quadrature extrapolated to zero excision width.
MarkovianRates markovian_rates(const ModelParams& p);

/// c_MA(t) = exp[-(gamma + i Delta) t]
AmplitudeTrajectory markovian_trajectory(const MarkovianRates& r, const TimeGrid& grid);

/// Omega(t) and Gamma(t) from centered differences of log c. One-sided
/// stencils at drive switch nodes; entries with |c| < 1e-8 are masked
/// invalid rather than producing infinities.
MasterEqCoefficients master_eq_coefficients(const AmplitudeTrajectory& traj,
                                            const DrivingProtocol* drive = nullptr);

} // namespace hml
