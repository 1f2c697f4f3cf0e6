#pragma once

#include <Eigen/Dense>
#include <vector>

#include "hml/model.hpp"

namespace hml {

enum class DriveSegment { on, off };

/// Single-excitation Hamiltonian of one driven system + lattice.
/// Basis index 0 is the system-excited state, indices 1..N a single magnon
/// on lattice site n. Site diagonals w_c, nearest-neighbor hopping -h,
/// system-site-1 coupling -g; the system diagonal is w0 (off segment) or
/// w0 + F (on segment).
Eigen::MatrixXd build_hamiltonian(const ModelParams& p, DriveSegment seg);

/// U(T) = exp(-i H_off (T - t')) exp(-i H_on t'); the on segment acts first.
Eigen::MatrixXcd one_period_propagator(const ModelParams& p);

struct QuasienergySpectrum {
    std::vector<double> quasienergies;   // folded into [-Omega/2, Omega/2)
    Eigen::MatrixXcd eigenvectors;       // orthonormal columns, u_n(0)
    std::vector<double> overlaps;        // Z_n = |<u_n(0)|Phi(0)>|^2
    std::vector<int> fbs_indices;        // sorted by Z descending
    double drive_frequency = 0.0;

    int size() const { return static_cast<int>(quasienergies.size()); }
};

struct FloquetBoundState {
    int index = -1;                 // column in the spectrum
    double quasienergy = 0.0;
    double residue = 0.0;           // Z = |<u_b(0)|Phi(0)>|^2
    double localization_length = 0.0;
    double gap_distance = 0.0;      // to nearest band (Z < z_min) state
};

/// FBS detection thresholds: overlap floor, gap scale factor applied to the
/// band level spacing 4h/N, and the N -> 2N convergence filter. The dual
/// threshold alone also passes band states sitting inside a high-overlap
/// resonance cluster; their residues scale like 1/N, so requiring the
/// residue to be stable when the lattice is doubled removes them.
struct FbsCriteria {
    double z_min = 1e-2;
    double gap_factor = 10.0;
    // bound states are exponentially localized at the coupling site; require
    // this fraction of the norm on the MQE plus the first ceil(N/10) sites
    double head_weight_min = 0.9;
    bool convergence_check = true;
    double z_shift_tol = 1e-3;
};

/// Eigendecomposition of U(T) via complex Schur (orthonormal by
/// construction); quasienergy = principal argument of the eigenvalue
/// divided by -T, which lands in [-Omega/2, Omega/2). fbs_indices is left
/// empty; run detect_fbs or flag_fbs afterwards.
QuasienergySpectrum quasienergy_spectrum(const ModelParams& p);

/// Flags eigenstates with Z_n >= z_min whose quasienergy gap to the nearest
/// low-overlap state is at least gap_factor*(4h/N), then keeps only those
/// whose residue survives doubling the lattice.
std::vector<FloquetBoundState> detect_fbs(const QuasienergySpectrum& s,
                                          const ModelParams& p,
                                          const FbsCriteria& crit = {});

/// Runs detect_fbs and stores the surviving indices on the spectrum.
std::vector<FloquetBoundState> flag_fbs(QuasienergySpectrum& s,
                                        const ModelParams& p,
                                        const FbsCriteria& crit = {});

struct StroboscopicValue {
    cxd full_sum;  // sum_n Z_n e^{-i eps_n m T}, exact at finite N
    cxd asymptote; // bound-state terms only
};

/// c(mT) from the quasienergy decomposition.
StroboscopicValue stroboscopic_prediction(const QuasienergySpectrum& s,
                                          const ModelParams& p, int m);

} // namespace hml
