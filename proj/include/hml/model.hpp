#pragma once

#include <complex>
#include <stdexcept>

namespace hml {

using cxd = std::complex<double>;

struct ModelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Piecewise-constant driving on the system frequency: amplitude F during
/// the first on_fraction of every period, zero for the remainder.
struct DrivingProtocol {
    double amplitude = 0.0;    // F, units of g
    double period = 1.0;       // T, units of 1/g
    double on_fraction = 0.5;  // t' in [0, T], units of 1/g

    double drive_frequency() const { return 2.0 * pi() / period; }

    void validate() const;

    static constexpr double pi() { return 3.14159265358979323846; }
};

enum class MqeKind { qubit, boson };

/// Lattice boundary used when assembling the finite single-excitation
/// Hamiltonian. Dispersion and spectral density always refer to the
/// periodic (momentum-space) band; the periodic ring is also what the
/// continuum memory kernel corresponds to, so it is the default. An
/// edge-coupled open chain sees a semicircle spectral density instead and
/// will not track the kernel-based solver.
enum class Boundary { open, periodic };

struct ModelParams {
    double omega0 = 1.0;   // system eigenfrequency, units of g
    double omega_c = 0.5;  // lattice band center, units of g
    double hopping = 1.5;  // nearest-neighbor hopping h, units of g
    double coupling = 1.0; // system-lattice coupling g (the unit)
    int n_sites = 200;     // lattice length N
    DrivingProtocol drive;
    MqeKind mqe_kind = MqeKind::qubit;
    Boundary boundary = Boundary::periodic;

    void validate() const;
};

struct BandStructure {
    double lower;
    double upper;
    double width;

    static BandStructure of(const ModelParams& p) {
        return {p.omega_c - 2.0 * p.hopping, p.omega_c + 2.0 * p.hopping,
                4.0 * p.hopping};
    }
};

/// omega_k = omega_c - 2 h cos k
double dispersion(const ModelParams& p, double k);

/// Continuum spectral density of the lattice band:
/// J(w) = g^2 / (pi sqrt(4h^2 - (w - w_c)^2)) inside the band, 0 outside.
/// Band edges are integrable square-root singularities; callers integrate
/// around them, this function just returns the density (edge itself -> 0).
double spectral_density(const ModelParams& p, double omega);

/// Environment correlation function F(tau) = g^2 e^{-i w_c tau} J0(2 h tau).
cxd memory_kernel(const ModelParams& p, double tau);

/// A(t) per the piecewise protocol; interval [jT, jT+t') is on, the rest of
/// the period off. Period index and remainder are tracked in exact integer
/// arithmetic on floor(t/T) so late times do not drift across switch points.
double driving_amplitude(const DrivingProtocol& d, double t);

} // namespace hml
