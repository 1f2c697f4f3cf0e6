#include "hml/model.hpp"

#include <cmath>

namespace hml {

void DrivingProtocol::validate() const {
    if (!(period > 0.0) || !std::isfinite(period))
        throw ModelError("DrivingProtocol: period must be positive and finite");
    if (!(on_fraction >= 0.0 && on_fraction <= period))
        throw ModelError("DrivingProtocol: on_fraction must lie in [0, T]");
    if (!std::isfinite(amplitude))
        throw ModelError("DrivingProtocol: amplitude must be finite");
}

void ModelParams::validate() const {
    if (!(hopping > 0.0)) throw ModelError("ModelParams: hopping must be > 0");
    if (!(coupling >= 0.0)) throw ModelError("ModelParams: coupling must be >= 0");
    if (n_sites < 2) throw ModelError("ModelParams: n_sites must be >= 2");
    if (!std::isfinite(omega0) || !std::isfinite(omega_c))
        throw ModelError("ModelParams: frequencies must be finite");
    drive.validate();
}

double dispersion(const ModelParams& p, double k) {
    return p.omega_c - 2.0 * p.hopping * std::cos(k);
}

double spectral_density(const ModelParams& p, double omega) {
    const double x = omega - p.omega_c;
    const double r2 = 4.0 * p.hopping * p.hopping - x * x;
    if (r2 <= 0.0) return 0.0;
    const double g = p.coupling;
    return g * g / (DrivingProtocol::pi() * std::sqrt(r2));
}

cxd memory_kernel(const ModelParams& p, double tau) {
    const double g2 = p.coupling * p.coupling;
    const double bessel = std::cyl_bessel_j(0.0, 2.0 * p.hopping * tau);
    const double phase = -p.omega_c * tau;
    return g2 * bessel * cxd(std::cos(phase), std::sin(phase));
}

double driving_amplitude(const DrivingProtocol& d, double t) {
    long long j = static_cast<long long>(std::floor(t / d.period));
    double rem = t - static_cast<double>(j) * d.period;
    // floor roundoff can leave rem marginally outside [0, T)
    if (rem < 0.0) { rem += d.period; --j; }
    if (rem >= d.period) { rem -= d.period; ++j; }
    return rem < d.on_fraction ? d.amplitude : 0.0;
}

} // namespace hml
