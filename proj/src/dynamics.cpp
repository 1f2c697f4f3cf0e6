#include "hml/dynamics.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <functional>

#include "hml/floquet.hpp"

namespace hml {

namespace {

bool near_integer(double x, double tol = 1e-9) {
    return std::abs(x - std::round(x)) < tol * std::max(1.0, std::abs(x));
}

bool segment_is_on(const DrivingProtocol& d, double t_mid) {
    const double j = std::floor(t_mid / d.period);
    double rem = t_mid - j * d.period;
    if (rem < 0.0) rem += d.period;
    if (rem >= d.period) rem -= d.period;
    return rem < d.on_fraction;
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int depth = 24) {
    struct Impl {
        const std::function<double(double)>& f;
        double run(double a, double fa, double b, double fb, double m,
                   double fm, double whole, double tol, int depth) const {
            const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
            const double flm = f(lm), frm = f(rm);
            const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
            const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
            if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
                return left + right + (left + right - whole) / 15.0;
            return run(a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
                   run(m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
        }
    } impl{f};
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return impl.run(a, fa, b, fb, m, fm, whole, tol, depth);
}

} // namespace

void TimeGrid::validate_for(const ModelParams& p) const {
    if (!(dt > 0.0)) throw GridMisaligned("TimeGrid: dt must be > 0");
    const DrivingProtocol& d = p.drive;
    if (!near_integer(d.period / dt) || !near_integer(d.on_fraction / dt))
        throw GridMisaligned("TimeGrid: T/dt and t'/dt must be integers");
    const double winding =
        dt * (std::abs(p.omega0) + std::abs(d.amplitude) +
              2.0 * p.hopping + std::abs(p.omega_c));
    if (winding > 0.5)
        throw StepTooLarge("TimeGrid: per-step phase winding exceeds 0.5 rad");
}

TimeGrid TimeGrid::periods(const DrivingProtocol& d, int m, int steps_per_period) {
    return TimeGrid{d.period / steps_per_period, m * steps_per_period};
}

cxd AmplitudeTrajectory::at_time(double t) const {
    const long idx = std::lround(t / grid.dt);
    if (idx < 0 || idx >= static_cast<long>(values.size()) ||
        std::abs(t - idx * grid.dt) > 1e-6 * std::max(1.0, std::abs(t)))
        throw ModelError("AmplitudeTrajectory: time off the grid");
    return values[idx];
}

AmplitudeTrajectory solve_volterra(const ModelParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate_for(p);

    const int n = grid.n_steps;
    const double dt = grid.dt;

    std::vector<cxd> kernel(n + 1);
    for (int k = 0; k <= n; ++k) kernel[k] = memory_kernel(p, k * dt);

    std::vector<cxd> c(n + 1);
    c[0] = cxd(1.0, 0.0);

    for (int j = 0; j < n; ++j) {
        // drive is constant on [t_j, t_{j+1}); the local phase factor is
        // exact, the trapezoid rule only has to track the slow convolution
        const double a = driving_amplitude(p.drive, grid.time(j) + 0.5 * dt);
        const double dphi = -(p.omega0 + a) * dt;
        const cxd estep(std::cos(dphi), std::sin(dphi));

        // trapezoidal product integration of the convolution at t_j and t_{j+1}
        cxd interior_j(0.0, 0.0), interior_j1(0.0, 0.0);
        for (int m = 1; m < j; ++m) interior_j += kernel[j - m] * c[m];
        for (int m = 1; m <= j; ++m) interior_j1 += kernel[j + 1 - m] * c[m];

        cxd conv_j = dt * interior_j;
        if (j > 0) conv_j += dt * 0.5 * (kernel[j] * c[0] + kernel[0] * c[j]);

        const cxd pred = estep * (c[j] - dt * conv_j);
        const cxd conv_j1 = dt * (0.5 * kernel[j + 1] * c[0] + interior_j1 +
                                  0.5 * kernel[0] * pred);
        c[j + 1] = estep * (c[j] - 0.5 * dt * conv_j) - 0.5 * dt * conv_j1;
    }

    return AmplitudeTrajectory{grid, std::move(c), Backend::volterra};
}

AmplitudeTrajectory solve_lattice(const ModelParams& p, const TimeGrid& grid) {
    p.validate();
    grid.validate_for(p);

    const int dim = p.n_sites + 1;
    const double dt = grid.dt;

    auto step_propagator = [&](DriveSegment seg) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(build_hamiltonian(p, seg));
        Eigen::VectorXcd phases(dim);
        for (int i = 0; i < dim; ++i) {
            const double ph = -es.eigenvalues()[i] * dt;
            phases[i] = cxd(std::cos(ph), std::sin(ph));
        }
        return Eigen::MatrixXcd(es.eigenvectors().cast<cxd>() *
                                phases.asDiagonal() *
                                es.eigenvectors().transpose().cast<cxd>());
    };
    const Eigen::MatrixXcd u_on = step_propagator(DriveSegment::on);
    const Eigen::MatrixXcd u_off = step_propagator(DriveSegment::off);

    Eigen::VectorXcd state = Eigen::VectorXcd::Zero(dim);
    state[0] = cxd(1.0, 0.0);

    std::vector<cxd> c(grid.n_steps + 1);
    c[0] = cxd(1.0, 0.0);
    Eigen::VectorXcd next(dim);
    for (int j = 0; j < grid.n_steps; ++j) {
        const bool on = segment_is_on(p.drive, grid.time(j) + 0.5 * dt);
        next.noalias() = (on ? u_on : u_off) * state;
        state.swap(next);
        c[j + 1] = state[0];
    }

    return AmplitudeTrajectory{grid, std::move(c), Backend::lattice};
}

MarkovianRates markovian_rates(const ModelParams& p) {
    p.validate();
    const double h2 = 2.0 * p.hopping;
    const double delta = p.omega0 - p.omega_c;
    const double g2 = p.coupling * p.coupling;
    const double pi = DrivingProtocol::pi();

    MarkovianRates r;
    const double edge = std::abs(std::abs(delta) - h2);
    if (edge < 1e-12 * h2)
        throw EdgeSingular("markovian_rates: omega0 at a band edge");

    if (std::abs(delta) < h2)
        r.gamma = g2 / std::sqrt(h2 * h2 - delta * delta);

    // Lamb shift: substitute omega = omega_c + 2h sin(theta); the band-edge
    // square-root singularities cancel and the integrand becomes
    // (g^2/pi) / (delta - 2h sin theta) on [-pi/2, pi/2].
    auto integrand = [&](double theta) {
        return (g2 / pi) / (delta - h2 * std::sin(theta));
    };
    const double lo = -0.5 * pi, hi = 0.5 * pi;
    if (std::abs(delta) > h2) {
        r.lamb_shift = adaptive_simpson(integrand, lo, hi, 1e-12);
    } else {
        const double theta0 = std::asin(delta / h2);
        auto excised = [&](double eps) {
            return adaptive_simpson(integrand, lo, theta0 - eps, 1e-12) +
                   adaptive_simpson(integrand, theta0 + eps, hi, 1e-12);
        };
        // symmetric excision error is linear in eps; Richardson to eps -> 0
        const double eps = 1e-3;
        r.lamb_shift = 2.0 * excised(0.5 * eps) - excised(eps);
    }
    return r;
}

AmplitudeTrajectory markovian_trajectory(const MarkovianRates& r, const TimeGrid& grid) {
    std::vector<cxd> c(grid.size());
    const cxd rate(-r.gamma, -r.lamb_shift);
    for (int j = 0; j < grid.size(); ++j) c[j] = std::exp(rate * grid.time(j));
    return AmplitudeTrajectory{grid, std::move(c), Backend::markovian};
}

MasterEqCoefficients master_eq_coefficients(const AmplitudeTrajectory& traj,
                                            const DrivingProtocol* drive) {
    const TimeGrid& g = traj.grid;
    const double dt = g.dt;
    const int n = g.n_steps;
    const auto& c = traj.values;

    auto is_switch = [&](int j) {
        if (!drive) return false;
        const double t = g.time(j);
        const double k = std::floor(t / drive->period + 0.5 * dt / drive->period);
        double rem = t - k * drive->period;
        return std::abs(rem) < 0.25 * dt ||
               std::abs(rem - drive->on_fraction) < 0.25 * dt;
    };

    MasterEqCoefficients out;
    out.grid = g;
    out.renormalized_frequency.assign(n + 1, 0.0);
    out.decay_rate.assign(n + 1, 0.0);
    out.valid.assign(n + 1, false);

    for (int j = 0; j <= n; ++j) {
        if (std::abs(c[j]) < 1e-8) continue;
        cxd cdot;
        const bool sw = is_switch(j);
        if (j == 0 || (sw && j + 2 <= n)) {
            cdot = (-3.0 * c[j] + 4.0 * c[j + 1] - c[j + 2]) / (2.0 * dt);
        } else if (j == n || sw) {
            cdot = (3.0 * c[j] - 4.0 * c[j - 1] + c[j - 2]) / (2.0 * dt);
        } else {
            cdot = (c[j + 1] - c[j - 1]) / (2.0 * dt);
        }
        const cxd ratio = cdot / c[j];
        out.renormalized_frequency[j] = -ratio.imag();
        out.decay_rate[j] = -ratio.real();
        out.valid[j] = true;
    }
    return out;
}

} // namespace hml
