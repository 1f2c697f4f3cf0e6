#include "hml/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace hml {

namespace {

Eigen::MatrixXcd herm_exp(const Eigen::MatrixXd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
    const auto& vals = es.eigenvalues();
    const auto& vecs = es.eigenvectors();
    Eigen::VectorXcd phases(vals.size());
    for (int i = 0; i < vals.size(); ++i) {
        const double ph = -vals[i] * t;
        phases[i] = cxd(std::cos(ph), std::sin(ph));
    }
    return vecs.cast<cxd>() * phases.asDiagonal() * vecs.transpose().cast<cxd>();
}

double folded_distance(double a, double b, double omega) {
    double d = std::abs(a - b);
    d = std::fmod(d, omega);
    return std::min(d, omega - d);
}

std::vector<int> fbs_candidates(const QuasienergySpectrum& s,
                                const ModelParams& p, const FbsCriteria& crit) {
    const double gap_min = crit.gap_factor * 4.0 * p.hopping / p.n_sites;
    const int head = 1 + (p.n_sites + 9) / 10;
    std::vector<int> out;
    for (int n = 0; n < s.size(); ++n) {
        if (s.overlaps[n] < crit.z_min) continue;
        if (s.eigenvectors.col(n).head(head).squaredNorm() < crit.head_weight_min)
            continue;
        double gap = std::numeric_limits<double>::infinity();
        for (int m = 0; m < s.size(); ++m) {
            if (m == n || s.overlaps[m] >= crit.z_min) continue;
            gap = std::min(gap, folded_distance(s.quasienergies[n],
                                                s.quasienergies[m],
                                                s.drive_frequency));
        }
        if (gap >= gap_min) out.push_back(n);
    }
    std::sort(out.begin(), out.end(), [&](int a, int b) {
        return s.overlaps[a] > s.overlaps[b];
    });
    return out;
}

// Least-squares slope of ln|psi| over the lattice sites carrying weight.
double localization_length(const Eigen::VectorXcd& vec) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int count = 0;
    for (int site = 1; site < vec.size(); ++site) {
        const double a = std::abs(vec[site]);
        if (a < 1e-12) break;
        const double x = site, y = std::log(a);
        sx += x; sy += y; sxx += x * x; sxy += x * y;
        ++count;
    }
    if (count < 2) return 0.0;
    const double slope = (count * sxy - sx * sy) / (count * sxx - sx * sx);
    return slope < 0.0 ? -1.0 / slope : std::numeric_limits<double>::infinity();
}

} // namespace

Eigen::MatrixXd build_hamiltonian(const ModelParams& p, DriveSegment seg) {
    const int n = p.n_sites;
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n + 1, n + 1);
    h(0, 0) = p.omega0 + (seg == DriveSegment::on ? p.drive.amplitude : 0.0);
    for (int site = 1; site <= n; ++site) h(site, site) = p.omega_c;
    for (int site = 1; site < n; ++site) {
        h(site, site + 1) = -p.hopping;
        h(site + 1, site) = -p.hopping;
    }
    h(0, 1) = -p.coupling;
    h(1, 0) = -p.coupling;
    if (p.boundary == Boundary::periodic && n > 2) {
        h(1, n) = -p.hopping;
        h(n, 1) = -p.hopping;
    }
    return h;
}

Eigen::MatrixXcd one_period_propagator(const ModelParams& p) {
    const double T = p.drive.period;
    const double tp = p.drive.on_fraction;
    if (tp <= 0.0) return herm_exp(build_hamiltonian(p, DriveSegment::off), T);
    if (tp >= T) return herm_exp(build_hamiltonian(p, DriveSegment::on), T);
    return herm_exp(build_hamiltonian(p, DriveSegment::off), T - tp) *
           herm_exp(build_hamiltonian(p, DriveSegment::on), tp);
}

QuasienergySpectrum quasienergy_spectrum(const ModelParams& p) {
    p.validate();
    const Eigen::MatrixXcd u = one_period_propagator(p);
    const double T = p.drive.period;

    // Schur of a normal matrix: T is diagonal up to roundoff and the Schur
    // vectors are orthonormal eigenvectors, degeneracies included.
    Eigen::ComplexSchur<Eigen::MatrixXcd> schur(u, true);

    QuasienergySpectrum s;
    const int dim = static_cast<int>(u.rows());
    s.eigenvectors = schur.matrixU();
    s.drive_frequency = p.drive.drive_frequency();
    s.quasienergies.resize(dim);
    s.overlaps.resize(dim);
    for (int n = 0; n < dim; ++n) {
        const cxd lambda = schur.matrixT()(n, n);
        s.quasienergies[n] = -std::arg(lambda) / T;
        s.overlaps[n] = std::norm(s.eigenvectors(0, n));
    }
    return s;
}

std::vector<FloquetBoundState> detect_fbs(const QuasienergySpectrum& s,
                                          const ModelParams& p,
                                          const FbsCriteria& crit) {
    std::vector<int> candidates = fbs_candidates(s, p, crit);

    if (crit.convergence_check && !candidates.empty()) {
        ModelParams doubled = p;
        doubled.n_sites *= 2;
        const QuasienergySpectrum s2 = quasienergy_spectrum(doubled);
        const double window = crit.gap_factor * 4.0 * p.hopping / doubled.n_sites;
        std::vector<int> kept;
        for (int n : candidates) {
            double best_z = -1.0;
            for (int m = 0; m < s2.size(); ++m) {
                if (folded_distance(s.quasienergies[n], s2.quasienergies[m],
                                    s.drive_frequency) > window)
                    continue;
                best_z = std::max(best_z, s2.overlaps[m]);
            }
            if (best_z >= 0.0 &&
                std::abs(best_z - s.overlaps[n]) < crit.z_shift_tol)
                kept.push_back(n);
        }
        candidates = std::move(kept);
    }

    std::vector<FloquetBoundState> out;
    for (int n : candidates) {
        FloquetBoundState b;
        b.index = n;
        b.quasienergy = s.quasienergies[n];
        b.residue = s.overlaps[n];
        b.localization_length = localization_length(s.eigenvectors.col(n));
        double gap = std::numeric_limits<double>::infinity();
        for (int m = 0; m < s.size(); ++m) {
            if (m == n || s.overlaps[m] >= crit.z_min) continue;
            gap = std::min(gap, folded_distance(s.quasienergies[n],
                                                s.quasienergies[m],
                                                s.drive_frequency));
        }
        b.gap_distance = gap;
        out.push_back(b);
    }
    return out;
}

std::vector<FloquetBoundState> flag_fbs(QuasienergySpectrum& s,
                                        const ModelParams& p,
                                        const FbsCriteria& crit) {
    auto fbs = detect_fbs(s, p, crit);
    s.fbs_indices.clear();
    for (const auto& b : fbs) s.fbs_indices.push_back(b.index);
    return fbs;
}

StroboscopicValue stroboscopic_prediction(const QuasienergySpectrum& s,
                                          const ModelParams& p, int m) {
    const double t = m * p.drive.period;
    StroboscopicValue v{cxd(0, 0), cxd(0, 0)};
    for (int n = 0; n < s.size(); ++n) {
        const double ph = -s.quasienergies[n] * t;
        v.full_sum += s.overlaps[n] * cxd(std::cos(ph), std::sin(ph));
    }
    for (int n : s.fbs_indices) {
        const double ph = -s.quasienergies[n] * t;
        v.asymptote += s.overlaps[n] * cxd(std::cos(ph), std::sin(ph));
    }
    return v;
}

} // namespace hml
