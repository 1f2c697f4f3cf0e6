#include "hml/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "hml/dynamics.hpp"
#include "hml/entanglement.hpp"

namespace hml {

namespace fs = std::filesystem;
using nlohmann::json;

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {

std::ofstream open_output(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    const fs::path path = fs::path(cfg.output_dir) / name;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot open output file " + path.string());
    return out;
}

void write_header(std::ofstream& out, const RunConfig& cfg,
                  const std::string& columns) {
    out << "# config " << cfg.to_json() << "\n";
    out << "# columns " << columns << "\n";
}

json fbs_to_json(const std::vector<FloquetBoundState>& fbs) {
    json arr = json::array();
    for (const auto& b : fbs) {
        arr.push_back({{"quasienergy", b.quasienergy},
                       {"residue", b.residue},
                       {"localization_length", b.localization_length},
                       {"gap_distance", b.gap_distance}});
    }
    return arr;
}

AmplitudeTrajectory solve_backend(const RunConfig& cfg, const std::string& backend) {
    const TimeGrid grid =
        TimeGrid::periods(cfg.model.drive, cfg.n_periods, cfg.steps_per_period);
    return backend == "lattice" ? solve_lattice(cfg.model, grid)
                                : solve_volterra(cfg.model, grid);
}

void write_trajectory_files(const RunConfig& cfg, const AmplitudeTrajectory& traj,
                            const std::string& backend,
                            std::vector<std::string>& paths) {
    {
        auto out = open_output(cfg, "trajectory_" + backend + ".csv");
        write_header(out, cfg, "t,re_c,im_c,abs_c");
        for (int j = 0; j < traj.grid.size(); ++j) {
            const cxd c = traj.values[j];
            out << format_number(traj.grid.time(j)) << ',' << format_number(c.real())
                << ',' << format_number(c.imag()) << ','
                << format_number(std::abs(c)) << "\n";
        }
        paths.push_back((fs::path(cfg.output_dir) / ("trajectory_" + backend + ".csv")).string());
    }
    {
        const GaussianState v0 = tmsv_covariance(cfg.squeezing);
        auto out = open_output(cfg, "entanglement_" + backend + ".csv");
        write_header(out, cfg, "t,abs_c,concurrence,log_negativity");
        for (int j = 0; j < traj.grid.size(); ++j) {
            cxd c = traj.values[j];
            // contractivity holds up to solver roundoff; renormalize the tail
            if (std::abs(c) > 1.0) c /= std::abs(c);
            const double conc = wootters_concurrence(two_qubit_state(c));
            const double en = logarithmic_negativity(propagate_covariance(v0, c));
            out << format_number(traj.grid.time(j)) << ',' << format_number(std::abs(c))
                << ',' << format_number(conc) << ',' << format_number(en) << "\n";
        }
        paths.push_back((fs::path(cfg.output_dir) / ("entanglement_" + backend + ".csv")).string());
    }
}

SweepRecord evaluate_point(const ModelParams& p, double swept_value,
                           int checkpoint_periods, double squeezing) {
    SweepRecord rec;
    rec.swept_value = swept_value;

    QuasienergySpectrum spec = quasienergy_spectrum(p);
    rec.fbs = flag_fbs(spec, p);

    // full stroboscopic sum = lattice-backend c(mT), exact at finite N
    const StroboscopicValue v =
        stroboscopic_prediction(spec, p, checkpoint_periods);
    cxd c = v.full_sum;
    if (std::abs(c) > 1.0) c /= std::abs(c);
    rec.abs_c_checkpoint = std::abs(c);
    rec.concurrence_checkpoint = wootters_concurrence(two_qubit_state(c));
    rec.log_negativity_checkpoint =
        logarithmic_negativity(propagate_covariance(tmsv_covariance(squeezing), c));
    if (!rec.fbs.empty()) {
        const double z = rec.fbs.front().residue;
        rec.steady_concurrence = steady_concurrence(z);
        rec.steady_log_negativity = steady_log_negativity(z, squeezing);
    }
    return rec;
}

SweepResult run_sweep(const RunConfig& cfg, const std::string& axis_name) {
    RunConfig local = cfg;
    if (!local.sweep) {
        // default grids bracketing the reference windows
        SweepAxis axis;
        axis.parameter = axis_name;
        if (axis_name == "amplitude") {
            axis.start = 0.0; axis.stop = 40.0; axis.step = 0.5;
        } else {
            axis.start = 2.0; axis.stop = 20.0; axis.step = 0.25;
        }
        local.sweep = axis;
    }
    if (local.sweep->parameter != axis_name)
        throw ConfigError("config: sweep.parameter does not match the subcommand");
    local.validate();

    const SweepAxis& axis = *local.sweep;
    const int n_points =
        static_cast<int>(std::floor((axis.stop - axis.start) / axis.step + 1e-9)) + 1;
    const double t_prime_ratio =
        local.model.drive.on_fraction / local.model.drive.period;

    std::vector<SweepRecord> records(n_points);
    std::atomic<int> cursor{0};
    std::vector<std::string> errors(n_points);

    auto worker = [&]() {
        for (int i = cursor.fetch_add(1); i < n_points; i = cursor.fetch_add(1)) {
            const double value = axis.start + i * axis.step;
            ModelParams p = local.model;
            if (axis_name == "amplitude") {
                p.drive.amplitude = value;
            } else {
                p.drive.period = 2.0 * DrivingProtocol::pi() / value;
                p.drive.on_fraction = t_prime_ratio * p.drive.period;
            }
            try {
                records[i] = evaluate_point(p, value, local.checkpoint_periods,
                                            local.squeezing);
            } catch (const std::exception& e) {
                errors[i] = e.what();
            }
        }
    };

    const int n_workers = std::min(local.workers, n_points);
    std::vector<std::thread> pool;
    for (int w = 1; w < n_workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();

    for (const auto& err : errors)
        if (!err.empty()) throw ModelError("sweep point failed: " + err);

    return SweepResult{local, std::move(records)};
}

} // namespace

std::vector<std::string> run_evolve(const RunConfig& cfg) {
    cfg.validate();
    std::vector<std::string> paths;

    std::vector<std::string> backends;
    if (cfg.backend == "both") backends = {"volterra", "lattice"};
    else backends = {cfg.backend};

    cxd c_ckpt(0, 0);
    for (const auto& backend : backends) {
        const AmplitudeTrajectory traj = solve_backend(cfg, backend);
        write_trajectory_files(cfg, traj, backend, paths);
        c_ckpt = traj.at_time(cfg.checkpoint_periods * cfg.model.drive.period);
    }

    QuasienergySpectrum spec = quasienergy_spectrum(cfg.model);
    const auto fbs = flag_fbs(spec, cfg.model);
    if (std::abs(c_ckpt) > 1.0) c_ckpt /= std::abs(c_ckpt);

    json summary;
    summary["config"] = json::parse(cfg.to_json());
    summary["fbs"] = fbs_to_json(fbs);
    summary["checkpoint"] = {
        {"time", cfg.checkpoint_periods * cfg.model.drive.period},
        {"abs_c", std::abs(c_ckpt)},
        {"concurrence", wootters_concurrence(two_qubit_state(c_ckpt))},
        {"log_negativity",
         logarithmic_negativity(
             propagate_covariance(tmsv_covariance(cfg.squeezing), c_ckpt))},
    };
    if (!fbs.empty()) {
        summary["steady_state"] = {
            {"concurrence", steady_concurrence(fbs.front().residue)},
            {"log_negativity",
             steady_log_negativity(fbs.front().residue, cfg.squeezing)},
        };
    }
    auto out = open_output(cfg, "summary.json");
    out << summary.dump(2) << "\n";
    paths.push_back((fs::path(cfg.output_dir) / "summary.json").string());
    return paths;
}

std::string run_spectrum(const RunConfig& cfg) {
    cfg.validate();
    QuasienergySpectrum spec = quasienergy_spectrum(cfg.model);
    flag_fbs(spec, cfg.model);
    const auto fbs_idx = spec.fbs_indices;
    auto flagged = [&](int n) {
        for (int i : fbs_idx) if (i == n) return true;
        return false;
    };
    const std::string name = "spectrum_F" + format_number(cfg.model.drive.amplitude) +
                             "_W" + format_number(cfg.model.drive.drive_frequency()) +
                             ".csv";
    auto out = open_output(cfg, name);
    write_header(out, cfg, "quasienergy,overlap,is_fbs");
    for (int n = 0; n < spec.size(); ++n) {
        out << format_number(spec.quasienergies[n]) << ','
            << format_number(spec.overlaps[n]) << ',' << (flagged(n) ? 1 : 0)
            << "\n";
    }
    return (fs::path(cfg.output_dir) / name).string();
}

SweepResult run_sweep_amplitude(const RunConfig& cfg) {
    return run_sweep(cfg, "amplitude");
}

SweepResult run_sweep_frequency(const RunConfig& cfg) {
    RunConfig local = cfg;
    local.model.mqe_kind = MqeKind::boson;
    return run_sweep(local, "drive_frequency");
}

std::vector<std::string> write_sweep_result(const SweepResult& result,
                                            const std::string& stem) {
    const RunConfig& cfg = result.config;
    std::vector<std::string> paths;
    {
        auto out = open_output(cfg, stem + ".csv");
        write_header(out, cfg,
                     "swept_value,n_fbs,fbs_quasienergy,fbs_residue,abs_c_checkpoint,"
                     "concurrence_checkpoint,log_negativity_checkpoint,"
                     "steady_concurrence,steady_log_negativity");
        for (const auto& r : result.records) {
            out << format_number(r.swept_value) << ',' << r.fbs.size() << ',';
            if (r.fbs.empty()) out << ",";
            else
                out << format_number(r.fbs.front().quasienergy) << ','
                    << format_number(r.fbs.front().residue);
            out << ',' << format_number(r.abs_c_checkpoint) << ','
                << format_number(r.concurrence_checkpoint) << ','
                << format_number(r.log_negativity_checkpoint) << ','
                << format_number(r.steady_concurrence) << ','
                << format_number(r.steady_log_negativity) << "\n";
        }
        paths.push_back((fs::path(cfg.output_dir) / (stem + ".csv")).string());
    }
    {
        json summary;
        summary["config"] = json::parse(cfg.to_json());
        json points = json::array();
        for (const auto& r : result.records) {
            points.push_back({{"swept_value", r.swept_value},
                              {"fbs", fbs_to_json(r.fbs)},
                              {"abs_c_checkpoint", r.abs_c_checkpoint},
                              {"concurrence_checkpoint", r.concurrence_checkpoint},
                              {"log_negativity_checkpoint", r.log_negativity_checkpoint},
                              {"steady_concurrence", r.steady_concurrence},
                              {"steady_log_negativity", r.steady_log_negativity}});
        }
        summary["points"] = std::move(points);
        auto out = open_output(cfg, stem + ".json");
        out << summary.dump(2) << "\n";
        paths.push_back((fs::path(cfg.output_dir) / (stem + ".json")).string());
    }

    if (cfg.emit_spectra) {
        const double t_prime_ratio =
            cfg.model.drive.on_fraction / cfg.model.drive.period;
        for (const auto& r : result.records) {
            RunConfig point = cfg;
            point.sweep.reset();
            if (cfg.sweep->parameter == "amplitude") {
                point.model.drive.amplitude = r.swept_value;
            } else {
                point.model.drive.period =
                    2.0 * DrivingProtocol::pi() / r.swept_value;
                point.model.drive.on_fraction =
                    t_prime_ratio * point.model.drive.period;
            }
            paths.push_back(run_spectrum(point));
        }
    }
    return paths;
}

} // namespace hml
