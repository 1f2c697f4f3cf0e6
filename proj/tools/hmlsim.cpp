#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hml/sweep.hpp"

namespace {

struct CommonFlags {
    std::string config_path;
    std::string out_dir;
    std::string backend;
    double dt = 0.0;
    int workers = 0;
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
    cmd->add_option("--config", flags.config_path, "JSON config file");
    cmd->add_option("--out", flags.out_dir, "output directory");
    cmd->add_option("--workers", flags.workers, "sweep worker threads");
    cmd->add_option("--dt", flags.dt, "time step (converted to steps per period)");
    cmd->add_option("--backend", flags.backend, "volterra | lattice | both")
        ->check(CLI::IsMember({"volterra", "lattice", "both"}));
}

hml::RunConfig load_config(const CommonFlags& flags) {
    hml::RunConfig cfg = flags.config_path.empty()
                             ? hml::RunConfig{}
                             : hml::RunConfig::from_json_file(flags.config_path);
    if (!flags.out_dir.empty()) cfg.output_dir = flags.out_dir;
    if (!flags.backend.empty()) cfg.backend = flags.backend;
    if (flags.workers > 0) cfg.workers = flags.workers;
    if (flags.dt > 0.0) {
        const double spp = cfg.model.drive.period / flags.dt;
        cfg.steps_per_period = static_cast<int>(std::lround(spp));
        if (cfg.steps_per_period < 2 ||
            std::abs(spp - cfg.steps_per_period) > 1e-6 * spp)
            throw hml::ConfigError("--dt must divide the drive period");
    }
    cfg.validate();
    return cfg;
}

void print_paths(const std::vector<std::string>& paths) {
    for (const auto& p : paths) std::cout << "wrote " << p << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Driven-system decoherence and Floquet bound-state simulator"};
    app.require_subcommand(1);

    CommonFlags flags;
    auto* evolve = app.add_subcommand("evolve", "solve c(t) and entanglement trajectories");
    auto* spectrum = app.add_subcommand("spectrum", "quasienergy spectrum at one parameter point");
    auto* sweep_amp = app.add_subcommand("sweep-amplitude", "sweep the driving amplitude");
    auto* sweep_freq = app.add_subcommand("sweep-frequency", "sweep the driving frequency");
    auto* validate = app.add_subcommand("validate-config", "parse and validate a config file");
    for (auto* cmd : {evolve, spectrum, sweep_amp, sweep_freq, validate})
        add_common(cmd, flags);

    CLI11_PARSE(app, argc, argv);

    try {
        const hml::RunConfig cfg = load_config(flags);
        if (evolve->parsed()) {
            print_paths(hml::run_evolve(cfg));
        } else if (spectrum->parsed()) {
            std::cout << "wrote " << hml::run_spectrum(cfg) << "\n";
        } else if (sweep_amp->parsed()) {
            print_paths(hml::write_sweep_result(hml::run_sweep_amplitude(cfg),
                                                "sweep_amplitude"));
        } else if (sweep_freq->parsed()) {
            print_paths(hml::write_sweep_result(hml::run_sweep_frequency(cfg),
                                                "sweep_frequency"));
        } else if (validate->parsed()) {
            std::cout << cfg.to_json() << "\n";
        }
    } catch (const hml::ConfigError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
