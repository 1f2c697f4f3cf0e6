#pragma once

#include <optional>
#include <string>

#include "hml/model.hpp"

namespace hml {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct SweepAxis {
    std::string parameter; // "amplitude" or "drive_frequency"
    double start = 0.0;
    double stop = 0.0;
    double step = 1.0;
};

/// One run of the simulator: model parameters, grid resolution, checkpoint,
/// optional sweep axis, and output settings. All frequencies in units of g,
/// times in 1/g. Defaults follow the reference parameter set
/// (Omega = 12, omega_c = 0.5, omega0 = 1, h = 1.5, N = 200, t' = T/2).
struct RunConfig {
    ModelParams model;
    int steps_per_period = 512;
    int n_periods = 35;        // evolution horizon in drive periods
    int checkpoint_periods = 35;
    double squeezing = 1.0;    // r for the bosonic path
    std::optional<SweepAxis> sweep;
    std::string output_dir = "out";
    std::string backend = "volterra"; // volterra | lattice | both
    int workers = 1;
    bool emit_spectra = false;

    RunConfig();

    void validate() const;

    /// Round-trippable JSON document (sorted keys, deterministic).
    std::string to_json() const;
    static RunConfig from_json_text(const std::string& text);
    static RunConfig from_json_file(const std::string& path);
};

} // namespace hml
