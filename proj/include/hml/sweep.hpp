#pragma once

#include <string>
#include <vector>

#include "hml/config.hpp"
#include "hml/floquet.hpp"

namespace hml {

struct SweepRecord {
    double swept_value = 0.0;
    std::vector<FloquetBoundState> fbs; // sorted by residue descending
    double abs_c_checkpoint = 0.0;      // |c| at the checkpoint time (lattice)
    double concurrence_checkpoint = 0.0;
    double log_negativity_checkpoint = 0.0;
    double steady_concurrence = 0.0;     // Z^4 of the dominant FBS, 0 if none
    double steady_log_negativity = 0.0;  // residue-formula prediction, 0 if none
};

struct SweepResult {
    RunConfig config;
    std::vector<SweepRecord> records; // ordered by swept value
};

/// Solves c(t) with the configured backend(s) and writes trajectory +
/// entanglement CSVs and a JSON summary. Returns the written paths.
std::vector<std::string> run_evolve(const RunConfig& cfg);

/// Quasienergy spectrum CSV (eps, Z, is_fbs) for the configured point.
std::string run_spectrum(const RunConfig& cfg);

/// Drive-amplitude sweep; records FBS set, |c| / concurrence at the
/// checkpoint time and the residue predictions per point.
SweepResult run_sweep_amplitude(const RunConfig& cfg);

/// Drive-frequency sweep with the bosonic entanglement path.
SweepResult run_sweep_frequency(const RunConfig& cfg);

/// CSV + JSON emission for a finished sweep; returns the written paths.
std::vector<std::string> write_sweep_result(const SweepResult& result,
                                            const std::string& stem);

/// Deterministic formatting used for every CSV number.
std::string format_number(double v);

} // namespace hml
