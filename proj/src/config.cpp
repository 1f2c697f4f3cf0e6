#include "hml/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hml {

using nlohmann::json;

namespace {

constexpr double two_pi = 2.0 * DrivingProtocol::pi();

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        if (!allowed.count(it.key()))
            throw ConfigError("config: unknown field \"" + where + "." +
                              it.key() + "\"");
    }
}

template <typename T>
void get_to(const json& obj, const std::string& where, const char* key, T& out) {
    if (!obj.contains(key)) return;
    try {
        obj.at(key).get_to(out);
    } catch (const json::exception& e) {
        throw ConfigError("config: bad value for \"" + where + "." + key +
                          "\": " + e.what());
    }
}

} // namespace

RunConfig::RunConfig() {
    model.omega0 = 1.0;
    model.omega_c = 0.5;
    model.hopping = 1.5;
    model.coupling = 1.0;
    model.n_sites = 200;
    model.drive.amplitude = 0.0;
    model.drive.period = two_pi / 12.0;
    model.drive.on_fraction = 0.5 * model.drive.period;
}

void RunConfig::validate() const {
    model.validate();
    if (steps_per_period < 2)
        throw ConfigError("config: grid.steps_per_period must be >= 2");
    if (n_periods < 1) throw ConfigError("config: grid.n_periods must be >= 1");
    if (checkpoint_periods < 0 || checkpoint_periods > n_periods)
        throw ConfigError("config: checkpoint_periods must be in [0, n_periods]");
    if (!(squeezing >= 0.0)) throw ConfigError("config: squeezing must be >= 0");
    if (backend != "volterra" && backend != "lattice" && backend != "both")
        throw ConfigError("config: backend must be volterra, lattice or both");
    if (workers < 1) throw ConfigError("config: workers must be >= 1");
    if (sweep) {
        if (sweep->parameter != "amplitude" && sweep->parameter != "drive_frequency")
            throw ConfigError("config: sweep.parameter must be amplitude or drive_frequency");
        if (!std::isfinite(sweep->start) || !std::isfinite(sweep->stop))
            throw ConfigError("config: sweep bounds must be finite");
        if (!(sweep->step > 0.0)) throw ConfigError("config: sweep.step must be > 0");
        if (sweep->stop < sweep->start)
            throw ConfigError("config: sweep.stop must be >= sweep.start");
    }
}

std::string RunConfig::to_json() const {
    json j;
    j["model"] = {
        {"omega0", model.omega0},
        {"omega_c", model.omega_c},
        {"hopping", model.hopping},
        {"coupling", model.coupling},
        {"n_sites", model.n_sites},
        {"mqe_kind", model.mqe_kind == MqeKind::qubit ? "qubit" : "boson"},
        {"boundary", model.boundary == Boundary::open ? "open" : "periodic"},
    };
    j["drive"] = {
        {"amplitude", model.drive.amplitude},
        {"drive_frequency", model.drive.drive_frequency()},
        {"t_prime_ratio", model.drive.on_fraction / model.drive.period},
    };
    j["grid"] = {
        {"steps_per_period", steps_per_period},
        {"n_periods", n_periods},
    };
    j["checkpoint_periods"] = checkpoint_periods;
    j["squeezing"] = squeezing;
    j["output_dir"] = output_dir;
    j["backend"] = backend;
    j["workers"] = workers;
    j["emit_spectra"] = emit_spectra;
    if (sweep) {
        j["sweep"] = {
            {"parameter", sweep->parameter},
            {"start", sweep->start},
            {"stop", sweep->stop},
            {"step", sweep->step},
        };
    }
    return j.dump();
}

RunConfig RunConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    RunConfig cfg;
    check_keys(j, "", {"model", "drive", "grid", "checkpoint_periods",
                       "squeezing", "output_dir", "backend", "workers",
                       "emit_spectra", "sweep"});
    if (j.contains("model")) {
        const json& m = j["model"];
        check_keys(m, "model", {"omega0", "omega_c", "hopping", "coupling",
                                "n_sites", "mqe_kind", "boundary"});
        get_to(m, "model", "omega0", cfg.model.omega0);
        get_to(m, "model", "omega_c", cfg.model.omega_c);
        get_to(m, "model", "hopping", cfg.model.hopping);
        get_to(m, "model", "coupling", cfg.model.coupling);
        get_to(m, "model", "n_sites", cfg.model.n_sites);
        std::string kind = "qubit", boundary = "periodic";
        get_to(m, "model", "mqe_kind", kind);
        get_to(m, "model", "boundary", boundary);
        if (kind == "qubit") cfg.model.mqe_kind = MqeKind::qubit;
        else if (kind == "boson") cfg.model.mqe_kind = MqeKind::boson;
        else throw ConfigError("config: model.mqe_kind must be qubit or boson");
        if (boundary == "open") cfg.model.boundary = Boundary::open;
        else if (boundary == "periodic") cfg.model.boundary = Boundary::periodic;
        else throw ConfigError("config: model.boundary must be open or periodic");
    }
    if (j.contains("drive")) {
        const json& d = j["drive"];
        check_keys(d, "drive", {"amplitude", "drive_frequency", "period",
                                "t_prime_ratio"});
        double ratio = cfg.model.drive.on_fraction / cfg.model.drive.period;
        get_to(d, "drive", "amplitude", cfg.model.drive.amplitude);
        if (d.contains("drive_frequency") && d.contains("period"))
            throw ConfigError("config: give drive.drive_frequency or drive.period, not both");
        if (d.contains("drive_frequency")) {
            double omega = 0.0;
            get_to(d, "drive", "drive_frequency", omega);
            if (!(omega > 0.0))
                throw ConfigError("config: drive.drive_frequency must be > 0");
            cfg.model.drive.period = two_pi / omega;
        }
        get_to(d, "drive", "period", cfg.model.drive.period);
        get_to(d, "drive", "t_prime_ratio", ratio);
        if (!(ratio >= 0.0 && ratio <= 1.0))
            throw ConfigError("config: drive.t_prime_ratio must be in [0, 1]");
        cfg.model.drive.on_fraction = ratio * cfg.model.drive.period;
    }
    if (j.contains("grid")) {
        const json& g = j["grid"];
        check_keys(g, "grid", {"steps_per_period", "n_periods"});
        get_to(g, "grid", "steps_per_period", cfg.steps_per_period);
        get_to(g, "grid", "n_periods", cfg.n_periods);
    }
    cfg.checkpoint_periods = cfg.n_periods;
    get_to(j, "", "checkpoint_periods", cfg.checkpoint_periods);
    get_to(j, "", "squeezing", cfg.squeezing);
    get_to(j, "", "output_dir", cfg.output_dir);
    get_to(j, "", "backend", cfg.backend);
    get_to(j, "", "workers", cfg.workers);
    get_to(j, "", "emit_spectra", cfg.emit_spectra);
    if (j.contains("sweep")) {
        const json& s = j["sweep"];
        check_keys(s, "sweep", {"parameter", "start", "stop", "step"});
        SweepAxis axis;
        get_to(s, "sweep", "parameter", axis.parameter);
        get_to(s, "sweep", "start", axis.start);
        get_to(s, "sweep", "stop", axis.stop);
        get_to(s, "sweep", "step", axis.step);
        cfg.sweep = axis;
    }
    cfg.validate();
    return cfg;
}

RunConfig RunConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

} // namespace hml
