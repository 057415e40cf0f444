#include "shrinkrisk/config.hpp"

#include <fstream>

#include <json.hpp>

namespace shrinkrisk {

void ExperimentConfig::validate() const {
    if (p < 3 || n < p) throw ConfigError("config: need n >= p >= 3");
    if (snr_points < 1 || !(snr_min >= 0.0) || !(snr_max >= snr_min)) {
        throw ConfigError("config: invalid snr grid");
    }
    if (snr_log && snr_min <= 0.0) throw ConfigError("config: log grid needs snr_min > 0");
    if (phase_points < 2 || !(phase_t_max < 1.0) || !(phase_t_min >= 0.0) ||
        !(phase_c_min >= 0.0) || !(phase_c_max >= phase_c_min) ||
        !(phase_t_max >= phase_t_min)) {
        throw ConfigError("config: invalid phase grid");
    }
    if (reps < 100) throw ConfigError("config: need reps >= 100");
    if (threads < 1) throw ConfigError("config: need threads >= 1");
    if (rmt_p < 1 || rmt_n < rmt_p) throw ConfigError("config: invalid rmt dimensions");
    resolve_c(c, p);
    resolve_c(asym_c, p);
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: parse error: ") + e.what());
    }
    ExperimentConfig cfg;
    try {
        for (const auto& [key, val] : j.items()) {
            if (key == "seed") cfg.seed = val.get<std::uint64_t>();
            else if (key == "n") cfg.n = val.get<int>();
            else if (key == "p") cfg.p = val.get<int>();
            else if (key == "c") cfg.c = val.is_string() ? val.get<std::string>()
                                                         : std::to_string(val.get<double>());
            else if (key == "snr_min") cfg.snr_min = val.get<double>();
            else if (key == "snr_max") cfg.snr_max = val.get<double>();
            else if (key == "snr_points") cfg.snr_points = val.get<int>();
            else if (key == "snr_log") cfg.snr_log = val.get<bool>();
            else if (key == "phase_c_min") cfg.phase_c_min = val.get<double>();
            else if (key == "phase_c_max") cfg.phase_c_max = val.get<double>();
            else if (key == "phase_t_min") cfg.phase_t_min = val.get<double>();
            else if (key == "phase_t_max") cfg.phase_t_max = val.get<double>();
            else if (key == "phase_points") cfg.phase_points = val.get<int>();
            else if (key == "reps") cfg.reps = val.get<long>();
            else if (key == "out") cfg.out = val.get<std::string>();
            else if (key == "threads") cfg.threads = val.get<int>();
            else if (key == "asym_c") cfg.asym_c = val.is_string() ? val.get<std::string>()
                                                                   : std::to_string(val.get<double>());
            else if (key == "snr") cfg.snr = val.get<double>();
            else if (key == "rmt_n") cfg.rmt_n = val.get<int>();
            else if (key == "rmt_p") cfg.rmt_p = val.get<int>();
            else if (key == "verify") cfg.verify = val.get<bool>();
            else if (key == "inject_fault") cfg.inject_fault = val.get<bool>();
            else throw ConfigError("config: unknown key '" + key + "'");
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config: bad value type: ") + e.what());
    }
    cfg.validate();
    return cfg;
}

double resolve_c(const std::string& c, int p) {
    if (c == "js") return (static_cast<double>(p) - 2.0) / p;
    try {
        size_t pos = 0;
        const double v = std::stod(c, &pos);
        if (pos != c.size() || !(v >= 0.0)) throw std::invalid_argument("range");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: c must be 'js' or a number >= 0, got '" + c + "'");
    }
}

}  // namespace shrinkrisk
