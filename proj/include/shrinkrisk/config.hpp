#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace shrinkrisk {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Flat experiment configuration. Every key can come from a JSON config file
// and be overridden by a CLI flag of the same name.
struct ExperimentConfig {
    std::uint64_t seed = 12345;
    int n = 200;
    int p = 160;
    std::string c = "js";  // "js" selects (p-2)/p, otherwise a number

    // beta'Sigma beta grid for the figure command
    double snr_min = 0.1;
    double snr_max = 1000.0;
    int snr_points = 60;
    bool snr_log = true;

    // (c, t) grid for the phase command
    double phase_c_min = 0.0;
    double phase_c_max = 3.0;
    double phase_t_min = 0.0;
    double phase_t_max = 0.95;
    int phase_points = 60;

    long reps = 100000;
    std::string out;  // output path; stdout for report commands when empty
    int threads = 1;

    std::string asym_c = "js";  // tuning used by the figure's asymptotic curve
    double snr = 1.0;           // beta'Sigma beta for the single-instance risk command
    int rmt_n = 2000;
    int rmt_p = 1000;
    bool verify = false;
    bool inject_fault = false;  // verification-suite fault hook

    void validate() const;
};

// Loads a flat JSON document; unknown keys are rejected.
ExperimentConfig load_config(const std::string& path);

// Resolves the "js" token to (p-2)/p, otherwise parses a number.
double resolve_c(const std::string& c, int p);

}  // namespace shrinkrisk
