#pragma once

#include "shrinkrisk/config.hpp"

namespace shrinkrisk {

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFail = 1;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDegenerate = 3;

// Relative out-of-sample risk curves along Gram eigenvector directions,
// one CSV row per (curve, signal-strength) cell.
int cmd_figure1(const ExperimentConfig& cfg);

// Worst-case phase diagram over a (c, t) grid, one CSV row per cell.
int cmd_phase(const ExperimentConfig& cfg);

// Single-instance exact risk report (JSON), with optional MC verification.
int cmd_risk(const ExperimentConfig& cfg);

// Integral-identity and spectrum diagnostics (JSON).
int cmd_rmt_check(const ExperimentConfig& cfg);

// Full oracle-equivalence suite (JSON summary); exit 0 iff all checks pass.
int cmd_verify(const ExperimentConfig& cfg);

}  // namespace shrinkrisk
