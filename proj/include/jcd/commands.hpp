#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "jcd/exec.hpp"
#include "jcd/oracle.hpp"

namespace jcd::cli {

enum ExitCode : int {
  kOk = 0,
  kValidationFailed = 1,
  kIoError = 2,
  kBadParameters = 3,
};

/// Parameters shared by all subcommands. Fields left at their defaults are
/// filled per command (sampling rule for tau_steps, per-command output
/// names). Exactly one of lambda0/temp_ratio may be supplied.
struct RunConfig {
  int n = 1;
  bool n_set = false;  // whether n came from the user (validate expands a
                       // default matrix otherwise)
  std::optional<double> lambda0;
  std::optional<double> temp_ratio;
  double tau_max = 30.0;
  int tau_steps = 0;  // 0 -> analysis sampling rule
  int theta_steps = 181;
  int phi_steps = 37;
  double theta = 1.5707963267948966;  // slice only
  std::string output_path;
  std::string plot_path;  // empty -> no plot
  std::uint64_t seed = 1;
  Exec exec = Exec::parallel;
};

/// lambda0 verbatim, or via the corrected thermal formula from temp_ratio;
/// lambda0 = 0.5 when neither is given. Throws when both are given.
ThermalWeights resolve_weights(const RunConfig& config);

/// Applies a key=value config file onto the config. Keys mirror the long
/// flags: n, lambda0, temp-ratio, tau-max, tau-steps, theta-steps,
/// phi-steps, theta, out, plot, seed. Unknown keys throw.
void apply_config_file(RunConfig& config, const std::string& path);

/// CSV tau,theta,discord over the (tau, theta) grid, row-major in tau.
int cmd_surface(const RunConfig& config);

/// CSV tau,delta,theta_star,inversion.
int cmd_dynamics(const RunConfig& config);

/// CSV tau,discord at fixed theta.
int cmd_slice(const RunConfig& config);

/// Predicted-vs-measured beat summary for inversion and minimum discord,
/// plus CSV tau,delta,inversion.
int cmd_beats(const RunConfig& config);

/// Closed-form-vs-oracle validation; exit 0 iff every combo passes.
/// opts_override replaces the config-derived oracle options (test hook).
int cmd_validate(const RunConfig& config,
                 const oracle::ValidationOptions* opts_override = nullptr);

/// Exact and large-n beat arithmetic for one n.
int cmd_predict(int n);

}  // namespace jcd::cli
