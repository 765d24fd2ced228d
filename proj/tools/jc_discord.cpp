#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "jcd/analysis.hpp"
#include "jcd/commands.hpp"

namespace {

using jcd::cli::RunConfig;

// One subcommand's raw flag storage plus the option handles needed to tell
// which flags the user actually passed (a --config file must not override
// explicit flags).
struct SubFlags {
  CLI::App* sub = nullptr;
  int n = 1;
  double lambda0 = 0.5;
  double temp_ratio = 0.0;
  double tau_max = 30.0;
  int tau_steps = 0;
  int theta_steps = 181;
  int phi_steps = 37;
  double theta = 1.5707963267948966;
  std::string out, plot, config_path;
  std::uint64_t seed = 1;

  CLI::Option *n_opt = nullptr, *lambda0_opt = nullptr, *temp_opt = nullptr,
              *tau_max_opt = nullptr, *tau_steps_opt = nullptr,
              *theta_steps_opt = nullptr, *phi_steps_opt = nullptr,
              *theta_opt = nullptr, *out_opt = nullptr, *plot_opt = nullptr,
              *seed_opt = nullptr;

  RunConfig defaults;
};

void add_common_flags(SubFlags& f, bool with_theta) {
  CLI::App* sub = f.sub;
  f.n_opt = sub->add_option("--n", f.n, "initial cavity photon number");
  f.lambda0_opt =
      sub->add_option("--lambda0", f.lambda0, "initial ground-state population");
  f.temp_opt = sub->add_option("--temp-ratio", f.temp_ratio,
                               "temperature ratio omega/KT (alternative to --lambda0)");
  f.tau_max_opt = sub->add_option("--tau-max", f.tau_max,
                                  "end of the dimensionless time grid");
  f.tau_steps_opt = sub->add_option(
      "--tau-steps", f.tau_steps, "tau grid points (0 = sampling rule)");
  f.theta_steps_opt =
      sub->add_option("--theta-steps", f.theta_steps, "theta grid points");
  f.phi_steps_opt =
      sub->add_option("--phi-steps", f.phi_steps, "phi grid points");
  if (with_theta)
    f.theta_opt = sub->add_option("--theta", f.theta,
                                  "fixed measurement angle (radians)");
  f.out_opt = sub->add_option("--out", f.out, "output file path");
  f.plot_opt = sub->add_option("--plot", f.plot, "write a static SVG plot here");
  f.seed_opt = sub->add_option("--seed", f.seed,
                               "seed for randomized sweeps (reserved)");
  sub->add_option("--config", f.config_path,
                  "key=value config file; flags override it");
}

RunConfig build_config(const SubFlags& f) {
  RunConfig config = f.defaults;
  if (!f.config_path.empty()) jcd::cli::apply_config_file(config, f.config_path);
  if (f.n_opt->count()) {
    config.n = f.n;
    config.n_set = true;
  }
  if (f.lambda0_opt->count()) config.lambda0 = f.lambda0;
  if (f.temp_opt->count()) config.temp_ratio = f.temp_ratio;
  if (f.tau_max_opt->count()) config.tau_max = f.tau_max;
  if (f.tau_steps_opt->count()) config.tau_steps = f.tau_steps;
  if (f.theta_steps_opt->count()) config.theta_steps = f.theta_steps;
  if (f.phi_steps_opt->count()) config.phi_steps = f.phi_steps;
  if (f.theta_opt && f.theta_opt->count()) config.theta = f.theta;
  if (f.out_opt->count()) config.output_path = f.out;
  if (f.plot_opt->count()) config.plot_path = f.plot;
  if (f.seed_opt->count()) config.seed = f.seed;
  return config;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Thermal-atom Jaynes-Cummings discord and inversion dynamics"};
  app.require_subcommand(1);

  SubFlags surface, dynamics, slice, beats, validate;
  surface.sub = app.add_subcommand(
      "surface", "discord over a (tau, theta) grid -> CSV tau,theta,discord");
  dynamics.sub = app.add_subcommand(
      "dynamics",
      "minimum discord and inversion vs tau -> CSV tau,delta,theta_star,inversion");
  slice.sub = app.add_subcommand(
      "slice", "fixed-theta discord vs tau -> CSV tau,discord");
  beats.sub = app.add_subcommand(
      "beats", "predicted vs measured beat structure -> summary + CSV");
  validate.sub = app.add_subcommand(
      "validate", "cross-validate closed forms against the numerical oracle");

  add_common_flags(surface, false);
  add_common_flags(dynamics, false);
  add_common_flags(slice, true);
  add_common_flags(beats, false);
  add_common_flags(validate, false);

  // Per-command defaults: validation compares on the standard grid, beats
  // needs a span of at least two beat periods.
  validate.defaults.tau_max = 20.0;
  validate.defaults.tau_steps = 64;
  validate.defaults.theta_steps = 19;
  validate.defaults.phi_steps = 5;
  beats.defaults.tau_max = 0.0;  // filled from the prediction below

  int predict_n = 0;
  CLI::App* predict =
      app.add_subcommand("predict", "closed beat arithmetic for one n");
  predict->add_option("--n", predict_n, "initial cavity photon number")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return jcd::cli::kBadParameters;
  }

  try {
    if (app.got_subcommand(surface.sub))
      return jcd::cli::cmd_surface(build_config(surface));
    if (app.got_subcommand(dynamics.sub))
      return jcd::cli::cmd_dynamics(build_config(dynamics));
    if (app.got_subcommand(slice.sub))
      return jcd::cli::cmd_slice(build_config(slice));
    if (app.got_subcommand(beats.sub)) {
      RunConfig config = build_config(beats);
      if (config.tau_max <= 0.0 && config.n >= 1) {
        // Default span: a bit over three predicted beat periods.
        config.tau_max =
            3.25 * jcd::analysis::predicted_beats(config.n).beat_period;
      }
      return jcd::cli::cmd_beats(config);
    }
    if (app.got_subcommand(validate.sub))
      return jcd::cli::cmd_validate(build_config(validate));
    if (app.got_subcommand(predict)) return jcd::cli::cmd_predict(predict_n);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return jcd::cli::kBadParameters;
  }
  return jcd::cli::kBadParameters;
}
