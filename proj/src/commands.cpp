#include "jcd/commands.hpp"

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "jcd/analysis.hpp"
#include "jcd/io.hpp"
#include "jcd/sweep.hpp"

namespace jcd::cli {

namespace {

std::vector<double> resolve_tau_grid(const RunConfig& config, bool delta_rate) {
  const int steps =
      config.tau_steps > 0
          ? config.tau_steps
          : analysis::recommended_tau_steps(config.n, config.tau_max, delta_rate);
  return sweep::tau_grid(config.tau_max, steps);
}

int emit(const RunConfig& config, const std::string& default_name,
         const std::string& csv) {
  const std::string path =
      config.output_path.empty() ? default_name : config.output_path;
  if (!write_text_file(path, csv)) {
    std::fprintf(stderr, "error: cannot write output file '%s'\n", path.c_str());
    return kIoError;
  }
  return kOk;
}

int emit_plot(const RunConfig& config, const std::string& svg) {
  if (config.plot_path.empty()) return kOk;
  if (!write_text_file(config.plot_path, svg)) {
    std::fprintf(stderr, "error: cannot write plot file '%s'\n",
                 config.plot_path.c_str());
    return kIoError;
  }
  return kOk;
}

}  // namespace

ThermalWeights resolve_weights(const RunConfig& config) {
  if (config.lambda0 && config.temp_ratio)
    throw std::invalid_argument("give either lambda0 or the temperature ratio, not both");
  if (config.temp_ratio) return weights_from_temperature(*config.temp_ratio);
  return weights_from_ground_population(config.lambda0.value_or(0.5));
}

void apply_config_file(RunConfig& config, const std::string& path) {
  for (const auto& [key, value] : read_key_value_file(path)) {
    if (key == "n") {
      config.n = std::stoi(value);
      config.n_set = true;
    } else if (key == "lambda0") {
      config.lambda0 = std::stod(value);
    } else if (key == "temp-ratio" || key == "temp_ratio") {
      config.temp_ratio = std::stod(value);
    } else if (key == "tau-max" || key == "tau_max") {
      config.tau_max = std::stod(value);
    } else if (key == "tau-steps" || key == "tau_steps") {
      config.tau_steps = std::stoi(value);
    } else if (key == "theta-steps" || key == "theta_steps") {
      config.theta_steps = std::stoi(value);
    } else if (key == "phi-steps" || key == "phi_steps") {
      config.phi_steps = std::stoi(value);
    } else if (key == "theta") {
      config.theta = std::stod(value);
    } else if (key == "out") {
      config.output_path = value;
    } else if (key == "plot") {
      config.plot_path = value;
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else {
      throw std::runtime_error("unknown config key: " + key);
    }
  }
}

int cmd_surface(const RunConfig& config) {
  const ThermalWeights w = resolve_weights(config);
  const std::vector<double> taus = resolve_tau_grid(config, false);
  const std::vector<double> thetas = sweep::theta_grid(config.theta_steps);
  const std::vector<double> values =
      sweep::discord_surface(w, config.n, taus, thetas, config.exec);

  std::string csv = "tau,theta,discord\n";
  for (std::size_t i = 0; i < taus.size(); ++i)
    for (std::size_t j = 0; j < thetas.size(); ++j)
      csv += g17(taus[i]) + "," + g17(thetas[j]) + "," +
             g17(values[i * thetas.size() + j]) + "\n";

  const int rc = emit(config, "surface.csv", csv);
  if (rc != kOk) return rc;
  if (!config.plot_path.empty())
    return emit_plot(config, heatmap_svg(taus, thetas, values));
  return kOk;
}

int cmd_dynamics(const RunConfig& config) {
  const ThermalWeights w = resolve_weights(config);
  const std::vector<double> taus = resolve_tau_grid(config, true);
  const std::vector<sweep::DynamicsPoint> points =
      sweep::dynamics_sweep(w, config.n, taus, {}, config.exec);

  std::string csv = "tau,delta,theta_star,inversion\n";
  for (const auto& p : points)
    csv += g17(p.tau) + "," + g17(p.delta) + "," + g17(p.theta_star) + "," +
           g17(p.inversion) + "\n";

  const int rc = emit(config, "dynamics.csv", csv);
  if (rc != kOk) return rc;
  if (!config.plot_path.empty()) {
    std::vector<double> delta(points.size()), inv(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      delta[i] = points[i].delta;
      inv[i] = points[i].inversion;
    }
    return emit_plot(config,
                     line_plot_svg(taus, {"delta", "inversion"}, {&delta, &inv}));
  }
  return kOk;
}

int cmd_slice(const RunConfig& config) {
  const ThermalWeights w = resolve_weights(config);
  const std::vector<double> taus = resolve_tau_grid(config, true);
  const std::vector<double> values =
      sweep::fixed_theta_slice(w, config.n, config.theta, taus, config.exec);

  std::string csv = "tau,discord\n";
  for (std::size_t i = 0; i < taus.size(); ++i)
    csv += g17(taus[i]) + "," + g17(values[i]) + "\n";

  const int rc = emit(config, "slice.csv", csv);
  if (rc != kOk) return rc;
  if (!config.plot_path.empty())
    return emit_plot(config, line_plot_svg(taus, {"discord"}, {&values}));
  return kOk;
}

int cmd_beats(const RunConfig& config) {
  if (config.n < 1) {
    std::fprintf(stderr, "error: beats needs n >= 1\n");
    return kBadParameters;
  }
  const ThermalWeights w = resolve_weights(config);
  const analysis::BeatPrediction pred = analysis::predicted_beats(config.n);
  if (config.tau_max < 2.0 * pred.beat_period) {
    std::fprintf(stderr,
                 "error: tau_max=%.6g spans fewer than two beat periods "
                 "(need >= %.6g)\n",
                 config.tau_max, 2.0 * pred.beat_period);
    return kBadParameters;
  }

  const std::vector<double> taus = resolve_tau_grid(config, true);
  const std::vector<sweep::DynamicsPoint> points =
      sweep::dynamics_sweep(w, config.n, taus, {}, config.exec);
  std::vector<double> delta(points.size()), inv(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    delta[i] = points[i].delta;
    inv[i] = points[i].inversion;
  }

  analysis::BeatReport inv_report, delta_report;
  analysis::PeriodRatios ratios;
  try {
    const auto delta_signal = analysis::make_signal(taus, delta);
    const auto inv_signal = analysis::make_signal(taus, inv);
    delta_report = analysis::beat_report(delta_signal);
    inv_report = analysis::beat_report(inv_signal);
    ratios = analysis::period_ratio(delta_signal, inv_signal);
  } catch (const analysis::insufficient_span_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kBadParameters;
  }

  std::printf("beats n=%d lambda0=%.17g tau_max=%.17g samples=%zu\n", config.n,
              w.lambda0, config.tau_max, taus.size());
  std::printf("predicted: mean_period=%.10g beat_period=%.10g "
              "oscillations_per_beat=%.10g large_n_approx=%.10g\n",
              pred.mean_period, pred.beat_period, pred.oscillations_per_beat,
              pred.large_n_approx);
  std::printf("inversion: mean_period=%.10g beat_period=%.10g "
              "oscillations_per_beat=%.10g extrema=%d beats=%zu\n",
              inv_report.mean_period, inv_report.beat_period,
              inv_report.oscillations_per_beat, inv_report.extrema_count,
              inv_report.envelope_minima.size());
  std::printf("delta:     mean_period=%.10g beat_period=%.10g "
              "oscillations_per_beat=%.10g extrema=%d beats=%zu\n",
              delta_report.mean_period, delta_report.beat_period,
              delta_report.oscillations_per_beat, delta_report.extrema_count,
              delta_report.envelope_minima.size());
  std::printf("delta/inversion ratios: mean_period=%.6g beat_period=%.6g\n",
              ratios.osc_ratio, ratios.beat_ratio);

  // Per-beat peak structure of delta (descriptive only; the published
  // "alternately high and low maxima" claim has no quantitative criterion).
  {
    const auto delta_signal = analysis::make_signal(taus, delta);
    const auto extrema = analysis::detect_extrema(delta_signal);
    const auto& nodes = delta_report.envelope_minima;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      double hi = 0.0, lo = 1e300;
      long count = 0;
      for (const auto& e : extrema) {
        if (e.kind != analysis::ExtremumKind::maximum) continue;
        if (e.tau <= nodes[k - 1] || e.tau > nodes[k]) continue;
        hi = std::max(hi, e.value);
        lo = std::min(lo, e.value);
        ++count;
      }
      std::printf("delta beat %zu: maxima=%ld highest=%.6g lowest=%.6g\n", k,
                  count, hi, count ? lo : 0.0);
    }
  }

  std::string csv = "tau,delta,inversion\n";
  for (std::size_t i = 0; i < taus.size(); ++i)
    csv += g17(taus[i]) + "," + g17(delta[i]) + "," + g17(inv[i]) + "\n";
  const int rc = emit(config, "beats.csv", csv);
  if (rc != kOk) return rc;
  if (!config.plot_path.empty())
    return emit_plot(config,
                     line_plot_svg(taus, {"delta", "inversion"}, {&delta, &inv}));
  return kOk;
}

int cmd_validate(const RunConfig& config,
                 const oracle::ValidationOptions* opts_override) {
  const std::vector<int> ns =
      config.n_set ? std::vector<int>{config.n} : std::vector<int>{0, 1, 2, 4, 8};
  std::vector<ThermalWeights> weights;
  if (config.lambda0 || config.temp_ratio) {
    weights.push_back(resolve_weights(config));
  } else {
    for (double l0 : {0.5, 0.75, 1.0})
      weights.push_back(weights_from_ground_population(l0));
  }

  const int steps = config.tau_steps > 0 ? config.tau_steps : 64;
  const std::vector<double> taus = sweep::tau_grid(config.tau_max, steps);

  oracle::ValidationOptions opts;
  if (opts_override) {
    opts = *opts_override;
  } else {
    opts.theta_points = config.theta_steps;
    opts.minimize_phi_points = config.phi_steps;
    opts.exec = config.exec;
  }

  bool first = true;
  oracle::ValidationReport merged;
  for (int n : ns)
    for (const ThermalWeights& w : weights) {
      const oracle::ValidationReport report =
          oracle::cross_validate(n, taus, w, opts);
      std::printf("--- n=%d lambda0=%.17g: %s\n", n, w.lambda0,
                  report.pass() ? "PASS" : "FAIL");
      std::fputs(report.table().c_str(), stdout);
      merged = first ? report : oracle::ValidationReport::merged(merged, report);
      first = false;
    }

  std::printf("=== aggregate over %zu combos: %s\n", ns.size() * weights.size(),
              merged.pass() ? "PASS" : "FAIL");
  std::fputs(merged.table().c_str(), stdout);

  if (!config.output_path.empty() &&
      !write_text_file(config.output_path, merged.key_values())) {
    std::fprintf(stderr, "error: cannot write output file '%s'\n",
                 config.output_path.c_str());
    return kIoError;
  }
  return merged.pass() ? kOk : kValidationFailed;
}

int cmd_predict(int n) {
  if (n < 1) {
    std::fprintf(stderr, "error: predict needs n >= 1\n");
    return kBadParameters;
  }
  const analysis::BeatPrediction pred = analysis::predicted_beats(n);
  std::printf("n                     = %d\n", n);
  std::printf("mean period (tau)     = %.10g\n", pred.mean_period);
  std::printf("beat period (tau)     = %.10g\n", pred.beat_period);
  std::printf("oscillations per beat = %.10g\n", pred.oscillations_per_beat);
  std::printf("large-n approximation = %.10g\n", pred.large_n_approx);
  return kOk;
}

}  // namespace jcd::cli
