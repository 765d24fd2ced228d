// Acceptance suite: every launch-blocking property of the library, one
// pass/fail line each. Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "jcd/analysis.hpp"
#include "jcd/commands.hpp"
#include "jcd/io.hpp"
#include "jcd/oracle.hpp"
#include "jcd/sweep.hpp"

using namespace jcd;

namespace {

const double kPi = 2.0 * std::asin(1.0);

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

int failures = 0;

void report(int index, const char* name, bool pass, const std::string& detail) {
  std::printf("criterion %2d [%-28s]: %s  (%s)\n", index, name,
              pass ? "PASS" : "FAIL", detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string format(const char* fmt, ...) {
  char buf[512];
  va_list args;
  va_start(args, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, args);
  va_end(args);
  return buf;
}

// ---------------------------------------------------------------------------

void criterion_oracle_equivalence() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<double> taus = sweep::tau_grid(20.0, 64);
  oracle::ValidationOptions opts;  // 19 theta points, 181x5 minimize grid

  bool first = true;
  oracle::ValidationReport merged;
  for (int n : {0, 1, 2, 4, 8})
    for (double lambda0 : {0.5, 0.75, 1.0}) {
      const oracle::ValidationReport r = oracle::cross_validate(
          n, taus, weights_from_ground_population(lambda0), opts);
      merged = first ? r : oracle::ValidationReport::merged(merged, r);
      first = false;
    }

  const double elapsed = seconds_since(t0);
  const double algebraic = std::max(
      {merged.joint_entries, merged.reduced_atom, merged.spectrum_joint,
       merged.spectrum_atom, merged.spectrum_conditional, merged.probabilities,
       merged.y_params, merged.discord_dev, merged.inversion_dev});
  const bool pass = merged.pass() && elapsed < 120.0;
  if (!merged.pass()) std::fputs(merged.table().c_str(), stdout);
  report(1, "oracle equivalence", pass,
         format("max algebraic dev %.2e < 1e-10, delta dev %.2e < 1e-8, %.1f s",
                algebraic, merged.delta_dev, elapsed));
}

void criterion_beat_number_n15() {
  const analysis::BeatPrediction pred = analysis::predicted_beats(15);
  const bool formula_ok = std::abs(pred.oscillations_per_beat - 30.99) < 0.005;

  const ThermalWeights half = weights_from_ground_population(0.5);
  const double tau_max = 3.25 * pred.beat_period;
  const std::vector<double> taus =
      sweep::tau_grid(tau_max, analysis::recommended_tau_steps(15, tau_max, false));
  const std::vector<double> values = sweep::inversion_sweep(half, 15, taus);
  const analysis::SampledSignal signal = analysis::make_signal(taus, values);
  const analysis::BeatReport measured = analysis::beat_report(signal);
  const bool ratio_ok =
      std::abs(measured.oscillations_per_beat / 30.99 - 1.0) < 0.05;

  // Direct count of maxima per beat window as a cross-check.
  const auto extrema = analysis::detect_extrema(signal);
  const auto& nodes = measured.envelope_minima;
  double counted = 0.0;
  for (std::size_t k = 1; k < nodes.size(); ++k) {
    long c = 0;
    for (const auto& e : extrema)
      if (e.kind == analysis::ExtremumKind::maximum && e.tau > nodes[k - 1] &&
          e.tau <= nodes[k])
        ++c;
    counted += double(c);
  }
  counted /= double(nodes.size() - 1);
  const bool count_ok = std::abs(counted / 30.99 - 1.0) < 0.05;

  report(2, "n=15 oscillations per beat", formula_ok && ratio_ok && count_ok,
         format("formula %.5f, measured %.3f, counted %.2f vs 30.99",
                pred.oscillations_per_beat, measured.oscillations_per_beat,
                counted));
}

void criterion_factorization() {
  const ThermalWeights half = weights_from_ground_population(0.5);
  double dev = 0.0;
  for (int n : {1, 2, 4, 8, 15}) {
    const double sum = std::sqrt(n + 1.0) + std::sqrt(double(n));
    const double diff = std::sqrt(n + 1.0) - std::sqrt(double(n));
    for (int i = 0; i < 1000; ++i) {
      const double tau = 40.0 * i / 999.0;
      const double lhs = inversion(half, evolution_angles(n, tau));
      dev = std::max(dev,
                     std::abs(lhs - std::sin(tau * sum) * std::sin(tau * diff)));
    }
  }
  report(3, "inversion factorization", dev < 1e-12,
         format("max dev %.2e over 5x1000 samples", dev));
}

void criterion_period_halving() {
  const ThermalWeights half = weights_from_ground_population(0.5);
  bool pass = true;
  std::string detail;
  for (int n : {4, 8, 15}) {
    const double tau_max = 3.25 * analysis::predicted_beats(n).beat_period;
    const std::vector<double> taus =
        sweep::tau_grid(tau_max, analysis::recommended_tau_steps(n, tau_max, true));
    const auto points = sweep::dynamics_sweep(half, n, taus);
    std::vector<double> delta(points.size()), inv(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
      delta[i] = points[i].delta;
      inv[i] = points[i].inversion;
    }
    const analysis::PeriodRatios ratios =
        analysis::period_ratio(analysis::make_signal(taus, delta),
                               analysis::make_signal(taus, inv));
    const bool ok = ratios.osc_ratio >= 0.4 && ratios.osc_ratio <= 0.6 &&
                    ratios.beat_ratio >= 0.4 && ratios.beat_ratio <= 0.6;
    pass = pass && ok;
    detail += format("n=%d: %.3f/%.3f ", n, ratios.osc_ratio, ratios.beat_ratio);
  }
  report(4, "delta/inversion period ratio", pass, detail + "in [0.4,0.6]");
}

struct RandomSample {
  int n;
  double tau, theta;
  ThermalWeights w;
};

std::vector<RandomSample> draw_samples(std::uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> tau_dist(0.0, 20.0);
  std::uniform_real_distribution<double> theta_dist(0.0, kPi);
  std::uniform_real_distribution<double> lambda_dist(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(0, 10);
  std::vector<RandomSample> samples(count);
  for (auto& s : samples) {
    s.n = n_dist(rng);
    s.tau = tau_dist(rng);
    s.theta = theta_dist(rng);
    s.w = weights_from_ground_population(lambda_dist(rng));
  }
  return samples;
}

void criterion_phi_independence() {
  const auto samples = draw_samples(101, 1000);
  std::map<int, oracle::Propagator> props;
  double dev_oracle = 0.0, dev_closed = 0.0;
  for (const auto& s : samples) {
    const oracle::TruncatedSpace space{s.n + 1};
    auto it = props.find(s.n);
    if (it == props.end())
      it = props.emplace(s.n, oracle::Propagator(oracle::interaction_hamiltonian(
                                  space, 1.0)))
               .first;
    const DensityMatrix evolved =
        it->second.apply(oracle::thermal_fock_state(space, s.w, s.n), s.tau);
    const oracle::DiscordEvaluator eval(evolved, space);
    const double base = eval({s.theta, 0.0});
    const EvolutionAngles ang = evolution_angles(s.n, s.tau);
    const double closed_base = discord(s.w, ang, {s.theta, 0.0}).discord;
    for (int j = 0; j < 37; ++j) {
      const double phi = 2.0 * kPi * j / 37.0;
      dev_oracle = std::max(dev_oracle, std::abs(eval({s.theta, phi}) - base));
      dev_closed = std::max(
          dev_closed, std::abs(discord(s.w, ang, {s.theta, phi}).discord -
                               closed_base));
    }
  }
  report(5, "phi independence", dev_oracle < 1e-12 && dev_closed < 1e-12,
         format("max dev oracle %.2e, closed %.2e over 1000x37", dev_oracle,
                dev_closed));
}

void criterion_theta_periodicity() {
  const auto samples = draw_samples(101, 1000);
  double dev_closed = 0.0;
  for (const auto& s : samples) {
    const EvolutionAngles ang = evolution_angles(s.n, s.tau);
    dev_closed = std::max(
        dev_closed, std::abs(discord_value(s.w, ang, s.theta + kPi / 2.0) -
                             discord_value(s.w, ang, s.theta)));
  }
  // Same check through the oracle on a subsample.
  std::map<int, oracle::Propagator> props;
  double dev_oracle = 0.0;
  for (std::size_t i = 0; i < 100; ++i) {
    const auto& s = samples[i];
    const oracle::TruncatedSpace space{s.n + 1};
    auto it = props.find(s.n);
    if (it == props.end())
      it = props.emplace(s.n, oracle::Propagator(oracle::interaction_hamiltonian(
                                  space, 1.0)))
               .first;
    const DensityMatrix evolved =
        it->second.apply(oracle::thermal_fock_state(space, s.w, s.n), s.tau);
    const oracle::DiscordEvaluator eval(evolved, space);
    dev_oracle = std::max(dev_oracle, std::abs(eval({s.theta + kPi / 2.0, 0.0}) -
                                               eval({s.theta, 0.0})));
  }
  report(6, "theta pi/2 periodicity", dev_closed < 1e-12 && dev_oracle < 1e-12,
         format("max dev closed %.2e, oracle %.2e", dev_closed, dev_oracle));
}

void criterion_product_state_zero() {
  double dev = 0.0;
  for (int n : {0, 1, 2, 4, 8})
    for (double lambda0 : {0.5, 0.75, 1.0}) {
      const ThermalWeights w = weights_from_ground_population(lambda0);
      const EvolutionAngles ang = evolution_angles(n, 0.0);
      for (int i = 0; i < 19; ++i) {
        const double theta = kPi / 2.0 * i / 18.0;
        for (double phi : {0.0, 2.1, 4.4})
          dev = std::max(dev, std::abs(discord(w, ang, {theta, phi}).discord));
      }
      dev = std::max(dev, std::abs(minimize_discord(w, ang).delta));
    }
  report(7, "product state zero discord", dev < 1e-10,
         format("max |D| at tau=0: %.2e", dev));
}

void criterion_pure_state_limit() {
  const ThermalWeights pure = weights_from_ground_population(1.0);
  double dev_closed = 0.0, dev_oracle = 0.0;
  for (int n : {1, 4}) {
    const oracle::TruncatedSpace space{n + 1};
    const oracle::Propagator prop(oracle::interaction_hamiltonian(space, 1.0));
    const DensityMatrix rho0 = oracle::thermal_fock_state(space, pure, n);
    for (int i = 0; i < 64; ++i) {
      const double tau = 10.0 * i / 63.0;
      const EvolutionAngles ang = evolution_angles(n, tau);
      const double expected = binary_entropy(ang.cn * ang.cn);
      dev_closed = std::max(
          dev_closed, std::abs(minimize_discord(pure, ang).delta - expected));
      if (i % 8 == 0) {
        const oracle::GridMinimum numeric = oracle::minimize_discord(
            prop.apply(rho0, tau), space, 181, 5);
        dev_oracle = std::max(dev_oracle, std::abs(numeric.delta - expected));
      }
    }
  }
  report(8, "pure-state entanglement limit",
         dev_closed < 1e-8 && dev_oracle < 1e-8,
         format("max |delta - h(Cn^2)| closed %.2e, oracle %.2e", dev_closed,
                dev_oracle));
}

void criterion_printed_formula_gap() {
  std::mt19937_64 rng(202);
  std::uniform_real_distribution<double> tau_dist(0.0, 30.0);
  std::uniform_real_distribution<double> angle_dist(0.0, kPi);
  std::uniform_real_distribution<double> phi_dist(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> lambda_dist(0.0, 1.0);
  std::uniform_int_distribution<int> n_dist(0, 10);
  double dev = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double lambda0 = lambda_dist(rng);
    if (i % 100 == 0) lambda0 = (i % 200 == 0) ? 1.0 : 0.0;
    const ThermalWeights w = weights_from_ground_population(lambda0);
    const EvolutionAngles ang = evolution_angles(n_dist(rng), tau_dist(rng));
    const MeasurementBasis b{angle_dist(rng), phi_dist(rng)};
    const double gap =
        discord(w, ang, b).discord - discord_printed_formula(w, ang, b);
    dev = std::max(dev, std::abs(gap - 1.0));
  }
  report(9, "printed-formula one-bit gap", dev < 1e-12,
         format("max |gap - 1 bit| %.2e over 10^4 samples", dev));
}

void criterion_csv_determinism() {
  namespace fs = std::filesystem;
  const fs::path dir =
      fs::temp_directory_path() / ("jcd_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);

  auto run = [&](const char* name, Exec exec) {
    cli::RunConfig config;
    config.n = 2;
    config.lambda0 = 0.6;
    config.tau_max = 8.0;
    config.tau_steps = 160;
    config.seed = 7;
    config.exec = exec;
    config.output_path = (dir / name).string();
    return cli::cmd_dynamics(config) == cli::kOk;
  };
  auto slurp = [](const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };

  const bool ran = run("a.csv", Exec::parallel) && run("b.csv", Exec::parallel) &&
                   run("c.csv", Exec::serial);
  const std::string a = slurp(dir / "a.csv");
  const bool pass = ran && !a.empty() && a == slurp(dir / "b.csv") &&
                    a == slurp(dir / "c.csv");
  std::error_code ec;
  fs::remove_all(dir, ec);
  report(10, "CSV determinism", pass,
         format("two runs + serial rerun byte-identical, %zu bytes", a.size()));
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();
  criterion_oracle_equivalence();
  criterion_beat_number_n15();
  criterion_factorization();
  criterion_period_halving();
  criterion_phi_independence();
  criterion_theta_periodicity();
  criterion_product_state_zero();
  criterion_pure_state_limit();
  criterion_printed_formula_gap();
  criterion_csv_determinism();
  std::printf("%d of 10 criteria failed (total %.1f s)\n", failures,
              seconds_since(t0));
  return failures;
}
