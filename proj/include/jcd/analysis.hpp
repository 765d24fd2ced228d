#pragma once

#include <stdexcept>
#include <vector>

#include "jcd/closed_form.hpp"

namespace jcd::analysis {

/// Signal spans fewer beats than the requested analysis needs.
struct insufficient_span_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Uniformly sampled signal over an ascending tau grid.
struct SampledSignal {
  std::vector<double> tau;
  std::vector<double> values;
};

/// Validates grid shape: equal lengths, ascending, uniform spacing.
SampledSignal make_signal(std::vector<double> tau, std::vector<double> values);

enum class ExtremumKind { maximum, minimum };

struct Extremum {
  double tau = 0.0;
  double value = 0.0;
  ExtremumKind kind = ExtremumKind::maximum;
};

/// Extrema by discrete-derivative sign change with 3-point quadratic
/// refinement; ripples shallower than `prominence` are discarded.
std::vector<Extremum> detect_extrema(const SampledSignal& s,
                                     double prominence = 1e-6);

/// The closed beat arithmetic for the inversion signal at n photons:
///   mean_period           = 2 pi / (sqrt(n+1) + sqrt(n))
///   beat_period           = pi (sqrt(n+1) + sqrt(n))
///   oscillations_per_beat = (2n + 1 + 2 sqrt(n(n+1))) / 2
/// and the large-n approximation 2n.
struct BeatPrediction {
  double mean_period = 0.0;
  double beat_period = 0.0;
  double oscillations_per_beat = 0.0;
  double large_n_approx = 0.0;
};

/// Rejects n = 0: a single Rabi pair has no beat structure.
BeatPrediction predicted_beats(int n);

/// Beat structure measured from a sampled signal. mean_period is the
/// robust mean spacing of consecutive same-kind extrema (the beat nodes
/// insert one sub-period spacing per beat, which is trimmed out);
/// beat_period is the mean spacing of the envelope minima;
/// oscillations_per_beat their ratio.
struct BeatReport {
  double mean_period = 0.0;
  double beat_period = 0.0;
  double oscillations_per_beat = 0.0;
  int extrema_count = 0;
  std::vector<double> envelope_minima;
};

/// Throws insufficient_span_error when fewer than two envelope minima are
/// found (signal must span at least two beat periods).
BeatReport beat_report(const SampledSignal& s);

struct PeriodRatios {
  double osc_ratio = 0.0;   // delta mean period / inversion mean period
  double beat_ratio = 0.0;  // delta beat period / inversion beat period
};

/// Both signals must share the same tau grid.
PeriodRatios period_ratio(const SampledSignal& delta_signal,
                          const SampledSignal& inversion_signal);

/// theta structure of the discord at fixed (w, n, tau): pi/2 periodicity
/// verified on the grid; extrema located and their distance to the nearest
/// multiple of pi/4 reported; reflection symmetry about pi/4 measured.
/// Everything beyond the period check is reported, never asserted.
struct ThetaScanReport {
  struct ExtremumAt {
    double theta = 0.0;
    double value = 0.0;
    bool is_max = false;
    double distance_to_quarter = 0.0;  // to nearest multiple of pi/4
  };
  bool period_check = false;
  double max_period_deviation = 0.0;
  double max_reflection_deviation = 0.0;  // |D(pi/2 - theta) - D(theta)|
  std::vector<ExtremumAt> extrema;
};

ThetaScanReport theta_structure_scan(const ThermalWeights& w, int n,
                                     double tau, int grid_size);

/// Sampling rule for CLI-produced signals: at least 64 samples per fast
/// period 2 pi/(sqrt(n+1)+sqrt(n)), doubled for the discord minimum whose
/// period is about half. Returns the number of grid points for [0, tau_max].
int recommended_tau_steps(int n, double tau_max, bool delta_rate);

}  // namespace jcd::analysis
