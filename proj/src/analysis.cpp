#include "jcd/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "jcd/measurement.hpp"

namespace jcd::analysis {

namespace {

// The node-finding stage of beat_report runs the ripple filter over the
// peak-amplitude sequence with a prominence this fraction of the sequence
// range; it suppresses the sub-beat alternation of the discord's maxima
// while keeping the beat-scale dips.
constexpr double kEnvelopeProminenceFraction = 0.7;

// Mean of the spacings within [0.9, 1.1] of their median. Beat nodes insert
// one extra extremum per beat (the carrier slips phase by pi there), which
// contaminates a plain mean with sub-period spacings.
double robust_mean_spacing(std::vector<double> spacings) {
  if (spacings.empty()) return 0.0;
  std::vector<double> sorted = spacings;
  std::sort(sorted.begin(), sorted.end());
  const double median = sorted[sorted.size() / 2];
  double sum = 0.0;
  long count = 0;
  for (double s : spacings)
    if (s >= 0.9 * median && s <= 1.1 * median) {
      sum += s;
      ++count;
    }
  return count > 0 ? sum / static_cast<double>(count) : median;
}

// Iteratively removes adjacent extremum pairs shallower than `prominence`,
// merging resulting same-kind neighbours.
void filter_ripples(std::vector<Extremum>& extrema, double prominence) {
  while (extrema.size() >= 2) {
    std::size_t smallest = extrema.size();
    double depth = prominence;
    for (std::size_t k = 0; k + 1 < extrema.size(); ++k) {
      const double d = std::abs(extrema[k].value - extrema[k + 1].value);
      if (d < depth) {
        depth = d;
        smallest = k;
      }
    }
    if (smallest == extrema.size()) break;
    extrema.erase(extrema.begin() + smallest, extrema.begin() + smallest + 2);
    if (smallest > 0 && smallest < extrema.size() &&
        extrema[smallest - 1].kind == extrema[smallest].kind) {
      const bool keep_left =
          extrema[smallest - 1].kind == ExtremumKind::maximum
              ? extrema[smallest - 1].value >= extrema[smallest].value
              : extrema[smallest - 1].value <= extrema[smallest].value;
      extrema.erase(extrema.begin() + (keep_left ? smallest : smallest - 1));
    }
  }
}

}  // namespace

SampledSignal make_signal(std::vector<double> tau, std::vector<double> values) {
  if (tau.size() != values.size())
    throw std::invalid_argument("signal grids must have equal length");
  if (tau.size() < 2) throw std::invalid_argument("signal needs >= 2 samples");
  const double span = tau.back() - tau.front();
  const double step = span / static_cast<double>(tau.size() - 1);
  if (!(step > 0.0)) throw std::invalid_argument("tau grid must ascend");
  // Uniformity within 1e-12 relative to the signal's tau scale.
  const double slack = 1e-12 * std::max({1.0, std::abs(tau.back()), step});
  for (std::size_t i = 1; i < tau.size(); ++i) {
    const double d = tau[i] - tau[i - 1];
    if (!(d > 0.0) || std::abs(d - step) > slack)
      throw std::invalid_argument("tau grid must be uniform and ascending");
  }
  return SampledSignal{std::move(tau), std::move(values)};
}

std::vector<Extremum> detect_extrema(const SampledSignal& s,
                                     double prominence) {
  const std::size_t npts = s.values.size();
  if (npts < 3)
    throw std::invalid_argument("detect_extrema: need at least 3 samples");

  std::vector<Extremum> raw;
  int prev_sign = 0;
  for (std::size_t i = 1; i < npts; ++i) {
    const double d = s.values[i] - s.values[i - 1];
    const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
    if (sign == 0) continue;  // plateaus inherit the previous slope
    if (prev_sign != 0 && sign != prev_sign) {
      const std::size_t j = i - 1;  // last point of the old slope
      Extremum e;
      e.kind = prev_sign > 0 ? ExtremumKind::maximum : ExtremumKind::minimum;
      e.tau = s.tau[j];
      e.value = s.values[j];
      if (j >= 1 && j + 1 < npts) {
        // Quadratic vertex through the three neighbouring samples.
        const double vm = s.values[j - 1], v0 = s.values[j], vp = s.values[j + 1];
        const double denom = vm - 2.0 * v0 + vp;
        if (std::abs(denom) > 1e-300) {
          const double h = s.tau[j] - s.tau[j - 1];
          const double shift = 0.5 * (vm - vp) / denom;
          e.tau = s.tau[j] + h * shift;
          e.value = v0 - 0.125 * (vm - vp) * (vm - vp) / denom;
        }
      }
      raw.push_back(e);
    }
    prev_sign = sign;
  }

  filter_ripples(raw, prominence);
  return raw;
}

BeatPrediction predicted_beats(int n) {
  if (n < 1)
    throw std::domain_error("predicted_beats: need n >= 1 (single Rabi pair has no beats)");
  const double root_n = std::sqrt(static_cast<double>(n));
  const double root_np1 = std::sqrt(static_cast<double>(n) + 1.0);
  const double sum = root_np1 + root_n;
  const double pi = 2.0 * std::asin(1.0);
  BeatPrediction p;
  p.mean_period = 2.0 * pi / sum;
  p.beat_period = pi * sum;
  p.oscillations_per_beat =
      0.5 * (2.0 * n + 1.0 + 2.0 * std::sqrt(static_cast<double>(n) * (n + 1.0)));
  p.large_n_approx = 2.0 * n;
  return p;
}

BeatReport beat_report(const SampledSignal& s) {
  const std::vector<Extremum> extrema = detect_extrema(s);

  std::vector<Extremum> peaks;
  std::vector<double> max_tau, min_tau;
  for (const Extremum& e : extrema) {
    if (e.kind == ExtremumKind::maximum) {
      max_tau.push_back(e.tau);
      peaks.push_back({e.tau, std::abs(e.value), ExtremumKind::maximum});
    } else {
      min_tau.push_back(e.tau);
    }
  }
  if (max_tau.size() < 3 || extrema.size() < 5)
    throw insufficient_span_error("beat_report: too few oscillations in signal");

  BeatReport report;
  report.extrema_count = static_cast<int>(extrema.size());

  // Spacing of consecutive same-kind extrema, pooled over both kinds.
  std::vector<double> spacings;
  for (std::size_t i = 1; i < max_tau.size(); ++i)
    spacings.push_back(max_tau[i] - max_tau[i - 1]);
  for (std::size_t i = 1; i < min_tau.size(); ++i)
    spacings.push_back(min_tau[i] - min_tau[i - 1]);
  report.mean_period = robust_mean_spacing(spacings);

  // Beat nodes: deep local minima of the peak-amplitude sequence. Turn the
  // sequence itself into alternating extrema and keep only beat-scale swings.
  {
    double lo = peaks.front().value, hi = lo;
    for (const Extremum& p : peaks) {
      lo = std::min(lo, p.value);
      hi = std::max(hi, p.value);
    }
    std::vector<Extremum> seq;
    int prev_sign = 0;
    for (std::size_t k = 1; k < peaks.size(); ++k) {
      const double d = peaks[k].value - peaks[k - 1].value;
      const int sign = d > 0.0 ? 1 : (d < 0.0 ? -1 : 0);
      if (sign == 0) continue;
      if (prev_sign != 0 && sign != prev_sign)
        seq.push_back({peaks[k - 1].tau, peaks[k - 1].value,
                       prev_sign > 0 ? ExtremumKind::maximum
                                     : ExtremumKind::minimum});
      prev_sign = sign;
    }
    filter_ripples(seq, kEnvelopeProminenceFraction * (hi - lo));
    for (const Extremum& e : seq)
      if (e.kind == ExtremumKind::minimum)
        report.envelope_minima.push_back(e.tau);
  }
  if (report.envelope_minima.size() < 2)
    throw insufficient_span_error(
        "beat_report: signal spans fewer than two beat periods");

  report.beat_period =
      (report.envelope_minima.back() - report.envelope_minima.front()) /
      static_cast<double>(report.envelope_minima.size() - 1);
  report.oscillations_per_beat = report.beat_period / report.mean_period;
  return report;
}

PeriodRatios period_ratio(const SampledSignal& delta_signal,
                          const SampledSignal& inversion_signal) {
  if (delta_signal.tau.size() != inversion_signal.tau.size())
    throw std::invalid_argument("period_ratio: signals must share a tau grid");
  for (std::size_t i = 0; i < delta_signal.tau.size(); ++i)
    if (delta_signal.tau[i] != inversion_signal.tau[i])
      throw std::invalid_argument("period_ratio: signals must share a tau grid");
  const BeatReport a = beat_report(delta_signal);
  const BeatReport b = beat_report(inversion_signal);
  return PeriodRatios{a.mean_period / b.mean_period,
                      a.beat_period / b.beat_period};
}

ThetaScanReport theta_structure_scan(const ThermalWeights& w, int n,
                                     double tau, int grid_size) {
  if (grid_size < 360)
    throw std::invalid_argument("theta_structure_scan: grid_size must be >= 360");
  const EvolutionAngles ang = evolution_angles(n, tau);
  const double pi = 2.0 * std::asin(1.0);

  std::vector<double> theta(grid_size), value(grid_size);
  for (int i = 0; i < grid_size; ++i) {
    theta[i] = pi * static_cast<double>(i) / grid_size;
    value[i] = discord_value(w, ang, theta[i]);
  }

  ThetaScanReport report;
  for (int i = 0; i < grid_size; ++i) {
    const double shifted = discord_value(w, ang, theta[i] + 0.5 * pi);
    report.max_period_deviation =
        std::max(report.max_period_deviation, std::abs(shifted - value[i]));
    const double reflected = discord_value(w, ang, 0.5 * pi - theta[i]);
    report.max_reflection_deviation =
        std::max(report.max_reflection_deviation, std::abs(reflected - value[i]));
  }
  report.period_check = report.max_period_deviation < 1e-12;

  const SampledSignal scan = make_signal(theta, value);
  for (const Extremum& e : detect_extrema(scan)) {
    ThetaScanReport::ExtremumAt at;
    at.theta = e.tau;
    at.value = e.value;
    at.is_max = e.kind == ExtremumKind::maximum;
    const double quarter = 0.25 * pi;
    const double k = std::round(e.tau / quarter);
    at.distance_to_quarter = std::abs(e.tau - k * quarter);
    report.extrema.push_back(at);
  }
  return report;
}

int recommended_tau_steps(int n, double tau_max, bool delta_rate) {
  if (!(tau_max > 0.0))
    throw std::invalid_argument("recommended_tau_steps: tau_max must be positive");
  const double pi = 2.0 * std::asin(1.0);
  const double fast_period =
      2.0 * pi / (std::sqrt(static_cast<double>(n) + 1.0) +
                  std::sqrt(static_cast<double>(n)));
  const double per_period = delta_rate ? 128.0 : 64.0;
  const double steps = std::ceil(per_period * tau_max / fast_period);
  return static_cast<int>(std::max(2.0, steps)) + 1;
}

}  // namespace jcd::analysis
