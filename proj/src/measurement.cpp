#include "jcd/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace jcd {

namespace {

struct TrigFactors {
  double c, s;      // cos(theta), sin(theta)
  double c2, s2;    // squares
};

TrigFactors trig(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return {c, s, c * c, s * s};
}

struct Squares {
  double cn2, sn2, cnp12, snp12;
};

Squares squares(const EvolutionAngles& ang) {
  return {ang.cn * ang.cn, ang.sn * ang.sn, ang.cnp1 * ang.cnp1,
          ang.snp1 * ang.snp1};
}

double probability_for(const ThermalWeights& w, const Squares& q,
                       const TrigFactors& t, int outcome) {
  if (outcome == 0)
    return w.lambda0 * (t.c2 * q.cn2 + t.s2 * q.sn2) +
           w.lambda1 * (t.c2 * q.snp12 + t.s2 * q.cnp12);
  return w.lambda0 * (t.s2 * q.cn2 + t.c2 * q.sn2) +
         w.lambda1 * (t.s2 * q.snp12 + t.c2 * q.cnp12);
}

// Numerator of the eigenvalue parameter y for one outcome; divide by the
// squared probability of the same outcome.
double y_numerator(const ThermalWeights& w, const Squares& q,
                   const TrigFactors& t, int outcome) {
  const double c4 = t.c2 * t.c2, s4 = t.s2 * t.s2, c2s2 = t.c2 * t.s2;
  if (outcome == 0)
    return w.lambda0 * w.lambda1 *
           (c4 * q.cn2 * q.snp12 + s4 * q.sn2 * q.cnp12 +
            c2s2 * q.sn2 * q.snp12);
  return w.lambda0 * w.lambda1 *
         (s4 * q.cn2 * q.snp12 + c4 * q.sn2 * q.cnp12 +
          c2s2 * q.sn2 * q.snp12);
}

// Entropy of the spectrum {0, (1+r)/2, (1-r)/2} with r = sqrt(1-4y).
double entropy_from_y(double y) {
  double disc = 1.0 - 4.0 * y;
  if (disc < -1e-12)
    throw std::domain_error("conditional spectrum parameter exceeds 1/4");
  const double r = disc > 0.0 ? std::sqrt(disc) : 0.0;
  return binary_entropy(std::min(0.5 * (1.0 + r), 1.0));
}

int require_outcome(int outcome) {
  if (outcome != 0 && outcome != 1)
    throw std::invalid_argument("measurement outcome must be 0 or 1");
  return outcome;
}

}  // namespace

Eigen::Vector2cd measurement_ket(const MeasurementBasis& b, int outcome) {
  require_outcome(outcome);
  const double c = std::cos(b.theta);
  const double s = std::sin(b.theta);
  const Complex z = std::polar(1.0, b.phi);
  Eigen::Vector2cd ket;
  if (outcome == 0)
    ket << Complex{c, 0.0}, z * s;
  else
    ket << std::conj(z) * s, Complex{-c, 0.0};
  return ket;
}

std::pair<double, double> outcome_probabilities(const ThermalWeights& w,
                                                const EvolutionAngles& ang,
                                                const MeasurementBasis& b) {
  const TrigFactors t = trig(b.theta);
  const Squares q = squares(ang);
  return {probability_for(w, q, t, 0), probability_for(w, q, t, 1)};
}

ConditionalOutcome conditional_cavity_state(const ThermalWeights& w,
                                            const EvolutionAngles& ang,
                                            const MeasurementBasis& b,
                                            int outcome) {
  require_outcome(outcome);
  const TrigFactors t = trig(b.theta);
  const Squares q = squares(ang);
  const double p = probability_for(w, q, t, outcome);
  if (p <= kVanishingProbability)
    throw std::domain_error("conditional state undefined: outcome probability vanishes");

  const Complex z = std::polar(1.0, b.phi);
  const Complex zbar = std::conj(z);
  const double l0 = w.lambda0, l1 = w.lambda1;
  const double cs = t.c * t.s;
  const double a_off = l0 * cs * ang.cn * ang.sn;
  const double b_off = l1 * cs * ang.cnp1 * ang.snp1;

  CMatrix m = CMatrix::Zero(3, 3);
  if (outcome == 0) {
    m(0, 0) = l0 * t.s2 * q.sn2;
    m(1, 1) = l0 * t.c2 * q.cn2 + l1 * t.s2 * q.cnp12;
    m(2, 2) = l1 * t.c2 * q.snp12;
    m(0, 1) = Complex{0.0, -1.0} * zbar * a_off;
    m(1, 0) = Complex{0.0, 1.0} * z * a_off;
    m(1, 2) = Complex{0.0, 1.0} * zbar * b_off;
    m(2, 1) = Complex{0.0, -1.0} * z * b_off;
  } else {
    m(0, 0) = l0 * t.c2 * q.sn2;
    m(1, 1) = l0 * t.s2 * q.cn2 + l1 * t.c2 * q.cnp12;
    m(2, 2) = l1 * t.s2 * q.snp12;
    m(0, 1) = Complex{0.0, 1.0} * zbar * a_off;
    m(1, 0) = Complex{0.0, -1.0} * z * a_off;
    m(1, 2) = Complex{0.0, -1.0} * zbar * b_off;
    m(2, 1) = Complex{0.0, 1.0} * z * b_off;
  }

  ConditionalOutcome result;
  result.outcome = outcome;
  result.probability = p;
  result.state.entries = m / p;
  result.state.basis_labels = {"|" + std::to_string(ang.n - 1) + ">",
                               "|" + std::to_string(ang.n) + ">",
                               "|" + std::to_string(ang.n + 1) + ">"};
  result.y = y_numerator(w, q, t, outcome) / (p * p);
  return result;
}

double conditional_entropy(const ThermalWeights& w, const EvolutionAngles& ang,
                           const MeasurementBasis& b) {
  const TrigFactors t = trig(b.theta);
  const Squares q = squares(ang);
  double s = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const double p = probability_for(w, q, t, outcome);
    if (p <= kVanishingProbability) continue;
    const double y = y_numerator(w, q, t, outcome) / (p * p);
    s += p * entropy_from_y(y);
  }
  return s;
}

double discord_value(const ThermalWeights& w, const EvolutionAngles& ang,
                     double theta) {
  const double s_atom = von_neumann_entropy(atom_spectrum(w, ang));
  const double s_joint = binary_entropy(w.lambda0);
  const double s_cond =
      conditional_entropy(w, ang, MeasurementBasis{theta, 0.0});
  return s_atom - s_joint + s_cond;
}

DiscordBreakdown discord(const ThermalWeights& w, const EvolutionAngles& ang,
                         const MeasurementBasis& b) {
  DiscordBreakdown out;
  out.s_atom = von_neumann_entropy(atom_spectrum(w, ang));
  out.s_joint = binary_entropy(w.lambda0);
  out.s_conditional = conditional_entropy(w, ang, b);
  const double s_cavity = von_neumann_entropy(cavity_spectrum(w, ang));
  out.mutual_info_i = s_cavity + out.s_atom - out.s_joint;
  out.mutual_info_j = s_cavity - out.s_conditional;
  out.discord = out.s_atom - out.s_joint + out.s_conditional;
  return out;
}

double discord_printed_formula(const ThermalWeights& w,
                               const EvolutionAngles& ang,
                               const MeasurementBasis& b) {
  const TrigFactors t = trig(b.theta);
  const Squares q = squares(ang);

  auto plogp = [](double p) { return p > 0.0 ? p * std::log2(p) : 0.0; };

  const double a0 = w.lambda0 * q.cn2 + w.lambda1 * q.snp12;
  const double a1 = w.lambda0 * q.sn2 + w.lambda1 * q.cnp12;
  const double atom_term = -(plogp(a0) + plogp(a1));
  const double joint_term = plogp(w.lambda0) + plogp(w.lambda1);

  double conditional_term = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const double p = probability_for(w, q, t, outcome);
    if (p <= kVanishingProbability) continue;
    const double y = y_numerator(w, q, t, outcome) / (p * p);
    const double r = std::sqrt(std::max(0.0, 1.0 - 4.0 * y));
    const double up = 1.0 + r, dn = 1.0 - r;
    conditional_term -= 0.5 * p * (plogp(up) + plogp(dn));
  }
  return atom_term + joint_term + conditional_term;
}

DiscordMinimum minimize_discord(const ThermalWeights& w,
                                const EvolutionAngles& ang,
                                const MinimizeOptions& opts) {
  if (opts.coarse_points < 3)
    throw std::invalid_argument("minimize_discord: need at least 3 grid points");

  long evaluations = 0;
  auto eval = [&](double theta) {
    ++evaluations;
    return discord_value(w, ang, theta);
  };

  const double half_pi = std::asin(1.0);  // pi/2
  const int npts = opts.coarse_points;
  std::vector<double> theta(npts), value(npts);
  for (int i = 0; i < npts; ++i) {
    theta[i] = half_pi * static_cast<double>(i) / (npts - 1);
    value[i] = eval(theta[i]);
  }

  double best_value = value[0];
  double best_theta = theta[0];
  auto consider = [&](double th, double v) {
    if (v < best_value || (v == best_value && th < best_theta)) {
      best_value = v;
      best_theta = th;
    }
  };
  for (int i = 0; i < npts; ++i) consider(theta[i], value[i]);

  // Extrema sit only at multiples of pi/4 in the published analysis; probe
  // them regardless of the grid.
  for (double th : {0.0, 0.5 * half_pi, half_pi}) consider(th, eval(th));

  // Golden-section refinement of every local bracket of the coarse grid.
  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  auto refine = [&](double lo, double hi) {
    double a = lo, b = hi;
    double x1 = b - inv_golden * (b - a);
    double x2 = a + inv_golden * (b - a);
    double f1 = eval(x1), f2 = eval(x2);
    while (b - a > opts.theta_tol) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_golden * (b - a);
        f1 = eval(x1);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_golden * (b - a);
        f2 = eval(x2);
      }
    }
    const double mid = 0.5 * (a + b);
    consider(mid, eval(mid));
  };

  std::vector<int> candidates;
  for (int i = 1; i + 1 < npts; ++i)
    if (value[i] < value[i - 1] && value[i] <= value[i + 1])
      candidates.push_back(i);
  if (value[0] < value[1]) candidates.push_back(0);
  if (value[npts - 1] < value[npts - 2]) candidates.push_back(npts - 1);
  if (candidates.size() > 16) {
    std::sort(candidates.begin(), candidates.end(),
              [&](int a, int b) { return value[a] < value[b]; });
    candidates.resize(16);
    std::sort(candidates.begin(), candidates.end());
  }
  for (int i : candidates) {
    const double lo = theta[std::max(0, i - 1)];
    const double hi = theta[std::min(npts - 1, i + 1)];
    refine(lo, hi);
  }

  DiscordMinimum out;
  out.delta = best_value;
  out.theta_star = best_theta;
  out.evaluations = evaluations;
  return out;
}

}  // namespace jcd
