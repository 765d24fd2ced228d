#pragma once

#include <utility>

#include "jcd/closed_form.hpp"
#include "jcd/core.hpp"

namespace jcd {

// Outcome probabilities below this are treated as vanishing; the conditional
// state is undefined there and contributes zero conditional entropy.
inline constexpr double kVanishingProbability = 1e-14;

/// Rank-1 projective measurement on the atom:
///   |pi_0> = cos(theta)|0> + e^{i phi} sin(theta)|1>
///   |pi_1> = e^{-i phi} sin(theta)|0> - cos(theta)|1>
struct MeasurementBasis {
  double theta = 0.0;
  double phi = 0.0;
};

/// Measurement ket for one outcome as a 2-vector over {|0>, |1>}.
Eigen::Vector2cd measurement_ket(const MeasurementBasis& b, int outcome);

/// (P0, P1); they sum to one.
std::pair<double, double> outcome_probabilities(const ThermalWeights& w,
                                                const EvolutionAngles& ang,
                                                const MeasurementBasis& b);

/// Post-measurement cavity state for one outcome. The 3x3 state over
/// |n-1>, |n>, |n+1> has rank <= 2 with nonzero eigenvalues
/// (1 +- sqrt(1-4y))/2.
struct ConditionalOutcome {
  int outcome = 0;
  double probability = 0.0;
  DensityMatrix state;
  double y = 0.0;
};

/// Throws std::domain_error when the outcome probability vanishes
/// (below kVanishingProbability): the conditional state is undefined there.
ConditionalOutcome conditional_cavity_state(const ThermalWeights& w,
                                            const EvolutionAngles& ang,
                                            const MeasurementBasis& b,
                                            int outcome);

/// sum_j P_j S(rho_{c|j}) in bits; vanishing outcomes contribute zero.
double conditional_entropy(const ThermalWeights& w, const EvolutionAngles& ang,
                           const MeasurementBasis& b);

/// Entropy pieces entering the discord and the two mutual informations.
struct DiscordBreakdown {
  double s_atom = 0.0;
  double s_joint = 0.0;
  double s_conditional = 0.0;
  double mutual_info_i = 0.0;  // I(c:a) = S(c) + S(a) - S(ac)
  double mutual_info_j = 0.0;  // J(c:a) = S(c) - S(c|{pi})
  double discord = 0.0;        // I - J = S(a) - S(ac) + S(c|{pi})
};

DiscordBreakdown discord(const ThermalWeights& w, const EvolutionAngles& ang,
                         const MeasurementBasis& b);

/// Discord for a given theta with phi fixed at zero (the eigenvalues carry
/// no phi). This is the value minimize_discord probes.
double discord_value(const ThermalWeights& w, const EvolutionAngles& ang,
                     double theta);

/// The published closed expression for the discord evaluated verbatim.
/// Diagnostic only: it sits exactly one bit below discord(...).discord
/// because the per-outcome factor-of-two inside the eigenvalue logs was
/// dropped from it.
double discord_printed_formula(const ThermalWeights& w,
                               const EvolutionAngles& ang,
                               const MeasurementBasis& b);

struct MinimizeOptions {
  int coarse_points = 1801;  // grid over [0, pi/2]
  double theta_tol = 1e-10;  // bracket width at which refinement stops
};

struct DiscordMinimum {
  double delta = 0.0;
  double theta_star = 0.0;
  long evaluations = 0;
};

/// min over theta in [0, pi/2] of discord, phi fixed at zero. Coarse grid,
/// then golden-section refinement of every local bracket; theta = 0, pi/4,
/// pi/2 are always probed.
DiscordMinimum minimize_discord(const ThermalWeights& w,
                                const EvolutionAngles& ang,
                                const MinimizeOptions& opts = {});

}  // namespace jcd
