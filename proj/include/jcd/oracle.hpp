#pragma once

#include <optional>
#include <span>
#include <string>

#include "jcd/closed_form.hpp"
#include "jcd/core.hpp"
#include "jcd/exec.hpp"
#include "jcd/measurement.hpp"

// Brute-force numerical route through the same physics: truncated Fock
// space, exact diagonalization, generic partial traces and measurement
// conditioning. Shares nothing with the closed forms beyond jcd core; it
// exists to validate them.
namespace jcd::oracle {

/// Atom (2 levels) x cavity Fock levels 0..n_max, atom-major ordering:
/// index(a, k) = a*(n_max+1) + k.
struct TruncatedSpace {
  int n_max = 1;

  int levels() const { return n_max + 1; }
  int dim() const { return 2 * (n_max + 1); }
  int index(int atom, int k) const { return atom * (n_max + 1) + k; }
};

/// beta (a^dag sigma_- + a sigma_+) with the convention that couples
/// |1,k> <-> |0,k+1> with element beta sqrt(k+1).
CMatrix interaction_hamiltonian(const TruncatedSpace& space, double beta);

/// Excitation number a^dag a + |1><1| x I; commutes with the Hamiltonian.
CMatrix excitation_number(const TruncatedSpace& space);

/// thermal atom (x) |n><n| embedded in the truncated space.
DensityMatrix thermal_fock_state(const TruncatedSpace& space,
                                 const ThermalWeights& w, int n);

/// Unitary time evolution exp(-iHt) rho exp(+iHt) via the cached Hermitian
/// eigendecomposition of H.
class Propagator {
 public:
  explicit Propagator(const CMatrix& h);

  CMatrix unitary(double t) const;
  DensityMatrix apply(const DensityMatrix& rho0, double t) const;

 private:
  Eigen::VectorXd eigenvalues_;
  CMatrix eigenvectors_;
};

/// One-shot convenience wrapper over Propagator.
DensityMatrix evolve(const DensityMatrix& rho0, const CMatrix& h, double t);

enum class Keep { atom, cavity };

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const TruncatedSpace& space, Keep keep);

struct Conditioned {
  double probability = 0.0;
  std::optional<DensityMatrix> state;  // empty when the probability vanishes
};

/// P_j = Tr[(Pi_j x I) rho] and the normalized post-measurement cavity
/// state Tr_a[(Pi_j x I) rho (Pi_j x I)] / P_j.
Conditioned condition_on_measurement(const DensityMatrix& rho,
                                     const TruncatedSpace& space,
                                     const MeasurementBasis& b, int outcome);

/// Discord of one evolved state with the measurement-independent entropies
/// precomputed, so sweeps over bases only pay for the conditioning.
class DiscordEvaluator {
 public:
  DiscordEvaluator(DensityMatrix rho, TruncatedSpace space);

  double operator()(const MeasurementBasis& b) const;

  double atom_entropy() const { return s_atom_; }
  double joint_entropy() const { return s_joint_; }

 private:
  DensityMatrix rho_;
  TruncatedSpace space_;
  double s_atom_ = 0.0;
  double s_joint_ = 0.0;
};

/// Discord from numerically computed spectra only; no closed forms.
double discord(const DensityMatrix& rho, const TruncatedSpace& space,
               const MeasurementBasis& b);

struct GridMinimum {
  double delta = 0.0;
  double theta_star = 0.0;
  double phi_star = 0.0;
  long evaluations = 0;
};

/// Exhaustive (theta, phi) grid over [0, pi/2] x [0, 2pi) followed by
/// golden-section refinement in theta of every local bracket.
GridMinimum minimize_discord(const DensityMatrix& rho,
                             const TruncatedSpace& space,
                             int theta_points = 181, int phi_points = 37);

struct ValidationOptions {
  int theta_points = 19;           // comparison grid over [0, pi/2]
  int minimize_theta_points = 181;
  int minimize_phi_points = 5;     // phi flatness is checked elsewhere
  bool check_delta = true;
  int extra_levels = 0;            // raise n_max above the exact n+1
  Exec exec = Exec::parallel;
  double closed_form_bias = 0.0;   // testing hook: offsets closed-form values
};

/// Maximum absolute closed-form-vs-oracle deviation per quantity.
struct ValidationReport {
  int n = 0;
  double lambda0 = 0.0;
  int tau_points = 0;
  int theta_points = 0;

  double joint_entries = 0.0;
  double reduced_atom = 0.0;
  double spectrum_joint = 0.0;
  double spectrum_atom = 0.0;
  double spectrum_conditional = 0.0;
  double probabilities = 0.0;
  double y_params = 0.0;
  double discord_dev = 0.0;
  double delta_dev = 0.0;
  double inversion_dev = 0.0;

  static constexpr double kAlgebraicTol = 1e-10;
  static constexpr double kMinimizeTol = 1e-8;

  bool pass() const;
  /// Human-readable table, one row per quantity.
  std::string table() const;
  /// Machine-readable key=value lines.
  std::string key_values() const;
  /// Entrywise max of two reports (combo aggregation).
  static ValidationReport merged(const ValidationReport& a,
                                 const ValidationReport& b);
};

/// Runs every comparison of the closed forms against this module over the
/// given tau grid and the options' theta grid.
ValidationReport cross_validate(int n, std::span<const double> tau_grid,
                                const ThermalWeights& w,
                                const ValidationOptions& opts = {});

}  // namespace jcd::oracle
