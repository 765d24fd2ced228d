#pragma once

#include <vector>

#include "jcd/core.hpp"

namespace jcd {

/// Initial atomic populations of the thermal two-level mixture.
/// lambda0 weighs |0>, lambda1 weighs |1>; they sum to one.
struct ThermalWeights {
  double lambda0 = 1.0;
  double lambda1 = 0.0;
  // Temperature ratio omega/KT when the weights came from one; provenance
  // only, never used in the dynamics.
  double temperature_ratio = -1.0;
  bool from_temperature = false;
};

/// lambda0 = 1/(1+e^-x), lambda1 = e^-x/(1+e^-x) for x = omega/KT >= 0.
ThermalWeights weights_from_temperature(double x);

/// Direct construction from the ground-state population.
ThermalWeights weights_from_ground_population(double lambda0);

/// Rabi angles psi_n = tau sqrt(n), psi_{n+1} = tau sqrt(n+1) and their
/// cosines/sines at dimensionless time tau = beta*t.
struct EvolutionAngles {
  int n = 0;
  double tau = 0.0;
  double psi_n = 0.0, psi_np1 = 0.0;
  double cn = 1.0, sn = 0.0;
  double cnp1 = 1.0, snp1 = 0.0;
};

EvolutionAngles evolution_angles(int n, double tau);

/// One term of an evolved basis ket: amplitude on |atom, photons>.
struct KetTerm {
  int atom;
  int photons;
  Complex amplitude;
};

/// Time evolution of |0,n> or |1,n>:
///   |0,n> -> C_n|0,n> - i S_n|1,n-1>        (single term |0,0> when n = 0)
///   |1,n> -> C_{n+1}|1,n> - i S_{n+1}|0,n+1>
std::vector<KetTerm> evolve_basis_ket(int atom_level, int n,
                                      const EvolutionAngles& ang);

/// Fixed basis ordering of the 6x6 joint state:
/// |0,n-1>, |0,n>, |0,n+1>, |1,n-1>, |1,n>, |1,n+1>.
std::vector<std::string> joint_basis_labels(int n);

/// Evolved atom-cavity state in the fixed 6x6 basis. Rank two by
/// construction: its spectrum is {lambda0, lambda1, 0, 0, 0, 0}.
DensityMatrix joint_state(const ThermalWeights& w, const EvolutionAngles& ang);

/// Spectrum of the joint state, ascending; time independent.
Spectrum joint_spectrum(const ThermalWeights& w);

/// Reduced atom state diag(l0 Cn^2 + l1 S_{n+1}^2, l0 Sn^2 + l1 C_{n+1}^2).
DensityMatrix atom_reduced(const ThermalWeights& w, const EvolutionAngles& ang);

/// Spectrum of the reduced atom state, ascending.
Spectrum atom_spectrum(const ThermalWeights& w, const EvolutionAngles& ang);

/// Reduced cavity state over |n-1>, |n>, |n+1>; diagonal.
DensityMatrix cavity_reduced(const ThermalWeights& w,
                             const EvolutionAngles& ang);

Spectrum cavity_spectrum(const ThermalWeights& w, const EvolutionAngles& ang);

/// Mean inversion l0(Cn^2 - Sn^2) - l1(C_{n+1}^2 - S_{n+1}^2), in [-1, 1].
double inversion(const ThermalWeights& w, const EvolutionAngles& ang);

/// Same quantity as Tr[rho (sigma_z x I)] over a 6x6 joint state, with
/// sigma_z = |0><0| - |1><1|.
double inversion_via_trace(const DensityMatrix& joint);

}  // namespace jcd
