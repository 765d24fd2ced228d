#include "jcd/closed_form.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace jcd {

namespace {

void require_weights(const ThermalWeights& w) {
  if (!(w.lambda0 >= 0.0 && w.lambda0 <= 1.0) ||
      !(w.lambda1 >= 0.0 && w.lambda1 <= 1.0) ||
      std::abs(w.lambda0 + w.lambda1 - 1.0) > 1e-15)
    throw std::domain_error("thermal weights are not a normalized mixture");
}

std::string ket_label(int atom, int photons) {
  return "|" + std::to_string(atom) + "," + std::to_string(photons) + ">";
}

}  // namespace

ThermalWeights weights_from_temperature(double x) {
  if (!std::isfinite(x) || x < 0.0)
    throw std::domain_error("temperature ratio must be finite and nonnegative");
  ThermalWeights w;
  const double e = std::exp(-x);
  w.lambda0 = 1.0 / (1.0 + e);
  w.lambda1 = e / (1.0 + e);
  w.temperature_ratio = x;
  w.from_temperature = true;
  return w;
}

ThermalWeights weights_from_ground_population(double lambda0) {
  if (!(lambda0 >= 0.0 && lambda0 <= 1.0))
    throw std::domain_error("lambda0 must lie in [0, 1]");
  ThermalWeights w;
  w.lambda0 = lambda0;
  w.lambda1 = 1.0 - lambda0;
  return w;
}

EvolutionAngles evolution_angles(int n, double tau) {
  if (n < 0) throw std::domain_error("photon number must be nonnegative");
  if (!std::isfinite(tau)) throw std::domain_error("tau must be finite");
  EvolutionAngles ang;
  ang.n = n;
  ang.tau = tau;
  ang.psi_n = tau * std::sqrt(static_cast<double>(n));
  ang.psi_np1 = tau * std::sqrt(static_cast<double>(n) + 1.0);
  // n = 0 keeps cn = 1, sn = 0 exactly for all tau.
  ang.cn = n == 0 ? 1.0 : std::cos(ang.psi_n);
  ang.sn = n == 0 ? 0.0 : std::sin(ang.psi_n);
  ang.cnp1 = std::cos(ang.psi_np1);
  ang.snp1 = std::sin(ang.psi_np1);
  return ang;
}

std::vector<KetTerm> evolve_basis_ket(int atom_level, int n,
                                      const EvolutionAngles& ang) {
  if (ang.n != n)
    throw std::invalid_argument("evolve_basis_ket: angles built for another n");
  if (atom_level == 0) {
    if (n == 0) return {{0, 0, Complex{1.0, 0.0}}};
    return {{0, n, Complex{ang.cn, 0.0}}, {1, n - 1, Complex{0.0, -ang.sn}}};
  }
  if (atom_level == 1) {
    return {{1, n, Complex{ang.cnp1, 0.0}},
            {0, n + 1, Complex{0.0, -ang.snp1}}};
  }
  throw std::invalid_argument("evolve_basis_ket: atom level must be 0 or 1");
}

std::vector<std::string> joint_basis_labels(int n) {
  return {ket_label(0, n - 1), ket_label(0, n), ket_label(0, n + 1),
          ket_label(1, n - 1), ket_label(1, n), ket_label(1, n + 1)};
}

DensityMatrix joint_state(const ThermalWeights& w, const EvolutionAngles& ang) {
  require_weights(w);
  DensityMatrix rho;
  rho.entries = CMatrix::Zero(6, 6);
  rho.basis_labels = joint_basis_labels(ang.n);

  const double l0 = w.lambda0, l1 = w.lambda1;
  // Basis indices: 0:|0,n-1> 1:|0,n> 2:|0,n+1> 3:|1,n-1> 4:|1,n> 5:|1,n+1>.
  rho.entries(1, 1) = l0 * ang.cn * ang.cn;
  rho.entries(3, 3) = l0 * ang.sn * ang.sn;
  rho.entries(4, 4) = l1 * ang.cnp1 * ang.cnp1;
  rho.entries(2, 2) = l1 * ang.snp1 * ang.snp1;
  rho.entries(1, 3) = Complex{0.0, l0 * ang.cn * ang.sn};
  rho.entries(3, 1) = Complex{0.0, -l0 * ang.cn * ang.sn};
  rho.entries(4, 2) = Complex{0.0, l1 * ang.cnp1 * ang.snp1};
  rho.entries(2, 4) = Complex{0.0, -l1 * ang.cnp1 * ang.snp1};
  return rho;
}

Spectrum joint_spectrum(const ThermalWeights& w) {
  require_weights(w);
  Spectrum spec;
  spec.values = {0.0, 0.0, 0.0, 0.0, std::min(w.lambda0, w.lambda1),
                 std::max(w.lambda0, w.lambda1)};
  return spec;
}

DensityMatrix atom_reduced(const ThermalWeights& w,
                           const EvolutionAngles& ang) {
  require_weights(w);
  DensityMatrix rho;
  rho.entries = CMatrix::Zero(2, 2);
  rho.basis_labels = {"|0>", "|1>"};
  rho.entries(0, 0) =
      w.lambda0 * ang.cn * ang.cn + w.lambda1 * ang.snp1 * ang.snp1;
  rho.entries(1, 1) =
      w.lambda0 * ang.sn * ang.sn + w.lambda1 * ang.cnp1 * ang.cnp1;
  return rho;
}

Spectrum atom_spectrum(const ThermalWeights& w, const EvolutionAngles& ang) {
  const DensityMatrix rho = atom_reduced(w, ang);
  double a = rho.entries(0, 0).real();
  double b = rho.entries(1, 1).real();
  if (a > b) std::swap(a, b);
  return Spectrum{{a, b}};
}

DensityMatrix cavity_reduced(const ThermalWeights& w,
                             const EvolutionAngles& ang) {
  require_weights(w);
  DensityMatrix rho;
  rho.entries = CMatrix::Zero(3, 3);
  rho.basis_labels = {"|" + std::to_string(ang.n - 1) + ">",
                      "|" + std::to_string(ang.n) + ">",
                      "|" + std::to_string(ang.n + 1) + ">"};
  rho.entries(0, 0) = w.lambda0 * ang.sn * ang.sn;
  rho.entries(1, 1) =
      w.lambda0 * ang.cn * ang.cn + w.lambda1 * ang.cnp1 * ang.cnp1;
  rho.entries(2, 2) = w.lambda1 * ang.snp1 * ang.snp1;
  return rho;
}

Spectrum cavity_spectrum(const ThermalWeights& w, const EvolutionAngles& ang) {
  const DensityMatrix rho = cavity_reduced(w, ang);
  Spectrum spec;
  spec.values = {rho.entries(0, 0).real(), rho.entries(1, 1).real(),
                 rho.entries(2, 2).real()};
  std::sort(spec.values.begin(), spec.values.end());
  return spec;
}

double inversion(const ThermalWeights& w, const EvolutionAngles& ang) {
  require_weights(w);
  return w.lambda0 * (ang.cn * ang.cn - ang.sn * ang.sn) -
         w.lambda1 * (ang.cnp1 * ang.cnp1 - ang.snp1 * ang.snp1);
}

double inversion_via_trace(const DensityMatrix& joint) {
  if (joint.dim() != 6)
    throw std::invalid_argument("inversion_via_trace: expected a 6x6 joint state");
  double value = 0.0;
  for (int i = 0; i < 3; ++i) value += joint.entries(i, i).real();
  for (int i = 3; i < 6; ++i) value -= joint.entries(i, i).real();
  return value;
}

}  // namespace jcd
