#include "jcd/core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jcd {

bool is_hermitian(const CMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

void validate_density(const DensityMatrix& rho) {
  if (rho.entries.rows() != rho.entries.cols())
    throw std::domain_error("density matrix must be square");
  if (!rho.basis_labels.empty() &&
      static_cast<int>(rho.basis_labels.size()) != rho.dim())
    throw std::domain_error("basis label count does not match dimension");
  if (!is_hermitian(rho.entries))
    throw std::domain_error("density matrix is not Hermitian");
  if (std::abs(rho.entries.trace().real() - 1.0) > kTraceTol ||
      std::abs(rho.entries.trace().imag()) > kTraceTol)
    throw std::domain_error("density matrix trace is not one");
  Spectrum spec = hermitian_eigenvalues(rho.entries);
  if (spec.values.front() < -kPsdTol)
    throw std::domain_error("density matrix is not positive semidefinite");
}

double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("binary_entropy: probability outside [0, 1]");
  double h = 0.0;
  if (p > 0.0) h -= p * std::log2(p);
  if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
  return h < 0.0 ? 0.0 : h;
}

double von_neumann_entropy(const Spectrum& spec) {
  double sum = 0.0;
  double h = 0.0;
  for (double v : spec.values) {
    if (v < -kSpectrumClamp)
      throw std::domain_error("von_neumann_entropy: negative eigenvalue beyond clamp");
    double p = v < 0.0 ? 0.0 : v;
    sum += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(sum - 1.0) > kTraceTol)
    throw std::domain_error("von_neumann_entropy: spectrum does not sum to one");
  return h < 0.0 ? 0.0 : h;
}

Spectrum hermitian_eigenvalues(const CMatrix& m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("hermitian_eigenvalues: matrix must be square");
  if (!is_hermitian(m))
    throw std::invalid_argument("hermitian_eigenvalues: matrix is not Hermitian");

  const int n = static_cast<int>(m.rows());
  Spectrum spec;
  spec.values.reserve(n);

  bool diagonal = true;
  for (int i = 0; i < n && diagonal; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && m(i, j) != Complex{0.0, 0.0}) {
        diagonal = false;
        break;
      }
  if (diagonal) {
    for (int i = 0; i < n; ++i) spec.values.push_back(m(i, i).real());
    std::sort(spec.values.begin(), spec.values.end());
    return spec;
  }

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(m, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("hermitian_eigenvalues: eigensolver failed");
  for (int i = 0; i < n; ++i) spec.values.push_back(solver.eigenvalues()(i));
  return spec;
}

Spectrum hermitian_eigenvalues(const DensityMatrix& rho) {
  return hermitian_eigenvalues(rho.entries);
}

double entropy_bits(const DensityMatrix& rho) {
  return von_neumann_entropy(hermitian_eigenvalues(rho.entries));
}

}  // namespace jcd
