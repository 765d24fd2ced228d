#pragma once

#include <complex>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace jcd {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

// Hermiticity tolerance for matrices that claim to be Hermitian.
inline constexpr double kHermitianTol = 1e-12;
// Trace-one tolerance for density matrices and their spectra.
inline constexpr double kTraceTol = 1e-10;
// Most negative eigenvalue a density matrix may show before it is rejected.
inline constexpr double kPsdTol = 1e-10;
// Eigenvalues in [-kSpectrumClamp, 0) are round-off and clamped to zero;
// anything more negative is a genuine fault.
inline constexpr double kSpectrumClamp = 1e-12;

/// Real eigenvalues in ascending order. When sourced from a density matrix
/// the values are probabilities summing to one.
struct Spectrum {
  std::vector<double> values;
};

/// Dense complex density matrix with named basis states.
struct DensityMatrix {
  CMatrix entries;
  std::vector<std::string> basis_labels;

  int dim() const { return static_cast<int>(entries.rows()); }
};

bool is_hermitian(const CMatrix& m, double tol = kHermitianTol);

/// Throws std::domain_error unless rho is Hermitian, trace one, and positive
/// semidefinite within the module tolerances.
void validate_density(const DensityMatrix& rho);

/// h(p) = -p log2 p - (1-p) log2 (1-p), in bits. Rejects p outside [0, 1].
double binary_entropy(double p);

/// -sum lambda log2 lambda over a probability spectrum, in bits.
/// Values in [-1e-12, 0) are clamped to zero first; the spectrum must sum
/// to one within kTraceTol or the call throws (upstream numerical fault).
double von_neumann_entropy(const Spectrum& spec);

/// Eigenvalues of a Hermitian matrix, ascending. Exact for diagonal input;
/// non-Hermitian input is rejected.
Spectrum hermitian_eigenvalues(const CMatrix& m);
Spectrum hermitian_eigenvalues(const DensityMatrix& rho);

/// von_neumann_entropy(hermitian_eigenvalues(rho)) in one step.
double entropy_bits(const DensityMatrix& rho);

}  // namespace jcd
