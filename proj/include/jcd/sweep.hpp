#pragma once

#include <vector>

#include "jcd/closed_form.hpp"
#include "jcd/exec.hpp"
#include "jcd/measurement.hpp"

// Grid kernels shared by the CLI and the tests. Every kernel evaluates pure
// per-point functions into a preallocated buffer indexed by grid position,
// so the serial and OpenMP paths produce bitwise-identical output.
namespace jcd::sweep {

/// steps points spanning [0, tau_max] inclusive.
std::vector<double> tau_grid(double tau_max, int steps);

/// steps points spanning [0, pi/2] inclusive.
std::vector<double> theta_grid(int steps);

/// Discord over the (tau, theta) grid, row-major in tau.
std::vector<double> discord_surface(const ThermalWeights& w, int n,
                                    const std::vector<double>& taus,
                                    const std::vector<double>& thetas,
                                    Exec exec = Exec::parallel);

struct DynamicsPoint {
  double tau = 0.0;
  double delta = 0.0;
  double theta_star = 0.0;
  double inversion = 0.0;
};

/// Minimum discord and inversion per tau point.
std::vector<DynamicsPoint> dynamics_sweep(const ThermalWeights& w, int n,
                                          const std::vector<double>& taus,
                                          const MinimizeOptions& opts = {},
                                          Exec exec = Exec::parallel);

/// Fixed-theta discord per tau point.
std::vector<double> fixed_theta_slice(const ThermalWeights& w, int n,
                                      double theta,
                                      const std::vector<double>& taus,
                                      Exec exec = Exec::parallel);

/// Inversion per tau point.
std::vector<double> inversion_sweep(const ThermalWeights& w, int n,
                                    const std::vector<double>& taus,
                                    Exec exec = Exec::parallel);

}  // namespace jcd::sweep
