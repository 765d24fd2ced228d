#include "jcd/sweep.hpp"

#include <cmath>
#include <stdexcept>

namespace jcd::sweep {

std::vector<double> tau_grid(double tau_max, int steps) {
  if (steps < 2) throw std::invalid_argument("tau_grid: need >= 2 steps");
  if (!(tau_max > 0.0)) throw std::invalid_argument("tau_grid: tau_max must be positive");
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = tau_max * static_cast<double>(i) / (steps - 1);
  return grid;
}

std::vector<double> theta_grid(int steps) {
  if (steps < 2) throw std::invalid_argument("theta_grid: need >= 2 steps");
  const double half_pi = std::asin(1.0);
  std::vector<double> grid(steps);
  for (int i = 0; i < steps; ++i)
    grid[i] = half_pi * static_cast<double>(i) / (steps - 1);
  return grid;
}

std::vector<double> discord_surface(const ThermalWeights& w, int n,
                                    const std::vector<double>& taus,
                                    const std::vector<double>& thetas,
                                    Exec exec) {
  const long rows = static_cast<long>(taus.size());
  const long cols = static_cast<long>(thetas.size());
  std::vector<double> out(static_cast<std::size_t>(rows * cols));
  const bool use_parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (use_parallel)
  for (long i = 0; i < rows; ++i) {
    const EvolutionAngles ang = evolution_angles(n, taus[i]);
    for (long j = 0; j < cols; ++j)
      out[static_cast<std::size_t>(i * cols + j)] =
          discord_value(w, ang, thetas[j]);
  }
  return out;
}

std::vector<DynamicsPoint> dynamics_sweep(const ThermalWeights& w, int n,
                                          const std::vector<double>& taus,
                                          const MinimizeOptions& opts,
                                          Exec exec) {
  const long npts = static_cast<long>(taus.size());
  std::vector<DynamicsPoint> out(static_cast<std::size_t>(npts));
  const bool use_parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic) if (use_parallel)
  for (long i = 0; i < npts; ++i) {
    const EvolutionAngles ang = evolution_angles(n, taus[i]);
    const DiscordMinimum m = minimize_discord(w, ang, opts);
    out[static_cast<std::size_t>(i)] =
        DynamicsPoint{taus[i], m.delta, m.theta_star, inversion(w, ang)};
  }
  return out;
}

std::vector<double> fixed_theta_slice(const ThermalWeights& w, int n,
                                      double theta,
                                      const std::vector<double>& taus,
                                      Exec exec) {
  const long npts = static_cast<long>(taus.size());
  std::vector<double> out(static_cast<std::size_t>(npts));
  const bool use_parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (use_parallel)
  for (long i = 0; i < npts; ++i) {
    const EvolutionAngles ang = evolution_angles(n, taus[i]);
    out[static_cast<std::size_t>(i)] = discord_value(w, ang, theta);
  }
  return out;
}

std::vector<double> inversion_sweep(const ThermalWeights& w, int n,
                                    const std::vector<double>& taus,
                                    Exec exec) {
  const long npts = static_cast<long>(taus.size());
  std::vector<double> out(static_cast<std::size_t>(npts));
  const bool use_parallel = exec == Exec::parallel;

#pragma omp parallel for schedule(static) if (use_parallel)
  for (long i = 0; i < npts; ++i)
    out[static_cast<std::size_t>(i)] = inversion(w, evolution_angles(n, taus[i]));
  return out;
}

}  // namespace jcd::sweep
