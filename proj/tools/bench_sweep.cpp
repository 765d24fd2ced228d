// Timing comparison of the serial reference kernels against the OpenMP
// ones on representative workloads. Results are identical by construction;
// this only reports wall time and speedup.

#include <chrono>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "jcd/oracle.hpp"
#include "jcd/sweep.hpp"

namespace {

using clock_type = std::chrono::steady_clock;

template <typename F>
double timed(F&& f) {
  const auto t0 = clock_type::now();
  f();
  const auto t1 = clock_type::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

void report(const char* name, double serial, double parallel) {
  std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %.2fx\n",
              name, serial, parallel, parallel > 0.0 ? serial / parallel : 0.0);
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("OpenMP threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP; both paths run serially\n");
#endif

  const jcd::ThermalWeights w = jcd::weights_from_ground_population(0.5);

  {
    const auto taus = jcd::sweep::tau_grid(60.0, 4000);
    const auto thetas = jcd::sweep::theta_grid(181);
    double s = timed([&] {
      jcd::sweep::discord_surface(w, 8, taus, thetas, jcd::Exec::serial);
    });
    double p = timed([&] {
      jcd::sweep::discord_surface(w, 8, taus, thetas, jcd::Exec::parallel);
    });
    report("discord_surface", s, p);
  }

  {
    const auto taus = jcd::sweep::tau_grid(60.0, 2048);
    double s = timed([&] {
      jcd::sweep::dynamics_sweep(w, 15, taus, {}, jcd::Exec::serial);
    });
    double p = timed([&] {
      jcd::sweep::dynamics_sweep(w, 15, taus, {}, jcd::Exec::parallel);
    });
    report("dynamics_sweep", s, p);
  }

  {
    const auto taus = jcd::sweep::tau_grid(20.0, 64);
    jcd::oracle::ValidationOptions opts;
    opts.exec = jcd::Exec::serial;
    double s = timed([&] { jcd::oracle::cross_validate(8, taus, w, opts); });
    opts.exec = jcd::Exec::parallel;
    double p = timed([&] { jcd::oracle::cross_validate(8, taus, w, opts); });
    report("oracle cross_validate", s, p);
  }

  return 0;
}
