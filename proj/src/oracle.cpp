#include "jcd/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <vector>

namespace jcd::oracle {

namespace {

constexpr double kTinyProbability = 1e-12;

// Descending copy padded with zeros to length `len`.
std::vector<double> descending_padded(const Spectrum& spec, std::size_t len) {
  std::vector<double> v(spec.values.rbegin(), spec.values.rend());
  v.resize(std::max(len, v.size()), 0.0);
  return v;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double dev = 0.0;
  for (std::size_t i = 0; i < std::max(a.size(), b.size()); ++i) {
    const double x = i < a.size() ? a[i] : 0.0;
    const double y = i < b.size() ? b[i] : 0.0;
    dev = std::max(dev, std::abs(x - y));
  }
  return dev;
}

// Second elementary symmetric polynomial of a trace-one spectrum:
// e2 = (1 - sum lambda^2) / 2. Equals the product of the two nonzero
// eigenvalues for a rank-2 state.
double pair_product(const Spectrum& spec) {
  double sum = 0.0, sum_sq = 0.0;
  for (double v : spec.values) {
    sum += v;
    sum_sq += v * v;
  }
  return 0.5 * (sum * sum - sum_sq);
}

}  // namespace

CMatrix interaction_hamiltonian(const TruncatedSpace& space, double beta) {
  if (space.n_max < 0)
    throw std::invalid_argument("truncated space needs n_max >= 0");
  CMatrix h = CMatrix::Zero(space.dim(), space.dim());
  for (int k = 0; k + 1 <= space.n_max; ++k) {
    const double g = beta * std::sqrt(static_cast<double>(k) + 1.0);
    h(space.index(0, k + 1), space.index(1, k)) = g;
    h(space.index(1, k), space.index(0, k + 1)) = g;
  }
  return h;
}

CMatrix excitation_number(const TruncatedSpace& space) {
  CMatrix n = CMatrix::Zero(space.dim(), space.dim());
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k <= space.n_max; ++k)
      n(space.index(a, k), space.index(a, k)) = static_cast<double>(k + a);
  return n;
}

DensityMatrix thermal_fock_state(const TruncatedSpace& space,
                                 const ThermalWeights& w, int n) {
  if (n < 0) throw std::invalid_argument("photon number must be nonnegative");
  if (space.n_max < n + 1)
    throw std::invalid_argument(
        "truncation too small: need n_max >= n+1 for exact dynamics");
  DensityMatrix rho;
  rho.entries = CMatrix::Zero(space.dim(), space.dim());
  rho.entries(space.index(0, n), space.index(0, n)) = w.lambda0;
  rho.entries(space.index(1, n), space.index(1, n)) = w.lambda1;
  return rho;
}

Propagator::Propagator(const CMatrix& h) {
  if (!is_hermitian(h))
    throw std::invalid_argument("propagator generator must be Hermitian");
  Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("propagator eigendecomposition failed");
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

CMatrix Propagator::unitary(double t) const {
  const int d = static_cast<int>(eigenvalues_.size());
  Eigen::VectorXcd phases(d);
  for (int i = 0; i < d; ++i)
    phases(i) = std::polar(1.0, -eigenvalues_(i) * t);
  return eigenvectors_ * phases.asDiagonal() * eigenvectors_.adjoint();
}

DensityMatrix Propagator::apply(const DensityMatrix& rho0, double t) const {
  if (rho0.entries.rows() != eigenvalues_.size())
    throw std::invalid_argument("state dimension does not match the generator");
  const CMatrix u = unitary(t);
  DensityMatrix out;
  out.entries = u * rho0.entries * u.adjoint();
  out.basis_labels = rho0.basis_labels;
  return out;
}

DensityMatrix evolve(const DensityMatrix& rho0, const CMatrix& h, double t) {
  return Propagator(h).apply(rho0, t);
}

DensityMatrix partial_trace(const DensityMatrix& rho,
                            const TruncatedSpace& space, Keep keep) {
  if (rho.entries.rows() != space.dim())
    throw std::invalid_argument("partial_trace: dimension mismatch");
  DensityMatrix out;
  if (keep == Keep::atom) {
    out.entries = CMatrix::Zero(2, 2);
    out.basis_labels = {"|0>", "|1>"};
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        Complex sum = 0.0;
        for (int k = 0; k <= space.n_max; ++k)
          sum += rho.entries(space.index(a, k), space.index(b, k));
        out.entries(a, b) = sum;
      }
  } else {
    const int levels = space.levels();
    out.entries = CMatrix::Zero(levels, levels);
    for (int k = 0; k < levels; ++k) {
      out.basis_labels.push_back("|" + std::to_string(k) + ">");
      for (int l = 0; l < levels; ++l) {
        Complex sum = 0.0;
        for (int a = 0; a < 2; ++a)
          sum += rho.entries(space.index(a, k), space.index(a, l));
        out.entries(k, l) = sum;
      }
    }
  }
  return out;
}

Conditioned condition_on_measurement(const DensityMatrix& rho,
                                     const TruncatedSpace& space,
                                     const MeasurementBasis& b, int outcome) {
  if (rho.entries.rows() != space.dim())
    throw std::invalid_argument("condition_on_measurement: dimension mismatch");
  const Eigen::Vector2cd ket = measurement_ket(b, outcome);
  const int levels = space.levels();

  // <pi| rho |pi> as a cavity operator.
  CMatrix m = CMatrix::Zero(levels, levels);
  for (int k = 0; k < levels; ++k)
    for (int l = 0; l < levels; ++l) {
      Complex sum = 0.0;
      for (int a = 0; a < 2; ++a)
        for (int c = 0; c < 2; ++c)
          sum += std::conj(ket(a)) * ket(c) *
                 rho.entries(space.index(a, k), space.index(c, l));
      m(k, l) = sum;
    }

  Conditioned result;
  result.probability = m.trace().real();
  if (result.probability <= kVanishingProbability) return result;

  DensityMatrix state;
  state.entries = m / result.probability;
  for (int k = 0; k < levels; ++k)
    state.basis_labels.push_back("|" + std::to_string(k) + ">");
  result.state = std::move(state);
  return result;
}

DiscordEvaluator::DiscordEvaluator(DensityMatrix rho, TruncatedSpace space)
    : rho_(std::move(rho)), space_(space) {
  s_atom_ = entropy_bits(partial_trace(rho_, space_, Keep::atom));
  s_joint_ = entropy_bits(rho_);
}

double DiscordEvaluator::operator()(const MeasurementBasis& b) const {
  double s_cond = 0.0;
  for (int outcome = 0; outcome < 2; ++outcome) {
    const Conditioned c = condition_on_measurement(rho_, space_, b, outcome);
    if (!c.state) continue;
    s_cond += c.probability * entropy_bits(*c.state);
  }
  return s_atom_ - s_joint_ + s_cond;
}

double discord(const DensityMatrix& rho, const TruncatedSpace& space,
               const MeasurementBasis& b) {
  return DiscordEvaluator(rho, space)(b);
}

GridMinimum minimize_discord(const DensityMatrix& rho,
                             const TruncatedSpace& space, int theta_points,
                             int phi_points) {
  if (theta_points < 3 || phi_points < 3)
    throw std::invalid_argument("minimize_discord: grids need >= 3 points");

  const DiscordEvaluator evaluator(rho, space);
  long evaluations = 0;
  auto eval = [&](double theta, double phi) {
    ++evaluations;
    return evaluator(MeasurementBasis{theta, phi});
  };

  const double half_pi = std::asin(1.0);
  const double two_pi = 4.0 * half_pi;

  GridMinimum best;
  best.delta = std::numeric_limits<double>::infinity();
  auto consider = [&](double v, double th, double ph) {
    if (v < best.delta) {
      best.delta = v;
      best.theta_star = th;
      best.phi_star = ph;
    }
  };

  std::vector<double> thetas(theta_points);
  for (int i = 0; i < theta_points; ++i)
    thetas[i] = half_pi * static_cast<double>(i) / (theta_points - 1);

  int best_phi_index = 0;
  std::vector<double> best_column(theta_points);
  for (int j = 0; j < phi_points; ++j) {
    const double phi = two_pi * static_cast<double>(j) / phi_points;
    std::vector<double> column(theta_points);
    for (int i = 0; i < theta_points; ++i) {
      column[i] = eval(thetas[i], phi);
      if (column[i] < best.delta) best_phi_index = j;
      consider(column[i], thetas[i], phi);
    }
    if (j == best_phi_index) best_column = column;
  }
  const double phi_best = two_pi * static_cast<double>(best_phi_index) / phi_points;

  const double inv_golden = (std::sqrt(5.0) - 1.0) / 2.0;
  auto refine = [&](double a, double b) {
    double x1 = b - inv_golden * (b - a);
    double x2 = a + inv_golden * (b - a);
    double f1 = eval(x1, phi_best), f2 = eval(x2, phi_best);
    while (b - a > 1e-10) {
      if (f1 <= f2) {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - inv_golden * (b - a);
        f1 = eval(x1, phi_best);
      } else {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + inv_golden * (b - a);
        f2 = eval(x2, phi_best);
      }
    }
    const double mid = 0.5 * (a + b);
    consider(eval(mid, phi_best), mid, phi_best);
  };

  for (int i = 1; i + 1 < theta_points; ++i)
    if (best_column[i] < best_column[i - 1] &&
        best_column[i] <= best_column[i + 1])
      refine(thetas[i - 1], thetas[i + 1]);
  if (best_column[0] < best_column[1]) refine(thetas[0], thetas[1]);
  if (best_column[theta_points - 1] < best_column[theta_points - 2])
    refine(thetas[theta_points - 2], thetas[theta_points - 1]);

  best.evaluations = evaluations;
  return best;
}

bool ValidationReport::pass() const {
  return joint_entries < kAlgebraicTol && reduced_atom < kAlgebraicTol &&
         spectrum_joint < kAlgebraicTol && spectrum_atom < kAlgebraicTol &&
         spectrum_conditional < kAlgebraicTol &&
         probabilities < kAlgebraicTol && y_params < kAlgebraicTol &&
         discord_dev < kAlgebraicTol && inversion_dev < kAlgebraicTol &&
         delta_dev < kMinimizeTol;
}

namespace {

struct Row {
  const char* name;
  double value;
  double tol;
};

std::vector<Row> report_rows(const ValidationReport& r) {
  return {
      {"joint_entries", r.joint_entries, ValidationReport::kAlgebraicTol},
      {"reduced_atom", r.reduced_atom, ValidationReport::kAlgebraicTol},
      {"spectrum_joint", r.spectrum_joint, ValidationReport::kAlgebraicTol},
      {"spectrum_atom", r.spectrum_atom, ValidationReport::kAlgebraicTol},
      {"spectrum_conditional", r.spectrum_conditional,
       ValidationReport::kAlgebraicTol},
      {"probabilities", r.probabilities, ValidationReport::kAlgebraicTol},
      {"y_params", r.y_params, ValidationReport::kAlgebraicTol},
      {"discord", r.discord_dev, ValidationReport::kAlgebraicTol},
      {"delta", r.delta_dev, ValidationReport::kMinimizeTol},
      {"inversion", r.inversion_dev, ValidationReport::kAlgebraicTol},
  };
}

}  // namespace

std::string ValidationReport::table() const {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "%-22s %14s %10s %s\n", "quantity",
                "max |dev|", "tolerance", "ok");
  out += line;
  for (const Row& row : report_rows(*this)) {
    std::snprintf(line, sizeof line, "%-22s %14.3e %10.1e %s\n", row.name,
                  row.value, row.tol, row.value < row.tol ? "yes" : "NO");
    out += line;
  }
  return out;
}

std::string ValidationReport::key_values() const {
  char line[160];
  std::string out;
  std::snprintf(line, sizeof line, "n=%d\nlambda0=%.17g\ntau_points=%d\ntheta_points=%d\n",
                n, lambda0, tau_points, theta_points);
  out += line;
  for (const Row& row : report_rows(*this)) {
    std::snprintf(line, sizeof line, "%s=%.17g\n", row.name, row.value);
    out += line;
  }
  out += pass() ? "pass=1\n" : "pass=0\n";
  return out;
}

ValidationReport ValidationReport::merged(const ValidationReport& a,
                                          const ValidationReport& b) {
  ValidationReport m;
  m.n = a.n == b.n ? a.n : -1;
  m.lambda0 = a.lambda0 == b.lambda0 ? a.lambda0 : -1.0;
  m.tau_points = std::max(a.tau_points, b.tau_points);
  m.theta_points = std::max(a.theta_points, b.theta_points);
  m.joint_entries = std::max(a.joint_entries, b.joint_entries);
  m.reduced_atom = std::max(a.reduced_atom, b.reduced_atom);
  m.spectrum_joint = std::max(a.spectrum_joint, b.spectrum_joint);
  m.spectrum_atom = std::max(a.spectrum_atom, b.spectrum_atom);
  m.spectrum_conditional =
      std::max(a.spectrum_conditional, b.spectrum_conditional);
  m.probabilities = std::max(a.probabilities, b.probabilities);
  m.y_params = std::max(a.y_params, b.y_params);
  m.discord_dev = std::max(a.discord_dev, b.discord_dev);
  m.delta_dev = std::max(a.delta_dev, b.delta_dev);
  m.inversion_dev = std::max(a.inversion_dev, b.inversion_dev);
  return m;
}

ValidationReport cross_validate(int n, std::span<const double> tau_grid,
                                const ThermalWeights& w,
                                const ValidationOptions& opts) {
  if (n < 0) throw std::invalid_argument("cross_validate: n must be >= 0");
  if (tau_grid.empty() || opts.theta_points < 2)
    throw std::invalid_argument("cross_validate: grids too small");

  const TruncatedSpace space{n + 1 + opts.extra_levels};
  const CMatrix h = interaction_hamiltonian(space, 1.0);
  const Propagator prop(h);
  const DensityMatrix rho0 = thermal_fock_state(space, w, n);
  const double bias = opts.closed_form_bias;

  std::vector<double> thetas(opts.theta_points);
  const double half_pi = std::asin(1.0);
  for (int i = 0; i < opts.theta_points; ++i)
    thetas[i] = half_pi * static_cast<double>(i) / (opts.theta_points - 1);

  // The six labeled basis states of the closed-form block, in order.
  struct Label {
    int atom, photons;
  };
  const Label labels[6] = {{0, n - 1}, {0, n}, {0, n + 1},
                           {1, n - 1}, {1, n}, {1, n + 1}};

  double dev_joint = 0.0, dev_atom = 0.0, dev_spec_joint = 0.0;
  double dev_spec_atom = 0.0, dev_spec_cond = 0.0, dev_prob = 0.0;
  double dev_y = 0.0, dev_discord = 0.0, dev_delta = 0.0, dev_inv = 0.0;

  const long npts = static_cast<long>(tau_grid.size());
  const bool use_parallel = opts.exec == Exec::parallel;

#pragma omp parallel for schedule(dynamic) if (use_parallel)                 \
    reduction(max : dev_joint, dev_atom, dev_spec_joint, dev_spec_atom,      \
                  dev_spec_cond, dev_prob, dev_y, dev_discord, dev_delta,    \
                  dev_inv)
  for (long it = 0; it < npts; ++it) {
    try {
      const double tau = tau_grid[it];
      const EvolutionAngles ang = evolution_angles(n, tau);
      const DensityMatrix closed = joint_state(w, ang);
      const DensityMatrix evolved = prop.apply(rho0, tau);

      // Joint entries over the labeled block; oracle support outside the
      // block counts against the same deviation (the closed form is zero
      // there by construction).
      double outside = 0.0;
      {
        std::vector<int> mapped(6, -1);
        for (int i = 0; i < 6; ++i)
          if (labels[i].photons >= 0 && labels[i].photons <= space.n_max)
            mapped[i] = space.index(labels[i].atom, labels[i].photons);
        std::vector<bool> in_block(space.dim(), false);
        for (int idx : mapped)
          if (idx >= 0) in_block[idx] = true;
        for (int i = 0; i < 6; ++i)
          for (int j = 0; j < 6; ++j) {
            const Complex cv = closed.entries(i, j) + bias;
            const Complex ov = (mapped[i] >= 0 && mapped[j] >= 0)
                                   ? evolved.entries(mapped[i], mapped[j])
                                   : Complex{0.0, 0.0};
            dev_joint = std::max(dev_joint, std::abs(cv - ov));
          }
        for (int i = 0; i < space.dim(); ++i)
          for (int j = 0; j < space.dim(); ++j)
            if (!in_block[i] || !in_block[j])
              outside = std::max(outside, std::abs(evolved.entries(i, j)));
      }
      dev_joint = std::max(dev_joint, outside);

      const DensityMatrix closed_atom = atom_reduced(w, ang);
      const DensityMatrix oracle_atom =
          partial_trace(evolved, space, Keep::atom);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          dev_atom = std::max(
              dev_atom, std::abs(closed_atom.entries(i, j) + bias -
                                 oracle_atom.entries(i, j)));

      dev_spec_joint = std::max(
          dev_spec_joint,
          max_abs_diff(descending_padded(joint_spectrum(w), space.dim()),
                       descending_padded(hermitian_eigenvalues(evolved),
                                         space.dim())));
      dev_spec_atom = std::max(
          dev_spec_atom,
          max_abs_diff(descending_padded(atom_spectrum(w, ang), 2),
                       descending_padded(hermitian_eigenvalues(oracle_atom), 2)));

      const DiscordEvaluator evaluator(evolved, space);
      for (double theta : thetas) {
        const MeasurementBasis basis{theta, 0.0};
        const auto [p0, p1] = outcome_probabilities(w, ang, basis);
        for (int outcome = 0; outcome < 2; ++outcome) {
          const Conditioned cond =
              condition_on_measurement(evolved, space, basis, outcome);
          const double closed_p = (outcome == 0 ? p0 : p1) + bias;
          dev_prob = std::max(dev_prob, std::abs(closed_p - cond.probability));
          if (!cond.state || (outcome == 0 ? p0 : p1) <= kTinyProbability)
            continue;
          const ConditionalOutcome closed_cond =
              conditional_cavity_state(w, ang, basis, outcome);
          const Spectrum oracle_spec = hermitian_eigenvalues(*cond.state);
          const double r =
              std::sqrt(std::max(0.0, 1.0 - 4.0 * closed_cond.y));
          const Spectrum closed_spec{
              {0.0, 0.5 * (1.0 - r), 0.5 * (1.0 + r)}};
          dev_spec_cond = std::max(
              dev_spec_cond,
              max_abs_diff(descending_padded(closed_spec, oracle_spec.values.size()),
                           descending_padded(oracle_spec, 3)));
          dev_y = std::max(dev_y, std::abs(closed_cond.y + bias -
                                           pair_product(oracle_spec)));
        }
        dev_discord =
            std::max(dev_discord, std::abs(discord_value(w, ang, theta) + bias -
                                           evaluator(basis)));
      }

      if (opts.check_delta) {
        const DiscordMinimum closed_min = jcd::minimize_discord(w, ang);
        const GridMinimum oracle_min =
            minimize_discord(evolved, space, opts.minimize_theta_points,
                             opts.minimize_phi_points);
        dev_delta = std::max(
            dev_delta, std::abs(closed_min.delta + bias - oracle_min.delta));
      }

      double oracle_inversion = 0.0;
      for (int k = 0; k <= space.n_max; ++k)
        oracle_inversion +=
            evolved.entries(space.index(0, k), space.index(0, k)).real() -
            evolved.entries(space.index(1, k), space.index(1, k)).real();
      dev_inv = std::max(
          dev_inv, std::abs(inversion(w, ang) + bias - oracle_inversion));
    } catch (const std::exception&) {
      // A numerical fault anywhere in the comparison is a failed validation.
      const double inf = std::numeric_limits<double>::infinity();
      dev_joint = inf;
      dev_discord = inf;
    }
  }

  ValidationReport report;
  report.n = n;
  report.lambda0 = w.lambda0;
  report.tau_points = static_cast<int>(tau_grid.size());
  report.theta_points = opts.theta_points;
  report.joint_entries = dev_joint;
  report.reduced_atom = dev_atom;
  report.spectrum_joint = dev_spec_joint;
  report.spectrum_atom = dev_spec_atom;
  report.spectrum_conditional = dev_spec_cond;
  report.probabilities = dev_prob;
  report.y_params = dev_y;
  report.discord_dev = dev_discord;
  report.delta_dev = dev_delta;
  report.inversion_dev = dev_inv;
  return report;
}

}  // namespace jcd::oracle
