#include "iontrap/chain.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/normal_modes.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <string>

namespace iontrap {

namespace {

double inf_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v)
    m = std::max(m, std::abs(x));
  return m;
}

bool strictly_increasing(std::span<const double> v) {
  return std::adjacent_find(v.begin(), v.end(),
                            [](double a, double b) { return !(a < b); }) == v.end();
}

} // namespace

void TrapChainConfig::validate() const {
  if (ion_count < 1)
    throw DomainError("ion_count must be >= 1, got " + std::to_string(ion_count));
  if (!(trap_angular_freq > 0.0) || !std::isfinite(trap_angular_freq))
    throw DomainError("trap_angular_freq must be > 0");
  if (!(ion_mass > 0.0) || !std::isfinite(ion_mass))
    throw DomainError("ion_mass must be > 0");
  if (ionization_degree < 1)
    throw DomainError("ionization_degree must be >= 1, got " +
                      std::to_string(ionization_degree));
}

std::vector<double> ChainEquilibrium::positions_meters() const {
  std::vector<double> out(positions.size());
  std::transform(positions.begin(), positions.end(), out.begin(),
                 [this](double u) { return u * length_scale; });
  return out;
}

double length_scale(const TrapChainConfig &cfg) {
  cfg.validate();
  const double z = cfg.ionization_degree;
  const double nu = cfg.trap_angular_freq;
  return std::cbrt(z * z * coulomb_constant_e2() / (cfg.ion_mass * nu * nu));
}

std::vector<double> initial_positions(int ion_count, InitialGuess guess) {
  if (ion_count < 1)
    throw DomainError("ion_count must be >= 1");
  const int n = ion_count;
  std::vector<double> u(n, 0.0);
  if (n == 1)
    return u;
  const double spacing = 2.018 / std::pow(n, 0.559);
  const double half_width = 0.5 * n * spacing;
  const double step = 2.0 * half_width / (n - 1);
  for (int m = 0; m < n; ++m)
    u[m] = -half_width + m * step;
  if (guess == InitialGuess::perturbed)
    for (double &x : u)
      x = 1.01 * x + 0.01 * step;
  return u;
}

std::vector<double> equilibrium_residual(std::span<const double> u) {
  const std::size_t n = u.size();
  std::vector<double> f(u.begin(), u.end());
  for (std::size_t m = 0; m < n; ++m) {
    double coulomb = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == m)
        continue;
      const double d = u[m] - u[k];
      coulomb += (k < m ? -1.0 : 1.0) / (d * d);
    }
    f[m] += coulomb;
  }
  return f;
}

namespace {

// The equilibrium is mirror symmetric; averaging with the mirror image
// removes rounding asymmetry (the middle ion of an odd chain lands on 0).
std::vector<double> symmetrized(const std::vector<double> &u) {
  const std::size_t n = u.size();
  std::vector<double> out(n);
  for (std::size_t m = 0; m < n; ++m)
    out[m] = 0.5 * (u[m] - u[n - 1 - m]);
  return out;
}

} // namespace

std::vector<double> solve_equilibrium(int ion_count, const SolverOptions &options) {
  if (ion_count < 1)
    throw DomainError("ion_count must be >= 1");
  if (!(options.tolerance > 0.0))
    throw DomainError("tolerance must be > 0");

  std::vector<double> u = initial_positions(ion_count, options.initial_guess);
  if (ion_count == 1)
    return u;

  const auto n = static_cast<Eigen::Index>(ion_count);
  std::vector<double> f = equilibrium_residual(u);
  double residual = inf_norm(f);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    if (residual <= options.tolerance)
      return symmetrized(u);

    const Eigen::MatrixXd jacobian = build_coupling_matrix(u).entries;
    const Eigen::Map<const Eigen::VectorXd> rhs(f.data(), n);
    const Eigen::VectorXd step = jacobian.llt().solve(rhs);

    // Halve until the step keeps the ordering and lowers the residual.
    double damping = 1.0;
    bool accepted = false;
    std::vector<double> trial(u.size());
    for (int halving = 0; halving < 40; ++halving, damping *= 0.5) {
      for (Eigen::Index m = 0; m < n; ++m)
        trial[m] = u[m] - damping * step[m];
      if (!strictly_increasing(trial))
        continue;
      std::vector<double> trial_f = equilibrium_residual(trial);
      const double trial_residual = inf_norm(trial_f);
      if (trial_residual < residual) {
        u.swap(trial);
        f.swap(trial_f);
        residual = trial_residual;
        accepted = true;
        break;
      }
    }
    if (!accepted)
      throw ConvergenceError("equilibrium solver stalled for N=" +
                                 std::to_string(ion_count),
                             residual, iter);
  }
  if (residual <= options.tolerance)
    return symmetrized(u);
  throw ConvergenceError("equilibrium solver hit the iteration cap for N=" +
                             std::to_string(ion_count),
                         residual, options.max_iterations);
}

std::vector<double> solve_equilibrium(int ion_count, double tolerance) {
  SolverOptions options;
  options.tolerance = tolerance;
  return solve_equilibrium(ion_count, options);
}

ChainEquilibrium equilibrium(const TrapChainConfig &cfg, const SolverOptions &options) {
  return ChainEquilibrium{length_scale(cfg), solve_equilibrium(cfg.ion_count, options)};
}

MinimumSpacing minimum_spacing(std::span<const double> positions) {
  if (positions.size() < 2)
    throw DomainError("minimum spacing needs at least two ions");
  MinimumSpacing best{positions[1] - positions[0], 0};
  for (std::size_t m = 1; m + 1 < positions.size(); ++m) {
    const double gap = positions[m + 1] - positions[m];
    if (gap < best.spacing)
      best = {gap, m};
  }
  return best;
}

PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> value) {
  if (n.size() != value.size())
    throw DomainError("fit_power_law: size mismatch");
  if (n.size() < 3)
    throw DomainError("fit_power_law: need at least three points");

  // log v = log C - p log n
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < n.size(); ++i) {
    if (!(n[i] > 0.0) || !(value[i] > 0.0))
      throw DomainError("fit_power_law: points must be positive");
    const double x = std::log(n[i]);
    const double y = std::log(value[i]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double k = static_cast<double>(n.size());
  const double denom = k * sxx - sx * sx;
  if (denom == 0.0)
    throw DomainError("fit_power_law: abscissae are all equal");
  const double slope = (k * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / k;
  return {std::exp(intercept), -slope};
}

PowerLawFit fit_min_spacing_law(int n_min, int n_max) {
  if (n_min < 2)
    throw DomainError("fit range must start at N >= 2");
  if (n_max - n_min + 1 < 3)
    throw DomainError("fit range must contain at least three chain sizes");
  std::vector<double> ns, gaps;
  for (int n = n_min; n <= n_max; ++n) {
    ns.push_back(n);
    gaps.push_back(minimum_spacing(solve_equilibrium(n)).spacing);
  }
  return fit_power_law(ns, gaps);
}

double min_spacing_meters(const TrapChainConfig &cfg) {
  cfg.validate();
  if (cfg.ion_count < 2)
    throw DomainError("minimum spacing needs at least two ions");
  return length_scale(cfg) * minimum_spacing(solve_equilibrium(cfg.ion_count)).spacing;
}

} // namespace iontrap
