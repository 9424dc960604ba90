#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace iontrap {

/// Physical definition of a linear ion chain in a harmonic axial trap.
struct TrapChainConfig {
  int ion_count = 1;               // N
  double trap_angular_freq = 0.0;  // axial nu, rad/s
  double ion_mass = 0.0;           // kg
  int ionization_degree = 1;       // Z

  /// Throws DomainError naming the first field that is out of range.
  void validate() const;
};

/// Equilibrium of the chain: dimensionless positions u_m (ascending) and the
/// length scale that converts them to meters.
struct ChainEquilibrium {
  double length_scale = 0.0;
  std::vector<double> positions;

  std::vector<double> positions_meters() const;
};

enum class InitialGuess {
  /// Evenly spaced, spacing taken from the published minimum-spacing law.
  uniform_fit,
  /// The uniform guess stretched by 1% and shifted by 1% of its spacing.
  perturbed,
};

struct SolverOptions {
  double tolerance = 1e-13;  // infinity norm of the force residual
  int max_iterations = 200;
  InitialGuess initial_guess = InitialGuess::uniform_fit;
};

/// (Z^2 e^2 / 4 pi eps0 M nu^2)^(1/3), in meters.
double length_scale(const TrapChainConfig &cfg);

/// Starting point handed to the Newton iteration.
std::vector<double> initial_positions(int ion_count, InitialGuess guess);

/// Dimensionless force balance on each ion:
///   F_m = u_m - sum_{n<m} 1/(u_m-u_n)^2 + sum_{n>m} 1/(u_m-u_n)^2.
/// The equilibrium is the root F = 0.
std::vector<double> equilibrium_residual(std::span<const double> positions);

/// Damped Newton iteration on the force balance. The Jacobian is the
/// normal-mode coupling matrix evaluated at the current iterate.
///
/// Throws ConvergenceError (with the last residual) if the iteration cap is
/// reached or no damped step reduces the residual.
std::vector<double> solve_equilibrium(int ion_count, const SolverOptions &options);
std::vector<double> solve_equilibrium(int ion_count, double tolerance = 1e-13);

ChainEquilibrium equilibrium(const TrapChainConfig &cfg,
                             const SolverOptions &options = {});

struct MinimumSpacing {
  double spacing = 0.0;
  /// 0-based index of the left ion of the closest pair. Ties resolve to the
  /// lower index.
  std::size_t index = 0;
};

/// Smallest adjacent gap of a sorted chain. Requires at least two ions.
MinimumSpacing minimum_spacing(std::span<const double> positions);

/// value ~= prefactor / n^exponent
struct PowerLawFit {
  double prefactor = 0.0;
  double exponent = 0.0;
};

/// Ordinary least squares of log(value) against log(n).
PowerLawFit fit_power_law(std::span<const double> n, std::span<const double> value);

/// Solves every chain in [n_min, n_max] and fits its minimum spacing.
/// Requires n_min >= 2 and at least three points.
PowerLawFit fit_min_spacing_law(int n_min = 2, int n_max = 10);

/// Minimum spacing in meters, from the solved chain (not the fitted law).
double min_spacing_meters(const TrapChainConfig &cfg);

} // namespace iontrap
