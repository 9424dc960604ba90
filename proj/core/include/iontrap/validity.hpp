#pragma once

#include "iontrap/normal_modes.hpp"

#include <memory>

namespace iontrap {

/// Process-wide memo of solved chains, keyed by N. Safe for concurrent use;
/// entries are immutable once inserted.
std::shared_ptr<const ModeSpectrum> cached_normal_modes(int ion_count);

/// Sigma(N) = sum_{p>=2} (mu_p + 1) / ((mu_p - 1)^2 sqrt(mu_p)), the ion
/// average of the extraneous-mode weights. Requires N >= 2.
double sigma_function(int ion_count);
double sigma_function(const ModeSpectrum &spectrum);

/// Upper limits on the extraneous-mode population for a red-sideband drive.
struct ExtraneousBound {
  /// 2 (2 Omega_0 eta / (sqrt(N) nu))^2 Sigma(N)
  double exact = 0.0;
  /// (2.6 Omega_0 eta / (sqrt(N) nu))^2, i.e. Sigma(N) replaced by its plateau.
  double rounded = 0.0;
};

ExtraneousBound p_ext_bound(double rabi, double eta, double trap_angular_freq, int ion_count);

/// Bound for one addressed ion (1-based), before averaging over the chain:
///   2 (2 Omega_0 eta / (sqrt(N) nu))^2 sum_{p>=2} (mu_p+1)/(mu_p-1)^2 (s^(p)_m)^2
double p_ext_bound_for_ion(double rabi, double eta, double trap_angular_freq,
                           const ModeSpectrum &spectrum, int ion_index);

struct ValidityReport {
  double sigma_n = 0.0;
  double p_ext_bound = 0.0;          // exact-Sigma form
  double p_ext_bound_rounded = 0.0;  // 2.6-coefficient form
  double threshold = 0.01;
  bool condition_satisfied = false;

  double rabi = 0.0;
  double eta = 0.0;
  double trap_angular_freq = 0.0;
  int ion_count = 0;
};

/// The center-of-mass-only Hamiltonian is accepted when the larger of the two
/// bounds is at most `threshold`, which must lie in (0, 1].
ValidityReport check_sufficiency(double rabi, double eta, double trap_angular_freq,
                                 int ion_count, double threshold = 0.01);

} // namespace iontrap
