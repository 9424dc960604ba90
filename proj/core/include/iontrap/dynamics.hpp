#pragma once

#include "iontrap/normal_modes.hpp"

#include <complex>
#include <string_view>
#include <vector>

namespace iontrap {

/// Amplitudes of the one-phonon truncation for the addressed ion:
///   alpha0 |1>|vac> + beta0 |2>|vac> + sum_p (alpha_p |1>|1_p> + beta_p |2>|1_p>)
/// Mode index p is 0-based here (p = 0 is the center-of-mass mode).
struct AmplitudeState {
  double time = 0.0;
  std::complex<double> alpha0;
  std::complex<double> beta0;
  std::vector<std::complex<double>> alpha;
  std::vector<std::complex<double>> beta;

  double norm() const;
  /// sum over p >= 1 (every mode but the COM) of |alpha_p|^2 + |beta_p|^2
  double extraneous_population() const;
};

enum class InitialCondition {
  upper_vacuum,      // beta0 = 1
  lower_com_phonon,  // alpha_COM = 1
};

std::string_view to_string(InitialCondition c);
InitialCondition parse_initial_condition(std::string_view text);

struct SimulationConfig {
  double rabi = 0.0;               // Omega_0, rad/s
  double eta = 0.0;                // Lamb-Dicke parameter
  double trap_angular_freq = 1.0;  // nu, rad/s
  int ion_count = 1;
  int ion_index = 1;               // addressed ion, 1-based
  double duration = 0.0;           // s
  double tolerance = 1e-10;        // accuracy target; steps are held to a tenth of it
  InitialCondition initial = InitialCondition::upper_vacuum;
  /// Spacing of the uniform output grid; 0 picks duration / 1000.
  double sample_interval = 0.0;
  /// Drop every mode but the COM.
  bool com_only = false;

  void validate() const;

  /// Omega_0 eta / sqrt(N), the red-sideband coupling rate.
  double sideband_coupling() const;
  /// 2 pi sqrt(N) / (Omega_0 eta).
  double sideband_period() const;
};

struct TimeSeries {
  /// The uniform grid, every accepted step, and the refined time of each
  /// local maximum of the extraneous population.
  std::vector<AmplitudeState> samples;
  int accepted_steps = 0;
  int rejected_steps = 0;

  double max_norm_drift() const;
};

/// Integrates the red-sideband (Delta = -nu_1) amplitude equations
///   d alpha0/dt = g sum_p s_p beta_p
///   d beta0/dt  = g sum_p s_p alpha_p
///   d alpha_p/dt = -i (nu_p - nu_1) alpha_p - g s_p beta0
///   d beta_p/dt  = -i (nu_p + nu_1) beta_p  - g s_p alpha0
/// with g = Omega_0 eta / sqrt(N) and s_p = s^(p)_m of the addressed ion,
/// using an adaptive Dormand-Prince 5(4) pair.
///
/// Throws StepUnderflowError if the step size collapses.
TimeSeries integrate(const SimulationConfig &config);
TimeSeries integrate(const SimulationConfig &config, const ModeSpectrum &spectrum);

struct ModeEnvelope {
  int mode = 0;               // 0-based; the COM mode is never listed
  double alpha_limit = 0.0;   // 2 g |s_p| / (nu_p - nu_1)
  double beta_limit = 0.0;    // 2 g |s_p| / (nu_p + nu_1)
  double alpha_max = 0.0;     // max_t |alpha_p(t)|
  double beta_max = 0.0;
};

struct EnvelopeReport {
  std::vector<ModeEnvelope> modes;
  double slack = 0.0;  // absolute allowance on each amplitude
  bool satisfied = true;

  /// Largest observed amplitude / limit over all modes (0 if no modes).
  double worst_ratio() const;
};

/// Compares every sampled amplitude with its analytic upper limit. Violations
/// are reported, not thrown. The absolute slack defaults to 10x the
/// integrator tolerance.
EnvelopeReport envelope_check(const TimeSeries &series, const SimulationConfig &config);
EnvelopeReport envelope_check(const TimeSeries &series, const SimulationConfig &config,
                              const ModeSpectrum &spectrum);

/// max_t of the extraneous-mode population.
double extraneous_population(const TimeSeries &series);

/// Runs the same drive once per addressed ion and averages the per-ion
/// maxima; this is the quantity the Sigma(N) bound limits.
struct ChainAverage {
  std::vector<double> per_ion_max;
  double mean_max = 0.0;
  double max_norm_drift = 0.0;
};

ChainAverage ion_averaged_extraneous_population(const SimulationConfig &config);

} // namespace iontrap
