#include "iontrap/dynamics.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/validity.hpp"

#include <boost/numeric/odeint.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

namespace iontrap {

namespace odeint = boost::numeric::odeint;

namespace {

constexpr double kStepToleranceDivisor = 10.0;

// Real packing of the complex amplitudes: slot k holds (re, im) at
// [2k, 2k+1]. Slots: 0 alpha0, 1 beta0, 2..N+1 alpha_p, N+2..2N+1 beta_p.
using State = std::vector<double>;

struct AmplitudeSystem {
  double g = 0.0;
  std::vector<double> s;             // s^(p)_m for the addressed ion
  std::vector<double> red_detuning;  // nu_p - nu_1
  std::vector<double> blue_detuning; // nu_p + nu_1

  void operator()(const State &y, State &dy, double /*t*/) const {
    const std::size_t n = s.size();
    const auto re = [&](std::size_t k) { return y[2 * k]; };
    const auto im = [&](std::size_t k) { return y[2 * k + 1]; };
    const std::size_t a0 = 0, b0 = 1, ap = 2, bp = 2 + n;

    double sa_re = 0, sa_im = 0, sb_re = 0, sb_im = 0;
    for (std::size_t p = 0; p < n; ++p) {
      sa_re += s[p] * re(ap + p);
      sa_im += s[p] * im(ap + p);
      sb_re += s[p] * re(bp + p);
      sb_im += s[p] * im(bp + p);
    }
    dy[2 * a0] = g * sb_re;
    dy[2 * a0 + 1] = g * sb_im;
    dy[2 * b0] = g * sa_re;
    dy[2 * b0 + 1] = g * sa_im;

    for (std::size_t p = 0; p < n; ++p) {
      // d/dt z = -i w z - c  =>  (x + i y)' = (w y - c_re) + i (-w x - c_im)
      const double wr = red_detuning[p];
      const double wb = blue_detuning[p];
      const double cs = g * s[p];
      dy[2 * (ap + p)] = wr * im(ap + p) - cs * re(b0);
      dy[2 * (ap + p) + 1] = -wr * re(ap + p) - cs * im(b0);
      dy[2 * (bp + p)] = wb * im(bp + p) - cs * re(a0);
      dy[2 * (bp + p) + 1] = -wb * re(bp + p) - cs * im(a0);
    }
  }
};

AmplitudeState unpack(const State &y, std::size_t n, double t) {
  const auto at = [&](std::size_t k) { return std::complex<double>(y[2 * k], y[2 * k + 1]); };
  AmplitudeState st;
  st.time = t;
  st.alpha0 = at(0);
  st.beta0 = at(1);
  st.alpha.resize(n);
  st.beta.resize(n);
  for (std::size_t p = 0; p < n; ++p) {
    st.alpha[p] = at(2 + p);
    st.beta[p] = at(2 + n + p);
  }
  return st;
}

const ModeSpectrum &check_spectrum(const SimulationConfig &config, const ModeSpectrum &spectrum) {
  if (spectrum.size() != config.ion_count)
    throw DomainError("spectrum size does not match ion_count");
  if (spectrum.coupling.size() != spectrum.size() * spectrum.size())
    throw DomainError("spectrum is missing its coupling constants");
  return spectrum;
}

} // namespace

double AmplitudeState::norm() const {
  double total = std::norm(alpha0) + std::norm(beta0);
  for (const auto &a : alpha)
    total += std::norm(a);
  for (const auto &b : beta)
    total += std::norm(b);
  return total;
}

double AmplitudeState::extraneous_population() const {
  double total = 0.0;
  for (std::size_t p = 1; p < alpha.size(); ++p)
    total += std::norm(alpha[p]) + std::norm(beta[p]);
  return total;
}

std::string_view to_string(InitialCondition c) {
  return c == InitialCondition::upper_vacuum ? "upper-vacuum" : "lower-com-phonon";
}

InitialCondition parse_initial_condition(std::string_view text) {
  if (text == "upper-vacuum")
    return InitialCondition::upper_vacuum;
  if (text == "lower-com-phonon")
    return InitialCondition::lower_com_phonon;
  throw DomainError("unknown initial condition '" + std::string(text) +
                    "' (expected upper-vacuum or lower-com-phonon)");
}

void SimulationConfig::validate() const {
  if (ion_count < 1)
    throw DomainError("ion_count must be >= 1");
  if (ion_index < 1 || ion_index > ion_count)
    throw DomainError("ion_index outside [1, N]");
  if (!(trap_angular_freq > 0.0))
    throw DomainError("trap angular frequency must be > 0");
  if (!(rabi >= 0.0))
    throw DomainError("Rabi frequency must be >= 0");
  if (!(eta >= 0.0))
    throw DomainError("Lamb-Dicke parameter must be >= 0");
  if (!(duration > 0.0))
    throw DomainError("duration must be > 0");
  if (!(tolerance > 0.0))
    throw DomainError("tolerance must be > 0");
  if (!(sample_interval >= 0.0))
    throw DomainError("sample_interval must be >= 0");
}

double SimulationConfig::sideband_coupling() const {
  return rabi * eta / std::sqrt(static_cast<double>(ion_count));
}

double SimulationConfig::sideband_period() const {
  const double g = sideband_coupling();
  if (!(g > 0.0))
    throw DomainError("sideband period is infinite when Omega_0 eta = 0");
  return 2.0 * constants::pi / g;
}

double TimeSeries::max_norm_drift() const {
  if (samples.empty())
    return 0.0;
  const double start = samples.front().norm();
  double drift = 0.0;
  for (const auto &st : samples)
    drift = std::max(drift, std::abs(st.norm() - start));
  return drift;
}

TimeSeries integrate(const SimulationConfig &config) {
  config.validate();
  return integrate(config, *cached_normal_modes(config.ion_count));
}

TimeSeries integrate(const SimulationConfig &config, const ModeSpectrum &spectrum) {
  config.validate();
  check_spectrum(config, spectrum);
  const auto n = static_cast<std::size_t>(config.ion_count);

  auto system = std::make_shared<AmplitudeSystem>();
  system->g = config.sideband_coupling();
  const std::vector<double> freqs = mode_frequencies(spectrum, config.trap_angular_freq);
  for (std::size_t p = 0; p < n; ++p) {
    const bool dropped = config.com_only && p > 0;
    system->s.push_back(dropped ? 0.0 : spectrum.coupling(p, config.ion_index - 1));
    system->red_detuning.push_back(freqs[p] - freqs[0]);
    system->blue_detuning.push_back(freqs[p] + freqs[0]);
  }
  long evaluations = 0;
  const auto rhs = [system, &evaluations](const State &y, State &dy, double t) {
    ++evaluations;
    (*system)(y, dy, t);
  };
  // d/dt of the extraneous population, from the state and its derivative.
  State scratch(4 * n + 4);
  const auto p_ext_rate = [&](const State &y, double t) {
    (*system)(y, scratch, t);
    double rate = 0.0;
    for (std::size_t k = 2 * 3; k < 2 * (n + 2); ++k)  // alpha_p, p >= 1
      rate += 2.0 * y[k] * scratch[k];
    for (std::size_t k = 2 * (n + 3); k < 2 * (2 * n + 2); ++k)  // beta_p, p >= 1
      rate += 2.0 * y[k] * scratch[k];
    return rate;
  };

  State y(4 * n + 4, 0.0);
  if (config.initial == InitialCondition::upper_vacuum)
    y[2 * 1] = 1.0;
  else
    y[2 * 2] = 1.0;

  const double duration = config.duration;
  const double interval =
      config.sample_interval > 0.0 ? std::min(config.sample_interval, duration) : duration / 1000.0;
  const auto grid_time = [&](long k) { return std::min(duration, k * interval); };
  const double fastest = std::max(freqs.back() + freqs.front(), system->g);
  const double min_dt = 64.0 * std::numeric_limits<double>::epsilon() * duration;

  // Per-step error target, tightened so the accumulated norm drift stays
  // within 10x the requested tolerance over many sideband periods.
  const double step_tol = config.tolerance / kStepToleranceDivisor;
  auto stepper =
      odeint::make_dense_output(step_tol, step_tol, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(y, 0.0, std::min(interval, 0.01 / fastest));

  TimeSeries out;
  out.samples.push_back(unpack(y, n, 0.0));
  long grid_index = 1;
  State at(y.size());
  std::vector<double> times;

  while (out.samples.back().time < duration) {
    std::pair<double, double> span;
    try {
      span = stepper.do_step(rhs);
    } catch (const odeint::step_adjustment_error &) {
      throw StepUnderflowError("integrator step size underflow at t=" +
                                   std::to_string(stepper.current_time()),
                               stepper.current_time());
    }
    ++out.accepted_steps;
    const auto [t0, t1] = span;
    if (stepper.current_time_step() < min_dt && t1 < duration)
      throw StepUnderflowError("integrator step size underflow at t=" + std::to_string(t1), t1);

    const double end = std::min(t1, duration);
    times.clear();
    for (; grid_time(grid_index) <= end && grid_time(grid_index - 1) < duration; ++grid_index)
      times.push_back(grid_time(grid_index));
    if (t1 <= duration)
      times.push_back(t1);

    // Locate an interior maximum of P_ext by bisection on its rate, using the
    // dense-output interpolant.
    stepper.calc_state(t0, at);
    double lo = t0, rate_lo = p_ext_rate(at, t0);
    stepper.calc_state(t1, at);
    double hi = t1;
    if (rate_lo > 0.0 && p_ext_rate(at, t1) < 0.0) {
      for (int it = 0; it < 60 && hi - lo > 1e-14 * duration; ++it) {
        const double mid = 0.5 * (lo + hi);
        stepper.calc_state(mid, at);
        if (p_ext_rate(at, mid) > 0.0)
          lo = mid;
        else
          hi = mid;
      }
      const double peak = 0.5 * (lo + hi);
      if (peak > t0 && peak < end)
        times.push_back(peak);
    }

    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
    for (double t : times) {
      if (t <= out.samples.back().time)
        continue;
      if (t == t1)
        at = stepper.current_state();
      else
        stepper.calc_state(t, at);
      out.samples.push_back(unpack(at, n, t));
    }
  }
  // dopri5 is first-same-as-last: 6 fresh evaluations per attempt, plus one
  // at initialization.
  out.rejected_steps = static_cast<int>(std::max(0L, (evaluations - 1) / 6 - out.accepted_steps));
  return out;
}

double EnvelopeReport::worst_ratio() const {
  double worst = 0.0;
  for (const auto &m : modes) {
    if (m.alpha_limit > 0.0)
      worst = std::max(worst, m.alpha_max / m.alpha_limit);
    if (m.beta_limit > 0.0)
      worst = std::max(worst, m.beta_max / m.beta_limit);
  }
  return worst;
}

EnvelopeReport envelope_check(const TimeSeries &series, const SimulationConfig &config) {
  config.validate();
  return envelope_check(series, config, *cached_normal_modes(config.ion_count));
}

EnvelopeReport envelope_check(const TimeSeries &series, const SimulationConfig &config,
                              const ModeSpectrum &spectrum) {
  check_spectrum(config, spectrum);
  const auto n = static_cast<std::size_t>(config.ion_count);
  const double g = config.sideband_coupling();
  const std::vector<double> freqs = mode_frequencies(spectrum, config.trap_angular_freq);

  EnvelopeReport report;
  report.slack = 10.0 * config.tolerance;
  for (std::size_t p = 1; p < n; ++p) {
    const double s = config.com_only ? 0.0 : std::abs(spectrum.coupling(p, config.ion_index - 1));
    ModeEnvelope env;
    env.mode = static_cast<int>(p);
    env.alpha_limit = 2.0 * g * s / (freqs[p] - freqs[0]);
    env.beta_limit = 2.0 * g * s / (freqs[p] + freqs[0]);
    for (const auto &st : series.samples) {
      env.alpha_max = std::max(env.alpha_max, std::abs(st.alpha.at(p)));
      env.beta_max = std::max(env.beta_max, std::abs(st.beta.at(p)));
    }
    if (env.alpha_max > env.alpha_limit + report.slack ||
        env.beta_max > env.beta_limit + report.slack)
      report.satisfied = false;
    report.modes.push_back(env);
  }
  return report;
}

double extraneous_population(const TimeSeries &series) {
  double worst = 0.0;
  for (const auto &st : series.samples)
    worst = std::max(worst, st.extraneous_population());
  return worst;
}

ChainAverage ion_averaged_extraneous_population(const SimulationConfig &config) {
  config.validate();
  const auto spectrum = cached_normal_modes(config.ion_count);
  ChainAverage out;
  for (int m = 1; m <= config.ion_count; ++m) {
    SimulationConfig single = config;
    single.ion_index = m;
    const TimeSeries series = integrate(single, *spectrum);
    out.per_ion_max.push_back(extraneous_population(series));
    out.max_norm_drift = std::max(out.max_norm_drift, series.max_norm_drift());
  }
  double total = 0.0;
  for (double v : out.per_ion_max)
    total += v;
  out.mean_max = total / config.ion_count;
  return out;
}

} // namespace iontrap
