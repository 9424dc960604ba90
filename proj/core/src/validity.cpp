#include "iontrap/validity.hpp"

#include "iontrap/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>

namespace iontrap {

namespace {

struct SpectrumCache {
  std::shared_mutex mutex;
  std::map<int, std::shared_ptr<const ModeSpectrum>> entries;
};

SpectrumCache &spectrum_cache() {
  static SpectrumCache cache;
  return cache;
}

void check_bound_inputs(double rabi, double eta, double nu, int ion_count) {
  if (ion_count < 2)
    throw DomainError("extraneous-mode bounds need N >= 2, got " + std::to_string(ion_count));
  if (!(nu > 0.0))
    throw DomainError("trap angular frequency must be > 0");
  if (!(rabi >= 0.0))
    throw DomainError("Rabi frequency must be >= 0");
  if (!(eta >= 0.0))
    throw DomainError("Lamb-Dicke parameter must be >= 0");
}

} // namespace

std::shared_ptr<const ModeSpectrum> cached_normal_modes(int ion_count) {
  auto &cache = spectrum_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (auto it = cache.entries.find(ion_count); it != cache.entries.end())
      return it->second;
  }
  // Solve outside the lock; a concurrent duplicate solve is harmless.
  auto spectrum = std::make_shared<const ModeSpectrum>(normal_modes(ion_count));
  std::unique_lock lock(cache.mutex);
  return cache.entries.try_emplace(ion_count, std::move(spectrum)).first->second;
}

double sigma_function(const ModeSpectrum &spectrum) {
  if (spectrum.size() < 2)
    throw DomainError("Sigma(N) needs N >= 2");
  double total = 0.0;
  for (Eigen::Index p = 1; p < spectrum.size(); ++p) {
    const double mu = spectrum.eigenvalues[p];
    total += (mu + 1.0) / ((mu - 1.0) * (mu - 1.0) * std::sqrt(mu));
  }
  return total;
}

double sigma_function(int ion_count) {
  if (ion_count < 2)
    throw DomainError("Sigma(N) needs N >= 2, got " + std::to_string(ion_count));
  return sigma_function(*cached_normal_modes(ion_count));
}

ExtraneousBound p_ext_bound(double rabi, double eta, double nu, int ion_count) {
  check_bound_inputs(rabi, eta, nu, ion_count);
  const double x = rabi * eta / (std::sqrt(static_cast<double>(ion_count)) * nu);
  ExtraneousBound b;
  b.exact = 2.0 * (2.0 * x) * (2.0 * x) * sigma_function(ion_count);
  b.rounded = (2.6 * x) * (2.6 * x);
  return b;
}

double p_ext_bound_for_ion(double rabi, double eta, double nu, const ModeSpectrum &spectrum,
                           int ion_index) {
  const auto n = static_cast<int>(spectrum.size());
  check_bound_inputs(rabi, eta, nu, n);
  if (ion_index < 1 || ion_index > n)
    throw DomainError("ion_index outside [1, N]");
  const Eigen::MatrixXd s =
      spectrum.coupling.size() == spectrum.size() * spectrum.size() ? spectrum.coupling
                                                                    : coupling_constants(spectrum);
  double weight = 0.0;
  for (Eigen::Index p = 1; p < spectrum.size(); ++p) {
    const double mu = spectrum.eigenvalues[p];
    const double sm = s(p, ion_index - 1);
    weight += (mu + 1.0) / ((mu - 1.0) * (mu - 1.0)) * sm * sm;
  }
  const double x = rabi * eta / (std::sqrt(static_cast<double>(n)) * nu);
  return 2.0 * (2.0 * x) * (2.0 * x) * weight;
}

ValidityReport check_sufficiency(double rabi, double eta, double nu, int ion_count,
                                 double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0))
    throw DomainError("threshold must lie in (0, 1]");
  const ExtraneousBound bound = p_ext_bound(rabi, eta, nu, ion_count);
  ValidityReport r;
  r.sigma_n = sigma_function(ion_count);
  r.p_ext_bound = bound.exact;
  r.p_ext_bound_rounded = bound.rounded;
  r.threshold = threshold;
  r.condition_satisfied = std::max(bound.exact, bound.rounded) <= threshold;
  r.rabi = rabi;
  r.eta = eta;
  r.trap_angular_freq = nu;
  r.ion_count = ion_count;
  return r;
}

} // namespace iontrap
