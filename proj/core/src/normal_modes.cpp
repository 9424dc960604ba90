#include "iontrap/normal_modes.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace iontrap {

CouplingMatrix build_coupling_matrix(std::span<const double> u) {
  const auto n = static_cast<Eigen::Index>(u.size());
  if (n < 1)
    throw DomainError("coupling matrix needs at least one ion");
  for (Eigen::Index m = 0; m + 1 < n; ++m)
    if (!(u[m] < u[m + 1]))
      throw DomainError("positions must be strictly increasing");

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index m = 0; m < n; ++m) {
    for (Eigen::Index k = m + 1; k < n; ++k) {
      const double d = u[k] - u[m];
      const double off = -2.0 / (d * d * d);
      a(m, k) = off;
      a(k, m) = off;
    }
  }
  for (Eigen::Index m = 0; m < n; ++m) {
    double diag = 1.0;
    for (Eigen::Index k = 0; k < n; ++k)
      if (k != m)
        diag -= a(m, k);
    a(m, m) = diag;
  }
  return {std::move(a)};
}

ModeSpectrum diagonalize(const CouplingMatrix &matrix) {
  const SymmetricEigen eig = jacobi_eigen(matrix.entries);
  const Eigen::Index n = eig.values.size();

  std::vector<Eigen::Index> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index i, Eigen::Index j) {
    return eig.values[i] < eig.values[j];
  });

  ModeSpectrum out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index p = 0; p < n; ++p) {
    out.eigenvalues[p] = eig.values[order[p]];
    Eigen::VectorXd b = eig.vectors.col(order[p]);
    b.normalize();
    Eigen::Index pivot = n - 1;
    while (pivot > 0 && std::abs(b[pivot]) < 1e-12)
      --pivot;
    if (b[pivot] < 0.0)
      b = -b;
    out.eigenvectors.row(p) = b.transpose();
  }

  out.min_gap = std::numeric_limits<double>::infinity();
  for (Eigen::Index p = 0; p + 1 < n; ++p)
    out.min_gap = std::min(out.min_gap, out.eigenvalues[p + 1] - out.eigenvalues[p]);
  out.degenerate = out.min_gap <= ModeSpectrum::degeneracy_gap;
  return out;
}

Eigen::MatrixXd coupling_constants(const ModeSpectrum &spectrum) {
  const Eigen::Index n = spectrum.size();
  const double root_n = std::sqrt(static_cast<double>(n));
  Eigen::MatrixXd s(n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    s.row(p) = spectrum.eigenvectors.row(p) * (root_n / std::pow(spectrum.eigenvalues[p], 0.25));
  return s;
}

ModeSpectrum normal_modes(int ion_count) {
  const std::vector<double> u = solve_equilibrium(ion_count);
  ModeSpectrum spectrum = diagonalize(build_coupling_matrix(u));
  spectrum.coupling = coupling_constants(spectrum);
  return spectrum;
}

std::vector<double> mode_frequencies(const ModeSpectrum &spectrum, double nu) {
  if (!(nu > 0.0))
    throw DomainError("trap angular frequency must be > 0");
  std::vector<double> out(spectrum.size());
  for (Eigen::Index p = 0; p < spectrum.size(); ++p)
    out[p] = std::sqrt(spectrum.eigenvalues[p]) * nu;
  return out;
}

std::vector<double> displacement_rms(const ModeSpectrum &spectrum, const TrapChainConfig &cfg,
                                     std::span<const double> occupation) {
  cfg.validate();
  const Eigen::Index n = spectrum.size();
  if (cfg.ion_count != n)
    throw DomainError("spectrum size does not match ion_count");
  if (static_cast<Eigen::Index>(occupation.size()) != n)
    throw DomainError("one occupation number per mode is required");
  for (double occ : occupation)
    if (!(occ >= 0.0))
      throw DomainError("occupation numbers must be >= 0");

  const Eigen::MatrixXd s =
      spectrum.coupling.size() == n * n ? spectrum.coupling : coupling_constants(spectrum);
  const double prefactor = constants::reduced_planck /
                           (2.0 * cfg.ion_mass * cfg.trap_angular_freq * static_cast<double>(n));
  std::vector<double> out(n);
  for (Eigen::Index m = 0; m < n; ++m) {
    double sum = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      sum += s(p, m) * s(p, m) * (2.0 * occupation[p] + 1.0) / std::sqrt(spectrum.eigenvalues[p]);
    out[m] = std::sqrt(prefactor * sum);
  }
  return out;
}

} // namespace iontrap
