#pragma once

#include "iontrap/chain.hpp"

#include <Eigen/Core>
#include <span>
#include <vector>

namespace iontrap {

/// Dimensionless axial coupling matrix A_nm of the chain:
///   A_mm = 1 + 2 sum_{p != m} 1/|u_m - u_p|^3
///   A_nm = -2 / |u_m - u_n|^3            (n != m)
/// Also the Jacobian of the equilibrium force balance.
struct CouplingMatrix {
  Eigen::MatrixXd entries;

  Eigen::Index order() const { return entries.rows(); }
};

/// Normal modes of the axial motion.
///
/// Rows are indexed by mode p (0-based, ascending eigenvalue) and columns by
/// ion m, so `eigenvectors(p, m)` is b^(p)_m and `coupling(p, m)` is s^(p)_m.
/// Each eigenvector is signed so that its last component above 1e-12 in
/// magnitude is positive.
struct ModeSpectrum {
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  Eigen::MatrixXd coupling;     // empty until filled by coupling_constants()
  double min_gap = 0.0;         // smallest gap between adjacent eigenvalues
  bool degenerate = false;      // min_gap <= degeneracy_gap

  static constexpr double degeneracy_gap = 1e-8;

  Eigen::Index size() const { return eigenvalues.size(); }
};

/// Throws DomainError unless the positions are strictly increasing.
CouplingMatrix build_coupling_matrix(std::span<const double> positions);

/// Jacobi diagonalization, sorted ascending (ties keep their original index
/// order), sign-fixed. Throws ConvergenceError if the sweep cap is exceeded.
ModeSpectrum diagonalize(const CouplingMatrix &matrix);

/// s^(p)_m = sqrt(N) b^(p)_m / mu_p^(1/4), rows indexed by mode.
Eigen::MatrixXd coupling_constants(const ModeSpectrum &spectrum);

/// Solves the N-ion chain and returns its full spectrum, coupling included.
ModeSpectrum normal_modes(int ion_count);

/// nu_p = sqrt(mu_p) nu. Requires nu > 0.
std::vector<double> mode_frequencies(const ModeSpectrum &spectrum, double trap_angular_freq);

/// Root-mean-square displacement of every ion (meters) for a product of
/// Fock states with the given phonon occupations n_p:
///   sqrt( hbar/(2 M nu N) sum_p (s^(p)_m)^2 (2 n_p + 1) / sqrt(mu_p) ).
std::vector<double> displacement_rms(const ModeSpectrum &spectrum,
                                     const TrapChainConfig &cfg,
                                     std::span<const double> occupation);

} // namespace iontrap
