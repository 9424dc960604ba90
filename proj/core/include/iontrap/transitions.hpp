#pragma once

#include "iontrap/angular.hpp"
#include "iontrap/chain.hpp"
#include "iontrap/normal_modes.hpp"

#include <Eigen/Core>
#include <string_view>
#include <vector>

namespace iontrap {

enum class Multipole { E1, E2 };

std::string_view to_string(Multipole m);
Multipole parse_multipole(std::string_view text);

/// A single Zeeman component |j m_j> -> |j' m_j'> of a multiplet transition.
struct TransitionSpec {
  Multipole multipole = Multipole::E1;
  HalfInteger j;          // lower level
  HalfInteger m_j;
  HalfInteger j_upper;
  HalfInteger m_j_upper;
  double einstein_a = 0.0;  // 1/s, summed over lower sublevels
  double wavenumber = 0.0;  // k_12, 1/m

  void validate() const;
};

enum class Placement { node, antinode };

std::string_view to_string(Placement p);
Placement parse_placement(std::string_view text);

/// Standing-wave laser acting on one ion. The polarization must be a unit
/// vector orthogonal to the (unit) propagation direction.
struct LaserGeometry {
  double field_amplitude = 0.0;  // E, V/m
  double angular_freq = 0.0;     // omega, rad/s
  double axis_angle = 0.0;       // theta between beam and trap axis, rad
  Eigen::Vector3cd polarization = Eigen::Vector3cd(1.0, 0.0, 0.0);
  Eigen::Vector3d propagation = Eigen::Vector3d(0.0, 1.0, 0.0);
  Placement placement = Placement::node;
  int node_index = 0;            // l
  double phase = 0.0;            // phi, rad

  void validate() const;
};

/// Contraction of the 3-j coupling coefficients with the polarization (E1)
/// or with polarization and propagation (E2), scaled so that
/// Omega_0 = e|E|/(hbar sqrt(c alpha)) sqrt(A/k^3) sigma.
///   E1: sqrt(3(2j'+1)/4)  |sum_q (j 1 j'; -m_j q m_j') c^(q) . eps|
///   E2: sqrt(15(2j'+1)/4) |sum_q (j 2 j'; -m_j q m_j') eps_i c^(q)_ij n_j|
double geometric_factor(const TransitionSpec &spec, const LaserGeometry &geom);

/// Rabi frequency Omega_0 in rad/s.
double rabi_frequency(const TransitionSpec &spec, const LaserGeometry &geom);

/// eta = sqrt(hbar k^2 cos^2(theta) / (2 M nu)), k = omega / c.
double lamb_dicke(const TrapChainConfig &cfg, const LaserGeometry &geom);

enum class HamiltonianKind {
  V,  // internal states only
  U,  // internal states coupled to the axial modes
};

std::string_view to_string(HamiltonianKind k);

struct ModeCoupling {
  double strength = 0.0;   // eta s^(p)_m / sqrt(N)
  double frequency = 0.0;  // nu_p, rad/s
};

/// Coefficients of H = hbar Omega_0 [...] exp(i(t Delta - phase)) |1><2| + h.c.
/// For kind U the bracket is k cos(theta) q_m(t), expanded over the modes.
struct HamiltonianCoefficients {
  HamiltonianKind kind = HamiltonianKind::V;
  double rabi = 0.0;      // Omega_0, rad/s
  double detuning = 0.0;  // Delta, rad/s
  double phase = 0.0;     // phi_v or phi_u, rad
  std::vector<ModeCoupling> modes;  // empty for kind V
};

/// Which Hamiltonian the standing wave produces:
///   E1 at a node, E2 at an antinode -> U
///   E1 at an antinode, E2 at a node -> V
HamiltonianKind hamiltonian_kind(Multipole multipole, Placement placement);

/// Effective phase: phi - l pi for E1, phi + (l + 1/2) pi for E2.
double hamiltonian_phase(Multipole multipole, const LaserGeometry &geom);

/// `ion_index` is 1-based. The spectrum must match cfg.ion_count; its
/// coupling constants are computed if absent.
HamiltonianCoefficients hamiltonian_coefficients(const TransitionSpec &spec,
                                                 const LaserGeometry &geom,
                                                 const TrapChainConfig &cfg,
                                                 const ModeSpectrum &spectrum, int ion_index,
                                                 double detuning = 0.0);

} // namespace iontrap
