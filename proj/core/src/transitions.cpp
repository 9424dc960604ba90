#include "iontrap/transitions.hpp"

#include "iontrap/constants.hpp"
#include "iontrap/errors.hpp"
#include "iontrap/spherical.hpp"

#include <cmath>
#include <string>

namespace iontrap {

namespace {

constexpr double kUnitTolerance = 1e-9;

} // namespace

std::string_view to_string(Multipole m) { return m == Multipole::E1 ? "E1" : "E2"; }

Multipole parse_multipole(std::string_view text) {
  if (text == "E1")
    return Multipole::E1;
  if (text == "E2")
    return Multipole::E2;
  throw DomainError("unknown multipole '" + std::string(text) + "' (expected E1 or E2)");
}

std::string_view to_string(Placement p) { return p == Placement::node ? "node" : "antinode"; }

Placement parse_placement(std::string_view text) {
  if (text == "node")
    return Placement::node;
  if (text == "antinode")
    return Placement::antinode;
  throw DomainError("unknown placement '" + std::string(text) + "' (expected node or antinode)");
}

std::string_view to_string(HamiltonianKind k) { return k == HamiltonianKind::V ? "V" : "U"; }

void TransitionSpec::validate() const {
  check_angular_pair(j, m_j);
  check_angular_pair(j_upper, m_j_upper);
  if (!(einstein_a > 0.0))
    throw DomainError("einstein_a must be > 0");
  if (!(wavenumber > 0.0))
    throw DomainError("wavenumber must be > 0");
}

void LaserGeometry::validate() const {
  if (!(field_amplitude >= 0.0))
    throw DomainError("field_amplitude must be >= 0");
  if (!(angular_freq > 0.0))
    throw DomainError("laser angular_freq must be > 0");
  if (std::abs(polarization.norm() - 1.0) > kUnitTolerance)
    throw DomainError("polarization must be a unit vector");
  if (std::abs(propagation.norm() - 1.0) > kUnitTolerance)
    throw DomainError("propagation must be a unit vector");
  const std::complex<double> transverse = polarization.transpose() * propagation.cast<std::complex<double>>();
  if (std::abs(transverse) > kUnitTolerance)
    throw DomainError("polarization must be orthogonal to propagation");
}

double geometric_factor(const TransitionSpec &spec, const LaserGeometry &geom) {
  spec.validate();
  geom.validate();
  const double upper_weight = spec.j_upper.twice() + 1.0;  // 2j' + 1
  const HalfInteger minus_m = -spec.m_j;

  std::complex<double> sum = 0.0;
  if (spec.multipole == Multipole::E1) {
    const auto &basis = spherical_basis_table();
    for (int q = -1; q <= 1; ++q) {
      const double w = wigner_3j(spec.j, 1, spec.j_upper, minus_m, q, spec.m_j_upper);
      if (w != 0.0)
        sum += w * basis[q + 1].cwiseProduct(geom.polarization).sum();
    }
    return std::sqrt(3.0 * upper_weight / 4.0) * std::abs(sum);
  }

  const auto &tensors = rank2_tensor_table();
  const Eigen::Vector3cd n = geom.propagation.cast<std::complex<double>>();
  for (int q = -2; q <= 2; ++q) {
    const double w = wigner_3j(spec.j, 2, spec.j_upper, minus_m, q, spec.m_j_upper);
    if (w != 0.0)
      sum += w * (geom.polarization.transpose() * tensors[q + 2] * n)(0, 0);
  }
  return std::sqrt(15.0 * upper_weight / 4.0) * std::abs(sum);
}

double rabi_frequency(const TransitionSpec &spec, const LaserGeometry &geom) {
  const double sigma = geometric_factor(spec, geom);
  constexpr double c = constants::speed_of_light;
  const double k3 = spec.wavenumber * spec.wavenumber * spec.wavenumber;
  return constants::electron_charge * geom.field_amplitude /
         (constants::reduced_planck * std::sqrt(c * constants::fine_structure)) *
         std::sqrt(spec.einstein_a / k3) * sigma;
}

double lamb_dicke(const TrapChainConfig &cfg, const LaserGeometry &geom) {
  cfg.validate();
  if (!(geom.angular_freq > 0.0))
    throw DomainError("laser angular_freq must be > 0");
  const double k = geom.angular_freq / constants::speed_of_light;
  const double projected = k * std::cos(geom.axis_angle);
  return std::sqrt(constants::reduced_planck * projected * projected /
                   (2.0 * cfg.ion_mass * cfg.trap_angular_freq));
}

HamiltonianKind hamiltonian_kind(Multipole multipole, Placement placement) {
  const bool node = placement == Placement::node;
  if (multipole == Multipole::E1)
    return node ? HamiltonianKind::U : HamiltonianKind::V;
  return node ? HamiltonianKind::V : HamiltonianKind::U;
}

double hamiltonian_phase(Multipole multipole, const LaserGeometry &geom) {
  const double l = geom.node_index;
  if (multipole == Multipole::E1)
    return geom.phase - l * constants::pi;
  return geom.phase + (l + 0.5) * constants::pi;
}

HamiltonianCoefficients hamiltonian_coefficients(const TransitionSpec &spec,
                                                 const LaserGeometry &geom,
                                                 const TrapChainConfig &cfg,
                                                 const ModeSpectrum &spectrum, int ion_index,
                                                 double detuning) {
  cfg.validate();
  if (ion_index < 1 || ion_index > cfg.ion_count)
    throw DomainError("ion_index " + std::to_string(ion_index) + " outside [1, " +
                      std::to_string(cfg.ion_count) + "]");
  if (spectrum.size() != cfg.ion_count)
    throw DomainError("spectrum size does not match ion_count");

  HamiltonianCoefficients h;
  h.kind = hamiltonian_kind(spec.multipole, geom.placement);
  h.rabi = rabi_frequency(spec, geom);
  h.detuning = detuning;
  h.phase = hamiltonian_phase(spec.multipole, geom);
  if (h.kind == HamiltonianKind::V)
    return h;

  const Eigen::Index n = spectrum.size();
  const Eigen::MatrixXd s =
      spectrum.coupling.size() == n * n ? spectrum.coupling : coupling_constants(spectrum);
  const double eta_over_root_n = lamb_dicke(cfg, geom) / std::sqrt(static_cast<double>(n));
  const std::vector<double> freqs = mode_frequencies(spectrum, cfg.trap_angular_freq);
  h.modes.reserve(n);
  for (Eigen::Index p = 0; p < n; ++p)
    h.modes.push_back({eta_over_root_n * s(p, ion_index - 1), freqs[p]});
  return h;
}

} // namespace iontrap
