#pragma once

namespace iontrap {

/// CODATA 2018 recommended values, SI units.
struct PhysicalConstants {
  static constexpr double electron_charge = 1.602176634e-19;      // C (exact)
  static constexpr double vacuum_permittivity = 8.8541878128e-12; // F/m
  static constexpr double reduced_planck = 1.054571817e-34;       // J s (exact)
  static constexpr double speed_of_light = 299792458.0;           // m/s (exact)
  static constexpr double fine_structure = 7.2973525693e-3;
  static constexpr double atomic_mass_unit = 1.66053906660e-27;   // kg
  static constexpr double pi = 3.14159265358979323846;
};

using constants = PhysicalConstants;

/// Coulomb prefactor e^2 / (4 pi eps0), in J m.
double coulomb_constant_e2();

} // namespace iontrap
