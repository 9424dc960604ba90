#include "iontrap/constants.hpp"

namespace iontrap {

double coulomb_constant_e2() {
  constexpr double e = constants::electron_charge;
  return e * e / (4.0 * constants::pi * constants::vacuum_permittivity);
}

} // namespace iontrap
