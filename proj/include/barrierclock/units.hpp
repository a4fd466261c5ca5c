#ifndef BARRIERCLOCK_UNITS_HPP
#define BARRIERCLOCK_UNITS_HPP

#include <stdexcept>

namespace barrierclock {

/// Unit system carrying the action scale and the particle mass.
/// Natural units hbar = m = 1 are the default; every formula in the
/// library is written with explicit hbar and m so results can be
/// rescaled by constructing a different unit system.
struct Units {
  double hbar = 1.0;
  double mass = 1.0;

  void validate() const {
    if (!(hbar > 0.0) || !(mass > 0.0))
      throw std::invalid_argument("Units: hbar and mass must be strictly positive");
  }
};

}  // namespace barrierclock

#endif
