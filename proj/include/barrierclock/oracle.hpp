#ifndef BARRIERCLOCK_ORACLE_HPP
#define BARRIERCLOCK_ORACLE_HPP

#include <functional>
#include <string>

#include "barrierclock/weaktimes.hpp"

// Brute-force validators.  These share no evaluation machinery with the
// primary path: the wave equation is integrated on a dense grid instead of
// propagated by transfer matrices, and overlap integrals are done by
// adaptive quadrature instead of closed forms.  They are slow on purpose.

namespace barrierclock::oracle {

struct OracleReport {
  std::string quantity;
  double primary_value = 0.0;
  double oracle_value = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

OracleReport make_report(const std::string& quantity, double primary, double oracle,
                         double tolerance);
std::string to_json_line(const OracleReport& r);

/// Integrate psi'' = (2m/hbar^2)(V - E) psi with fixed-step RK4 from the
/// right boundary (pure outgoing wave) leftward, and read (t, r) off the
/// plane-wave decomposition at the left edge.  grid_step <= min(1/k,
/// 1/kappa_max)/50 is enforced; pass 0 to use that bound.
std::pair<cplx, cplx> integrate_schrodinger(const PotentialProfile& profile, double E,
                                            const Units& units = {},
                                            double grid_step = 0.0);

/// Adaptive-Simpson evaluation of the conditional-time integral, to the
/// requested absolute tolerance on the time.  Throws std::runtime_error when
/// the subdivision budget is exhausted.
ComplexTime quadrature_weak_value(const ScatteringSolution& sol, const Region& region,
                                  TimeChannel channel, double tolerance);

struct DerivativeEstimate {
  double value = 0.0;
  double error = 0.0;  // from disagreement of the extrapolation levels
};

/// Two-level Richardson extrapolation of the central difference of f at x0.
/// If max_error > 0 and the internal error estimate exceeds it, throws
/// std::runtime_error.
DerivativeEstimate richardson_derivative(const std::function<double(double)>& f,
                                         double x0, double base_step,
                                         double max_error = 0.0);

}  // namespace barrierclock::oracle

#endif
