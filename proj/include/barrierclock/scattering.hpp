#ifndef BARRIERCLOCK_SCATTERING_HPP
#define BARRIERCLOCK_SCATTERING_HPP

#include <complex>
#include <vector>

#include "barrierclock/detail/segment_math.hpp"
#include "barrierclock/profile.hpp"
#include "barrierclock/units.hpp"

namespace barrierclock {

using cplx = std::complex<double>;

/// Amplitudes with |amplitude| below this are treated as exact zeros when
/// they appear in denominators (transmission resonances, free space).
constexpr double kAmplitudeZeroTol = 1e-12;

/// The three stationary states entering the conditional-time construction:
/// the incident state (unit wave from the left), the transmitted final
/// state (only right-going components left of the potential) and the
/// reflected final state (only left-going components right of it).
enum class Wave { incident, transmitted_final, reflected_final };

/// Stationary scattering state of a piecewise-constant profile at energy E.
///
/// Carries the global amplitudes for both incidence directions plus
/// per-segment coefficient data for the incident solution and for the
/// right-incident solution (whose conjugate is the transmitted final state).
class ScatteringSolution {
 public:
  double energy() const { return energy_; }
  double wavenumber() const { return k_; }
  const Units& units() const { return units_; }
  const PotentialProfile& profile() const { return profile_; }

  cplx t() const { return t_; }
  cplx r() const { return r_; }
  cplx t_rev() const { return t_rev_; }
  cplx r_rev() const { return r_rev_; }

  double support_left() const { return profile_.support_left(); }
  double support_right() const { return profile_.support_right(); }

  /// m/(hbar k): reciprocal of the incident flux.
  double inverse_flux() const { return units_.mass / (units_.hbar * k_); }

  cplx psi(Wave w, double x) const;
  /// (psi, dpsi/dx) at x.
  std::pair<cplx, cplx> psi_and_deriv(Wave w, double x) const;

  std::size_t segment_count() const { return segments_.size(); }
  const detail::SegmentGeom& segment_geom(std::size_t i) const { return segments_[i].geom; }
  bool segment_uses_series(std::size_t i) const { return !segments_[i].incident.exp_rep; }
  /// Coefficient of the growing local solution exp(+kappa (x - x_left)).
  /// Non-finite exactly at threshold (E == V) where the pair degenerates.
  cplx coef_plus(std::size_t i) const;
  /// Coefficient of the decaying local solution exp(-kappa (x - x_left)).
  cplx coef_minus(std::size_t i) const;

  /// Raw overlap integral over [x1, x2]:
  ///   kind = 0: int phi psi_i dx      (phi = right-incident state, T channel)
  ///   kind = 1: int psi_i^2 dx        (R channel)
  ///   kind = 2: int |psi_i|^2 dx      (dwell; imaginary part is exactly 0)
  cplx overlap_integral(int kind, double x1, double x2) const;

 private:
  friend ScatteringSolution solve_stationary(const PotentialProfile&, double,
                                             const Units&);
  struct SegRecord {
    detail::SegmentGeom geom;
    detail::SegmentWave incident;        // unit wave incident from the left
    detail::SegmentWave right_incident;  // unit wave incident from the right
  };

  std::pair<cplx, cplx> eval_with_deriv(bool right_incident, double x) const;
  cplx piece_integral(int kind, double x1, double x2) const;

  PotentialProfile profile_;
  Units units_;
  double energy_ = 0.0;
  double k_ = 0.0;
  cplx t_, r_, t_rev_, r_rev_;
  std::vector<SegRecord> segments_;
};

/// Solve the stationary problem for both incidence directions.
/// Throws std::invalid_argument for E <= 0 or invalid units.
ScatteringSolution solve_stationary(const PotentialProfile& profile, double E,
                                    const Units& units = {});

/// Closed-form data for the rectangular barrier on [-d/2, d/2] in the
/// centered basis psi(x) = B exp(-kappa x) + C exp(kappa x).  E > V0 is the
/// analytic continuation kappa -> i k2; |kappa d| below the threshold window
/// leaves (B, C) degenerate, in which case the center values
/// (psi_center, dpsi_center) parameterize the state instead.
struct RectangularCoefficients {
  cplx B, C, t, r;
  double z = 0.0;  // 2m(V0-E)/hbar^2
  cplx kappa;
  cplx psi_center, dpsi_center;
  bool threshold_window = false;  // |kappa| d < 1e-4
};

RectangularCoefficients rectangular_coefficients(double V0, double d, double E,
                                                 const Units& units = {});

/// arg r - arg t and whether it sits at the +-pi/2 value forced for
/// spatially symmetric real profiles.  Throws std::domain_error at r = 0.
struct PhaseRelation {
  double phase_difference = 0.0;
  bool symmetric = false;
};

PhaseRelation phase_relation_check(const ScatteringSolution& sol);

/// psi_i, psi_t or psi_r at x (thin wrapper over ScatteringSolution::psi).
cplx wavefunction_at(const ScatteringSolution& sol, Wave channel, double x);

}  // namespace barrierclock

#endif
