#ifndef BARRIERCLOCK_WEAKTIMES_HPP
#define BARRIERCLOCK_WEAKTIMES_HPP

#include <optional>

#include "barrierclock/scattering.hpp"

namespace barrierclock {

/// A complex-valued duration.  The real part is the pointer-position shift
/// read by any weak von Neumann measurement of the region projector; the
/// imaginary part sets the measurement back-action scale.
struct ComplexTime {
  cplx value;
  double re() const { return value.real(); }
  double im() const { return value.imag(); }
};

enum class TimeChannel { transmitted, reflected, dwell };
enum class Side { left, right };

/// Conditional times for both scattering channels plus the dwell time.
/// tau_R (or tau_T) is absent when the channel amplitude vanishes; the
/// weighted-average residual is evaluated in the rearranged form
/// m/(hbar k) (conj(t) I_T + conj(r) I_R) - tau_d, which never divides by a
/// channel amplitude and so stays meaningful at resonances.
struct ChannelTimes {
  std::optional<ComplexTime> tau_T;
  std::optional<ComplexTime> tau_R;
  double tau_d = 0.0;
  double w_T = 0.0;
  double w_R = 0.0;
  cplx identity_residual;
};

/// Pointwise conditional dwell densities at x.  Channel densities are
/// complex; only their real part is a measurement outcome.  A channel entry
/// is absent when its amplitude vanishes.
struct DwellDensitySample {
  double x = 0.0;
  std::optional<cplx> density_T;
  std::optional<cplx> density_R;
  double density_d = 0.0;
};

/// Closed forms for the rectangular barrier: evaluates the analytic
/// integrals of the overlap construction, e.g.
///   tau_T = m/(hbar k t) [(B^2+C^2) d + 2 B C sinh(kappa d)/kappa].
/// Near E = V0 the degenerate exponential pair is replaced by a
/// center-value parameterization that is entire in kappa^2.
ChannelTimes conditional_times_rectangular(double V0, double d, double E,
                                           const Units& units = {});

/// Weak value of the region projector per channel, over incident flux:
///   tau(Omega) = m/(hbar k) int_Omega psi_f^* psi_i dx / a_f
/// with (psi_f, a_f) = (psi_t, t), (psi_r, r) or (psi_i, 1) for the dwell.
/// Region integrals are evaluated in closed form per segment.  Throws
/// std::domain_error when the channel amplitude vanishes.
ComplexTime weak_value_time(const ScatteringSolution& sol, const Region& region,
                            TimeChannel channel);

/// All three times over one region (the weak_value_time triple plus weights
/// and the stable weighted-average residual).
ChannelTimes channel_times(const ScatteringSolution& sol, const Region& region);

/// Pointwise integrand of weak_value_time.  The requested channel must have
/// nonzero amplitude; the other channel entries are filled when defined.
DwellDensitySample dwell_density(const ScatteringSolution& sol, TimeChannel channel,
                                 double x);

/// Integral of (density - period-mean baseline) over exactly n half-wave
/// periods pi/k adjacent to the support, on the given side.  Vanishes
/// identically; returned for verification.
cplx oscillation_budget(const ScatteringSolution& sol, TimeChannel channel,
                        Side side, int n_periods);

/// Transmission time from amplitude derivatives:
///   Re tau = -hbar d(arg t)/dV_Omega,  Im tau = +hbar d(ln|t|)/dV_Omega,
/// evaluated as i hbar d(ln t)/dV_Omega by Richardson-extrapolated central
/// differences with step 1e-5 max(E, V).  The region must be a union of
/// whole segments (or extend outside the support).
ComplexTime complex_time_via_derivative(const PotentialProfile& profile,
                                        const Region& region, double E,
                                        const Units& units = {});

/// Group delay referenced to free flight across the support:
///   tau_g = hbar d/dE [arg t + k D],  D = support width.
double group_delay(const PotentialProfile& profile, double E, const Units& units = {});

/// Opaque-limit reference values for the rectangular barrier, E < V0:
/// the saturated dwell time hbar k/(kappa V0) (the large-kappa-d limit of
/// Re tau_T) and the Buttiker-Landauer time m d/(hbar kappa) (the limit of
/// |Im tau_T|).
struct OpaqueAsymptotics {
  double re_limit = 0.0;
  double im_limit = 0.0;
};

OpaqueAsymptotics opaque_asymptotics(double V0, double d, double E,
                                     const Units& units = {});

}  // namespace barrierclock

#endif
