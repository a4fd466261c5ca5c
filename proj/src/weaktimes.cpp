#include "barrierclock/weaktimes.hpp"

#include <cmath>
#include <stdexcept>

namespace barrierclock {

using detail::cosh_z;
using detail::kappa_of;
using detail::sinhc_minus_u_over_z;
using detail::sinhc_z;

namespace {
constexpr cplx kI{0.0, 1.0};

int kind_of(TimeChannel c) {
  switch (c) {
    case TimeChannel::transmitted: return 0;
    case TimeChannel::reflected: return 1;
    case TimeChannel::dwell: return 2;
  }
  throw std::invalid_argument("invalid channel");
}

cplx channel_amplitude(const ScatteringSolution& sol, TimeChannel c) {
  switch (c) {
    case TimeChannel::transmitted: return sol.t();
    case TimeChannel::reflected: return sol.r();
    case TimeChannel::dwell: return {1.0, 0.0};
  }
  throw std::invalid_argument("invalid channel");
}

// r crosses zero at transmission resonances and lands at the machine noise
// floor, so tiny |r| means "exactly zero".  t is exponentially small but
// exact for opaque barriers (computed without cancellation) and never
// vanishes at E > 0, so only a true zero disqualifies it.
bool channel_defined(TimeChannel c, const cplx& amp) {
  switch (c) {
    case TimeChannel::transmitted: return std::abs(amp) > 0.0;
    case TimeChannel::reflected: return std::abs(amp) >= kAmplitudeZeroTol;
    case TimeChannel::dwell: return true;
  }
  return false;
}

}  // namespace

ChannelTimes conditional_times_rectangular(double V0, double d, double E,
                                           const Units& units) {
  const RectangularCoefficients rc = rectangular_coefficients(V0, d, E, units);
  const double k = std::sqrt(2.0 * units.mass * E) / units.hbar;
  const double flux_inv = units.mass / (units.hbar * k);
  const double shc = sinhc_z(rc.z, d);

  cplx num_T, num_R;
  double num_d;
  if (std::abs(rc.kappa) * d >= 0.1) {
    const cplx B = rc.B, C = rc.C;
    num_T = (B * B + C * C) * d + 2.0 * B * C * shc;
    num_R = 2.0 * B * C * d + (B * B + C * C) * shc;
    const double BB_CC = std::norm(B) + std::norm(C);
    const double reBC = std::real(std::conj(B) * C);
    // |psi|^2 integrand differs between the evanescent and oscillatory
    // regimes: the cross term is x-independent below the barrier top, the
    // diagonal one above it.
    if (rc.z > 0.0)
      num_d = 2.0 * reBC * d + BB_CC * shc;
    else
      num_d = BB_CC * d + 2.0 * reBC * shc;
  } else {
    // center-value parameterization, entire in z; stable through E = V0
    const cplx p = rc.psi_center, q = rc.dpsi_center;
    const double smw = sinhc_minus_u_over_z(rc.z, d);
    num_T = 0.5 * p * p * (d + shc) - 0.5 * q * q * smw;
    num_R = 0.5 * p * p * (d + shc) + 0.5 * q * q * smw;
    num_d = 0.5 * std::norm(p) * (d + shc) + 0.5 * std::norm(q) * smw;
  }

  ChannelTimes out;
  out.w_T = std::norm(rc.t);
  out.w_R = std::norm(rc.r);
  out.tau_d = std::max(0.0, flux_inv * num_d);
  if (channel_defined(TimeChannel::transmitted, rc.t))
    out.tau_T = ComplexTime{flux_inv * num_T / rc.t};
  if (channel_defined(TimeChannel::reflected, rc.r))
    out.tau_R = ComplexTime{flux_inv * num_R / rc.r};
  out.identity_residual =
      flux_inv * (std::conj(rc.t) * num_T + std::conj(rc.r) * num_R) - out.tau_d;
  return out;
}

ComplexTime weak_value_time(const ScatteringSolution& sol, const Region& region,
                            TimeChannel channel) {
  const cplx amp = channel_amplitude(sol, channel);
  if (!channel_defined(channel, amp))
    throw std::domain_error("weak_value_time: channel amplitude is zero");
  const cplx integral = sol.overlap_integral(kind_of(channel), region.x1, region.x2);
  cplx value = sol.inverse_flux() * integral / amp;
  if (channel == TimeChannel::dwell) value = {std::max(0.0, value.real()), 0.0};
  return {value};
}

ChannelTimes channel_times(const ScatteringSolution& sol, const Region& region) {
  const cplx I_T = sol.overlap_integral(0, region.x1, region.x2);
  const cplx I_R = sol.overlap_integral(1, region.x1, region.x2);
  const cplx I_d = sol.overlap_integral(2, region.x1, region.x2);
  const double flux_inv = sol.inverse_flux();

  ChannelTimes out;
  out.w_T = std::norm(sol.t());
  out.w_R = std::norm(sol.r());
  out.tau_d = std::max(0.0, flux_inv * I_d.real());
  if (channel_defined(TimeChannel::transmitted, sol.t()))
    out.tau_T = ComplexTime{flux_inv * I_T / sol.t()};
  if (channel_defined(TimeChannel::reflected, sol.r()))
    out.tau_R = ComplexTime{flux_inv * I_R / sol.r()};
  out.identity_residual =
      flux_inv * (std::conj(sol.t()) * I_T + std::conj(sol.r()) * I_R) - out.tau_d;
  return out;
}

DwellDensitySample dwell_density(const ScatteringSolution& sol, TimeChannel channel,
                                 double x) {
  const cplx amp = channel_amplitude(sol, channel);
  if (!channel_defined(channel, amp))
    throw std::domain_error("dwell_density: channel amplitude is zero");

  const double flux_inv = sol.inverse_flux();
  const cplx psi_i = sol.psi(Wave::incident, x);

  DwellDensitySample s;
  s.x = x;
  s.density_d = flux_inv * std::norm(psi_i);
  if (channel_defined(TimeChannel::transmitted, sol.t())) {
    const cplx psi_t = sol.psi(Wave::transmitted_final, x);
    s.density_T = flux_inv * std::conj(psi_t) * psi_i / sol.t();
  }
  if (channel_defined(TimeChannel::reflected, sol.r())) {
    // conj(psi_r) = psi_i for real potentials
    s.density_R = flux_inv * psi_i * psi_i / sol.r();
  }
  return s;
}

cplx oscillation_budget(const ScatteringSolution& sol, TimeChannel channel,
                        Side side, int n_periods) {
  if (n_periods < 1)
    throw std::invalid_argument("oscillation_budget: n_periods >= 1 required");
  const cplx amp = channel_amplitude(sol, channel);
  if (!channel_defined(channel, amp))
    throw std::domain_error("oscillation_budget: channel amplitude is zero");

  const double k = sol.wavenumber();
  const double span = n_periods * M_PI / k;  // period of exp(2ikx) is pi/k
  const Region region = (side == Side::left)
                            ? Region(sol.support_left() - span, sol.support_left())
                            : Region(sol.support_right(), sol.support_right() + span);

  const double flux_inv = sol.inverse_flux();
  const cplx integral =
      flux_inv * sol.overlap_integral(kind_of(channel), region.x1, region.x2) / amp;

  double baseline = 0.0;
  switch (channel) {
    case TimeChannel::transmitted:
      baseline = flux_inv;
      break;
    case TimeChannel::reflected:
      baseline = (side == Side::left) ? 2.0 * flux_inv : 0.0;
      break;
    case TimeChannel::dwell:
      baseline = flux_inv * ((side == Side::left) ? 1.0 + std::norm(sol.r())
                                                  : std::norm(sol.t()));
      break;
  }
  return integral - baseline * span;
}

ComplexTime complex_time_via_derivative(const PotentialProfile& profile,
                                        const Region& region, double E,
                                        const Units& units) {
  if (!profile.region_is_aligned(region))
    throw std::invalid_argument("complex_time_via_derivative: region not segment-aligned");

  const double h0 = 1e-5 * std::max(E, profile.max_abs_potential());
  auto estimate = [&](double h) -> cplx {
    const cplx t_plus =
        solve_stationary(profile.with_region_offset(region, +h), E, units).t();
    const cplx t_minus =
        solve_stationary(profile.with_region_offset(region, -h), E, units).t();
    // ratio stays near 1, so the principal log never wraps
    return kI * units.hbar * std::log(t_plus / t_minus) / (2.0 * h);
  };
  const cplx d0 = estimate(h0);
  const cplx d1 = estimate(h0 / 2.0);
  const cplx d2 = estimate(h0 / 4.0);
  const cplx r1a = (4.0 * d1 - d0) / 3.0;
  const cplx r1b = (4.0 * d2 - d1) / 3.0;
  return {(16.0 * r1b - r1a) / 15.0};
}

double group_delay(const PotentialProfile& profile, double E, const Units& units) {
  units.validate();
  if (!(E > 0.0)) throw std::invalid_argument("group_delay: requires E > 0");
  const double D = profile.support_width();
  const double h0 = 1e-5 * std::max(E, profile.max_abs_potential());

  auto wavenumber = [&](double energy) {
    return std::sqrt(2.0 * units.mass * energy) / units.hbar;
  };
  auto estimate = [&](double h) {
    const cplx tp = solve_stationary(profile, E + h, units).t();
    const cplx tm = solve_stationary(profile, E - h, units).t();
    const double dphase =
        std::arg(tp / tm) + (wavenumber(E + h) - wavenumber(E - h)) * D;
    return dphase / (2.0 * h);
  };
  const double d0 = estimate(h0);
  const double d1 = estimate(h0 / 2.0);
  const double d2 = estimate(h0 / 4.0);
  const double r1a = (4.0 * d1 - d0) / 3.0;
  const double r1b = (4.0 * d2 - d1) / 3.0;
  return units.hbar * (16.0 * r1b - r1a) / 15.0;
}

OpaqueAsymptotics opaque_asymptotics(double V0, double d, double E,
                                     const Units& units) {
  units.validate();
  if (!(E > 0.0) || !(d > 0.0) || !(V0 > 0.0))
    throw std::invalid_argument("opaque_asymptotics: requires V0, d, E > 0");
  if (E >= V0)
    throw std::domain_error("opaque_asymptotics: requires E < V0");
  const double k = std::sqrt(2.0 * units.mass * E) / units.hbar;
  const double kap = std::sqrt(2.0 * units.mass * (V0 - E)) / units.hbar;
  OpaqueAsymptotics out;
  out.re_limit = units.hbar * k / (kap * V0);
  out.im_limit = units.mass * d / (units.hbar * kap);
  return out;
}

}  // namespace barrierclock
