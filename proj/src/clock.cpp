#include "barrierclock/clock.hpp"

#include <cmath>
#include <stdexcept>

namespace barrierclock {

namespace {

constexpr double kNormFloor = 1e-24;

cplx channel_amp(const ScatteringSolution& sol, TimeChannel channel) {
  switch (channel) {
    case TimeChannel::transmitted: return sol.t();
    case TimeChannel::reflected: return sol.r();
    default:
      throw std::invalid_argument("clock: channel must be transmitted or reflected");
  }
}

void check_half_integer(double S) {
  const double twoS = 2.0 * S;
  if (!(S >= 0.5) || std::fabs(twoS - std::round(twoS)) > 1e-9)
    throw std::invalid_argument("spin state: S must be a half-integer >= 1/2");
}

/// Lattice Delta S_z^2 of the Gaussian amplitude profile exp(-m^2/4s^2).
double gaussian_lattice_variance(double S, double s) {
  const int n = static_cast<int>(std::lround(2.0 * S)) + 1;
  double norm = 0.0, m1 = 0.0, m2 = 0.0;
  for (int j = 0; j < n; ++j) {
    const double m = -S + j;
    const double w = std::exp(-m * m / (2.0 * s * s));
    norm += w;
    m1 += m * w;
    m2 += m * m * w;
  }
  const double mean = m1 / norm;
  return m2 / norm - mean * mean;
}

}  // namespace

double SpinState::delta_sz() const {
  double norm = 0.0, m1 = 0.0, m2 = 0.0;
  for (std::size_t j = 0; j < amplitudes.size(); ++j) {
    const double m = -S + static_cast<double>(j);
    const double w = std::norm(amplitudes[j]);
    norm += w;
    m1 += m * w;
    m2 += m * m * w;
  }
  const double mean = m1 / norm;
  return std::sqrt(std::max(0.0, m2 / norm - mean * mean));
}

SpinState coherent_spin_state(double S) {
  check_half_integer(S);
  const int twoS = static_cast<int>(std::lround(2.0 * S));
  SpinState st;
  st.S = S;
  st.amplitudes.resize(twoS + 1);
  // c_j = sqrt(binom(2S, j)) / 2^S via log-gamma to stay finite for large S
  for (int j = 0; j <= twoS; ++j) {
    const double lbinom =
        std::lgamma(twoS + 1.0) - std::lgamma(j + 1.0) - std::lgamma(twoS - j + 1.0);
    st.amplitudes[j] = std::exp(0.5 * lbinom - S * std::log(2.0));
  }
  return st;
}

SpinState squeezed_spin_state(double S, double width) {
  check_half_integer(S);
  if (!(width > 0.0))
    throw std::invalid_argument("squeezed_spin_state: width must be positive");

  const double target = width * width;
  // Var(s) is monotone in the Gaussian parameter s; bisect to hit the
  // requested lattice width exactly.
  double lo = 1e-8, hi = 16.0 * (1.0 + std::sqrt(S));
  if (gaussian_lattice_variance(S, hi) < target)
    throw std::invalid_argument("squeezed_spin_state: width too large for this S");
  if (gaussian_lattice_variance(S, lo) > target * (1.0 + 1e-12))
    throw std::invalid_argument(
        "squeezed_spin_state: width unreachable on the discrete S_z lattice");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (gaussian_lattice_variance(S, mid) < target)
      lo = mid;
    else
      hi = mid;
  }
  const double s = 0.5 * (lo + hi);

  const int n = static_cast<int>(std::lround(2.0 * S)) + 1;
  SpinState st;
  st.S = S;
  st.amplitudes.resize(n);
  double norm = 0.0;
  for (int j = 0; j < n; ++j) {
    const double m = -S + j;
    const double c = std::exp(-m * m / (4.0 * s * s));
    st.amplitudes[j] = c;
    norm += c * c;
  }
  norm = std::sqrt(norm);
  for (auto& c : st.amplitudes) c /= norm;
  return st;
}

SpinClockResult larmor_spin_half(const PotentialProfile& profile, const Region& region,
                                 double E, double omega_L, TimeChannel channel,
                                 const Units& units) {
  SpinClockResult out;
  out.omega_L = omega_L;
  out.channel = channel;
  if (omega_L == 0.0) {
    const auto sol = solve_stationary(profile, E, units);
    out.norm = std::norm(channel_amp(sol, channel));
    return out;
  }
  // spin up (m = +1/2) sees V - hbar omega/2, spin down V + hbar omega/2
  const double shift = 0.5 * units.hbar * omega_L;
  const auto sol_up = solve_stationary(profile.with_region_offset(region, -shift), E, units);
  const auto sol_dn = solve_stationary(profile.with_region_offset(region, +shift), E, units);
  const cplx a_up = channel_amp(sol_up, channel) / std::sqrt(2.0);
  const cplx a_dn = channel_amp(sol_dn, channel) / std::sqrt(2.0);

  const double norm = std::norm(a_up) + std::norm(a_dn);
  if (norm < kNormFloor)
    throw std::domain_error("larmor_spin_half: post-selected norm is zero");

  out.norm = norm;
  out.in_plane_angle = std::arg(a_up * std::conj(a_dn));
  out.out_of_plane = (std::norm(a_up) - std::norm(a_dn)) / norm;
  out.tau_y = out.in_plane_angle / omega_L;
  out.tau_z = out.out_of_plane / omega_L;
  return out;
}

SpinClockResult larmor_spin_S(const PotentialProfile& profile, const Region& region,
                              double E, double omega_L, const SpinState& state,
                              TimeChannel channel, const Units& units) {
  check_half_integer(state.S);
  const int twoS = static_cast<int>(std::lround(2.0 * state.S));
  if (state.amplitudes.size() != static_cast<std::size_t>(twoS + 1))
    throw std::invalid_argument("larmor_spin_S: amplitude count must be 2S+1");
  double state_norm = 0.0;
  for (const auto& c : state.amplitudes) state_norm += std::norm(c);
  if (std::fabs(state_norm - 1.0) > 1e-8)
    throw std::invalid_argument("larmor_spin_S: state must be normalized");

  SpinClockResult out;
  out.omega_L = omega_L;
  out.channel = channel;
  if (omega_L == 0.0) {
    const auto sol = solve_stationary(profile, E, units);
    out.norm = std::norm(channel_amp(sol, channel));
    return out;
  }

  const int n = twoS + 1;
  std::vector<cplx> post(n);
  for (int j = 0; j < n; ++j) {
    const double m = -state.S + j;
    const auto sol = solve_stationary(
        profile.with_region_offset(region, -units.hbar * omega_L * m), E, units);
    post[j] = channel_amp(sol, channel) * state.amplitudes[j];
  }

  double norm = 0.0, mz = 0.0;
  cplx splus{0.0, 0.0};
  for (int j = 0; j < n; ++j) {
    const double m = -state.S + j;
    norm += std::norm(post[j]);
    mz += m * std::norm(post[j]);
    if (j + 1 < n) {
      const double f = std::sqrt(state.S * (state.S + 1.0) - m * (m + 1.0));
      splus += std::conj(post[j + 1]) * f * post[j];
    }
  }
  if (norm < kNormFloor)
    throw std::domain_error("larmor_spin_S: post-selected norm is zero");

  out.norm = norm;
  out.in_plane_angle = -std::arg(splus);
  out.out_of_plane = (mz / norm) / state.S;
  out.tau_y = out.in_plane_angle / omega_L;
  out.tau_z = out.out_of_plane / omega_L;
  return out;
}

PointerOutcome pointer_measurement(const PotentialProfile& profile, const Region& region,
                                   double E, double g0, double sigma,
                                   TimeChannel channel, const Units& units) {
  if (!(sigma > 0.0))
    throw std::invalid_argument("pointer_measurement: sigma must be positive");
  if (g0 < 0.0)
    throw std::invalid_argument("pointer_measurement: g0 must be non-negative");

  PointerOutcome out;
  out.sigma = sigma;
  out.g0 = g0;
  out.channel = channel;
  if (g0 == 0.0) {
    const auto sol = solve_stationary(profile, E, units);
    out.norm = std::norm(channel_amp(sol, channel));
    return out;
  }

  const double hbar = units.hbar;
  const double p_half = 4.0 * hbar / sigma;  // 8 standard deviations of Phi_0

  auto moments = [&](int n_points) {
    const double dp = 2.0 * p_half / (n_points - 1);
    std::vector<cplx> amp(n_points);
    for (int i = 0; i < n_points; ++i) {
      const double P = -p_half + i * dp;
      const auto sol =
          solve_stationary(profile.with_region_offset(region, g0 * P), E, units);
      amp[i] = channel_amp(sol, channel);
    }
    // |Phi_0(P)|^2 = sqrt(2 sigma^2/(pi hbar^2)) exp(-2 P^2 sigma^2/hbar^2)
    const double w0 = std::sqrt(2.0 * sigma * sigma / (M_PI * hbar * hbar));
    double norm = 0.0, p1 = 0.0, q1 = 0.0;
    for (int i = 0; i < n_points; ++i) {
      const double P = -p_half + i * dp;
      const double phi2 = w0 * std::exp(-2.0 * P * P * sigma * sigma / (hbar * hbar));
      // trapezoid weights; the Gaussian tail is ~1e-14 at the edges
      const double tw = (i == 0 || i == n_points - 1) ? 0.5 : 1.0;
      const double wgt = tw * phi2 * dp;
      const double a2 = std::norm(amp[i]);
      // d(arg a)/dP * |a|^2 = Im(conj(a) a'), finite even through |a| ~ 0
      cplx da;
      if (i == 0)
        da = (amp[1] - amp[0]) / dp;
      else if (i == n_points - 1)
        da = (amp[i] - amp[i - 1]) / dp;
      else
        da = (amp[i + 1] - amp[i - 1]) / (2.0 * dp);
      norm += wgt * a2;
      p1 += wgt * a2 * P;
      q1 += wgt * std::imag(std::conj(amp[i]) * da);
    }
    struct M { double norm, dP, dQ; };
    return M{norm, p1 / norm, -hbar * q1 / norm};
  };

  const auto coarse = moments(2049);
  const auto fine = moments(4097);
  if (coarse.norm < kNormFloor)
    throw std::domain_error("pointer_measurement: post-selected norm below threshold");
  // convergence self-check: doubling the grid may move dQ by < 1e-8 relative
  if (std::fabs(fine.dQ - coarse.dQ) > 1e-8 * std::max(std::fabs(fine.dQ), 1e-12))
    throw std::runtime_error("pointer_measurement: grid resolution check failed");

  out.norm = fine.norm;
  out.dP = fine.dP;
  out.dQ = fine.dQ;
  return out;
}

SpinClockResult far_side_field_effect(const PotentialProfile& profile,
                                      const Region& barrier_region,
                                      const Region& probe_region_beyond, double E,
                                      double omega_L, const Units& units) {
  if (!(probe_region_beyond.x1 >= barrier_region.x2))
    throw std::invalid_argument(
        "far_side_field_effect: probe region must lie strictly right of the barrier");
  return larmor_spin_half(profile, probe_region_beyond, E, omega_L,
                          TimeChannel::reflected, units);
}

}  // namespace barrierclock
