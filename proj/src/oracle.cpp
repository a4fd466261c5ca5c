#include "barrierclock/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "barrierclock/io.hpp"

namespace barrierclock::oracle {

namespace {
constexpr cplx kI{0.0, 1.0};
}

OracleReport make_report(const std::string& quantity, double primary, double oracle,
                         double tolerance) {
  OracleReport r;
  r.quantity = quantity;
  r.primary_value = primary;
  r.oracle_value = oracle;
  r.abs_error = std::fabs(primary - oracle);
  const double scale = std::max(std::fabs(primary), std::fabs(oracle));
  r.rel_error = scale > 0.0 ? r.abs_error / scale : 0.0;
  r.tolerance = tolerance;
  r.pass = r.abs_error <= tolerance || r.rel_error <= tolerance;
  return r;
}

std::string to_json_line(const OracleReport& r) {
  std::ostringstream os;
  os << "{\"quantity\":\"" << r.quantity << "\""
     << ",\"primary\":" << io::fmt17(r.primary_value)
     << ",\"oracle\":" << io::fmt17(r.oracle_value)
     << ",\"abs_error\":" << io::fmt17(r.abs_error)
     << ",\"rel_error\":" << io::fmt17(r.rel_error)
     << ",\"tolerance\":" << io::fmt17(r.tolerance)
     << ",\"pass\":" << (r.pass ? "true" : "false") << "}";
  return os.str();
}

std::pair<cplx, cplx> integrate_schrodinger(const PotentialProfile& profile, double E,
                                            const Units& units, double grid_step) {
  units.validate();
  if (!(E > 0.0)) throw std::invalid_argument("integrate_schrodinger: requires E > 0");

  const double k = std::sqrt(2.0 * units.mass * E) / units.hbar;
  const double pref = 2.0 * units.mass / (units.hbar * units.hbar);

  double fastest = k;  // largest local wavenumber / inverse decay length
  for (const auto& s : profile.segments())
    fastest = std::max(fastest, std::sqrt(std::fabs(pref * (s.V - E))));
  const double max_step = 1.0 / (50.0 * fastest);
  if (grid_step <= 0.0) grid_step = max_step;
  if (grid_step > max_step)
    throw std::runtime_error(
        "integrate_schrodinger: grid_step fails the 50-points-per-wavelength "
        "resolution check");

  const double a = profile.support_left();
  const double b = profile.support_right();

  // outgoing wave at the right boundary; marching leftward is the stable
  // (growing) direction through evanescent stretches
  cplx psi = std::exp(kI * k * b);
  cplx dpsi = kI * k * psi;

  const auto& segs = profile.segments();
  for (auto it = segs.rbegin(); it != segs.rend(); ++it) {
    const double z = pref * (it->V - E);
    const double w = it->x_right - it->x_left;
    const int n = std::max(1, static_cast<int>(std::ceil(w / grid_step)));
    const double h = -w / n;  // leftward
    for (int i = 0; i < n; ++i) {
      // RK4 on (psi, dpsi)' = (dpsi, z psi)
      const cplx k1p = dpsi, k1d = z * psi;
      const cplx k2p = dpsi + 0.5 * h * k1d, k2d = z * (psi + 0.5 * h * k1p);
      const cplx k3p = dpsi + 0.5 * h * k2d, k3d = z * (psi + 0.5 * h * k2p);
      const cplx k4p = dpsi + h * k3d, k4d = z * (psi + h * k3p);
      psi += h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
      dpsi += h / 6.0 * (k1d + 2.0 * k2d + 2.0 * k3d + k4d);
    }
  }

  // psi(a) = alpha e^{ika} + beta e^{-ika}
  const cplx alpha = 0.5 * (psi + dpsi / (kI * k)) * std::exp(-kI * k * a);
  const cplx beta = 0.5 * (psi - dpsi / (kI * k)) * std::exp(kI * k * a);
  return {1.0 / alpha, beta / alpha};
}

namespace {

using Integrand = std::function<cplx(double)>;

cplx adaptive_simpson(const Integrand& f, double x1, double x2, cplx f1, cplx fm,
                      cplx f2, double tol, int depth) {
  const double xm = 0.5 * (x1 + x2);
  const double xl = 0.5 * (x1 + xm);
  const double xr = 0.5 * (xm + x2);
  const cplx fl = f(xl);
  const cplx fr = f(xr);
  const double h = x2 - x1;
  const cplx whole = h / 6.0 * (f1 + 4.0 * fm + f2);
  const cplx left = h / 12.0 * (f1 + 4.0 * fl + fm);
  const cplx right = h / 12.0 * (fm + 4.0 * fr + f2);
  const cplx delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * tol || h < 1e-14 * (std::fabs(x1) + 1.0))
    return left + right + delta / 15.0;
  if (depth <= 0)
    throw std::runtime_error("quadrature_weak_value: subdivision budget exhausted");
  return adaptive_simpson(f, x1, xm, f1, fl, fm, 0.5 * tol, depth - 1) +
         adaptive_simpson(f, xm, x2, fm, fr, f2, 0.5 * tol, depth - 1);
}

cplx integrate_adaptive(const Integrand& f, double x1, double x2, double tol) {
  const double xm = 0.5 * (x1 + x2);
  return adaptive_simpson(f, x1, x2, f(x1), f(xm), f(x2), tol, 60);
}

}  // namespace

ComplexTime quadrature_weak_value(const ScatteringSolution& sol, const Region& region,
                                  TimeChannel channel, double tolerance) {
  cplx amp;
  Wave final_wave;
  switch (channel) {
    case TimeChannel::transmitted:
      amp = sol.t();
      final_wave = Wave::transmitted_final;
      break;
    case TimeChannel::reflected:
      amp = sol.r();
      final_wave = Wave::reflected_final;
      break;
    case TimeChannel::dwell:
      amp = 1.0;
      final_wave = Wave::incident;
      break;
    default:
      throw std::invalid_argument("quadrature_weak_value: invalid channel");
  }
  const bool defined = (channel == TimeChannel::reflected)
                           ? std::abs(amp) >= kAmplitudeZeroTol
                           : std::abs(amp) > 0.0;
  if (!defined)
    throw std::domain_error("quadrature_weak_value: channel amplitude is zero");
  if (!(region.x2 > region.x1)) return {cplx{0.0, 0.0}};
  if (!(tolerance > 0.0))
    throw std::invalid_argument("quadrature_weak_value: tolerance must be positive");

  const Integrand f = [&](double x) {
    return std::conj(sol.psi(final_wave, x)) * sol.psi(Wave::incident, x);
  };
  // tolerance is on the time; convert to the raw integral
  const double tol_integral = tolerance * std::abs(amp) / sol.inverse_flux();

  // integrate piecewise between potential boundaries so the integrand is
  // smooth on every subinterval
  std::vector<double> cuts{region.x1};
  for (const auto& s : sol.profile().segments()) {
    for (double edge : {s.x_left, s.x_right})
      if (edge > region.x1 && edge < region.x2) cuts.push_back(edge);
  }
  cuts.push_back(region.x2);
  std::sort(cuts.begin(), cuts.end());

  cplx total{0.0, 0.0};
  const double span = region.x2 - region.x1;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (cuts[i + 1] <= cuts[i]) continue;
    const double share = (cuts[i + 1] - cuts[i]) / span;
    total += integrate_adaptive(f, cuts[i], cuts[i + 1], tol_integral * share);
  }
  return {sol.inverse_flux() * total / amp};
}

DerivativeEstimate richardson_derivative(const std::function<double(double)>& f,
                                         double x0, double base_step,
                                         double max_error) {
  if (!(base_step > 0.0))
    throw std::invalid_argument("richardson_derivative: base_step must be positive");
  auto central = [&](double h) { return (f(x0 + h) - f(x0 - h)) / (2.0 * h); };
  const double d0 = central(base_step);
  const double d1 = central(base_step / 2.0);
  const double d2 = central(base_step / 4.0);
  const double r1a = (4.0 * d1 - d0) / 3.0;
  const double r1b = (4.0 * d2 - d1) / 3.0;
  DerivativeEstimate out;
  out.value = (16.0 * r1b - r1a) / 15.0;
  out.error = std::fabs(out.value - r1b);
  if (max_error > 0.0 && out.error > max_error)
    throw std::runtime_error("richardson_derivative: error estimate exceeds bound");
  return out;
}

}  // namespace barrierclock::oracle
