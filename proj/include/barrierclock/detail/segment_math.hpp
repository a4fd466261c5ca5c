#ifndef BARRIERCLOCK_DETAIL_SEGMENT_MATH_HPP
#define BARRIERCLOCK_DETAIL_SEGMENT_MATH_HPP

#include <cmath>
#include <complex>

// Scalar building blocks for constant-potential segments.
//
// Every segment is characterized by z = kappa^2 = 2m(V - E)/hbar^2, which is
// real for real potentials: z > 0 is evanescent, z < 0 oscillatory.  All
// propagation functions below are entire in z, so the same code path crosses
// the threshold z = 0 smoothly; small-|z| windows switch to series to avoid
// 0/0 and cancellation.

namespace barrierclock::detail {

using cplx = std::complex<double>;

/// kappa from z: sqrt(z) on the evanescent side, i*sqrt(-z) on the
/// oscillatory side (analytic continuation used throughout).
inline cplx kappa_of(double z) {
  if (z >= 0.0) return {std::sqrt(z), 0.0};
  return {0.0, std::sqrt(-z)};
}

/// cosh(kappa*u) as a function of z (equals cos(k2*u) for z < 0).
inline double cosh_z(double z, double u) {
  const double zu2 = z * u * u;
  if (std::fabs(zu2) < 1e-8) return 1.0 + zu2 / 2.0 + zu2 * zu2 / 24.0;
  if (z > 0.0) return std::cosh(std::sqrt(z) * u);
  return std::cos(std::sqrt(-z) * u);
}

/// sinh(kappa*u)/kappa as a function of z (-> u at z = 0).
inline double sinhc_z(double z, double u) {
  const double zu2 = z * u * u;
  if (std::fabs(zu2) < 1e-8) return u * (1.0 + zu2 / 6.0 + zu2 * zu2 / 120.0);
  if (z > 0.0) {
    const double kp = std::sqrt(z);
    return std::sinh(kp * u) / kp;
  }
  const double k2 = std::sqrt(-z);
  return std::sin(k2 * u) / k2;
}

/// (sinh(kappa*u)/kappa - u)/z = sum_{n>=0} z^n u^{2n+3}/(2n+3)!.
/// Series below |z u^2| = 1 where the direct subtraction loses digits.
inline double sinhc_minus_u_over_z(double z, double u) {
  const double zu2 = z * u * u;
  if (std::fabs(zu2) < 1.0) {
    double term = u * u * u / 6.0;  // n = 0
    double sum = term;
    for (int n = 1; n <= 12; ++n) {
      term *= zu2 / ((2.0 * n + 2.0) * (2.0 * n + 3.0));
      sum += term;
      if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
    }
    return sum;
  }
  return (sinhc_z(z, u) - u) / z;
}

/// Propagate (psi, psi') across width u of a constant segment.
inline void propagate(double z, double u, cplx& psi, cplx& dpsi) {
  const double c = cosh_z(z, u);
  const double s = sinhc_z(z, u);
  const cplx p = c * psi + s * dpsi;
  const cplx dp = z * s * psi + c * dpsi;
  psi = p;
  dpsi = dp;
}

/// Inverse propagation (right edge values -> left edge values).
inline void propagate_back(double z, double u, cplx& psi, cplx& dpsi) {
  const double c = cosh_z(z, u);
  const double s = sinhc_z(z, u);
  const cplx p = c * psi - s * dpsi;
  const cplx dp = -z * s * psi + c * dpsi;
  psi = p;
  dpsi = dp;
}

/// (exp(a*du) - 1)/a for real a, stable for small |a*du|.
inline double expm1_over_real(double a, double du) {
  if (a == 0.0) return du;
  return std::expm1(a * du) / a;
}

/// (exp(i*b*du) - 1)/(i*b) for real b, stable for small |b*du|.
inline cplx expm1_over_imag(double b, double du) {
  if (b == 0.0) return {du, 0.0};
  const double th = b * du;
  const double s2 = std::sin(0.5 * th);
  // exp(i th) - 1 = -2 sin^2(th/2) + i sin(th)
  const cplx num(-2.0 * s2 * s2, std::sin(th));
  return num / cplx(0.0, b);
}

/// Local wave on one segment, u in [0, width] measured from the left edge.
///
/// Exponential representation (exp_rep == true):
///   psi(u) = decay * exp(-kappa u) + grow_right * exp(-kappa (width - u))
/// where grow_right is the growing component's amplitude at the right edge.
/// Anchoring the growing exponential at its own edge keeps every stored
/// number and every evaluated exponent bounded for opaque segments.
///
/// Series representation (exp_rep == false, used for |kappa*width| < 0.05):
///   psi(u) = value * cosh(kappa u) + slope * sinh(kappa u)/kappa
/// with (value, slope) = (psi(0), psi'(0)).
struct SegmentWave {
  bool exp_rep = true;
  cplx decay;       // amplitude of exp(-kappa u)
  cplx grow;        // amplitude of exp(+kappa u), left-anchored
  cplx grow_right;  // grow * exp(kappa * width)
  cplx value;       // psi(0)   (series rep)
  cplx slope;       // psi'(0)  (series rep)
};

struct SegmentGeom {
  double x_left = 0.0;
  double width = 0.0;
  double V = 0.0;
  double z = 0.0;  // 2m(V-E)/hbar^2
  cplx kappa;
};

/// Representation switch: |kappa * width| below this uses the series rep.
/// The exponential split amplifies roundoff like 1/(kappa*width)^2 in region
/// integrals, the series basis like exp(2*kappa*width); 0.05 bounds both
/// sides at a few hundred ulps.
constexpr double kSeriesRepThreshold = 0.05;

inline bool use_series_rep(double z, double width) {
  return std::sqrt(std::fabs(z)) * width < kSeriesRepThreshold;
}

inline cplx wave_eval(const SegmentGeom& g, const SegmentWave& w, double u) {
  if (!w.exp_rep) return w.value * cosh_z(g.z, u) + w.slope * sinhc_z(g.z, u);
  return w.decay * std::exp(-g.kappa * u) +
         w.grow_right * std::exp(-g.kappa * (g.width - u));
}

inline cplx wave_eval_deriv(const SegmentGeom& g, const SegmentWave& w, double u) {
  if (!w.exp_rep) return w.value * g.z * sinhc_z(g.z, u) + w.slope * cosh_z(g.z, u);
  return g.kappa * (-w.decay * std::exp(-g.kappa * u) +
                    w.grow_right * std::exp(-g.kappa * (g.width - u)));
}

// Antiderivatives for products of the series basis functions
// C(u) = cosh(kappa u), S(u) = sinh(kappa u)/kappa (both real for real z):
// anti_C2 = int C^2, anti_CS = int C*S, anti_S2 = int S^2.  Series in z*u^2;
// inside the series-rep window they converge in a few terms.

inline double anti_C2(double z, double u) {
  // u/2 + sinh(2 kappa u)/(4 kappa), sh2 = sum 4^n u^{2n+1} z^n / (2(2n+1)!)
  const double zu2 = z * u * u;
  double term = 0.5 * u;
  double sh2 = term;
  for (int n = 1; n <= 10; ++n) {
    term *= 4.0 * zu2 / ((2.0 * n) * (2.0 * n + 1.0));
    sh2 += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sh2)) break;
  }
  return 0.5 * u + sh2;
}

inline double anti_CS(double z, double u) {
  // (cosh(2 kappa u) - 1)/(4 z) = sum 4^{n-1} u^{2n} z^{n-1} / (2n)!
  const double zu2 = z * u * u;
  double term = 0.5 * u * u;  // n = 1
  double sum = term;
  for (int n = 2; n <= 10; ++n) {
    term *= 4.0 * zu2 / ((2.0 * n - 1.0) * (2.0 * n));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

inline double anti_S2(double z, double u) {
  // (sinh(2 kappa u)/(4 kappa) - u/2)/z = sum_{n>=1} 4^n u^{2n+1} z^{n-1}/(2(2n+1)!)
  const double zu2 = z * u * u;
  double term = u * u * u / 3.0;  // n = 1
  double sum = term;
  for (int n = 2; n <= 10; ++n) {
    term *= 4.0 * zu2 / ((2.0 * n) * (2.0 * n + 1.0));
    sum += term;
    if (std::fabs(term) < 1e-18 * std::fabs(sum)) break;
  }
  return sum;
}

/// int_{u1}^{u2} f(u) i(u) du with f used UNconjugated (the conditional-time
/// overlap integrands are products of two solutions, not a modulus squared).
inline cplx product_integral(const SegmentGeom& g, const SegmentWave& f,
                             const SegmentWave& i, double u1, double u2) {
  const double du = u2 - u1;
  if (du <= 0.0) return {0.0, 0.0};
  if (!f.exp_rep) {
    const double c2 = anti_C2(g.z, u2) - anti_C2(g.z, u1);
    const double cs = anti_CS(g.z, u2) - anti_CS(g.z, u1);
    const double s2 = anti_S2(g.z, u2) - anti_S2(g.z, u1);
    return f.value * i.value * c2 + (f.value * i.slope + f.slope * i.value) * cs +
           f.slope * i.slope * s2;
  }
  cplx term_dd, term_gg;
  if (g.z > 0.0) {
    const double kp = g.kappa.real();
    const double w = g.width;
    // int e^{-2k u} du anchored at u1; int e^{-2k (w-u)} du anchored at u2.
    // Both reduce to exp(-2k anchor) * (1 - exp(-2k du))/(2k).
    term_dd = f.decay * i.decay * std::exp(-2.0 * kp * u1) *
              expm1_over_real(-2.0 * kp, du);
    term_gg = f.grow_right * i.grow_right * std::exp(-2.0 * kp * (w - u2)) *
              expm1_over_real(-2.0 * kp, du);
  } else {
    const double k2 = g.kappa.imag();
    term_dd = f.decay * i.decay * std::exp(cplx(0.0, -2.0 * k2 * u1)) *
              expm1_over_imag(-2.0 * k2, du);
    term_gg = f.grow * i.grow * std::exp(cplx(0.0, 2.0 * k2 * u1)) *
              expm1_over_imag(2.0 * k2, du);
  }
  const cplx cross = f.decay * i.grow + f.grow * i.decay;
  return term_dd + term_gg + cross * du;
}

/// int_{u1}^{u2} |i(u)|^2 du  (real, >= 0 up to roundoff).
inline double norm_integral(const SegmentGeom& g, const SegmentWave& i, double u1,
                            double u2) {
  const double du = u2 - u1;
  if (du <= 0.0) return 0.0;
  if (!i.exp_rep) {
    const double c2 = anti_C2(g.z, u2) - anti_C2(g.z, u1);
    const double cs = anti_CS(g.z, u2) - anti_CS(g.z, u1);
    const double s2 = anti_S2(g.z, u2) - anti_S2(g.z, u1);
    return std::norm(i.value) * c2 +
           2.0 * std::real(std::conj(i.value) * i.slope) * cs +
           std::norm(i.slope) * s2;
  }
  if (g.z > 0.0) {
    const double kp = g.kappa.real();
    const double w = g.width;
    const double dd = std::norm(i.decay) * std::exp(-2.0 * kp * u1) *
                      expm1_over_real(-2.0 * kp, du);
    const double gg = std::norm(i.grow_right) * std::exp(-2.0 * kp * (w - u2)) *
                      expm1_over_real(-2.0 * kp, du);
    const double cross = 2.0 * std::real(std::conj(i.decay) * i.grow) * du;
    return dd + gg + cross;
  }
  const double k2 = g.kappa.imag();
  const double diag = (std::norm(i.decay) + std::norm(i.grow)) * du;
  const cplx osc = std::conj(i.decay) * i.grow *
                   std::exp(cplx(0.0, 2.0 * k2 * u1)) * expm1_over_imag(2.0 * k2, du);
  return diag + 2.0 * std::real(osc);
}

}  // namespace barrierclock::detail

#endif
