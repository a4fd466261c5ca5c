#include "barrierclock/verify.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include "barrierclock/parallel.hpp"

namespace barrierclock {

using oracle::make_report;
using oracle::OracleReport;

namespace {

struct Case {
  PotentialProfile profile;
  double E = 1.0;
  Region region{0.0, 1.0};
  bool symmetric = false;
  bool rectangular = false;
  double V0 = 0.0, d = 0.0;  // when rectangular
};

Case draw_case(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Case c;
  c.E = std::exp(std::log(0.05) + unit(rng) * (std::log(3.0) - std::log(0.05)));

  const int style = static_cast<int>(rng() % 4);
  if (style == 0) {
    c.rectangular = true;
    c.symmetric = true;
    c.V0 = 0.2 + 1.8 * unit(rng);
    c.d = 0.4 + 2.6 * unit(rng);
    c.profile = PotentialProfile::rectangular(c.V0, c.d);
  } else {
    const int nseg = 1 + static_cast<int>(rng() % 4);
    std::vector<double> widths(nseg), pots(nseg);
    for (int i = 0; i < nseg; ++i) {
      widths[i] = 0.3 + 1.2 * unit(rng);
      pots[i] = -1.0 + 3.0 * unit(rng);
    }
    c.symmetric = (style == 1);
    if (c.symmetric) {
      for (int i = 0; i < nseg / 2; ++i) {
        widths[nseg - 1 - i] = widths[i];
        pots[nseg - 1 - i] = pots[i];
      }
    }
    std::vector<Segment> segs;
    double x = -0.5;
    for (int i = 0; i < nseg; ++i) {
      segs.push_back({x, x + widths[i], pots[i]});
      x += widths[i];
    }
    c.profile = PotentialProfile(std::move(segs));
  }

  const double a = c.profile.support_left();
  const double b = c.profile.support_right();
  const double span = b - a;
  const double lo = a - 1.5, hi = b + 1.5;
  double x1 = lo + (hi - lo) * unit(rng);
  double x2 = lo + (hi - lo) * unit(rng);
  if (x1 > x2) std::swap(x1, x2);
  if (x2 - x1 < 1e-3 * (span + 1.0)) x2 += 0.25 * (span + 1.0);
  c.region = Region(x1, x2);
  return c;
}

double rel_to(double value, double scale) {
  return std::fabs(value) / (scale > 0.0 ? scale : 1.0);
}

void run_case(int index, const Case& c, double tscale,
              std::vector<OracleReport>& out) {
  auto name = [&](const char* what) {
    std::ostringstream os;
    os << "case" << index << "." << what;
    return os.str();
  };

  const auto sol = solve_stationary(c.profile, c.E);
  const double a = sol.support_left();
  const double b = sol.support_right();

  // unitarity and reciprocity
  const double flux_defect =
      std::fabs(std::norm(sol.r()) + std::norm(sol.t()) - 1.0);
  out.push_back(make_report(name("unitarity"), flux_defect, 0.0, 1e-12 * tscale));
  out.push_back(
      make_report(name("reciprocity"), std::abs(sol.t() - sol.t_rev()), 0.0, 1e-12 * tscale));

  // wavefunction continuity at every boundary, both incident and
  // transmitted-final channels
  double worst = 0.0;
  for (const Wave wave : {Wave::incident, Wave::transmitted_final}) {
    std::vector<double> edges{a, b};
    for (std::size_t i = 0; i < sol.segment_count(); ++i)
      edges.push_back(sol.segment_geom(i).x_left);
    for (double e : edges) {
      const auto left = sol.psi_and_deriv(wave, e - 1e-13 * (1.0 + std::fabs(e)));
      const auto right = sol.psi_and_deriv(wave, e);
      const double s1 = std::abs(left.first) + std::abs(right.first);
      const double s2 = std::abs(left.second) + std::abs(right.second);
      if (s1 > 0.0) worst = std::max(worst, std::abs(left.first - right.first) / s1);
      if (s2 > 0.0) worst = std::max(worst, std::abs(left.second - right.second) / s2);
    }
  }
  out.push_back(make_report(name("continuity"), worst, 0.0, 1e-10 * tscale));

  // psi_r = conj(psi_i)
  {
    const double x = a - 0.37 * (b - a + 1.0);
    const cplx lhs = sol.psi(Wave::reflected_final, x);
    const cplx rhs = std::conj(sol.psi(Wave::incident, x));
    out.push_back(make_report(name("reflected_state_conjugate"), std::abs(lhs - rhs),
                              0.0, 1e-12 * tscale));
  }

  // weighted-average identity on a random region (complex, both parts) and
  // the imaginary-part balance
  {
    const auto ct = channel_times(sol, c.region);
    double scale = std::max(std::fabs(ct.tau_d), 1e-6);
    if (ct.tau_T) scale = std::max(scale, ct.w_T * std::abs(ct.tau_T->value));
    if (ct.tau_R) scale = std::max(scale, ct.w_R * std::abs(ct.tau_R->value));
    out.push_back(make_report(name("weighted_identity"),
                              rel_to(std::abs(ct.identity_residual), scale), 0.0,
                              1e-10 * tscale));
    if (ct.tau_T && ct.tau_R) {
      const double bt = ct.w_T * ct.tau_T->im();
      const double br = ct.w_R * ct.tau_R->im();
      const double iscale = std::max({std::fabs(bt), std::fabs(br), std::fabs(ct.tau_d)});
      out.push_back(make_report(name("imag_balance"), rel_to(bt + br, iscale), 0.0,
                                1e-10 * tscale));
    }
    // raw dwell integral, before the clamp in channel_times
    const double raw_dwell =
        sol.inverse_flux() * sol.overlap_integral(2, c.region.x1, c.region.x2).real();
    out.push_back(make_report(name("dwell_nonnegative"),
                              raw_dwell >= 0.0 ? 0.0 : -raw_dwell, 0.0,
                              1e-12 * std::max(std::fabs(raw_dwell), 1.0) * tscale));
  }

  // symmetric profiles: equality of the real parts over the full support
  if (c.symmetric) {
    const auto ct = channel_times(sol, Region(a, b));
    if (ct.tau_T && ct.tau_R) {
      const double scale = std::max(std::fabs(ct.tau_d), 1e-12);
      const double worst_eq = std::max(std::fabs(ct.tau_T->re() - ct.tau_d),
                                       std::fabs(ct.tau_R->re() - ct.tau_d));
      out.push_back(make_report(name("symmetric_real_parts"), worst_eq / scale, 0.0,
                                1e-10 * tscale));
    }
  }

  // rectangular closed forms against the general path
  if (c.rectangular) {
    const auto rc = rectangular_coefficients(c.V0, c.d, c.E);
    out.push_back(make_report(name("rect_t_closed_form"), std::abs(rc.t - sol.t()), 0.0,
                              1e-12 * tscale));
    out.push_back(make_report(name("rect_r_closed_form"), std::abs(rc.r - sol.r()), 0.0,
                              1e-12 * tscale));
    const auto closed = conditional_times_rectangular(c.V0, c.d, c.E);
    const auto general = channel_times(sol, Region(a, b));
    if (closed.tau_T && general.tau_T) {
      const double scale = std::max(std::abs(closed.tau_T->value), 1e-12);
      out.push_back(make_report(name("rect_tau_T_closed_form"),
                                std::abs(closed.tau_T->value - general.tau_T->value) / scale,
                                0.0, 1e-10 * tscale));
    }
  }

  // oscillation budget over exact half-wave periods
  {
    const TimeChannel ch = (index % 3 == 0)   ? TimeChannel::dwell
                           : (index % 3 == 1) ? TimeChannel::transmitted
                                              : TimeChannel::reflected;
    const Side side = (index % 2 == 0) ? Side::left : Side::right;
    if (!(ch == TimeChannel::reflected && std::abs(sol.r()) < 1e-6)) {
      const int n = 1 + (index % 3);
      const cplx budget = oscillation_budget(sol, ch, side, n);
      const double span = n * M_PI / sol.wavenumber();
      const double scale = std::max(sol.inverse_flux() * span, 1e-12);
      out.push_back(
          make_report(name("oscillation_budget"), std::abs(budget) / scale, 0.0,
                      1e-10 * tscale));
    }
  }

  // dense-grid integration oracle
  if (index % 5 == 0) {
    const auto [t_or, r_or] = oracle::integrate_schrodinger(c.profile, c.E);
    const double scale = std::max(std::abs(sol.t()), 1e-12);
    out.push_back(make_report(name("oracle_integrator_t"),
                              std::abs(sol.t() - t_or) / scale, 0.0, 1e-6 * tscale));
    out.push_back(make_report(name("oracle_integrator_r"), std::abs(sol.r() - r_or),
                              0.0, 1e-6 * tscale));
  }

  // adaptive-quadrature oracle for the region integrals
  if (index % 5 == 2) {
    const auto analytic = channel_times(sol, c.region);
    if (analytic.tau_T) {
      const double scale = std::max(std::abs(analytic.tau_T->value), 1e-9);
      const auto quad = oracle::quadrature_weak_value(sol, c.region,
                                                      TimeChannel::transmitted,
                                                      1e-10 * scale);
      out.push_back(make_report(name("oracle_quadrature_tau_T"),
                                std::abs(analytic.tau_T->value - quad.value) / scale,
                                0.0, 1e-8 * tscale));
    }
    const double dscale = std::max(analytic.tau_d, 1e-9);
    const auto quad_d = oracle::quadrature_weak_value(sol, c.region, TimeChannel::dwell,
                                                      1e-10 * dscale);
    out.push_back(make_report(name("oracle_quadrature_tau_d"),
                              std::fabs(analytic.tau_d - quad_d.value.real()) / dscale,
                              0.0, 1e-8 * tscale));
  }

  // derivative route against the overlap route, one whole segment
  if (index % 7 == 3 && sol.segment_count() > 0) {
    const std::size_t pick = index % sol.segment_count();
    const auto& g = sol.segment_geom(pick);
    const Region seg_region(g.x_left, g.x_left + g.width);
    const auto by_deriv = complex_time_via_derivative(c.profile, seg_region, c.E);
    const auto by_overlap = weak_value_time(sol, seg_region, TimeChannel::transmitted);
    const double scale = std::max(std::abs(by_overlap.value), 1e-9);
    out.push_back(make_report(name("derivative_vs_overlap"),
                              std::abs(by_deriv.value - by_overlap.value) / scale, 0.0,
                              1e-6 * tscale));
  }
}

}  // namespace

VerifySummary run_verify(const VerifyOptions& options, std::ostream* stream) {
  std::mt19937_64 rng(options.seed);
  std::vector<Case> cases;
  cases.reserve(options.cases);
  for (int i = 0; i < options.cases; ++i) cases.push_back(draw_case(rng));

  std::vector<std::vector<OracleReport>> slots(cases.size());
  parallel_for(cases.size(), [&](std::size_t i) {
    run_case(static_cast<int>(i), cases[i], options.tolerance_scale, slots[i]);
  });

  VerifySummary summary;
  for (const auto& slot : slots) {
    for (const auto& r : slot) {
      ++summary.total;
      if (!r.pass) ++summary.failed;
      if (stream) *stream << oracle::to_json_line(r) << "\n";
      summary.reports.push_back(r);
    }
  }
  return summary;
}

}  // namespace barrierclock
