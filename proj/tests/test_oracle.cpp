#include <cmath>

#include "barrierclock/oracle.hpp"
#include "doctest.h"

using namespace barrierclock;
using doctest::Approx;

TEST_CASE("integrator: free space gives t = 1, r = 0") {
  const auto [t, r] = oracle::integrate_schrodinger(PotentialProfile{}, 1.3);
  CHECK(std::abs(t - cplx(1.0, 0.0)) < 1e-8);
  CHECK(std::abs(r) < 1e-8);
}

TEST_CASE("integrator matches the transfer matrix on the rectangular barrier") {
  const auto profile = PotentialProfile::rectangular(1.0, 1.0);
  const auto sol = solve_stationary(profile, 0.5);
  const auto [t, r] = oracle::integrate_schrodinger(profile, 0.5);
  CHECK(std::abs(t - sol.t()) / std::abs(sol.t()) < 1e-6);
  CHECK(std::abs(r - sol.r()) < 1e-6);
}

TEST_CASE("integrator stays accurate in the stiff regime kd = 15") {
  const auto profile = PotentialProfile::rectangular(1.0, 15.0);
  const auto sol = solve_stationary(profile, 0.5);
  const auto [t, r] = oracle::integrate_schrodinger(profile, 0.5);
  CHECK(std::fabs(std::abs(t) - std::abs(sol.t())) / std::abs(sol.t()) < 1e-5);
}

TEST_CASE("integrator matches |t| and arg t over an (E, V0, d) grid") {
  for (double V0 : {0.5, 1.0, 1.8}) {
    for (double d : {0.7, 2.0, 5.0}) {
      for (double frac : {0.3, 0.8, 1.2}) {
        const double E = frac * V0;
        const auto profile = PotentialProfile::rectangular(V0, d);
        const auto sol = solve_stationary(profile, E);
        const auto [t, r] = oracle::integrate_schrodinger(profile, E);
        CAPTURE(V0);
        CAPTURE(d);
        CAPTURE(E);
        CHECK(std::fabs(std::abs(t) - std::abs(sol.t())) / std::abs(sol.t()) < 1e-6);
        CHECK(std::fabs(std::remainder(std::arg(t) - std::arg(sol.t()), 2 * M_PI)) <
              1e-6);
      }
    }
  }
}

TEST_CASE("integrator rejects an under-resolved grid step") {
  CHECK_THROWS_AS(
      oracle::integrate_schrodinger(PotentialProfile::rectangular(1.0, 1.0), 0.5,
                                    Units{}, 0.5),
      std::runtime_error);
}

TEST_CASE("quadrature matches the closed forms on the full barrier") {
  const auto sol = solve_stationary(PotentialProfile::rectangular(1.0, 1.0), 0.5);
  const auto closed = conditional_times_rectangular(1.0, 1.0, 0.5);
  for (const TimeChannel ch :
       {TimeChannel::transmitted, TimeChannel::reflected, TimeChannel::dwell}) {
    const auto q =
        oracle::quadrature_weak_value(sol, Region(-0.5, 0.5), ch, 1e-11);
    const cplx ref = ch == TimeChannel::transmitted ? closed.tau_T->value
                     : ch == TimeChannel::reflected ? closed.tau_R->value
                                                    : cplx(closed.tau_d, 0.0);
    CAPTURE(static_cast<int>(ch));
    CHECK(std::abs(q.value - ref) / std::abs(ref) < 1e-8);
  }
}

TEST_CASE("quadrature: zero-measure region returns zero") {
  const auto sol = solve_stationary(PotentialProfile::rectangular(1.0, 1.0), 0.5);
  const auto q = oracle::quadrature_weak_value(sol, Region(0.2, 0.2),
                                               TimeChannel::dwell, 1e-10);
  CHECK(q.value == cplx(0.0, 0.0));
}

TEST_CASE("quadrature splits regions straddling segment boundaries") {
  PotentialProfile steps({{0.0, 1.0, 0.5}, {1.0, 2.2, 1.2}});
  const auto sol = solve_stationary(steps, 0.7);
  const Region whole(-0.5, 1.6);
  const auto q = oracle::quadrature_weak_value(sol, whole,
                                               TimeChannel::transmitted, 1e-12);
  // sum of the per-piece analytic integrals
  const auto a1 = weak_value_time(sol, Region(-0.5, 0.0), TimeChannel::transmitted);
  const auto a2 = weak_value_time(sol, Region(0.0, 1.0), TimeChannel::transmitted);
  const auto a3 = weak_value_time(sol, Region(1.0, 1.6), TimeChannel::transmitted);
  const cplx analytic = a1.value + a2.value + a3.value;
  CHECK(std::abs(q.value - analytic) / std::abs(analytic) < 1e-8);
}

TEST_CASE("richardson derivative: polynomial sanity") {
  const auto est = oracle::richardson_derivative([](double x) { return x * x; }, 3.0,
                                                 0.1);
  CHECK(est.value == Approx(6.0).epsilon(1e-10));
  CHECK(est.error < 1e-9);
  CHECK_THROWS_AS(
      oracle::richardson_derivative([](double x) { return std::exp(5.0 * x); }, 1.0,
                                    0.5, 1e-12),
      std::runtime_error);
}

TEST_CASE("richardson derivative recovers the conditional time from amplitudes") {
  // -hbar d(arg t)/dV = Re tau_T and hbar d(ln|t|)/dV = Im tau_T on the
  // rectangular barrier, probed through the profile-offset machinery
  const double V0 = 1.0, d = 1.0, E = 0.5;
  const auto closed = conditional_times_rectangular(V0, d, E);
  const Region barrier(-d / 2, d / 2);
  const auto base = PotentialProfile::rectangular(V0, d);

  const auto arg_t = [&](double dv) {
    const auto rc = solve_stationary(base.with_region_offset(barrier, dv), E);
    return std::arg(rc.t());
  };
  const auto ln_abs_t = [&](double dv) {
    const auto rc = solve_stationary(base.with_region_offset(barrier, dv), E);
    return std::log(std::abs(rc.t()));
  };
  const double h = 1e-5 * std::max(E, V0);
  const auto d_arg = oracle::richardson_derivative(arg_t, 0.0, h);
  const auto d_ln = oracle::richardson_derivative(ln_abs_t, 0.0, h);
  CHECK(-d_arg.value == Approx(closed.tau_T->re()).epsilon(1e-6));
  CHECK(d_ln.value == Approx(closed.tau_T->im()).epsilon(1e-6));
}
