#include <doctest.h>

#include <cmath>

#include "plasma/conservation.hpp"
#include "plasma/errors.hpp"
#include "plasma/exact.hpp"
#include "plasma/solver.hpp"

using namespace plasma;

namespace {

Scenario insulated_scenario() {
  Scenario sc;
  sc.g = CoefficientFn::constant(1.0);
  sc.a = CoefficientFn::exp_u();
  sc.w = CoefficientFn::inv_t();
  sc.x_left = 0.0;
  sc.x_right = 1.0;
  sc.t0 = 1.0;
  sc.t1 = 2.0;
  sc.initial = [](double x) {
    return 0.5 + 0.05 * std::cos(M_PI * x);
  };
  sc.left = BoundaryCondition::neumann_flux_const(0.0);
  sc.right = BoundaryCondition::neumann_flux_const(0.0);
  return sc;
}

}  // namespace

TEST_CASE("both balance densities are locally conserved on an exact field") {
  // d/dt density + d/dx flux = 0 checked with central differences on a
  // closed-form solution
  const ExactSolution e = find_exact("separated-power-diffusivity");
  const auto pairs = conserved_pairs(e.scenario);
  REQUIRE(pairs.size() == 2);
  const double ht = 1e-6, hx = 1e-6;
  for (const auto& pair : pairs) {
    CAPTURE(pair.name);
    for (int k = 1; k < 6; ++k)
      for (int i = 1; i < 6; ++i) {
        const double t = e.scenario.t0 + (e.scenario.t1 - e.scenario.t0) * k / 6.0;
        const double x =
            e.scenario.x_left + (e.scenario.x_right - e.scenario.x_left) * i / 6.0;
        auto dens = [&](double tt, double xx) {
          return pair.density(tt, xx, e.field.u(tt, xx));
        };
        auto flux = [&](double tt, double xx) {
          return pair.flux(tt, xx, e.field.u(tt, xx), e.field.ux(tt, xx));
        };
        const double dt_dens = (dens(t + ht, x) - dens(t - ht, x)) / (2 * ht);
        const double dx_flux = (flux(t, x + hx) - flux(t, x - hx)) / (2 * hx);
        CHECK(dt_dens + dx_flux ==
              doctest::Approx(0.0).scale(
                  std::max({1.0, std::abs(dt_dens), std::abs(dx_flux)})));
      }
  }
}

TEST_CASE("insulated runs conserve discrete content to Newton tolerance") {
  const Scenario sc = insulated_scenario();
  SolveOptions opt;
  opt.cells = 64;
  opt.dt = 0.01;
  opt.newton_tol = 1e-13;
  const SolveResult r = solve_pde(sc, opt);
  const BalanceReport rep = mass_balance(sc, r, opt.theta);
  CHECK(rep.relative < 1e-11);
  CHECK(rep.max_step_defect < 1e-12);
  CHECK(rep.steps == r.steps);
  CHECK(rep.initial != 0.0);
}

TEST_CASE("the weighted balance defect contracts at second order") {
  const Scenario sc = insulated_scenario();
  SolveOptions coarse_opt;
  coarse_opt.cells = 32;
  coarse_opt.dt = 0.02;
  coarse_opt.newton_tol = 1e-13;
  SolveOptions fine_opt = coarse_opt;
  fine_opt.cells = 64;
  fine_opt.dt = 0.01;
  const BalanceReport coarse =
      weighted_balance(sc, solve_pde(sc, coarse_opt), coarse_opt.theta);
  const BalanceReport fine =
      weighted_balance(sc, solve_pde(sc, fine_opt), fine_opt.theta);
  CHECK(coarse.relative > 0.0);
  const double ratio = coarse.relative / fine.relative;
  CHECK(ratio > 3.0);
  CHECK(ratio < 5.0);
}

TEST_CASE("potential surfaces close: corner defect equals cumulative defect") {
  const Scenario sc = insulated_scenario();
  SolveOptions opt;
  opt.cells = 48;
  opt.dt = 0.02;
  const SolveResult r = solve_pde(sc, opt);
  {
    const BalanceReport rep = mass_balance(sc, r, opt.theta);
    const PotentialSurface pot = mass_potential(sc, r, opt.theta);
    CHECK(pot.faces.size() == 49);
    CHECK(pot.values.front().front() == 0.0);  // gauge at (t0, left wall)
    // two arithmetic routes to the same closure defect agree at noise level
    CHECK(std::abs(pot.corner_defect - rep.cumulative_defect) < 1e-10);
  }
  {
    const BalanceReport rep = weighted_balance(sc, r, opt.theta);
    const PotentialSurface pot = weighted_potential(sc, r, opt.theta);
    CHECK(std::abs(pot.corner_defect - rep.cumulative_defect) < 1e-10);
  }
}

TEST_CASE("face differences of the content potential recover the density") {
  // v(t, x_{i+1}) - v(t, x_i) = dx * density at the final frame up to the
  // cumulative defect level
  const Scenario sc = insulated_scenario();
  SolveOptions opt;
  opt.cells = 32;
  opt.dt = 0.02;
  const SolveResult r = solve_pde(sc, opt);
  const PotentialSurface pot = mass_potential(sc, r, opt.theta);
  const auto& s = r.samples;
  const int last = s.frames() - 1;
  const double iw = sc.w.antiderivative(s.times[last], sc.t0);
  for (int i = 0; i < s.grid.cells(); ++i) {
    const double lhs = pot.values[last][i + 1] - pot.values[last][i];
    const double rhs = s.grid.dx() * (s.data[last][i] - iw);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("the affine branch of the source equation is exact") {
  const SourceOde ode = integrate_source_ode(0.0, 1.0, 0.0, 2.0, 0.3, 0.7);
  CHECK(ode.linear);
  for (double t : {0.0, 0.5, 1.3, 2.0}) {
    CHECK(ode.S(t) == doctest::Approx(0.3 + 0.7 * t).epsilon(1e-13));
    CHECK(ode.W(t) == doctest::Approx(0.7).epsilon(1e-13));
  }
  CHECK(ode.invariant_drift == doctest::Approx(0.0));
}

TEST_CASE("the first integral of the source equation is preserved") {
  for (const double a2 : {1.0, 0.0, -1.0}) {
    CAPTURE(a2);
    // start away from the singular set S^2 = -a2
    const double s0 = a2 < 0.0 ? 1.5 : 0.5;
    const SourceOde ode = integrate_source_ode(0.8, a2, 0.0, 1.5, s0, 0.6);
    CHECK(!ode.linear);
    CHECK(ode.invariant_drift < 1e-9);
    // S is differentiable and W = S' matches a finite difference
    const double t = ode.stopped_early ? 0.5 * ode.t_end : 0.75;
    const double h = 1e-6;
    CHECK(ode.W(t) ==
          doctest::Approx((ode.S(t + h) - ode.S(t - h)) / (2 * h))
              .epsilon(1e-6));
  }
}

TEST_CASE("trajectories heading into the singular set stop with a reason") {
  // with a2 = -1 the set S = 1 is singular; start just above it moving down
  const SourceOde ode = integrate_source_ode(0.8, -1.0, 0.0, 10.0, 1.2, -0.5);
  CHECK(ode.stopped_early);
  CHECK(!ode.stop_reason.empty());
  CHECK(ode.t_end < 10.0);
}

TEST_CASE("a flat initial slope is rejected for the nonlinear branch") {
  CHECK_THROWS_AS(integrate_source_ode(0.8, 1.0, 0.0, 1.0, 0.5, 0.0), Error);
  try {
    integrate_source_ode(0.8, 1.0, 0.0, 1.0, 0.5, 0.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("the branch antiderivative H differentiates to 1/(S^2 + a2)") {
  const double h = 1e-6;
  for (const auto& [s, a2] : {std::pair{0.7, 1.0}, std::pair{0.7, 0.0},
                              std::pair{1.8, -1.0}, std::pair{0.4, -1.0}}) {
    CAPTURE(s);
    CAPTURE(a2);
    const double slope =
        (source_ode_h(s + h, a2) - source_ode_h(s - h, a2)) / (2 * h);
    CHECK(slope == doctest::Approx(1.0 / (s * s + a2)).epsilon(1e-6));
  }
}
