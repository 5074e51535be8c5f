#include <doctest.h>

#include <cmath>
#include <vector>

#include "plasma/errors.hpp"
#include "plasma/exact.hpp"
#include "plasma/solver.hpp"

using namespace plasma;

namespace {

double max_error_at_final_frame(const SolveResult& r, const AnalyticFn& truth) {
  const auto& s = r.samples;
  const int last = s.frames() - 1;
  double worst = 0.0;
  for (int i = 0; i < s.grid.cells(); ++i)
    worst = std::max(worst, std::abs(s.data[last][i] -
                                     truth.u(s.times[last], s.grid.center(i))));
  return worst;
}

}  // namespace

TEST_CASE("insulated uniform states follow the integrated source exactly") {
  Scenario sc;
  sc.g = CoefficientFn::tabulate_function(
      [](double x) { return 1.0 + 0.5 * std::sin(3.0 * x); }, -0.1, 1.1);
  sc.a = CoefficientFn::exp_u();
  sc.w = CoefficientFn::exp_t(0.5);
  sc.x_left = 0.0;
  sc.x_right = 1.0;
  sc.t0 = 0.0;
  sc.t1 = 1.0;
  sc.initial = [](double) { return 0.2; };
  sc.left = BoundaryCondition::neumann_flux_const(0.0);
  sc.right = BoundaryCondition::neumann_flux_const(0.0);

  SolveOptions opt;
  opt.cells = 48;
  const SolveResult r = solve_pde(sc, opt);
  const auto& s = r.samples;
  for (int k = 0; k < s.frames(); ++k) {
    const double want = 0.2 + sc.w.antiderivative(s.times[k], sc.t0);
    for (int i = 0; i < s.grid.cells(); ++i)
      CHECK(s.data[k][i] == doctest::Approx(want).epsilon(1e-11));
  }
}

TEST_CASE("step records telescope across the whole run") {
  Scenario sc = find_exact("separated-exponential-diffusivity").scenario;
  SolveOptions opt;
  opt.cells = 32;
  opt.dt = 0.02;
  const SolveResult r = solve_pde(sc, opt);
  REQUIRE(!r.history.empty());
  CHECK(static_cast<long>(r.history.size()) == r.steps);
  long newton = 0;
  for (std::size_t k = 0; k < r.history.size(); ++k) {
    newton += r.history[k].newton_iters;
    if (k > 0) {
      CHECK(r.history[k].t_old == doctest::Approx(r.history[k - 1].t_new));
      CHECK(r.history[k].mass_old ==
            doctest::Approx(r.history[k - 1].mass_new).epsilon(1e-14));
    }
  }
  CHECK(newton == r.newton_total);
  CHECK(r.history.front().t_old == doctest::Approx(sc.t0));
  CHECK(r.history.back().t_new == doctest::Approx(sc.t1));
}

TEST_CASE("the solve tracks a closed-form solution through Dirichlet walls") {
  const ExactSolution e = find_exact("separated-exponential-diffusivity");
  SolveOptions opt;
  opt.cells = 96;
  const SolveResult adaptive = solve_pde(e.scenario, opt);
  CHECK(max_error_at_final_frame(adaptive, e.field) < 5e-4);

  opt.dt = 0.005;
  const SolveResult fixed = solve_pde(e.scenario, opt);
  CHECK(max_error_at_final_frame(fixed, e.field) < 5e-4);
}

TEST_CASE("the manufactured truth is an exact solution of its scenario") {
  const ManufacturedProblem mp = manufactured_problem();
  double worst = 0.0;
  for (int k = 0; k <= 12; ++k)
    for (int i = 0; i <= 12; ++i) {
      const double t =
          mp.scenario.t0 + (mp.scenario.t1 - mp.scenario.t0) * k / 12.0;
      const double x = mp.scenario.x_left +
                       (mp.scenario.x_right - mp.scenario.x_left) * i / 12.0;
      worst = std::max(worst, std::abs(pde_residual(mp.scenario, mp.truth, t, x)));
    }
  CHECK(worst < 1e-9);
}

TEST_CASE("refining the grid contracts the manufactured error at order two") {
  const ConvergenceReport rep = convergence_study({48, 96}, 0.5);
  REQUIRE(rep.errors.size() == 2);
  REQUIRE(rep.orders.size() == 1);
  CHECK(rep.errors[0] > rep.errors[1]);
  CHECK(rep.orders[0] > 1.6);
  CHECK(rep.orders[0] < 2.4);
}

TEST_CASE("a small insulated perturbation relaxes at the linearized rate") {
  const StabilityReport rep =
      stability_experiment(48, std::log(2.0) / 128.0, 1e-3);
  CHECK(rep.monotone);
  CHECK(rep.measured_ratio < 1e-3);
  CHECK(rep.measured_ratio ==
        doctest::Approx(rep.expected_ratio).epsilon(0.2));
  for (double me : rep.mean_error) CHECK(me < 1e-8);
}

TEST_CASE("output frames land exactly on the requested times") {
  Scenario sc = find_exact("separated-exponential-diffusivity").scenario;
  SolveOptions opt;
  opt.cells = 24;
  opt.output_times = {sc.t0, 0.37, 0.81, sc.t1};
  const SolveResult r = solve_pde(sc, opt);
  REQUIRE(r.samples.frames() == 4);
  CHECK(r.samples.times[0] == sc.t0);
  CHECK(r.samples.times[1] == 0.37);
  CHECK(r.samples.times[2] == 0.81);
  CHECK(r.samples.times[3] == sc.t1);
}

TEST_CASE("resource guards fail as numerical errors") {
  Scenario sc = find_exact("separated-exponential-diffusivity").scenario;
  SolveOptions opt;
  opt.cells = 16;
  opt.dt = 1e-4;
  opt.max_steps = 3;  // the span needs far more
  CHECK_THROWS_AS(solve_pde(sc, opt), Error);
  try {
    solve_pde(sc, opt);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Numerical);
  }
}

TEST_CASE("frame times are sorted and deduplicated; out-of-range is an error") {
  Scenario sc = find_exact("separated-exponential-diffusivity").scenario;
  SolveOptions opt;
  opt.cells = 16;
  opt.output_times = {0.5, 0.25, 0.5, sc.t1};
  const SolveResult r = solve_pde(sc, opt);
  REQUIRE(r.samples.frames() == 4);  // t0 prepended, duplicate dropped
  CHECK(r.samples.times[0] == sc.t0);
  CHECK(r.samples.times[1] == 0.25);
  CHECK(r.samples.times[2] == 0.5);
  CHECK(r.samples.times[3] == sc.t1);

  opt.output_times = {sc.t0, sc.t1 + 1.0};
  CHECK_THROWS_AS(solve_pde(sc, opt), Error);
  opt.output_times = {sc.t0, sc.t1};
  opt.theta = 1.5;
  CHECK_THROWS_AS(solve_pde(sc, opt), Error);
}
