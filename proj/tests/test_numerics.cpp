#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "plasma/errors.hpp"
#include "plasma/numerics.hpp"

using namespace plasma;

TEST_CASE("tridiagonal solve matches direct elimination on random systems") {
  std::mt19937_64 rng(7101);
  std::uniform_real_distribution<double> off(-1.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 40);
    std::vector<double> lo(n), di(n), up(n), x_true(n), rhs(n);
    for (int i = 0; i < n; ++i) {
      lo[i] = off(rng);
      up[i] = off(rng);
      di[i] = 3.0 + std::abs(off(rng));  // diagonally dominant
      x_true[i] = off(rng);
    }
    for (int i = 0; i < n; ++i) {
      rhs[i] = di[i] * x_true[i];
      if (i > 0) rhs[i] += lo[i] * x_true[i - 1];
      if (i + 1 < n) rhs[i] += up[i] * x_true[i + 1];
    }
    const std::vector<double> x = solve_tridiagonal(lo, di, up, rhs);
    for (int i = 0; i < n; ++i) CHECK(x[i] == doctest::Approx(x_true[i]).epsilon(1e-12));
  }
}

TEST_CASE("cubic spline interpolates smooth data and differentiates it") {
  const int n = 201;
  std::vector<double> xs(n), ys(n);
  for (int i = 0; i < n; ++i) {
    xs[i] = -1.0 + 2.0 * i / (n - 1);
    ys[i] = std::sin(2.0 * xs[i]) + 0.3 * xs[i];
  }
  CubicSpline s(xs, ys);
  for (int i = 0; i < n; ++i) CHECK(s(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-14));
  double worst_v = 0.0, worst_d = 0.0;
  for (int j = 0; j <= 500; ++j) {
    const double x = -0.9 + 1.8 * j / 500.0;
    worst_v = std::max(worst_v, std::abs(s(x) - (std::sin(2 * x) + 0.3 * x)));
    worst_d = std::max(worst_d, std::abs(s.derivative(x) - (2 * std::cos(2 * x) + 0.3)));
  }
  CHECK(worst_v < 1e-8);
  CHECK(worst_d < 1e-5);
  CHECK_THROWS_AS(s(1.5), Error);  // outside the tabulated range
}

TEST_CASE("monotone cubic preserves monotonicity where plain splines overshoot") {
  // step-like data: a natural spline would undershoot below 0 / overshoot 1
  std::vector<double> xs = {0, 1, 2, 3, 4, 5, 6};
  std::vector<double> ys = {0, 0, 0, 0.5, 1, 1, 1};
  MonotoneCubic m(xs, ys);
  double prev = m(0.0);
  for (int j = 1; j <= 600; ++j) {
    const double v = m(6.0 * j / 600.0);
    CHECK(v >= prev - 1e-14);
    CHECK(v >= -1e-14);
    CHECK(v <= 1.0 + 1e-14);
    prev = v;
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    CHECK(m(xs[i]) == doctest::Approx(ys[i]).epsilon(1e-14));
}

TEST_CASE("adaptive Simpson integrates to requested tolerance") {
  auto f1 = [](double x) { return std::exp(-x) * std::sin(5.0 * x); };
  // antiderivative: -e^{-x}(sin 5x + 5 cos 5x)/26
  auto F1 = [](double x) {
    return -std::exp(-x) * (std::sin(5 * x) + 5 * std::cos(5 * x)) / 26.0;
  };
  CHECK(adaptive_simpson(f1, 0.0, 3.0) ==
        doctest::Approx(F1(3.0) - F1(0.0)).epsilon(1e-11));
  CHECK(adaptive_simpson([](double x) { return x * x * x; }, -1.0, 2.0) ==
        doctest::Approx(15.0 / 4.0).epsilon(1e-12));
}

TEST_CASE("scalar root solve handles both bracket orientations") {
  auto f = [](double x) { return std::cos(x); };
  auto df = [](double x) { return -std::sin(x); };
  CHECK(solve_scalar(f, df, 0.0, 3.0) == doctest::Approx(M_PI / 2).epsilon(1e-13));
  auto g = [](double x) { return 2.0 - std::exp(x); };  // decreasing
  CHECK(solve_scalar(g, nullptr, 0.0, 2.0) ==
        doctest::Approx(std::log(2.0)).epsilon(1e-12));
  CHECK_THROWS_AS(solve_scalar(f, df, 2.0, 3.0), Error);  // no sign change
}

TEST_CASE("dense ODE output tracks an exponential to integrator accuracy") {
  auto rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[0];
  };
  OdeSolution sol = integrate_ode_dense(rhs, 0.0, {1.0}, 1.0);
  for (int j = 0; j <= 40; ++j) {
    const double t = j / 40.0;
    CHECK(sol.eval(t, 0) == doctest::Approx(std::exp(t)).epsilon(1e-9));
    CHECK(sol.eval_derivative(t, 0) == doctest::Approx(std::exp(t)).epsilon(1e-7));
  }
  CHECK(!sol.stopped_early());
}

TEST_CASE("ODE integration conserves oscillator energy and runs backward") {
  auto rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  OdeSolution fwd = integrate_ode_dense(rhs, 0.0, {1.0, 0.0}, 20.0, opt);
  const double e_end = fwd.eval(20.0, 0) * fwd.eval(20.0, 0) +
                       fwd.eval(20.0, 1) * fwd.eval(20.0, 1);
  CHECK(e_end == doctest::Approx(1.0).epsilon(1e-9));

  OdeSolution bwd = integrate_ode_dense(rhs, 0.0, {1.0, 0.0}, -M_PI, opt);
  CHECK(bwd.eval(-M_PI, 0) == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("ODE stop predicate halts the trajectory cleanly") {
  auto rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    dy[0] = y[0];
  };
  OdeOptions opt;
  opt.stop = [](double, const std::vector<double>& y) { return y[0] > 2.0; };
  OdeSolution sol = integrate_ode_dense(rhs, 0.0, {1.0}, 5.0, opt);
  CHECK(sol.stopped_early());
  CHECK(sol.t_end() < 5.0);
  CHECK(sol.eval(sol.t_end(), 0) > 2.0);
  CHECK(sol.eval(sol.t_end(), 0) < 2.5);  // stopped near the trigger
}

TEST_CASE("ODE right-hand side throwing a domain error stops with a reason") {
  auto rhs = [](double, const std::vector<double>& y, std::vector<double>& dy) {
    if (y[0] > 2.0) fail_numerical("left the admissible region");
    dy[0] = y[0];
  };
  OdeSolution sol = integrate_ode_dense(rhs, 0.0, {1.0}, 5.0);
  CHECK(sol.stopped_early());
  CHECK(!sol.stop_reason().empty());
  CHECK(sol.t_end() <= std::log(2.0) + 1e-6);
}

TEST_CASE("Lagrange stencil derivative is exact for matching-degree polynomials") {
  std::vector<double> ts = {0.0, 0.3, 0.7, 1.1, 1.6};
  auto p = [](double t) { return ((2 * t - 1) * t + 3) * t * t - 4 * t + 1; };
  auto dp = [](double t) { return ((8 * t - 3) * t + 6) * t - 4; };
  std::vector<double> ys(ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) ys[i] = p(ts[i]);
  for (double t : {0.1, 0.5, 0.9, 1.4})
    CHECK(lagrange_derivative(ts, ys, t) == doctest::Approx(dp(t)).epsilon(1e-12));
}

TEST_CASE("fourth-order central stencils are exact on quartics") {
  auto f = [](double x) { return ((x - 0.3) * x + 2) * x * x - x + 5; };
  auto d1 = [](double x) { return ((4 * x - 0.9) * x + 4) * x - 1; };
  auto d2 = [](double x) { return (12 * x - 1.8) * x + 4; };
  const double h = 0.1, x0 = 0.7;
  CHECK(central_d1_o4(f(x0 - 2 * h), f(x0 - h), f(x0 + h), f(x0 + 2 * h), h) ==
        doctest::Approx(d1(x0)).epsilon(1e-12));
  CHECK(central_d2_o4(f(x0 - 2 * h), f(x0 - h), f(x0), f(x0 + h), f(x0 + 2 * h),
                      h) == doctest::Approx(d2(x0)).epsilon(1e-11));
}
