#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "plasma/coefficient.hpp"
#include "plasma/errors.hpp"

using namespace plasma;

namespace {

// Central finite differences used as an independent check of the closed-form
// calculus each shape carries.
double fd_derivative(const CoefficientFn& f, double z, double h) {
  return (f.evaluate(z + h) - f.evaluate(z - h)) / (2.0 * h);
}

double fd_antiderivative_slope(const CoefficientFn& f, double z, double ref,
                               double h) {
  return (f.antiderivative(z + h, ref) - f.antiderivative(z - h, ref)) /
         (2.0 * h);
}

void check_calculus(const CoefficientFn& f, const std::vector<double>& pts,
                    double ref, double tol = 2e-7) {
  for (double z : pts) {
    CHECK(fd_derivative(f, z, 1e-5) ==
          doctest::Approx(f.differentiate(z)).epsilon(tol).scale(
              std::max(1.0, std::abs(f.differentiate(z)))));
    CHECK(fd_antiderivative_slope(f, z, ref, 1e-5) ==
          doctest::Approx(f.evaluate(z)).epsilon(tol).scale(
              std::max(1.0, std::abs(f.evaluate(z)))));
  }
  CHECK(f.antiderivative(ref, ref) == doctest::Approx(0.0));
}

void check_json_roundtrip(const CoefficientFn& f,
                          const std::vector<double>& pts) {
  const CoefficientFn g = CoefficientFn::from_json(f.to_json());
  CHECK(g.kind() == f.kind());
  for (double z : pts)
    CHECK(g.evaluate(z) == doctest::Approx(f.evaluate(z)).epsilon(1e-14));
}

}  // namespace

TEST_CASE("closed-form calculus agrees with finite differences per shape") {
  const std::vector<double> pos = {0.3, 0.75, 1.2, 2.4};
  const std::vector<double> any = {-1.5, -0.2, 0.4, 1.7};
  check_calculus(CoefficientFn::constant(2.5), any, 0.0);
  check_calculus(CoefficientFn::power(1.4, 2.3), pos, 0.5);
  check_calculus(CoefficientFn::exponential(0.8), any, 0.0);
  check_calculus(CoefficientFn::monomial(1.7), pos, 0.5);
  check_calculus(CoefficientFn::exp_u(), any, 0.0);
  check_calculus(CoefficientFn::power_t(-1.5), pos, 1.0);
  check_calculus(CoefficientFn::exp_t(0.6), any, 0.0);
  check_calculus(CoefficientFn::inv_t(), pos, 1.0);
  check_calculus(CoefficientFn::shifted_inv_square(3.0), any, 0.0);
  check_calculus(CoefficientFn::monomial(2.0).scaled(1.3), pos, 0.5);
}

TEST_CASE("reciprocal antiderivative differentiates to 1/f") {
  for (const CoefficientFn& f :
       {CoefficientFn::power(2.0, 1.5), CoefficientFn::exponential(1.2),
        CoefficientFn::constant(4.0), CoefficientFn::power(1.0, 2.0)}) {
    for (double z : {0.6, 1.0, 1.8}) {
      const double h = 1e-5;
      const double slope =
          (f.reciprocal_antiderivative(z + h, 0.5) -
           f.reciprocal_antiderivative(z - h, 0.5)) /
          (2.0 * h);
      CHECK(slope == doctest::Approx(1.0 / f.evaluate(z)).epsilon(1e-7));
    }
    CHECK(f.reciprocal_antiderivative(0.5, 0.5) == doctest::Approx(0.0));
  }
}

TEST_CASE("scaled() multiplies values, derivatives and integrals uniformly") {
  const CoefficientFn f = CoefficientFn::power(1.5, 2.0);
  const CoefficientFn g = f.scaled(-0.7);
  for (double z : {0.4, 1.1, 2.2}) {
    CHECK(g.evaluate(z) == doctest::Approx(-0.7 * f.evaluate(z)));
    CHECK(g.differentiate(z) == doctest::Approx(-0.7 * f.differentiate(z)));
    CHECK(g.antiderivative(z, 1.0) ==
          doctest::Approx(-0.7 * f.antiderivative(z, 1.0)));
  }
  CHECK(g.kind() == CoefKind::Power);
  CHECK_THROWS_AS(f.scaled(0.0), Error);
}

TEST_CASE("JSON serialization round-trips every shape") {
  std::vector<double> xs, fs;
  for (int i = 0; i <= 32; ++i) {
    xs.push_back(i / 32.0);
    fs.push_back(1.0 + std::sin(xs.back()));
  }
  const std::vector<double> pos = {0.3, 0.8, 1.9};
  check_json_roundtrip(CoefficientFn::constant(3.25), {-1.0, 0.0, 2.0});
  check_json_roundtrip(CoefficientFn::power(2.0, -0.5), pos);
  check_json_roundtrip(CoefficientFn::exponential(1.1), {-1.0, 0.0, 2.0});
  check_json_roundtrip(CoefficientFn::monomial(2.5), pos);
  check_json_roundtrip(CoefficientFn::exp_u(), {-1.0, 0.0, 2.0});
  check_json_roundtrip(CoefficientFn::power_t(-2.0), pos);
  check_json_roundtrip(CoefficientFn::exp_t(0.4), {-1.0, 0.0, 2.0});
  check_json_roundtrip(CoefficientFn::inv_t(), pos);
  check_json_roundtrip(CoefficientFn::shifted_inv_square(2.0), {0.0, 0.5, 1.0});
  check_json_roundtrip(CoefficientFn::tabulated(xs, fs), {0.1, 0.5, 0.9});
  check_json_roundtrip(CoefficientFn::power(2.0, 3.0).scaled(0.5), pos);
}

TEST_CASE("domain violations raise config errors instead of clamping") {
  CHECK_THROWS_AS(CoefficientFn::monomial(0.5).evaluate(-1.0), Error);
  CHECK_THROWS_AS(CoefficientFn::power(1.0, -1.0).evaluate(0.0), Error);
  CHECK_THROWS_AS(CoefficientFn::inv_t().evaluate(0.0), Error);
  CHECK_THROWS_AS(CoefficientFn::shifted_inv_square(1.0).evaluate(1.0), Error);
  std::vector<double> xs = {0.0, 1.0, 2.0}, fs = {1.0, 2.0, 1.0};
  CHECK_THROWS_AS(CoefficientFn::tabulated(xs, fs).evaluate(2.5), Error);
  try {
    CoefficientFn::monomial(0.5).evaluate(-1.0);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
  }
}

TEST_CASE("varying/constant predicate reflects actual argument dependence") {
  CHECK(!CoefficientFn::constant(5.0).is_varying());
  CHECK(!CoefficientFn::power(2.0, 0.0).is_varying());   // x^0
  CHECK(!CoefficientFn::monomial(0.0).is_varying());     // u^0
  CHECK(!CoefficientFn::power_t(0.0).is_varying());      // t^0
  CHECK(CoefficientFn::power(2.0, 1.0).is_varying());
  CHECK(CoefficientFn::exp_u().is_varying());
  CHECK(CoefficientFn::inv_t().is_varying());
  CHECK(CoefficientFn::shifted_inv_square(1.0).is_varying());
}

TEST_CASE("tabulating a function reproduces it to spline accuracy") {
  auto f = [](double x) { return 1.0 / (1.0 + x * x); };
  const CoefficientFn t = CoefficientFn::tabulate_function(f, -2.0, 2.0, 512);
  CHECK(t.kind() == CoefKind::Tabulated);
  double worst = 0.0;
  for (int j = 0; j <= 200; ++j) {
    const double x = -1.9 + 3.8 * j / 200.0;
    worst = std::max(worst, std::abs(t.evaluate(x) - f(x)));
  }
  CHECK(worst < 1e-8);
  // its calculus is backed by the spline, so stays consistent with itself
  check_calculus(t, {-1.5, 0.0, 1.5}, 0.0, 1e-6);
}
