#include <doctest.h>

#include <cmath>

#include "plasma/errors.hpp"
#include "plasma/exact.hpp"
#include "plasma/residual.hpp"

using namespace plasma;

TEST_CASE("every catalog entry solves its own equation to rounding level") {
  const auto entries = exact_catalog();
  REQUIRE(entries.size() == 7);
  for (const auto& e : entries) {
    CHECK_MESSAGE(max_field_residual(e, 24, 24) < 1e-10, e.name);
  }
}

TEST_CASE("catalog scenarios validate and trace the field on their edges") {
  for (const auto& e : exact_catalog()) {
    CAPTURE(e.name);
    e.scenario.validate();
    // initial state is the field at t0
    for (int i = 0; i <= 10; ++i) {
      const double x =
          e.scenario.x_left + (e.scenario.x_right - e.scenario.x_left) * i / 10.0;
      CHECK(e.scenario.initial(x) ==
            doctest::Approx(e.field.u(e.scenario.t0, x)).epsilon(1e-12));
    }
    // boundary data traces the field (value or physical flux)
    for (int k = 0; k <= 10; ++k) {
      const double t =
          e.scenario.t0 + (e.scenario.t1 - e.scenario.t0) * k / 10.0;
      for (const auto& [bc, x] :
           {std::pair{&e.scenario.left, e.scenario.x_left},
            std::pair{&e.scenario.right, e.scenario.x_right}}) {
        const double got = bc->value(t);
        if (bc->kind == BoundaryCondition::Kind::Dirichlet) {
          CHECK(got == doctest::Approx(e.field.u(t, x)).epsilon(1e-10));
        } else {
          const double flux = e.scenario.g.evaluate(x) *
                              e.scenario.a.evaluate(e.field.u(t, x)) *
                              e.field.ux(t, x);
          CHECK(got == doctest::Approx(flux).epsilon(1e-10).scale(1.0));
        }
      }
    }
  }
}

TEST_CASE("analytic derivatives are consistent with finite differences") {
  for (const auto& e : exact_catalog()) {
    CAPTURE(e.name);
    const double t = 0.5 * (e.scenario.t0 + e.scenario.t1);
    const double x = 0.5 * (e.scenario.x_left + e.scenario.x_right);
    const double ht = 1e-5 * (e.scenario.t1 - e.scenario.t0);
    const double hx = 1e-5 * (e.scenario.x_right - e.scenario.x_left);
    CHECK(e.field.ut(t, x) ==
          doctest::Approx((e.field.u(t + ht, x) - e.field.u(t - ht, x)) /
                          (2 * ht))
              .epsilon(1e-6));
    CHECK(e.field.ux(t, x) ==
          doctest::Approx((e.field.u(t, x + hx) - e.field.u(t, x - hx)) /
                          (2 * hx))
              .epsilon(1e-6));
    CHECK(e.field.uxx(t, x) ==
          doctest::Approx((e.field.ux(t, x + hx) - e.field.ux(t, x - hx)) /
                          (2 * hx))
              .epsilon(1e-6));
  }
}

TEST_CASE("the space-independent state gains exactly the integrated source") {
  const ExactSolution e = find_exact("uniform-exp-source");
  const double y0 = e.field.u(e.scenario.t0, 0.5);
  for (double t : {0.25, 0.6, 1.0}) {
    const double gain = e.scenario.w.antiderivative(t, e.scenario.t0);
    CHECK(e.field.u(t, 0.7) == doctest::Approx(y0 + gain).epsilon(1e-13));
    CHECK(e.field.ux(t, 0.7) == doctest::Approx(0.0));
  }
}

TEST_CASE("the self-similar focusing profile hits its normalization") {
  const ExactSolution e = find_exact("focusing-m1");
  // u = t f(x t) with f(1) = 1/(e - 1) for unit constants
  const double f1 = e.field.u(1.0, 1.0) / 1.0;
  CHECK(f1 == doctest::Approx(1.0 / (std::exp(1.0) - 1.0)).epsilon(1e-12));
}

TEST_CASE("the plateau-approach entry is stored in its reflected variables") {
  const ExactSolution e = find_exact("focusing-uinf");
  // field is v = u_inf - u, governed by A = 1/v with the source negated
  CHECK(e.scenario.a.kind() == CoefKind::Monomial);
  CHECK(e.scenario.a.param1() == doctest::Approx(-1.0));
  CHECK(e.scenario.w.is_constant());
  CHECK(e.scenario.w.evaluate(0.7) == doctest::Approx(-1.0));
  CHECK(e.params.contains("u_inf"));
  // v stays strictly positive, i.e. the plateau state stays below u_inf
  for (int k = 0; k <= 6; ++k)
    for (int i = 0; i <= 6; ++i) {
      const double t = e.scenario.t0 + (e.scenario.t1 - e.scenario.t0) * k / 6.0;
      const double x =
          e.scenario.x_left + (e.scenario.x_right - e.scenario.x_left) * i / 6.0;
      CHECK(e.field.u(t, x) > 0.0);
    }
}

TEST_CASE("unknown catalog names are configuration errors") {
  CHECK_THROWS_AS(find_exact("no-such-solution"), Error);
  try {
    find_exact("no-such-solution");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Config);
    CHECK(std::string(e.what()).find("available") != std::string::npos);
  }
}
