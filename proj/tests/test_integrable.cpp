#include <doctest.h>

#include <cmath>
#include <vector>

#include "plasma/errors.hpp"
#include "plasma/integrable.hpp"

using namespace plasma;

TEST_CASE("field and face potential are exact inverses") {
  const Grid g(0.25, 1.75, 24);
  std::vector<double> u(24);
  for (int i = 0; i < 24; ++i) u[i] = 0.7 + 0.3 * std::sin(5.0 * g.center(i));
  const std::vector<double> phi = field_to_face_potential(g, u, 0.4);
  REQUIRE(phi.size() == 25);
  CHECK(phi.front() == doctest::Approx(0.4));
  const std::vector<double> back = face_potential_to_field(g, phi);
  REQUIRE(back.size() == 24);
  for (int i = 0; i < 24; ++i)
    CHECK(back[i] == doctest::Approx(u[i]).epsilon(1e-14));
}

TEST_CASE("constant initial data stays constant under heat propagation") {
  // x0 = 2: theta solves the heat equation with a pure exponential shape,
  // and x = -2 theta_phi / theta must stay exactly 2
  HeatSolution hs([](double) { return 2.0; }, -3.0, 3.0, 129);
  for (double t : {0.01, 0.1, 0.5}) {
    for (double phi : {-1.5, 0.0, 2.0}) {
      CHECK(hs.x(phi, t) == doctest::Approx(2.0).epsilon(1e-9));
      CHECK(hs.x_phi(phi, t) == doctest::Approx(0.0).scale(1.0));
    }
  }
}

TEST_CASE("a linear hodograph image contracts as the exact rarefaction") {
  // x0 = alpha phi solves x_t + x x_phi = x_phi_phi with
  // x = alpha phi / (1 + alpha t)
  const double alpha = 0.5;
  HeatSolution hs([alpha](double phi) { return alpha * phi; }, -8.0, 8.0, 513);
  for (double t : {0.05, 0.2, 0.4}) {
    for (double phi : {-1.0, -0.3, 0.4, 1.2}) {
      CHECK(hs.x(phi, t) ==
            doctest::Approx(alpha * phi / (1.0 + alpha * t)).epsilon(1e-6));
    }
  }
}

TEST_CASE("the travelling kink is reproduced from its initial trace") {
  CHECK(kink_max_error(1.0, 4001) < 1e-6);
}

TEST_CASE("below the kernel floor the initial data is returned directly") {
  HeatSolution hs([](double phi) { return 1.0 + 0.1 * std::tanh(phi); }, -4.0,
                  4.0, 257);
  CHECK(hs.t_floor() > 0.0);
  const double t_tiny = 0.5 * hs.t_floor();
  for (double phi : {-2.0, 0.0, 1.5})
    CHECK(hs.x(phi, t_tiny) ==
          doctest::Approx(hs.initial_x0(phi)).epsilon(1e-9));
  // continuation beyond the window is flat
  CHECK(hs.initial_x0(10.0) == doctest::Approx(1.0 + 0.1 * std::tanh(4.0)));
  CHECK(hs.initial_x0(-10.0) == doctest::Approx(1.0 - 0.1 * std::tanh(4.0)));
}

TEST_CASE("the inverse map and state read-out are consistent") {
  // monotone increasing x0 so phi_at is well defined
  HeatSolution hs([](double phi) { return 2.0 + 0.5 * std::tanh(phi); }, -6.0,
                  6.0, 513);
  const double t = 0.15;
  for (double phi : {-1.0, 0.2, 1.4}) {
    const double x = hs.x(phi, t);
    CHECK(hs.phi_at(x, t) == doctest::Approx(phi).epsilon(1e-8));
    CHECK(hs.u_at(x, t) ==
          doctest::Approx(1.0 / hs.x_phi(phi, t)).epsilon(1e-8));
  }
}

TEST_CASE("bad construction arguments are configuration errors") {
  CHECK_THROWS_AS(HeatSolution([](double) { return 1.0; }, -1.0, 1.0, 8),
                  Error);
  CHECK_THROWS_AS(HeatSolution([](double) { return 1.0; }, -1.0, 1.0, 128),
                  Error);  // even count
  CHECK_THROWS_AS(HeatSolution([](double) { return 1.0; }, 1.0, -1.0, 129),
                  Error);  // reversed window
}

TEST_CASE("the transform chain matches a small direct solve") {
  const RoundtripReport rep = integrable_roundtrip(96, 0.25, 3.0);
  CHECK(rep.cells == 96);
  REQUIRE(rep.centers.size() == 96);
  REQUIRE(rep.u_direct.size() == 96);
  REQUIRE(rep.u_chain.size() == 96);
  CHECK(rep.max_error < 5e-3);
  // the shifted replay is the identical discrete problem, so it agrees to
  // Newton tolerance, not discretization accuracy
  CHECK(rep.shifted_max_error < 1e-9);
}
