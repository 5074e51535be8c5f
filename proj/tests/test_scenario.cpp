#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "plasma/errors.hpp"
#include "plasma/scenario.hpp"

using namespace plasma;
using nlohmann::json;

namespace {

json base_json() {
  return json::parse(R"({
    "g": {"kind": "constant", "c": 1.0},
    "a": {"kind": "exp_u"},
    "w": {"kind": "constant", "c": 0.5},
    "box": {"x_left": 0.0, "x_right": 1.0, "t0": 0.0, "t1": 1.0},
    "initial": {"kind": "uniform", "value": 0.25},
    "left": {"kind": "neumann", "flux": 0.0},
    "right": {"kind": "neumann", "flux": 0.0}
  })");
}

ErrorKind kind_of_failure(const json& j) {
  try {
    scenario_from_json(j);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected the scenario to be rejected");
  return ErrorKind::Config;
}

}  // namespace

TEST_CASE("a well-posed description parses and validates") {
  const Scenario sc = scenario_from_json(base_json());
  CHECK(sc.g.kind() == CoefKind::Constant);
  CHECK(sc.a.kind() == CoefKind::ExpU);
  CHECK(sc.x_right == doctest::Approx(1.0));
  CHECK(sc.initial(0.5) == doctest::Approx(0.25));
  CHECK(sc.left.kind == BoundaryCondition::Kind::NeumannFlux);
  CHECK(sc.left.value(0.3) == doctest::Approx(0.0));
  sc.validate();  // must not throw
}

TEST_CASE("every profile shape evaluates to its closed form") {
  json j = base_json();

  j["initial"] = {{"kind", "linear"}, {"left", 1.0}, {"right", 3.0}};
  CHECK(scenario_from_json(j).initial(0.25) == doctest::Approx(1.5));

  // "periods" counts half-waves of the cosine across the interval
  j["initial"] = {{"kind", "cosine"},
                  {"mean", 2.0},
                  {"amplitude", 0.5},
                  {"periods", 1.0}};
  Scenario sc = scenario_from_json(j);
  CHECK(sc.initial(0.0) == doctest::Approx(2.5));
  CHECK(sc.initial(0.5) == doctest::Approx(2.0));
  CHECK(sc.initial(1.0) == doctest::Approx(1.5));

  j["initial"]["periods"] = 2.0;
  sc = scenario_from_json(j);
  CHECK(sc.initial(0.5) == doctest::Approx(1.5));
  CHECK(sc.initial(1.0) == doctest::Approx(2.5));

  j["initial"] = {{"kind", "gaussian"},
                  {"base", 1.0},
                  {"amplitude", 0.25},
                  {"center", 0.5},
                  {"width", 0.1}};
  sc = scenario_from_json(j);
  CHECK(sc.initial(0.5) == doctest::Approx(1.25));
  CHECK(sc.initial(0.5 + 0.1) ==
        doctest::Approx(1.0 + 0.25 * std::exp(-1.0)));

  j["initial"] = {{"kind", "coefficient"},
                  {"fn", {{"kind", "power"}, {"g", 2.0}, {"k", 2.0}}}};
  sc = scenario_from_json(j);
  CHECK(sc.initial(0.5) == doctest::Approx(0.5));
}

TEST_CASE("boundary blocks accept constants and time profiles") {
  json j = base_json();
  j["left"] = {{"kind", "dirichlet"}, {"value", 2.0}};
  j["right"] = {{"kind", "dirichlet"},
                {"profile",
                 {{"kind", "coefficient"},
                  {"fn", {{"kind", "exp_t"}, {"w", 3.0}}}}}};
  const Scenario sc = scenario_from_json(j);
  CHECK(sc.left.kind == BoundaryCondition::Kind::Dirichlet);
  CHECK(sc.left.value(0.7) == doctest::Approx(2.0));
  CHECK(sc.right.value(0.5) == doctest::Approx(3.0 * std::exp(0.5)));

  j["right"] = {{"kind", "neumann"},
                {"profile",
                 {{"kind", "coefficient"},
                  {"fn", {{"kind", "power_t"}, {"n", 2.0}}}}}};
  CHECK(scenario_from_json(j).right.value(2.0) == doctest::Approx(4.0));
}

TEST_CASE("ill-posed descriptions are rejected as configuration errors") {
  json j = base_json();

  SUBCASE("diffusion profile not strictly positive") {
    j["g"] = {{"kind", "power"}, {"g", 1.0}, {"k", 1.0}};  // vanishes at x=0
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("time window touches the 1/t singularity") {
    j["w"] = {{"kind", "inv_t"}};
    j["box"]["t0"] = 0.0;
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("initial state sits on the pole of the state coefficient") {
    j["a"] = {{"kind", "shifted_inv_square"}, {"u_inf", 0.25}};
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("fractional-power state coefficient with negative state") {
    j["a"] = {{"kind", "monomial"}, {"m", 0.5}};
    j["initial"] = {{"kind", "uniform"}, {"value", -1.0}};
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("empty box") {
    j["box"]["x_right"] = 0.0;
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("reversed time window") {
    j["box"]["t1"] = -1.0;
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("missing coefficient block") {
    j.erase("a");
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("unknown profile kind") {
    j["initial"] = {{"kind", "sawtooth"}, {"value", 1.0}};
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("unknown boundary kind") {
    j["left"] = {{"kind", "robin"}, {"value", 1.0}};
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
  SUBCASE("unknown coefficient kind") {
    j["w"] = {{"kind", "sinusoid"}, {"c", 1.0}};
    CHECK(kind_of_failure(j) == ErrorKind::Config);
  }
}

TEST_CASE("the descriptive dump mirrors the parsed geometry") {
  const Scenario sc = scenario_from_json(base_json());
  const json out = sc.to_json();
  CHECK(out.at("x_left").get<double>() == doctest::Approx(0.0));
  CHECK(out.at("x_right").get<double>() == doctest::Approx(1.0));
  CHECK(out.at("t1").get<double>() == doctest::Approx(1.0));
  CHECK(out.at("G").at("kind").get<std::string>() == "constant");
  CHECK(out.at("A").at("kind").get<std::string>() == "exp_u");
  CHECK(out.at("W").at("kind").get<std::string>() == "constant");
}
