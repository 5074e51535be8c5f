#pragma once

// Shared fixtures for the classification tests: one scenario per
// recognized case, plus the random equivalence transforms restricted to
// the subgroup that keeps each scenario's coefficient shapes in family.

#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "plasma/classify.hpp"
#include "plasma/equivalence.hpp"
#include "plasma/scenario.hpp"

namespace plasma_tests {

struct RowFixture {
  std::string expect;  // expected primary case name
  plasma::Scenario sc;
};

inline plasma::CoefficientFn generic_state_shape() {
  // strictly positive, genuinely u-dependent, no recognizable closed form
  return plasma::CoefficientFn::tabulate_function(
      [](double u) { return 1.2 + 0.4 * std::sin(u); }, -1.0, 3.0, 257);
}

inline plasma::CoefficientFn generic_source_shape() {
  return plasma::CoefficientFn::tabulate_function(
      [](double t) { return 0.8 + 0.3 * std::cos(t); }, 0.5, 2.5, 257);
}

inline plasma::CoefficientFn generic_diffusivity_shape() {
  return plasma::CoefficientFn::tabulate_function(
      [](double x) { return 1.5 + 0.5 * std::sin(3.0 * x); }, 0.4, 1.6, 257);
}

inline plasma::Scenario row_scenario(plasma::CoefficientFn g,
                                     plasma::CoefficientFn a,
                                     plasma::CoefficientFn w, double xl,
                                     double xr, double t0, double t1) {
  plasma::Scenario sc;
  sc.g = std::move(g);
  sc.a = std::move(a);
  sc.w = std::move(w);
  sc.x_left = xl;
  sc.x_right = xr;
  sc.t0 = t0;
  sc.t1 = t1;
  sc.initial = [](double) { return 1.0; };
  sc.left = plasma::BoundaryCondition::neumann_flux_const(0.0);
  sc.right = plasma::BoundaryCondition::neumann_flux_const(0.0);
  return sc;
}

/// One scenario per recognized case, ordered as the case tables are.
/// Coefficients a case leaves unconstrained are filled with tabulated
/// shapes so that nothing more specific can match.
inline std::vector<RowFixture> classification_fixtures() {
  using plasma::CoefficientFn;
  std::vector<RowFixture> out;
  const CoefficientFn anyA = generic_state_shape();
  const CoefficientFn anyW = generic_source_shape();
  const CoefficientFn anyG = generic_diffusivity_shape();

  // cases valid for arbitrary state dependence
  out.push_back({"any-state/1",
                 row_scenario(CoefficientFn::power(1.0, 3.0), anyA,
                              CoefficientFn::inv_t(), 0.5, 1.5, 1.0, 2.0)});
  out.push_back({"any-state/2",
                 row_scenario(CoefficientFn::exponential(1.0), anyA,
                              CoefficientFn::inv_t(), 0.0, 1.0, 1.0, 2.0)});
  out.push_back({"any-state/3",
                 row_scenario(CoefficientFn::power(1.0, 2.0), anyA, anyW, 0.5,
                              1.5, 1.0, 2.0)});
  out.push_back({"any-state/4",
                 row_scenario(CoefficientFn::constant(1.0), anyA, anyW, 0.0,
                              1.0, 1.0, 2.0)});
  out.push_back({"any-state/5",
                 row_scenario(CoefficientFn::constant(1.0), anyA,
                              CoefficientFn::inv_t(), 0.0, 1.0, 1.0, 2.0)});

  // cases for exponential state dependence
  out.push_back({"exp-state/1",
                 row_scenario(CoefficientFn::power(1.0, 1.3),
                              CoefficientFn::exp_u(),
                              CoefficientFn::exp_t(1.0), 0.5, 1.5, 0.0, 1.0)});
  out.push_back({"exp-state/3",
                 row_scenario(CoefficientFn::constant(2.0),
                              CoefficientFn::exp_u(),
                              CoefficientFn::exp_t(1.0), 0.0, 1.0, 0.0, 1.0)});

  // cases for power-law state dependence
  out.push_back({"power-state/1",
                 row_scenario(anyG, CoefficientFn::monomial(2.0),
                              CoefficientFn::power_t(-1.5), 0.5, 1.5, 1.0,
                              2.0)});
  out.push_back({"power-state/2",
                 row_scenario(CoefficientFn::power(1.2, 1.5),
                              CoefficientFn::monomial(1.5),
                              CoefficientFn::power_t(0.7), 0.5, 1.5, 1.0,
                              2.0)});
  out.push_back({"power-state/3",
                 row_scenario(CoefficientFn::power(1.0, 1.5),
                              CoefficientFn::monomial(2.0),
                              CoefficientFn::exp_t(0.5), 0.5, 1.5, 0.0, 1.0)});
  out.push_back({"power-state/4",
                 row_scenario(CoefficientFn::exponential(1.0),
                              CoefficientFn::monomial(2.0),
                              CoefficientFn::power_t(0.8), 0.0, 1.0, 1.0,
                              2.0)});
  out.push_back({"power-state/5",
                 row_scenario(CoefficientFn::exponential(0.9),
                              CoefficientFn::monomial(1.2),
                              CoefficientFn::exp_t(0.7), 0.0, 1.0, 0.0, 1.0)});
  out.push_back({"power-state/6",
                 row_scenario(CoefficientFn::power(1.0, 2.0),
                              CoefficientFn::monomial(2.0),
                              CoefficientFn::power_t(-1.5), 0.5, 1.5, 1.0,
                              2.0)});
  out.push_back({"power-state/7",
                 row_scenario(CoefficientFn::constant(1.5),
                              CoefficientFn::monomial(2.0),
                              CoefficientFn::power_t(0.5), 0.0, 1.0, 1.0,
                              2.0)});
  out.push_back({"power-state/8",
                 row_scenario(CoefficientFn::constant(1.0),
                              CoefficientFn::monomial(3.0),
                              CoefficientFn::exp_t(1.0), 0.0, 1.0, 0.0,
                              1.0)});
  return out;
}

/// Random transform drawn from the subgroup under which every coefficient
/// shape of `sc` maps onto the same shape family: shifts are dropped or
/// scales pinned exactly where the shape demands it. Scales are positive
/// so boxes keep their orientation.
inline plasma::EquivTransform restricted_transform(const plasma::Scenario& sc,
                                                   std::mt19937_64& rng) {
  std::uniform_real_distribution<double> shift(-0.4, 0.4);
  std::uniform_real_distribution<double> lscale(std::log(0.6), std::log(1.5));
  plasma::EquivTransform T;
  T.e1 = shift(rng);
  T.e2 = shift(rng);
  T.e3 = shift(rng);
  T.e4 = std::exp(lscale(rng));
  T.e5 = std::exp(lscale(rng));
  T.e6 = std::exp(lscale(rng));
  T.e7 = std::exp(lscale(rng));

  using plasma::CoefKind;
  switch (sc.g.kind()) {
    case CoefKind::Power:
      T.e2 = 0.0;
      break;
    case CoefKind::Exponential:
      T.e5 = 1.0;
      break;
    default:
      break;  // constant and tabulated close under everything
  }
  switch (sc.a.kind()) {
    case CoefKind::Monomial:
      T.e3 = 0.0;
      break;
    case CoefKind::ExpU:
      T.e6 = 1.0;
      break;
    default:
      break;  // shifted pole and tabulated close under everything
  }
  switch (sc.w.kind()) {
    case CoefKind::PowerT:
    case CoefKind::InvT:
      T.e1 = 0.0;
      break;
    case CoefKind::ExpT:
      T.e4 = 1.0;
      break;
    default:
      break;
  }
  return T;
}

}  // namespace plasma_tests
