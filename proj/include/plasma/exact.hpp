#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plasma/residual.hpp"
#include "plasma/scenario.hpp"

namespace plasma {

/// A closed-form solution paired with the problem it solves. The
/// scenario's initial state and boundary data are traces of the field,
/// so the pair can seed numerical runs directly.
struct ExactSolution {
  std::string name;
  Scenario scenario;
  AnalyticFn field;
  nlohmann::json params;
};

/// u = y0 + integral of W: space-independent state driven by the source.
ExactSolution make_uniform(CoefficientFn g, CoefficientFn a, CoefficientFn w,
                           double y0, double xl, double xr, double t0,
                           double t1);

/// For exponential state dependence A = e^u and any G, W:
/// u = IW(t) + log(R(x) + c4) + c3 with R the antiderivative of 1/G.
/// The flux G A u_x is uniform in x, so the divergence term vanishes.
ExactSolution make_separated_exp(CoefficientFn g, CoefficientFn w, double c3,
                                 double c4, double xl, double xr, double t0,
                                 double t1);

/// For A = e^u and any G, W: u = -log P(t) + log F(x) + IW(t) where
/// (G F')' = -1 (so F' = (c1 - (x - xl))/G) and P' = e^{IW}, P(t0) = p0.
/// Invariant under the scaling companion of the exponential-state flows.
ExactSolution make_scaling_separated(CoefficientFn g, CoefficientFn w,
                                     double c1, double c2, double p0,
                                     double xl, double xr, double t0,
                                     double t1);

/// For G = x^2, A = 1/u, W = 1: the self-similar state u = t f(xt) with
/// f = psi / (c6 e^psi - 1), psi = c5/phi. With c5 = c6 = 1,
/// f(1) = 1/(e - 1).
ExactSolution make_focusing_m1(double c5, double c6, double xl, double xr,
                               double t0, double t1);

/// For G = x^2, A = 1/v, W = -1: v = t f(xt) with f = 1/h(psi),
/// h = -1 + psi e^{-psi} Ei(psi) + (c5/c6) psi e^{-psi}, psi = c6/phi.
/// This is the image under v = u_inf - u of a state approaching the
/// plateau u_inf; the entry evaluates v against its own equation and
/// records u_inf for the reflection.
ExactSolution make_focusing_uinf(double c5, double c6, double u_inf,
                                 double xl, double xr, double t0, double t1);

/// The built-in verified instances spanning the coefficient shapes.
std::vector<ExactSolution> exact_catalog();

/// Catalog entry by name; config error when absent.
ExactSolution find_exact(const std::string& name);

/// Max |pde residual| of the field over an (nt x nx) sample of the box.
double max_field_residual(const ExactSolution& e, int nt, int nx);

}  // namespace plasma
