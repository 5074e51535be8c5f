#include "plasma/exact.hpp"

#include <cmath>

#include "plasma/errors.hpp"
#include "plasma/numerics.hpp"
#include "plasma/special.hpp"

namespace plasma {

namespace {

/// Builds the scenario around a field: initial state and boundary data
/// are traces of the field itself.
Scenario scenario_around(std::string name, CoefficientFn g, CoefficientFn a,
                         CoefficientFn w, const AnalyticFn& field, double xl,
                         double xr, double t0, double t1) {
  Scenario sc;
  sc.name = std::move(name);
  sc.g = std::move(g);
  sc.a = std::move(a);
  sc.w = std::move(w);
  sc.x_left = xl;
  sc.x_right = xr;
  sc.t0 = t0;
  sc.t1 = t1;
  auto u = field.u;
  sc.initial = [u, t0](double x) { return u(t0, x); };
  sc.left = BoundaryCondition::dirichlet([u, xl](double t) { return u(t, xl); });
  sc.right =
      BoundaryCondition::dirichlet([u, xr](double t) { return u(t, xr); });
  sc.validate();
  return sc;
}

void check_finite_on_box(const AnalyticFn& f, double xl, double xr, double t0,
                         double t1, const char* who) {
  for (int k = 0; k <= 16; ++k)
    for (int i = 0; i <= 16; ++i) {
      const double t = t0 + (t1 - t0) * k / 16.0;
      const double x = xl + (xr - xl) * i / 16.0;
      const double v = f.u(t, x);
      if (!std::isfinite(v))
        fail_config(std::string(who) +
                    ": field is not finite on the requested box");
    }
}

}  // namespace

ExactSolution make_uniform(CoefficientFn g, CoefficientFn a, CoefficientFn w,
                           double y0, double xl, double xr, double t0,
                           double t1) {
  AnalyticFn f;
  CoefficientFn wc = w;
  f.u = [wc, y0, t0](double t, double) {
    return y0 + wc.antiderivative(t, t0);
  };
  f.ut = [wc](double t, double) { return wc.evaluate(t); };
  f.ux = [](double, double) { return 0.0; };
  f.uxx = [](double, double) { return 0.0; };
  ExactSolution e;
  e.name = "uniform";
  e.params = {{"y0", y0}};
  e.field = f;
  e.scenario = scenario_around(e.name, std::move(g), std::move(a),
                               std::move(w), f, xl, xr, t0, t1);
  return e;
}

ExactSolution make_separated_exp(CoefficientFn g, CoefficientFn w, double c3,
                                 double c4, double xl, double xr, double t0,
                                 double t1) {
  require_config(c4 > 0.0,
                 "separated-exp state: need c4 > 0 so the log argument "
                 "stays positive (R(xl) = 0)");
  CoefficientFn gc = g, wc = w;
  AnalyticFn f;
  f.u = [gc, wc, c3, c4, xl, t0](double t, double x) {
    return wc.antiderivative(t, t0) +
           std::log(gc.reciprocal_antiderivative(x, xl) + c4) + c3;
  };
  f.ut = [wc](double t, double) { return wc.evaluate(t); };
  f.ux = [gc, c4, xl](double, double x) {
    return 1.0 / (gc.evaluate(x) *
                  (gc.reciprocal_antiderivative(x, xl) + c4));
  };
  f.uxx = [gc, c4, xl](double, double x) {
    const double G = gc.evaluate(x);
    const double Gp = gc.differentiate(x);
    const double q = gc.reciprocal_antiderivative(x, xl) + c4;
    return -(Gp * q + 1.0) / (G * G * q * q);
  };
  ExactSolution e;
  e.name = "separated-exp";
  e.params = {{"c3", c3}, {"c4", c4}};
  e.field = f;
  e.scenario = scenario_around(e.name, std::move(g), CoefficientFn::exp_u(),
                               std::move(w), f, xl, xr, t0, t1);
  return e;
}

ExactSolution make_scaling_separated(CoefficientFn g, CoefficientFn w,
                                     double c1, double c2, double p0,
                                     double xl, double xr, double t0,
                                     double t1) {
  require_config(p0 > 0.0, "scaling-separated state: need p0 > 0");
  CoefficientFn gc = g, wc = w;
  auto Fp = [gc, c1, xl](double x) {
    return (c1 - (x - xl)) / gc.evaluate(x);
  };
  auto F = [Fp, c2, xl](double x) {
    return c2 + adaptive_simpson(Fp, xl, x, 1e-13);
  };
  auto P = [wc, p0, t0](double t) {
    return p0 + adaptive_simpson(
                    [wc, t0](double s) {
                      return std::exp(wc.antiderivative(s, t0));
                    },
                    t0, t, 1e-13);
  };
  for (int i = 0; i <= 64; ++i) {
    const double x = xl + (xr - xl) * i / 64.0;
    require_config(F(x) > 0.0,
                   "scaling-separated state: F changes sign on the box; "
                   "adjust c1/c2");
  }

  AnalyticFn f;
  f.u = [F, P, wc, t0](double t, double x) {
    return -std::log(P(t)) + std::log(F(x)) + wc.antiderivative(t, t0);
  };
  f.ut = [P, wc, t0](double t, double) {
    return -std::exp(wc.antiderivative(t, t0)) / P(t) + wc.evaluate(t);
  };
  f.ux = [F, Fp](double, double x) { return Fp(x) / F(x); };
  f.uxx = [F, Fp, gc](double, double x) {
    const double Fv = F(x), Fpv = Fp(x);
    const double Fpp = (-1.0 - Fpv * gc.differentiate(x)) / gc.evaluate(x);
    return Fpp / Fv - (Fpv / Fv) * (Fpv / Fv);
  };
  ExactSolution e;
  e.name = "scaling-separated";
  e.params = {{"c1", c1}, {"c2", c2}, {"p0", p0}};
  e.field = f;
  e.scenario = scenario_around(e.name, std::move(g), CoefficientFn::exp_u(),
                               std::move(w), f, xl, xr, t0, t1);
  return e;
}

ExactSolution make_focusing_m1(double c5, double c6, double xl, double xr,
                               double t0, double t1) {
  require_config(c5 > 0.0 && c6 > 0.0,
                 "focusing state (1/u): need c5, c6 > 0");
  require_config(xl > 0.0 && t0 > 0.0,
                 "focusing state (1/u): box must have x > 0 and t > 0");
  // f(phi) = psi / (c6 e^psi - 1) with psi = c5/phi.
  auto fv = [c5, c6](double phi) {
    const double psi = c5 / phi;
    return psi / (c6 * std::exp(psi) - 1.0);
  };
  auto fp = [c5, c6](double phi) {
    const double psi = c5 / phi;
    const double E = c6 * std::exp(psi);
    const double D = E - 1.0;
    return (psi * psi / c5) * (psi * E - E + 1.0) / (D * D);
  };
  auto fpp = [c5, c6](double phi) {
    const double psi = c5 / phi;
    const double E = c6 * std::exp(psi);
    const double D = E - 1.0;
    const double core = psi * E - E + 1.0;
    return -(psi * psi / (c5 * c5)) *
           ((2.0 * psi * core + psi * psi * psi * E) * D -
            2.0 * psi * psi * E * core) /
           (D * D * D);
  };
  AnalyticFn f;
  f.u = [fv](double t, double x) { return t * fv(x * t); };
  f.ut = [fv, fp](double t, double x) {
    const double phi = x * t;
    return fv(phi) + phi * fp(phi);
  };
  f.ux = [fp](double t, double x) { return t * t * fp(x * t); };
  f.uxx = [fpp](double t, double x) { return t * t * t * fpp(x * t); };
  check_finite_on_box(f, xl, xr, t0, t1, "focusing state (1/u)");

  ExactSolution e;
  e.name = "focusing-m1";
  e.params = {{"c5", c5}, {"c6", c6}};
  e.field = f;
  e.scenario = scenario_around(e.name, CoefficientFn::power(1.0, 2.0),
                               CoefficientFn::monomial(-1.0),
                               CoefficientFn::constant(1.0), f, xl, xr, t0,
                               t1);
  return e;
}

ExactSolution make_focusing_uinf(double c5, double c6, double u_inf,
                                 double xl, double xr, double t0, double t1) {
  require_config(c6 > 0.0, "plateau focusing state: need c6 > 0");
  require_config(xl > 0.0 && t0 > 0.0,
                 "plateau focusing state: box must have x > 0 and t > 0");
  const double beta = c5 / c6;
  auto h = [beta](double psi) {
    return -1.0 + psi * std::exp(-psi) * expint_ei(psi) +
           beta * psi * std::exp(-psi);
  };
  auto hp = [beta](double psi) {
    return (1.0 - psi) * std::exp(-psi) * expint_ei(psi) + 1.0 +
           beta * (1.0 - psi) * std::exp(-psi);
  };
  auto hpp = [beta](double psi) {
    return (psi - 2.0) * std::exp(-psi) * expint_ei(psi) +
           (1.0 - psi) / psi + beta * (psi - 2.0) * std::exp(-psi);
  };
  auto fv = [h, c6](double phi) { return 1.0 / h(c6 / phi); };
  auto fp = [h, hp, c6](double phi) {
    const double psi = c6 / phi;
    const double hv = h(psi);
    return (psi * psi / c6) * hp(psi) / (hv * hv);
  };
  auto fpp = [h, hp, hpp, c6](double phi) {
    const double psi = c6 / phi;
    const double hv = h(psi), hpv = hp(psi), hppv = hpp(psi);
    return -(psi * psi / (c6 * c6)) *
           (2.0 * psi * hpv / (hv * hv) + psi * psi * hppv / (hv * hv) -
            2.0 * psi * psi * hpv * hpv / (hv * hv * hv));
  };
  AnalyticFn f;
  f.u = [fv](double t, double x) { return t * fv(x * t); };
  f.ut = [fv, fp](double t, double x) {
    const double phi = x * t;
    return fv(phi) + phi * fp(phi);
  };
  f.ux = [fp](double t, double x) { return t * t * fp(x * t); };
  f.uxx = [fpp](double t, double x) { return t * t * t * fpp(x * t); };
  check_finite_on_box(f, xl, xr, t0, t1, "plateau focusing state");

  ExactSolution e;
  e.name = "focusing-uinf";
  e.params = {{"c5", c5}, {"c6", c6}, {"u_inf", u_inf}};
  e.params["note"] =
      "field is v; the plateau state is u = u_inf - v with state "
      "dependence 1/(u_inf - u)";
  e.field = f;
  e.scenario = scenario_around(e.name, CoefficientFn::power(1.0, 2.0),
                               CoefficientFn::monomial(-1.0),
                               CoefficientFn::constant(-1.0), f, xl, xr, t0,
                               t1);
  return e;
}

std::vector<ExactSolution> exact_catalog() {
  std::vector<ExactSolution> out;
  out.push_back(make_uniform(CoefficientFn::exponential(1.0),
                             CoefficientFn::monomial(2.0),
                             CoefficientFn::exp_t(1.0), 0.3, 0.0, 1.0, 0.0,
                             1.0));
  out.back().name = "uniform-exp-source";
  out.back().scenario.name = out.back().name;

  out.push_back(make_separated_exp(CoefficientFn::power(2.0, 3.0),
                                   CoefficientFn::inv_t(), 0.2, 0.5, 0.5, 1.5,
                                   0.5, 2.0));
  out.back().name = "separated-power-diffusivity";
  out.back().scenario.name = out.back().name;

  out.push_back(make_separated_exp(CoefficientFn::exponential(1.0),
                                   CoefficientFn::power_t(2.0), -0.1, 1.0,
                                   0.0, 1.0, 0.0, 1.0));
  out.back().name = "separated-exponential-diffusivity";
  out.back().scenario.name = out.back().name;

  out.push_back(make_scaling_separated(CoefficientFn::constant(1.0),
                                       CoefficientFn::inv_t(), 2.0, 0.5, 1.0,
                                       0.0, 1.0, 0.5, 2.0));
  out.back().name = "scaling-constant-diffusivity";
  out.back().scenario.name = out.back().name;

  out.push_back(make_scaling_separated(
      CoefficientFn::tabulate_function(
          [](double x) { return 1.0 + x * x; }, -0.125, 1.125),
      CoefficientFn::exp_t(1.0), 2.0, 0.5, 1.0, 0.0, 1.0, 0.0, 1.0));
  out.back().name = "scaling-tabulated-diffusivity";
  out.back().scenario.name = out.back().name;

  out.push_back(make_focusing_m1(1.0, 1.0, 0.5, 1.0, 0.5, 1.0));
  out.push_back(make_focusing_uinf(1.0, 1.0, 2.0, 0.5, 1.0, 0.5, 1.0));
  return out;
}

ExactSolution find_exact(const std::string& name) {
  for (auto& e : exact_catalog())
    if (e.name == name) return e;
  std::string names;
  for (const auto& e : exact_catalog()) names += " " + e.name;
  fail_config("no exact solution named \"" + name + "\"; available:" + names);
}

double max_field_residual(const ExactSolution& e, int nt, int nx) {
  require_config(nt >= 2 && nx >= 2, "max_field_residual: need a grid");
  double worst = 0.0;
  const Scenario& sc = e.scenario;
  for (int k = 0; k < nt; ++k)
    for (int i = 0; i < nx; ++i) {
      const double t = sc.t0 + (sc.t1 - sc.t0) * k / (nt - 1);
      const double x = sc.x_left + (sc.x_right - sc.x_left) * i / (nx - 1);
      worst = std::max(worst, std::abs(pde_residual(sc, e.field, t, x)));
    }
  return worst;
}

}  // namespace plasma
