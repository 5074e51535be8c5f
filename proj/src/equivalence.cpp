#include "plasma/equivalence.hpp"

#include <cmath>

#include "plasma/errors.hpp"

namespace plasma {

namespace {

void warn(std::vector<std::string>* warnings, const std::string& msg) {
  if (warnings) warnings->push_back(msg);
}

bool is_integer(double v) { return v == std::floor(v) && std::abs(v) < 1e9; }

/// (1/s)^p for the parameter updates below; demands a real result.
double inv_pow(double s, double p, const char* role) {
  if (s < 0.0 && !is_integer(p))
    fail_config(std::string(role) +
                ": negative scale with non-integer exponent");
  return std::pow(1.0 / s, p);
}

}  // namespace

EquivTransform EquivTransform::after(const EquivTransform& inner) const {
  EquivTransform r;
  r.e4 = e4 * inner.e4;
  r.e1 = e4 * inner.e1 + e1;
  r.e5 = e5 * inner.e5;
  r.e2 = e5 * inner.e2 + e2;
  r.e6 = e6 * inner.e6;
  r.e3 = e6 * inner.e3 + e3;
  r.e7 = e7 * inner.e7;
  return r;
}

EquivTransform EquivTransform::inverse() const {
  validate();
  EquivTransform r;
  r.e4 = 1.0 / e4;
  r.e1 = -e1 / e4;
  r.e5 = 1.0 / e5;
  r.e2 = -e2 / e5;
  r.e6 = 1.0 / e6;
  r.e3 = -e3 / e6;
  r.e7 = 1.0 / e7;
  return r;
}

void EquivTransform::validate() const {
  const double vals[] = {e1, e2, e3, e4, e5, e6, e7};
  for (double v : vals)
    require_config(std::isfinite(v), "equivalence transform: non-finite entry");
  require_config(e4 != 0.0 && e5 != 0.0 && e6 != 0.0 && e7 != 0.0,
                 "equivalence transform: scales e4..e7 must be nonzero");
}

bool EquivTransform::is_identity() const {
  return e1 == 0.0 && e2 == 0.0 && e3 == 0.0 && e4 == 1.0 && e5 == 1.0 &&
         e6 == 1.0 && e7 == 1.0;
}

nlohmann::json EquivTransform::to_json() const {
  return {{"e1", e1}, {"e2", e2}, {"e3", e3}, {"e4", e4},
          {"e5", e5}, {"e6", e6}, {"e7", e7}};
}

EquivTransform EquivTransform::from_json(const nlohmann::json& j) {
  EquivTransform t;
  t.e1 = j.value("e1", 0.0);
  t.e2 = j.value("e2", 0.0);
  t.e3 = j.value("e3", 0.0);
  t.e4 = j.value("e4", 1.0);
  t.e5 = j.value("e5", 1.0);
  t.e6 = j.value("e6", 1.0);
  t.e7 = j.value("e7", 1.0);
  t.validate();
  return t;
}

CoefficientFn transform_g(const CoefficientFn& g, const EquivTransform& T,
                          double new_xlo, double new_xhi,
                          std::vector<std::string>* warnings) {
  T.validate();
  const double front = T.e5 * T.e5 / (T.e4 * T.e7);
  auto fallback = [&](const char* why) {
    warn(warnings, std::string("G falls out of its shape family (") + why +
                       "); resampled as a table");
    return CoefficientFn::tabulate_function(
        [&](double xx) { return front * g.evaluate(T.unmap_x(xx)); }, new_xlo,
        new_xhi);
  };
  switch (g.kind()) {
    case CoefKind::Constant:
      return CoefficientFn::constant(g.param1()).scaled(g.scale() * front);
    case CoefKind::Power: {
      if (T.e2 != 0.0) return fallback("x shift breaks a pure power");
      const double k = g.param2();
      return CoefficientFn::power(g.param1(), k)
          .scaled(g.scale() * front * inv_pow(T.e5, k, "G power update"));
    }
    case CoefKind::Exponential: {
      if (T.e5 != 1.0) return fallback("x scale breaks a pure exponential");
      return CoefficientFn::exponential(g.param1())
          .scaled(g.scale() * front * std::exp(-T.e2));
    }
    case CoefKind::Tabulated:
      return fallback("tabulated shape");
    default:
      fail_config("transform_g: coefficient is not a function of x");
  }
}

CoefficientFn transform_a(const CoefficientFn& a, const EquivTransform& T,
                          std::vector<std::string>* warnings) {
  T.validate();
  switch (a.kind()) {
    case CoefKind::Constant:
      return CoefficientFn::constant(a.param1()).scaled(a.scale() * T.e7);
    case CoefKind::Monomial: {
      const double m = a.param1();
      if (T.e3 != 0.0)
        fail_config("transform_a: u shift pushes a power-law state "
                    "dependence out of the family");
      return CoefficientFn::monomial(m).scaled(
          a.scale() * T.e7 * inv_pow(T.e6, m, "A power update"));
    }
    case CoefKind::ExpU:
      if (T.e6 != 1.0)
        fail_config("transform_a: u scale pushes an exponential state "
                    "dependence out of the family");
      return CoefficientFn::exp_u().scaled(a.scale() * T.e7 *
                                           std::exp(-T.e3));
    case CoefKind::ShiftedInvSquare: {
      // e7 s (u_inf - (u~-e3)/e6)^-2 = e7 s e6^2 (e6 u_inf + e3 - u~)^-2:
      // this shape is closed under the whole group.
      return CoefficientFn::shifted_inv_square(T.e6 * a.param1() + T.e3)
          .scaled(a.scale() * T.e7 * T.e6 * T.e6);
    }
    case CoefKind::Tabulated: {
      const double lo = a.table().x_min(), hi = a.table().x_max();
      double nlo = T.map_u(lo), nhi = T.map_u(hi);
      if (nlo > nhi) std::swap(nlo, nhi);
      warn(warnings, "A resampled as a table over the image of its range");
      return CoefficientFn::tabulate_function(
          [&](double uu) { return T.e7 * a.evaluate(T.unmap_u(uu)); }, nlo,
          nhi);
    }
    default:
      fail_config("transform_a: coefficient is not a function of u");
  }
}

CoefficientFn transform_w(const CoefficientFn& w, const EquivTransform& T,
                          double new_tlo, double new_thi,
                          std::vector<std::string>* warnings) {
  T.validate();
  const double front = T.e6 / T.e4;
  auto fallback = [&](const char* why) {
    warn(warnings, std::string("W falls out of its shape family (") + why +
                       "); resampled as a table");
    return CoefficientFn::tabulate_function(
        [&](double tt) { return front * w.evaluate(T.unmap_t(tt)); }, new_tlo,
        new_thi);
  };
  switch (w.kind()) {
    case CoefKind::Constant:
      return CoefficientFn::constant(w.param1()).scaled(w.scale() * front);
    case CoefKind::PowerT: {
      if (T.e1 != 0.0) return fallback("t shift breaks a pure power");
      const double n = w.param1();
      return CoefficientFn::power_t(n).scaled(
          w.scale() * T.e6 * inv_pow(T.e4, n + 1.0, "W power update"));
    }
    case CoefKind::InvT:
      if (T.e1 != 0.0) return fallback("t shift breaks 1/t");
      return CoefficientFn::inv_t().scaled(w.scale() * T.e6);
    case CoefKind::ExpT:
      if (T.e4 != 1.0) return fallback("t scale breaks a pure exponential");
      return CoefficientFn::exp_t(w.param1())
          .scaled(w.scale() * T.e6 * std::exp(-T.e1));
    case CoefKind::Tabulated:
      return fallback("tabulated shape");
    default:
      fail_config("transform_w: coefficient is not a function of t");
  }
}

Scenario apply_equivalence(const Scenario& sc, const EquivTransform& T,
                           std::vector<std::string>* warnings) {
  T.validate();
  require_config(T.e4 > 0.0 && T.e5 > 0.0,
                 "apply_equivalence: need e4 > 0 and e5 > 0 to keep the "
                 "space-time box oriented");
  Scenario out;
  out.x_left = T.map_x(sc.x_left);
  out.x_right = T.map_x(sc.x_right);
  out.t0 = T.map_t(sc.t0);
  out.t1 = T.map_t(sc.t1);
  out.g = transform_g(sc.g, T, out.x_left, out.x_right, warnings);
  out.a = transform_a(sc.a, T, warnings);
  out.w = transform_w(sc.w, T, out.t0, out.t1, warnings);

  if (sc.initial) {
    auto u0 = sc.initial;
    out.initial = [u0, T](double x) { return T.map_u(u0(T.unmap_x(x))); };
  }
  auto map_bc = [&](const BoundaryCondition& bc) {
    BoundaryCondition nbc;
    nbc.kind = bc.kind;
    if (!bc.value) return nbc;
    auto v = bc.value;
    if (bc.kind == BoundaryCondition::Kind::Dirichlet)
      nbc.value = [v, T](double t) { return T.map_u(v(T.unmap_t(t))); };
    else
      nbc.value = [v, T](double t) {
        return T.flux_factor() * v(T.unmap_t(t));
      };
    return nbc;
  };
  out.left = map_bc(sc.left);
  out.right = map_bc(sc.right);
  if (sc.extra_source) {
    auto s = sc.extra_source;
    // An additive source transforms like W: factor e6/e4 at mapped points.
    out.extra_source = [s, T](double t, double x) {
      return (T.e6 / T.e4) * s(T.unmap_t(t), T.unmap_x(x));
    };
  }
  out.name = sc.name.empty() ? std::string("transformed")
                             : sc.name + " (transformed)";
  return out;
}

AnalyticFn map_solution(const AnalyticFn& f, const EquivTransform& T) {
  T.validate();
  AnalyticFn out;
  out.u = [f, T](double t, double x) {
    return T.map_u(f.u(T.unmap_t(t), T.unmap_x(x)));
  };
  out.ut = [f, T](double t, double x) {
    return (T.e6 / T.e4) * f.ut(T.unmap_t(t), T.unmap_x(x));
  };
  out.ux = [f, T](double t, double x) {
    return (T.e6 / T.e5) * f.ux(T.unmap_t(t), T.unmap_x(x));
  };
  out.uxx = [f, T](double t, double x) {
    return (T.e6 / (T.e5 * T.e5)) * f.uxx(T.unmap_t(t), T.unmap_x(x));
  };
  return out;
}

SolutionSamples map_samples(const SolutionSamples& s, const EquivTransform& T) {
  T.validate();
  require_config(T.e4 > 0.0 && T.e5 > 0.0,
                 "map_samples: need e4 > 0 and e5 > 0 to keep frame order "
                 "and grid orientation");
  SolutionSamples out{Grid(T.map_x(s.grid.x_left()), T.map_x(s.grid.x_right()),
                           s.grid.cells()),
                      {},
                      {}};
  out.times.reserve(s.times.size());
  for (double t : s.times) out.times.push_back(T.map_t(t));
  out.data.resize(s.data.size());
  for (std::size_t k = 0; k < s.data.size(); ++k) {
    out.data[k].resize(s.data[k].size());
    for (std::size_t i = 0; i < s.data[k].size(); ++i)
      out.data[k][i] = T.map_u(s.data[k][i]);
  }
  return out;
}

}  // namespace plasma
