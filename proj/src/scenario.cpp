#include "plasma/scenario.hpp"

#include <cmath>

#include "plasma/errors.hpp"

namespace plasma {

Grid::Grid(double x_left, double x_right, int cells)
    : x_left_(x_left), x_right_(x_right), cells_(cells) {
  require_config(cells >= 8, "grid: need at least 8 cells");
  require_config(x_right > x_left, "grid: empty interval");
  dx_ = (x_right - x_left) / cells;
}

std::vector<double> Grid::centers() const {
  std::vector<double> xs(cells_);
  for (int i = 0; i < cells_; ++i) xs[i] = center(i);
  return xs;
}

std::vector<double> Grid::faces() const {
  std::vector<double> xs(cells_ + 1);
  for (int i = 0; i <= cells_; ++i) xs[i] = face(i);
  return xs;
}

BoundaryCondition BoundaryCondition::dirichlet(
    std::function<double(double)> v) {
  return {Kind::Dirichlet, std::move(v)};
}

BoundaryCondition BoundaryCondition::dirichlet_const(double v) {
  return {Kind::Dirichlet, [v](double) { return v; }};
}

BoundaryCondition BoundaryCondition::neumann_flux(
    std::function<double(double)> q) {
  return {Kind::NeumannFlux, std::move(q)};
}

BoundaryCondition BoundaryCondition::neumann_flux_const(double q) {
  return {Kind::NeumannFlux, [q](double) { return q; }};
}

void Scenario::validate() const {
  require_config(x_right > x_left, "scenario: empty spatial interval");
  require_config(t1 > t0, "scenario: empty time window");
  require_config(static_cast<bool>(initial), "scenario: missing initial state");
  require_config(static_cast<bool>(left.value) &&
                     static_cast<bool>(right.value),
                 "scenario: missing boundary data");

  // G must be a strictly positive diffusivity profile over the interval.
  constexpr int kSamples = 1024;
  for (int i = 0; i <= kSamples; ++i) {
    const double x = x_left + (x_right - x_left) * i / kSamples;
    const double gv = g.evaluate(x);
    if (!(gv > 0.0) || !std::isfinite(gv))
      fail_config("scenario: G(x) must be positive on the interval (G(" +
                  std::to_string(x) + ") = " + std::to_string(gv) + ")");
  }

  // W must be finite on [t0, t1]; the 1/t and t^n (n<0) sources blow up at 0.
  if (g.kind() == CoefKind::Power && g.param2() < 0.0)
    require_config(x_left > 0.0 || x_right < 0.0,
                   "scenario: power-law G with negative exponent crosses 0");
  if (w.kind() == CoefKind::InvT ||
      (w.kind() == CoefKind::PowerT && w.param1() < 0.0))
    require_config(t0 > 0.0, "scenario: W(t) singular at t = 0; need t0 > 0");

  // The initial state must avoid poles and branch points of A so that
  // A(u0(x)) is well defined everywhere.
  const bool a_monomial = a.kind() == CoefKind::Monomial;
  const bool a_pole = a.kind() == CoefKind::ShiftedInvSquare;
  if (a_monomial || a_pole) {
    const double m = a.param1();
    const double u_inf = a_pole ? a.param1() : 0.0;
    constexpr int kIC = 512;
    double sign0 = 0.0;
    for (int i = 0; i <= kIC; ++i) {
      const double x = x_left + (x_right - x_left) * i / kIC;
      const double u0 = initial(x);
      if (!std::isfinite(u0)) fail_config("scenario: non-finite initial state");
      if (a_monomial) {
        if (u0 < 0.0 && m != std::floor(m))
          fail_config("scenario: initial state negative under fractional "
                      "power-law A(u)");
        if (u0 == 0.0 && m < 0.0)
          fail_config("scenario: initial state hits pole of A(u) at u = 0");
        if (m < 0.0) {
          const double s = u0 > 0.0 ? 1.0 : -1.0;
          if (sign0 == 0.0) sign0 = s;
          if (s != sign0)
            fail_config("scenario: initial state straddles the u = 0 pole "
                        "of A(u)");
        }
      } else {  // shifted inverse square
        const double d = u_inf - u0;
        if (d == 0.0)
          fail_config("scenario: initial state hits the u_inf pole of A(u)");
        const double s = d > 0.0 ? 1.0 : -1.0;
        if (sign0 == 0.0) sign0 = s;
        if (s != sign0)
          fail_config("scenario: initial state straddles the u_inf pole "
                      "of A(u)");
      }
    }
  }
}

nlohmann::json Scenario::to_json() const {
  nlohmann::json j;
  j["G"] = g.to_json();
  j["A"] = a.to_json();
  j["W"] = w.to_json();
  j["x_left"] = x_left;
  j["x_right"] = x_right;
  j["t0"] = t0;
  j["t1"] = t1;
  if (!name.empty()) j["name"] = name;
  return j;
}

namespace {

double need_number(const nlohmann::json& j, const char* key,
                   const char* where) {
  require_config(j.contains(key) && j[key].is_number(),
                 std::string(where) + ": missing numeric field '" + key + "'");
  return j[key].get<double>();
}

std::function<double(double)> profile_from_json(const nlohmann::json& j,
                                                double lo, double hi) {
  require_config(j.is_object() && j.contains("kind"),
                 "profile: expected an object with a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "uniform") {
    const double v = need_number(j, "value", "uniform profile");
    return [v](double) { return v; };
  }
  if (kind == "linear") {
    const double vl = need_number(j, "left", "linear profile");
    const double vr = need_number(j, "right", "linear profile");
    return [vl, vr, lo, hi](double s) {
      return vl + (vr - vl) * (s - lo) / (hi - lo);
    };
  }
  if (kind == "cosine") {
    const double mean = need_number(j, "mean", "cosine profile");
    const double amp = need_number(j, "amplitude", "cosine profile");
    const double periods = j.value("periods", 1.0);
    return [mean, amp, periods, lo, hi](double s) {
      return mean +
             amp * std::cos(periods * M_PI * (s - lo) / (hi - lo));
    };
  }
  if (kind == "gaussian") {
    const double base = need_number(j, "base", "gaussian profile");
    const double amp = need_number(j, "amplitude", "gaussian profile");
    const double center = need_number(j, "center", "gaussian profile");
    const double width = need_number(j, "width", "gaussian profile");
    require_config(width > 0.0, "gaussian profile: width must be positive");
    return [base, amp, center, width](double s) {
      const double z = (s - center) / width;
      return base + amp * std::exp(-z * z);
    };
  }
  if (kind == "coefficient") {
    require_config(j.contains("fn"), "coefficient profile: missing 'fn'");
    const CoefficientFn fn = CoefficientFn::from_json(j["fn"]);
    return [fn](double s) { return fn.evaluate(s); };
  }
  fail_config("profile: unknown kind '" + kind + "'");
}

BoundaryCondition boundary_from_json(const nlohmann::json& j, double t0,
                                     double t1) {
  require_config(j.is_object() && j.contains("kind"),
                 "boundary: expected an object with a 'kind' field");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "dirichlet") {
    if (j.contains("profile"))
      return BoundaryCondition::dirichlet(
          profile_from_json(j["profile"], t0, t1));
    return BoundaryCondition::dirichlet_const(
        need_number(j, "value", "dirichlet boundary"));
  }
  if (kind == "neumann") {
    if (j.contains("profile"))
      return BoundaryCondition::neumann_flux(
          profile_from_json(j["profile"], t0, t1));
    return BoundaryCondition::neumann_flux_const(
        need_number(j, "flux", "neumann boundary"));
  }
  fail_config("boundary: unknown kind '" + kind + "'");
}

}  // namespace

Scenario scenario_from_json(const nlohmann::json& j) {
  require_config(j.is_object(), "scenario: expected a JSON object");
  for (const char* key : {"g", "a", "w", "box", "initial", "left", "right"})
    require_config(j.contains(key),
                   std::string("scenario: missing field '") + key + "'");
  Scenario sc;
  sc.g = CoefficientFn::from_json(j["g"]);
  sc.a = CoefficientFn::from_json(j["a"]);
  sc.w = CoefficientFn::from_json(j["w"]);
  const nlohmann::json& box = j["box"];
  sc.x_left = need_number(box, "x_left", "box");
  sc.x_right = need_number(box, "x_right", "box");
  sc.t0 = need_number(box, "t0", "box");
  sc.t1 = need_number(box, "t1", "box");
  sc.initial = profile_from_json(j["initial"], sc.x_left, sc.x_right);
  sc.left = boundary_from_json(j["left"], sc.t0, sc.t1);
  sc.right = boundary_from_json(j["right"], sc.t0, sc.t1);
  sc.name = j.value("name", std::string());
  sc.validate();
  return sc;
}

}  // namespace plasma
