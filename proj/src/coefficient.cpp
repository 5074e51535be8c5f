#include "plasma/coefficient.hpp"

#include <cmath>
#include <sstream>

#include "plasma/errors.hpp"

namespace plasma {

namespace {

bool is_integer(double v) { return v == std::floor(v) && std::abs(v) < 1e9; }

/// x^p with domain guards: negative base requires integer exponent,
/// zero base requires p >= 0 (p < 0 would divide by zero).
double checked_pow(double x, double p, const char* role) {
  if (x < 0.0 && !is_integer(p))
    fail_config(std::string(role) +
                ": negative argument with non-integer exponent");
  if (x == 0.0 && p < 0.0)
    fail_config(std::string(role) + ": pole at zero argument");
  return std::pow(x, p);
}

}  // namespace

std::string coef_kind_name(CoefKind k) {
  switch (k) {
    case CoefKind::Constant: return "constant";
    case CoefKind::Power: return "power";
    case CoefKind::Exponential: return "exponential";
    case CoefKind::Monomial: return "monomial";
    case CoefKind::ExpU: return "exp_u";
    case CoefKind::PowerT: return "power_t";
    case CoefKind::ExpT: return "exp_t";
    case CoefKind::InvT: return "inv_t";
    case CoefKind::ShiftedInvSquare: return "shifted_inv_square";
    case CoefKind::Tabulated: return "tabulated";
  }
  return "?";
}

CoefficientFn CoefficientFn::constant(double c) {
  CoefficientFn f;
  f.kind_ = CoefKind::Constant;
  f.p1_ = c;
  return f;
}

CoefficientFn CoefficientFn::power(double g, double k) {
  require_config(g != 0.0, "power coefficient: zero multiplier");
  if (k == 0.0) return constant(g);  // x^0 == 1: canonical form is Constant
  CoefficientFn f;
  f.kind_ = CoefKind::Power;
  f.p1_ = g;
  f.p2_ = k;
  return f;
}

CoefficientFn CoefficientFn::exponential(double g) {
  require_config(g != 0.0, "exponential coefficient: zero multiplier");
  CoefficientFn f;
  f.kind_ = CoefKind::Exponential;
  f.p1_ = g;
  return f;
}

CoefficientFn CoefficientFn::monomial(double m) {
  if (m == 0.0) return constant(1.0);
  CoefficientFn f;
  f.kind_ = CoefKind::Monomial;
  f.p1_ = m;
  return f;
}

CoefficientFn CoefficientFn::exp_u() {
  CoefficientFn f;
  f.kind_ = CoefKind::ExpU;
  return f;
}

CoefficientFn CoefficientFn::power_t(double n) {
  if (n == 0.0) return constant(1.0);
  CoefficientFn f;
  f.kind_ = CoefKind::PowerT;
  f.p1_ = n;
  return f;
}

CoefficientFn CoefficientFn::exp_t(double w) {
  require_config(w != 0.0, "exp_t coefficient: zero multiplier");
  CoefficientFn f;
  f.kind_ = CoefKind::ExpT;
  f.p1_ = w;
  return f;
}

CoefficientFn CoefficientFn::inv_t() {
  CoefficientFn f;
  f.kind_ = CoefKind::InvT;
  return f;
}

CoefficientFn CoefficientFn::shifted_inv_square(double u_inf) {
  CoefficientFn f;
  f.kind_ = CoefKind::ShiftedInvSquare;
  f.p1_ = u_inf;
  return f;
}

CoefficientFn CoefficientFn::tabulated(std::vector<double> xs,
                                       std::vector<double> fs) {
  require_config(xs.size() >= 4,
                 "tabulated coefficient: need at least 4 samples");
  CoefficientFn f;
  f.kind_ = CoefKind::Tabulated;
  f.table_ = std::make_shared<CubicSpline>(std::move(xs), std::move(fs));
  return f;
}

CoefficientFn CoefficientFn::scaled(double s) const {
  require_config(s != 0.0, "coefficient scale must be nonzero");
  CoefficientFn f = *this;
  f.scale_ *= s;
  return f;
}

const CubicSpline& CoefficientFn::table() const {
  require_config(kind_ == CoefKind::Tabulated && table_,
                 "coefficient: not tabulated");
  return *table_;
}

bool CoefficientFn::is_varying() const {
  return kind_ != CoefKind::Constant;
}

double CoefficientFn::base_eval(double z) const {
  switch (kind_) {
    case CoefKind::Constant:
      return p1_;
    case CoefKind::Power:
      return p1_ * checked_pow(z, p2_, "power coefficient");
    case CoefKind::Exponential:
      return p1_ * std::exp(z);
    case CoefKind::Monomial:
      return checked_pow(z, p1_, "monomial coefficient");
    case CoefKind::ExpU:
      return std::exp(z);
    case CoefKind::PowerT:
      return checked_pow(z, p1_, "power-of-t coefficient");
    case CoefKind::ExpT:
      return p1_ * std::exp(z);
    case CoefKind::InvT:
      if (z <= 0.0) fail_config("1/t coefficient: requires t > 0");
      return 1.0 / z;
    case CoefKind::ShiftedInvSquare: {
      const double d = p1_ - z;
      if (d == 0.0)
        fail_config("shifted inverse-square coefficient: pole at u_inf");
      return 1.0 / (d * d);
    }
    case CoefKind::Tabulated:
      return (*table_)(z);
  }
  fail_config("coefficient: unknown kind");
}

double CoefficientFn::base_diff(double z) const {
  switch (kind_) {
    case CoefKind::Constant:
      return 0.0;
    case CoefKind::Power:
      return p1_ * p2_ * checked_pow(z, p2_ - 1.0, "power coefficient slope");
    case CoefKind::Exponential:
      return p1_ * std::exp(z);
    case CoefKind::Monomial:
      return p1_ * checked_pow(z, p1_ - 1.0, "monomial coefficient slope");
    case CoefKind::ExpU:
      return std::exp(z);
    case CoefKind::PowerT:
      return p1_ * checked_pow(z, p1_ - 1.0, "power-of-t coefficient slope");
    case CoefKind::ExpT:
      return p1_ * std::exp(z);
    case CoefKind::InvT:
      if (z <= 0.0) fail_config("1/t coefficient: requires t > 0");
      return -1.0 / (z * z);
    case CoefKind::ShiftedInvSquare: {
      const double d = p1_ - z;
      if (d == 0.0)
        fail_config("shifted inverse-square coefficient: pole at u_inf");
      return 2.0 / (d * d * d);
    }
    case CoefKind::Tabulated:
      return table_->derivative(z);
  }
  fail_config("coefficient: unknown kind");
}

namespace {

/// Integral of z^p between ref and z with the usual log special case.
double power_integral(double z, double ref, double p, const char* role) {
  if (p == -1.0) {
    if (z <= 0.0 || ref <= 0.0)
      fail_config(std::string(role) + ": log antiderivative needs positive "
                                      "arguments");
    return std::log(z / ref);
  }
  return (checked_pow(z, p + 1.0, role) - checked_pow(ref, p + 1.0, role)) /
         (p + 1.0);
}

}  // namespace

double CoefficientFn::base_antideriv(double z, double ref) const {
  switch (kind_) {
    case CoefKind::Constant:
      return p1_ * (z - ref);
    case CoefKind::Power:
      return p1_ * power_integral(z, ref, p2_, "power coefficient integral");
    case CoefKind::Exponential:
      return p1_ * (std::exp(z) - std::exp(ref));
    case CoefKind::Monomial:
      return power_integral(z, ref, p1_, "monomial coefficient integral");
    case CoefKind::ExpU:
      return std::exp(z) - std::exp(ref);
    case CoefKind::PowerT:
      return power_integral(z, ref, p1_, "power-of-t coefficient integral");
    case CoefKind::ExpT:
      return p1_ * (std::exp(z) - std::exp(ref));
    case CoefKind::InvT:
      if (z <= 0.0 || ref <= 0.0)
        fail_config("1/t coefficient integral: requires t > 0");
      return std::log(z / ref);
    case CoefKind::ShiftedInvSquare: {
      const double dz = p1_ - z, dr = p1_ - ref;
      if (dz == 0.0 || dr == 0.0)
        fail_config("shifted inverse-square integral: pole at u_inf");
      if (dz * dr < 0.0)
        fail_config("shifted inverse-square integral: interval crosses pole");
      return 1.0 / dz - 1.0 / dr;
    }
    case CoefKind::Tabulated:
      return adaptive_simpson([this](double s) { return (*table_)(s); }, ref,
                              z, 1e-13);
  }
  fail_config("coefficient: unknown kind");
}

double CoefficientFn::evaluate(double z) const { return scale_ * base_eval(z); }

double CoefficientFn::differentiate(double z) const {
  return scale_ * base_diff(z);
}

double CoefficientFn::antiderivative(double z, double ref) const {
  return scale_ * base_antideriv(z, ref);
}

double CoefficientFn::reciprocal_antiderivative(double z, double ref) const {
  switch (kind_) {
    case CoefKind::Constant:
      require_config(p1_ != 0.0, "reciprocal integral: zero coefficient");
      return (z - ref) / (scale_ * p1_);
    case CoefKind::Power:
      return power_integral(z, ref, -p2_, "reciprocal power integral") /
             (scale_ * p1_);
    case CoefKind::Exponential:
      return -(std::exp(-z) - std::exp(-ref)) / (scale_ * p1_);
    case CoefKind::Monomial:
      return power_integral(z, ref, -p1_, "reciprocal monomial integral") /
             scale_;
    case CoefKind::ExpU:
      return -(std::exp(-z) - std::exp(-ref)) / scale_;
    case CoefKind::PowerT:
      return power_integral(z, ref, -p1_, "reciprocal power-of-t integral") /
             scale_;
    case CoefKind::ExpT:
      return -(std::exp(-z) - std::exp(-ref)) / (scale_ * p1_);
    case CoefKind::InvT:
      return 0.5 * (z * z - ref * ref) / scale_;
    case CoefKind::ShiftedInvSquare: {
      // integral of (u_inf - u)^2 du
      const double dz = p1_ - z, dr = p1_ - ref;
      return (dr * dr * dr - dz * dz * dz) / (3.0 * scale_);
    }
    case CoefKind::Tabulated:
      return adaptive_simpson(
          [this](double s) {
            const double v = evaluate(s);
            if (v == 0.0)
              fail_numerical("reciprocal integral: tabulated zero crossing");
            return 1.0 / v;
          },
          ref, z, 1e-13);
  }
  fail_config("coefficient: unknown kind");
}

std::string CoefficientFn::describe() const {
  std::ostringstream os;
  if (scale_ != 1.0) os << scale_ << " * ";
  switch (kind_) {
    case CoefKind::Constant: os << p1_; break;
    case CoefKind::Power: os << p1_ << " * x^" << p2_; break;
    case CoefKind::Exponential: os << p1_ << " * e^x"; break;
    case CoefKind::Monomial: os << "u^" << p1_; break;
    case CoefKind::ExpU: os << "e^u"; break;
    case CoefKind::PowerT: os << "t^" << p1_; break;
    case CoefKind::ExpT: os << p1_ << " * e^t"; break;
    case CoefKind::InvT: os << "1/t"; break;
    case CoefKind::ShiftedInvSquare:
      os << "(" << p1_ << " - u)^-2";
      break;
    case CoefKind::Tabulated:
      os << "tabulated[" << table_->knots().size() << " pts on "
         << table_->x_min() << ".." << table_->x_max() << "]";
      break;
  }
  return os.str();
}

nlohmann::json CoefficientFn::to_json() const {
  nlohmann::json j;
  j["kind"] = coef_kind_name(kind_);
  if (scale_ != 1.0) j["scale"] = scale_;
  switch (kind_) {
    case CoefKind::Constant: j["c"] = p1_; break;
    case CoefKind::Power:
      j["g"] = p1_;
      j["k"] = p2_;
      break;
    case CoefKind::Exponential: j["g"] = p1_; break;
    case CoefKind::Monomial: j["m"] = p1_; break;
    case CoefKind::ExpU: break;
    case CoefKind::PowerT: j["n"] = p1_; break;
    case CoefKind::ExpT: j["w"] = p1_; break;
    case CoefKind::InvT: break;
    case CoefKind::ShiftedInvSquare: j["u_inf"] = p1_; break;
    case CoefKind::Tabulated:
      j["x"] = table_->knots();
      j["f"] = table_->values();
      break;
  }
  return j;
}

CoefficientFn CoefficientFn::from_json(const nlohmann::json& j) {
  require_config(j.contains("kind"), "coefficient JSON: missing \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  const double scale = j.value("scale", 1.0);
  auto get = [&](const char* key) -> double {
    require_config(j.contains(key), std::string("coefficient JSON (") + kind +
                                        "): missing \"" + key + "\"");
    return j.at(key).get<double>();
  };
  CoefficientFn f;
  if (kind == "constant")
    f = constant(get("c"));
  else if (kind == "power")
    f = power(get("g"), get("k"));
  else if (kind == "exponential")
    f = exponential(get("g"));
  else if (kind == "monomial")
    f = monomial(get("m"));
  else if (kind == "exp_u")
    f = exp_u();
  else if (kind == "power_t")
    f = power_t(get("n"));
  else if (kind == "exp_t")
    f = exp_t(get("w"));
  else if (kind == "inv_t")
    f = inv_t();
  else if (kind == "shifted_inv_square")
    f = shifted_inv_square(get("u_inf"));
  else if (kind == "tabulated") {
    require_config(j.contains("x") && j.contains("f"),
                   "coefficient JSON (tabulated): missing samples");
    f = tabulated(j.at("x").get<std::vector<double>>(),
                  j.at("f").get<std::vector<double>>());
  } else {
    fail_config("coefficient JSON: unknown kind \"" + kind + "\"");
  }
  return scale == 1.0 ? f : f.scaled(scale);
}

CoefficientFn CoefficientFn::tabulate_function(
    const std::function<double(double)>& f, double lo, double hi, int points) {
  require_config(points >= 4 && hi > lo, "tabulate_function: bad range");
  std::vector<double> xs(points), fs(points);
  for (int i = 0; i < points; ++i) {
    xs[i] = lo + (hi - lo) * i / (points - 1);
    fs[i] = f(xs[i]);
  }
  return tabulated(std::move(xs), std::move(fs));
}

}  // namespace plasma
