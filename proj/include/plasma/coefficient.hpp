#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "plasma/numerics.hpp"

namespace plasma {

/// Closed family of coefficient shapes for G(x), A(u) and W(t).
enum class CoefKind {
  Constant,          // c
  Power,             // g * x^k
  Exponential,       // g * e^x
  Monomial,          // u^m
  ExpU,              // e^u
  PowerT,            // t^n
  ExpT,              // w * e^t
  InvT,              // 1 / t
  ShiftedInvSquare,  // (u_inf - u)^-2
  Tabulated,         // natural cubic spline through samples
};

std::string coef_kind_name(CoefKind k);

/// One-variable coefficient function with closed-form calculus where the
/// shape permits it. Every shape carries an overall multiplier `scale`
/// (default 1) so that the equivalence group's rescalings stay inside the
/// family. Evaluation outside a shape's domain raises a config error —
/// values are never clamped.
class CoefficientFn {
public:
  CoefficientFn() : kind_(CoefKind::Constant), p1_(1.0) {}

  static CoefficientFn constant(double c);
  static CoefficientFn power(double g, double k);
  static CoefficientFn exponential(double g);
  static CoefficientFn monomial(double m);
  static CoefficientFn exp_u();
  static CoefficientFn power_t(double n);
  static CoefficientFn exp_t(double w);
  static CoefficientFn inv_t();
  static CoefficientFn shifted_inv_square(double u_inf);
  static CoefficientFn tabulated(std::vector<double> xs,
                                 std::vector<double> fs);

  CoefKind kind() const { return kind_; }
  double scale() const { return scale_; }
  /// Returns a copy with the overall multiplier scaled by s (s != 0).
  CoefficientFn scaled(double s) const;

  // shape parameters (valid only for the corresponding kind)
  double param1() const { return p1_; }  // c | g | m | n | w | u_inf
  double param2() const { return p2_; }  // k (Power)
  const CubicSpline& table() const;

  double evaluate(double z) const;
  double differentiate(double z) const;
  /// Definite integral from `ref` to `z` of the coefficient itself.
  double antiderivative(double z, double ref) const;
  /// Definite integral from `ref` to `z` of 1/coefficient (for 1/G roles).
  double reciprocal_antiderivative(double z, double ref) const;

  /// True when the shape depends on its argument (df/dz not identically 0).
  bool is_varying() const;
  /// True for shapes whose value is independent of the argument.
  bool is_constant() const { return !is_varying(); }

  std::string describe() const;
  nlohmann::json to_json() const;
  static CoefficientFn from_json(const nlohmann::json& j);

  /// Sample this function on [lo, hi] into a Tabulated fallback.
  static CoefficientFn tabulate_function(
      const std::function<double(double)>& f, double lo, double hi,
      int points = 1024);

private:
  CoefKind kind_;
  double scale_ = 1.0;
  double p1_ = 0.0, p2_ = 0.0;
  std::shared_ptr<const CubicSpline> table_;

  double base_eval(double z) const;
  double base_diff(double z) const;
  double base_antideriv(double z, double ref) const;
};

}  // namespace plasma
