#pragma once

#include <array>
#include <functional>
#include <map>

#include "plasma/coefficient.hpp"
#include "plasma/numerics.hpp"
#include "plasma/residual.hpp"
#include "plasma/scenario.hpp"

namespace plasma {

/// Inputs for one of the six power-law similarity reductions
/// (state dependence A = u^m throughout):
///   1: any G(x),        W = t^(-(m+1)/m)   u = phi(omega) t^(-1/m), omega = x
///   2: G = g x^k,       W = t^n            u = phi t^(n+1), omega = x t^beta
///   3: G = g x^k,       W = w e^t          u = phi e^t, omega = x e^(mt/(k-2))
///   4: G = g e^x,       W = t^n            u = phi t^(n+1), omega = x + (mn+m+1) ln t
///   5: G = g e^x,       W = w e^t          u = phi e^t, omega = x + m t
///   6: G = g x^2,       W = t^(-(m+1)/m)   u = phi t^(-1/m), omega = x t^(-eps/m)
/// beta = (mn+m+1)/(k-2); rows 2 and 3 need k != 2, rows 1 and 6 need
/// m != 0, row 1 additionally m != -1. Row 6 accepts m = -1 (the source
/// then degenerates to a constant but the reduction itself survives and
/// carries the closed-form focusing state).
struct ReductionSpec {
  int row = 1;
  double m = 1.0;
  double n = 0.0;    // rows 2, 4
  double k = 0.0;    // rows 2, 3
  double g = 1.0;    // diffusivity multiplier, rows 2..6
  double w = 1.0;    // source multiplier, rows 3, 5
  double eps = 1.0;  // row 6 mixing parameter
  CoefficientFn G = CoefficientFn::constant(1.0);  // row 1 only
};

/// A similarity reduction: the scenario it belongs to, the similarity
/// variable, the reduced second-order ODE and the exact factorization
/// pde_residual = factor(t) * ode_residual on lifted fields.
class ReducedProblem {
 public:
  explicit ReducedProblem(const ReductionSpec& spec);

  int row() const { return spec_.row; }
  const ReductionSpec& spec() const { return spec_; }
  /// Coefficients of the full equation this reduction belongs to
  /// (initial/boundary data are not populated).
  const Scenario& scenario() const { return scenario_; }

  double omega(double t, double x) const;
  double x_from_omega(double t, double w) const;
  double time_shape(double t) const;  // T(t) in u = T(t) phi(omega)
  /// pde_residual(lifted phi) = factor(t) * ode_residual(phi) pointwise.
  double factor(double t) const;

  /// Residual of the reduced ODE at (omega, phi, phi', phi'').
  double ode_residual(double w, double phi, double dphi, double ddphi) const;
  /// phi'' solved from ode_residual = 0; numerical error when the
  /// leading coefficient degenerates (phi^m or the profile vanishing).
  double second_derivative(double w, double phi, double dphi) const;

  /// Lift a profile with its derivatives to a space-time field.
  AnalyticFn lift(std::function<double(double)> phi,
                  std::function<double(double)> dphi,
                  std::function<double(double)> ddphi) const;
  /// Lift an integrated profile (components phi, phi'); phi'' comes from
  /// the ODE itself.
  AnalyticFn lift(const OdeSolution& sol) const;

 private:
  ReductionSpec spec_;
  Scenario scenario_;
  CoefficientFn profile_;  // F(omega) in the divergence term
  double div_sign_ = 1.0;  // coefficient of (F phi^m phi')' in the residual
};

ReducedProblem build_reduced(const ReductionSpec& spec);

/// Integrate the reduced ODE from (w0, phi0, dphi0) to w1 (either
/// direction); stops cleanly at singularities (vanishing phi, blow-up).
OdeSolution integrate_reduced(const ReducedProblem& rp, double w0,
                              double phi0, double dphi0, double w1);

/// Max mismatch |pde_residual - factor * ode_residual| (relative to the
/// larger of 1 and the residual magnitudes) over a (t, omega) sample for
/// a cubic test profile phi = c0 + c1 w + c2 w^2 + c3 w^3. The profile
/// need not solve anything: the factorization is an identity.
double verify_reduction(const ReducedProblem& rp,
                        const std::array<double, 4>& cubic, double t_lo,
                        double t_hi, double w_lo = 1.0, double w_hi = 2.0,
                        int nt = 8, int nw = 9);

}  // namespace plasma
