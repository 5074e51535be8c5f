#pragma once

#include <array>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "plasma/coefficient.hpp"
#include "plasma/grid.hpp"
#include "plasma/scenario.hpp"

namespace plasma {

/// The symmetry classification splits into three families by the shape
/// of the state dependence A(u): cases valid for arbitrary A, cases for
/// exponential A = e^u, and cases for power-law A = u^m.
enum class Family { AnyState, ExpState, PowerState };

std::string family_name(Family f);

/// One row of the classification: a family plus a 1-based index within
/// that family's case list.
struct CaseId {
  Family family;
  int index;
  bool operator==(const CaseId& o) const {
    return family == o.family && index == o.index;
  }
};

std::string case_name(CaseId id);  // e.g. "power-state/6"

/// Infinitesimal point symmetry tau dt + xi dx + eta du of a scenario's
/// equation. When the components are affine with constant coefficients
/// (tau = a t + b, xi = c x + d, eta = e u + f) the six coefficients are
/// exposed, which gives exact one-parameter flows and lets proportional
/// generators be recognized as the same ray.
struct Generator {
  std::string label;
  std::optional<std::array<double, 6>> affine;  // {a, b, c, d, e, f}
  std::function<double(double, double, double)> tau;  // (t, x, u)
  std::function<double(double, double, double)> xi;
  std::function<double(double, double, double)> eta;
  /// Exact flow (eps, t, x, u) -> (t~, x~, u~); present for every
  /// generator this library constructs.
  std::function<std::array<double, 3>(double, double, double, double)>
      closed_flow;
};

Generator make_affine_generator(double a, double b, double c, double d,
                                double e, double f);

/// True when the two generators span the same ray (equal up to a nonzero
/// scalar). Only decidable for affine generators; non-affine ones compare
/// by label.
bool same_ray(const Generator& lhs, const Generator& rhs);

/// Cumulative-source machinery for the exponential-state generators:
/// S(t) is the antiderivative of W anchored at t_ref, P(t) the
/// antiderivative of e^S anchored at t_ref (computed as a dense ODE
/// solution over [t_lo, t_hi]), and P_inverse its inverse.
class SourceFlow {
 public:
  SourceFlow(CoefficientFn w, double t_ref, double t_lo, double t_hi);

  double S(double t) const;
  double expS(double t) const;
  double P(double t) const;
  double P_inverse(double p) const;  // numerical error if p leaves range
  double t_ref() const { return t_ref_; }
  double t_lo() const { return t_lo_; }
  double t_hi() const { return t_hi_; }

 private:
  CoefficientFn w_;
  double t_ref_, t_lo_, t_hi_;
  OdeSolution phat_;   // integral of e^S from t_lo
  double phat_ref_;    // its value at t_ref
};

/// Generators of the given case instantiated for the scenario's actual
/// coefficients. Config error when the scenario does not fit the case
/// (wrong shapes or parameters). The exponential-state case with the
/// implicitly-defined diffusivity (index 2 of that family) has no
/// constructive recognition rule and is rejected here.
std::vector<Generator> catalog(CaseId id, const Scenario& sc);

/// Re-express a generator that acts on v = u_inf - u in terms of u.
Generator conjugate_by_reflection(const Generator& gen, double u_inf);

/// Flow of the generator's one-parameter group through (t, x, u):
/// closed form when available, otherwise numeric integration in eps.
std::array<double, 3> flow_point(const Generator& gen, double eps, double t,
                                 double x, double u);
/// Always integrates d(t,x,u)/d eps = (tau, xi, eta) numerically.
std::array<double, 3> flow_point_numeric(const Generator& gen, double eps,
                                         double t, double x, double u);

/// Push sampled data through the flow. All catalog generators move x by
/// a t-independent affine map, so the image of a uniform grid is again a
/// uniform grid and no interpolation is involved. Frame times map
/// monotonically; numerical error otherwise.
SolutionSamples act_on_solution(const Generator& gen, double eps,
                                const SolutionSamples& s);

}  // namespace plasma
