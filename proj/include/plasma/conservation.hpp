#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "plasma/scenario.hpp"
#include "plasma/solver.hpp"

namespace plasma {

/// A local balance law d/dt density + d/dx flux = 0 satisfied by every
/// solution of the equation (with no extra interior source).
struct ConservedPair {
  std::string name;
  std::string description;
  /// density(t, x, u)
  std::function<double(double, double, double)> density;
  /// flux(t, x, u, ux)
  std::function<double(double, double, double, double)> flux;
};

/// The two balance laws carried by the equation: plain content
/// (density u - IW with IW the accumulated source) and content weighted
/// by the reciprocal diffusivity integral R(x) = int dx'/G(x') anchored
/// at the left wall; the weighted flux absorbs the state antiderivative.
std::vector<ConservedPair> conserved_pairs(const Scenario& sc);

struct BalanceReport {
  double initial = 0.0;      // conserved integral at the first frame
  double final_value = 0.0;  // conserved integral at the last frame
  double max_step_defect = 0.0;   // worst single-step imbalance
  double cumulative_defect = 0.0; // end-to-end imbalance
  double scale = 1.0;             // normalization (sup of the integral, >= 1)
  double relative = 0.0;          // cumulative_defect / scale
  long steps = 0;
};

/// Discrete plain-content balance audited from the step records: the
/// scheme conserves content exactly up to Newton tolerance, so the
/// cumulative defect measures solver integrity, not accuracy.
BalanceReport mass_balance(const Scenario& sc, const SolveResult& result,
                           double theta);

/// Discrete weighted-content balance. The weight R and the state
/// antiderivative are exact while the scheme carries their trapezoidal
/// counterparts, so the cumulative defect contracts at second order
/// under simultaneous space/time refinement.
BalanceReport weighted_balance(const Scenario& sc, const SolveResult& result,
                               double theta);

/// A potential for a balance law on the space-time box: values on cell
/// faces per output frame, gauge fixed to zero at (t0, x_left).
/// corner_defect is the path-independence check at (t_end, x_right):
/// spatial integration at the final time against temporal integration
/// along the right wall. It reproduces the cumulative balance defect.
struct PotentialSurface {
  std::vector<double> faces;  // face coordinates, size cells+1
  std::vector<double> times;
  std::vector<std::vector<double>> values;  // per frame, per face
  double corner_defect = 0.0;
};

PotentialSurface mass_potential(const Scenario& sc, const SolveResult& result,
                                double theta);
PotentialSurface weighted_potential(const Scenario& sc,
                                    const SolveResult& result, double theta);

/// The classifying equation for an exponential-state source shape:
/// S'' (S^2 + a2) = a1 (S')^2, with first integral
/// S' exp(-a1 H(S)) = const, H'(S) = 1/(S^2 + a2).
struct SourceOde {
  double a1 = 0.0, a2 = 0.0;
  double t0 = 0.0, t_end = 0.0;
  double s0 = 0.0, sp0 = 0.0;
  bool linear = false;  // a1 = 0: S is exactly affine, W = S' constant
  bool stopped_early = false;
  std::string stop_reason;
  double invariant0 = 0.0;
  double invariant_drift = 0.0;  // max relative drift of the first integral
  std::function<double(double)> S;
  std::function<double(double)> W;  // W = S'
};

/// H(S) per sign of a2 (antiderivative of 1/(S^2 + a2) on the branch
/// containing the trajectory).
double source_ode_h(double s, double a2);

SourceOde integrate_source_ode(double a1, double a2, double t0, double t1,
                               double s0, double sp0);

}  // namespace plasma
