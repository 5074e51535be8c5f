#pragma once

#include <string>
#include <vector>

#include "plasma/coefficient.hpp"
#include "plasma/grid.hpp"
#include "plasma/residual.hpp"
#include "plasma/scenario.hpp"

namespace plasma {

/// Seven-parameter equivalence transformation of the transport equation:
///
///   t~ = e4 t + e1,  x~ = e5 x + e2,  u~ = e6 u + e3,
///   A~(u~) = e7 A((u~ - e3)/e6),
///   G~(x~) = (e5^2 / (e4 e7)) G((x~ - e2)/e5),
///   W~(t~) = (e6 / e4) W((t~ - e1)/e4),
///
/// with e4..e7 nonzero. A field solving the original equation maps to a
/// field solving the transformed one; the physical flux G A u_x picks up
/// the factor e5 e6 / e4.
struct EquivTransform {
  double e1 = 0.0, e2 = 0.0, e3 = 0.0;  // shifts of t, x, u
  double e4 = 1.0, e5 = 1.0, e6 = 1.0;  // scales of t, x, u
  double e7 = 1.0;                      // scale of A

  static EquivTransform identity() { return {}; }

  /// Composite transform equal to applying `inner` first, then *this.
  EquivTransform after(const EquivTransform& inner) const;
  EquivTransform inverse() const;
  /// Config error when a scale is zero or any entry non-finite.
  void validate() const;

  double map_t(double t) const { return e4 * t + e1; }
  double map_x(double x) const { return e5 * x + e2; }
  double map_u(double u) const { return e6 * u + e3; }
  double unmap_t(double t) const { return (t - e1) / e4; }
  double unmap_x(double x) const { return (x - e2) / e5; }
  double unmap_u(double u) const { return (u - e3) / e6; }
  double flux_factor() const { return e5 * e6 / e4; }

  bool is_identity() const;
  nlohmann::json to_json() const;
  static EquivTransform from_json(const nlohmann::json& j);
};

/// Transformed diffusivity profile. Shapes closed under the transform
/// map to themselves with adjusted parameters; shapes pushed out of the
/// family (e.g. a shifted power law) fall back to a dense table over
/// [new_xlo, new_xhi] and a note is appended to `warnings`.
CoefficientFn transform_g(const CoefficientFn& g, const EquivTransform& T,
                          double new_xlo, double new_xhi,
                          std::vector<std::string>* warnings = nullptr);

/// Transformed state dependence. Closed-form shapes that the transform
/// pushes out of the family raise a config error (their natural domain in
/// u~ is unbounded, so a table fallback would be arbitrary); tabulated
/// shapes are resampled over the image of their knot range.
CoefficientFn transform_a(const CoefficientFn& a, const EquivTransform& T,
                          std::vector<std::string>* warnings = nullptr);

/// Transformed source. Falls back to a table over [new_tlo, new_thi]
/// when pushed out of the family, with a warning.
CoefficientFn transform_w(const CoefficientFn& w, const EquivTransform& T,
                          double new_tlo, double new_thi,
                          std::vector<std::string>* warnings = nullptr);

/// Full transformed problem: coefficients, box, initial state, boundary
/// data and extra source all mapped consistently. Requires e4 > 0 and
/// e5 > 0 so the box keeps its orientation.
Scenario apply_equivalence(const Scenario& sc, const EquivTransform& T,
                           std::vector<std::string>* warnings = nullptr);

/// Image of a closed-form field: u~(t~, x~) = e6 u(t, x) + e3 with the
/// chain-rule derivatives.
AnalyticFn map_solution(const AnalyticFn& f, const EquivTransform& T);

/// Image of sampled data. The affine x-map sends a uniform grid to a
/// uniform grid, so no interpolation is involved. Requires e4, e5 > 0.
SolutionSamples map_samples(const SolutionSamples& s, const EquivTransform& T);

}  // namespace plasma
