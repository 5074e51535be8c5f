#pragma once

#include <functional>
#include <vector>

#include "plasma/grid.hpp"
#include "plasma/scenario.hpp"

namespace plasma {

/// A closed-form space-time field with enough derivatives to plug into
/// the transport equation directly.
struct AnalyticFn {
  std::function<double(double, double)> u;    // (t, x)
  std::function<double(double, double)> ut;   // du/dt
  std::function<double(double, double)> ux;   // du/dx
  std::function<double(double, double)> uxx;  // d2u/dx2
};

/// Pointwise defect u_t - G'(x) A(u) u_x - G(x) A'(u) u_x^2
///                       - G(x) A(u) u_xx - W(t) [- extra_source]
/// for a candidate field with known derivatives. Zero iff the field
/// solves the transport equation at (t, x).
double pde_residual(const Scenario& sc, const AnalyticFn& f, double t,
                    double x);

/// Same defect for tabulated samples, using fourth-order central stencils
/// in x and a five-point Lagrange derivative in t. Only points with two
/// neighbours on each side (in both directions) are evaluated; returns
/// the max |residual| over that interior region.
double max_stencil_residual(const Scenario& sc, const SolutionSamples& s);

}  // namespace plasma
