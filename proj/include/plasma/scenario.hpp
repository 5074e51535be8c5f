#pragma once

#include <functional>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "plasma/coefficient.hpp"
#include "plasma/grid.hpp"

namespace plasma {

/// Boundary condition for one end of the spatial interval.
///
/// Dirichlet pins the state value; Neumann pins the physical flux
/// G(x) A(u) u_x through the boundary face (not the raw gradient), so a
/// homogeneous Neumann wall is exactly insulating regardless of G and A.
struct BoundaryCondition {
  enum class Kind { Dirichlet, NeumannFlux } kind = Kind::Dirichlet;
  std::function<double(double)> value;  // of time

  static BoundaryCondition dirichlet(std::function<double(double)> v);
  static BoundaryCondition dirichlet_const(double v);
  static BoundaryCondition neumann_flux(std::function<double(double)> q);
  static BoundaryCondition neumann_flux_const(double q);
};

/// Full problem description: u_t = [G(x) A(u) u_x]_x + W(t) on
/// [x_left, x_right] x [t0, t1], plus initial state and boundary data.
struct Scenario {
  CoefficientFn g = CoefficientFn::constant(1.0);   // of x
  CoefficientFn a = CoefficientFn::constant(1.0);   // of u
  CoefficientFn w = CoefficientFn::constant(0.0);   // of t

  double x_left = 0.0;
  double x_right = 1.0;
  double t0 = 0.0;
  double t1 = 1.0;

  std::function<double(double)> initial;  // of x
  BoundaryCondition left;
  BoundaryCondition right;

  /// Optional additional source s(t, x), used for manufactured problems.
  std::function<double(double, double)> extra_source;

  std::string name;

  /// Throws a config error when the data cannot define a parabolic
  /// problem: empty box, G not strictly positive on the interval
  /// (sampled densely), time window touching a W singularity, or an
  /// initial state that sits on a pole of A.
  void validate() const;

  /// Serializes coefficients and box only; callable members are omitted.
  nlohmann::json to_json() const;
};

/// Builds and validates a Scenario from its JSON description: coefficient
/// blocks "g"/"a"/"w", a "box" block, an "initial" profile and
/// "left"/"right" boundary blocks (see the repository README for the
/// schema and the supported profile kinds).
Scenario scenario_from_json(const nlohmann::json& j);

}  // namespace plasma
