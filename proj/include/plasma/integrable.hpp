#pragma once

#include <array>
#include <functional>
#include <vector>

#include "plasma/grid.hpp"
#include "plasma/numerics.hpp"

namespace plasma {

/// Face-based potential of a cell-centered field: phi(face 0) = base and
/// phi(face i+1) = phi(face i) + dx u_i, so the field is exactly the
/// face-difference quotient of the potential.
std::vector<double> field_to_face_potential(const Grid& g,
                                            const std::vector<double>& u,
                                            double base = 0.0);
/// Exact inverse of field_to_face_potential.
std::vector<double> face_potential_to_field(const Grid& g,
                                            const std::vector<double>& phi);

/// Linearizing transform for u_t = [u^-2 u_x]_x + 1. In the potential
/// variable (u = phi_x) the hodograph image x(phi, t) obeys the viscous
/// flow x_t + x x_phi = x_phi_phi, which the logarithmic substitution
/// x = -2 theta_phi / theta turns into the plain heat equation.
///
/// The class propagates theta and its first two phi-derivatives by
/// convolving the initial data with the Gaussian kernel: an
/// endpoint-corrected trapezoid over the sampled window plus closed-form
/// tail integrals for the constant continuation of x0 beyond the window.
class HeatSolution {
 public:
  /// x0: initial hodograph image on [phi_lo, phi_hi] (continued with its
  /// endpoint values outside); points must be odd and >= 9.
  HeatSolution(const std::function<double(double)>& x0, double phi_lo,
               double phi_hi, int points);

  /// k-th phi-derivative of theta, k in 0..2; requires t > 0.
  double theta(double phi, double t, int k = 0) const;
  /// theta and both derivatives in one kernel pass.
  std::array<double, 3> theta_triple(double phi, double t) const;
  double x(double phi, double t) const;
  double x_phi(double phi, double t) const;
  /// Inverse map: the phi with x(phi, t) = x_target (monotone x0 only).
  double phi_at(double x_target, double t) const;
  /// State value at a spatial point: u = 1/x_phi at the preimage.
  double u_at(double x_target, double t) const;

  /// Below this time the kernel is thinner than the sample spacing and
  /// the initial data is evaluated directly.
  double t_floor() const { return t_floor_; }
  double initial_x0(double phi) const;  // continued initial data

 private:
  double numeric_part(double phi, double t, int k) const;
  double tail_part(double phi, double t, int k) const;

  double lo_ = 0.0, hi_ = 0.0, h_ = 0.0;
  int n_ = 0;
  std::vector<double> s_;                 // sample nodes
  std::vector<double> x0_;                // initial hodograph image
  std::vector<std::vector<double>> psi_;  // theta0 and two derivatives
  std::vector<std::vector<double>> dpsi_; // node derivatives of psi rows
  double tilt_left_ = 0.0, tilt_right_ = 0.0;  // -x0/2 at the window ends
  double theta_lo_ = 1.0, theta_hi_ = 1.0;     // theta0 at the window ends
  double tilt_max_ = 0.0;
  double t_floor_ = 0.0;
  MonotoneCubic x0_interp_;
};

struct RoundtripReport {
  int cells = 0;
  double t_end = 0.0;
  /// Largest final-time gap between the finite-volume solve and the
  /// linearizing transform chain evaluated at the cell centers.
  double max_error = 0.0;
  /// Largest gap (all frames, all cells, Newton-level scale) between the
  /// shifted-state variant and the base solve after removing the shift.
  double shifted_max_error = 0.0;
  /// Final-time fields at the cell centers: the direct solve and the
  /// transform chain.
  std::vector<double> centers;
  std::vector<double> u_direct;
  std::vector<double> u_chain;
};

/// Cross-verification on u_t = [u^-2 u_x]_x + 1: the transform chain
/// supplies wall traces and the reference field; the general solver is
/// run against them from the same initial state. The shifted variant
/// replays the identical discrete problem in the variable v = u + shift.
RoundtripReport integrable_roundtrip(int cells, double t_end, double shift);

/// Exact-front check of the linearization machinery: the travelling
/// kink x = c (1 - tanh(c (phi - c t)/2)) is propagated from its t = 0
/// trace and compared against the closed form; returns the largest
/// absolute mismatch in x over a (phi, t) sample.
double kink_max_error(double speed, int points);

}  // namespace plasma
