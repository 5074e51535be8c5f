#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace plasma {

// ========================================================================
// small dense linear algebra
// ========================================================================

/// Thomas algorithm for a tridiagonal system. `lower[0]` and
/// `upper[n-1]` are ignored. Overwrites nothing; returns the solution.
std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& upper,
                                      const std::vector<double>& rhs);

// ========================================================================
// interpolation
// ========================================================================

/// Natural cubic spline through strictly increasing abscissae (>= 4 points).
class CubicSpline {
public:
  CubicSpline() = default;
  CubicSpline(std::vector<double> xs, std::vector<double> ys);

  double operator()(double x) const;
  double derivative(double x) const;
  double second_derivative(double x) const;

  double x_min() const { return xs_.front(); }
  double x_max() const { return xs_.back(); }
  const std::vector<double>& knots() const { return xs_; }
  const std::vector<double>& values() const { return ys_; }

private:
  std::size_t segment(double x) const;
  std::vector<double> xs_, ys_, m_;  // m_: second derivatives at knots
};

/// Monotone piecewise-cubic interpolant (Fritsch–Carlson slopes).
/// Preserves monotonicity of the data; used for invertible profiles.
class MonotoneCubic {
public:
  MonotoneCubic() = default;
  MonotoneCubic(std::vector<double> xs, std::vector<double> ys);
  double operator()(double x) const;
  double derivative(double x) const;

private:
  std::vector<double> xs_, ys_, d_;  // d_: endpoint slopes
};

// ========================================================================
// quadrature
// ========================================================================

/// Adaptive Simpson on [a, b] with absolute tolerance `tol`.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol = 1e-12, int max_depth = 48);

// ========================================================================
// root finding
// ========================================================================

/// Safeguarded Newton: bisection fallback inside [lo, hi]. `df` may be
/// null, in which case pure bisection is used.
double solve_scalar(const std::function<double(double)>& f,
                    const std::function<double(double)>& df, double lo,
                    double hi, double tol = 1e-13, int max_iter = 200);

// ========================================================================
// explicit ODE integration (Dormand–Prince 5(4), dense output)
// ========================================================================

struct OdeOptions {
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 0.0;  // 0: choose automatically
  double max_step = 0.0;      // 0: span
  int max_steps = 2000000;
  /// Optional stop predicate evaluated after each accepted step; when it
  /// returns true the integration stops cleanly at that point.
  std::function<bool(double, const std::vector<double>&)> stop;
};

struct OdeSolutionSegment {
  double t0 = 0.0, h = 0.0;
  std::vector<std::array<double, 5>> rcont;  // per-component dense coefficients
};

/// Result of an adaptive integration. Dense output is a quartic
/// interpolant per accepted step (classic continuous extension).
class OdeSolution {
public:
  double t_begin() const { return t_begin_; }
  double t_end() const { return t_end_; }
  bool stopped_early() const { return stopped_early_; }
  const std::string& stop_reason() const { return stop_reason_; }
  std::size_t dimension() const { return dim_; }
  std::size_t steps_taken() const { return segments_.size(); }

  std::vector<double> eval(double t) const;
  double eval(double t, std::size_t component) const;
  /// Derivative of the dense interpolant (one order lower accuracy).
  double eval_derivative(double t, std::size_t component) const;

  friend OdeSolution integrate_ode_dense(
      const std::function<void(double, const std::vector<double>&,
                               std::vector<double>&)>& rhs,
      double t0, std::vector<double> y0, double t1, const OdeOptions& opt);

private:
  std::size_t locate(double t) const;
  double t_begin_ = 0.0, t_end_ = 0.0;
  bool forward_ = true;
  bool stopped_early_ = false;
  std::string stop_reason_;
  std::size_t dim_ = 0;
  std::vector<OdeSolutionSegment> segments_;
};

/// Integrate y' = rhs(t, y) from t0 to t1 (either direction). The RHS may
/// throw plasma::Error to signal a domain violation; the step is then
/// retried with a smaller h, and if h underflows the integration stops
/// early with the reason recorded (singularity reporting).
OdeSolution integrate_ode_dense(
    const std::function<void(double, const std::vector<double>&,
                             std::vector<double>&)>& rhs,
    double t0, std::vector<double> y0, double t1, const OdeOptions& opt = {});

// ========================================================================
// finite-difference stencils
// ========================================================================

/// Derivative of degree-(n-1) Lagrange interpolant through (ts, ys) at t.
double lagrange_derivative(const std::vector<double>& ts,
                           const std::vector<double>& ys, double t);

/// Fourth-order central first/second derivatives on a uniform grid.
inline double central_d1_o4(double um2, double um1, double up1, double up2,
                            double h) {
  return (um2 - 8.0 * um1 + 8.0 * up1 - up2) / (12.0 * h);
}
inline double central_d2_o4(double um2, double um1, double u0, double up1,
                            double up2, double h) {
  return (-um2 + 16.0 * um1 - 30.0 * u0 + 16.0 * up1 - up2) / (12.0 * h * h);
}

}  // namespace plasma
