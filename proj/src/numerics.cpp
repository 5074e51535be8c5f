#include "plasma/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "plasma/errors.hpp"

namespace plasma {

// ========================================================================
// tridiagonal
// ========================================================================

std::vector<double> solve_tridiagonal(const std::vector<double>& lower,
                                      const std::vector<double>& diag,
                                      const std::vector<double>& upper,
                                      const std::vector<double>& rhs) {
  const std::size_t n = diag.size();
  require_config(lower.size() == n && upper.size() == n && rhs.size() == n,
                 "tridiagonal: inconsistent band sizes");
  require_config(n >= 1, "tridiagonal: empty system");
  std::vector<double> c(n), d(n), x(n);
  double beta = diag[0];
  require_numerical(beta != 0.0, "tridiagonal: zero pivot at row 0");
  c[0] = upper[0] / beta;
  d[0] = rhs[0] / beta;
  for (std::size_t i = 1; i < n; ++i) {
    beta = diag[i] - lower[i] * c[i - 1];
    require_numerical(std::abs(beta) > 0.0, "tridiagonal: zero pivot");
    c[i] = upper[i] / beta;
    d[i] = (rhs[i] - lower[i] * d[i - 1]) / beta;
  }
  x[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) x[i] = d[i] - c[i] * x[i + 1];
  return x;
}

// ========================================================================
// natural cubic spline
// ========================================================================

CubicSpline::CubicSpline(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  require_config(n >= 4, "spline: need at least 4 points");
  require_config(ys_.size() == n, "spline: size mismatch");
  for (std::size_t i = 1; i < n; ++i)
    require_config(xs_[i] > xs_[i - 1], "spline: abscissae must increase");

  // natural end conditions: m_0 = m_{n-1} = 0
  std::vector<double> lower(n, 0.0), diag(n, 1.0), upper(n, 0.0), rhs(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = xs_[i] - xs_[i - 1];
    const double hr = xs_[i + 1] - xs_[i];
    lower[i] = hl / 6.0;
    diag[i] = (hl + hr) / 3.0;
    upper[i] = hr / 6.0;
    rhs[i] = (ys_[i + 1] - ys_[i]) / hr - (ys_[i] - ys_[i - 1]) / hl;
  }
  m_ = solve_tridiagonal(lower, diag, upper, rhs);
}

std::size_t CubicSpline::segment(double x) const {
  require_config(x >= xs_.front() - 1e-12 * (1.0 + std::abs(xs_.front())) &&
                     x <= xs_.back() + 1e-12 * (1.0 + std::abs(xs_.back())),
                 "spline: argument outside tabulated range");
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) i = 1;
  if (i >= xs_.size()) i = xs_.size() - 1;
  return i - 1;
}

double CubicSpline::operator()(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h, b = (x - xs_[i]) / h;
  return a * ys_[i] + b * ys_[i + 1] +
         ((a * a * a - a) * m_[i] + (b * b * b - b) * m_[i + 1]) * h * h / 6.0;
}

double CubicSpline::derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h, b = (x - xs_[i]) / h;
  return (ys_[i + 1] - ys_[i]) / h +
         ((3.0 * b * b - 1.0) * m_[i + 1] - (3.0 * a * a - 1.0) * m_[i]) * h /
             6.0;
}

double CubicSpline::second_derivative(double x) const {
  const std::size_t i = segment(x);
  const double h = xs_[i + 1] - xs_[i];
  const double a = (xs_[i + 1] - x) / h, b = (x - xs_[i]) / h;
  return a * m_[i] + b * m_[i + 1];
}

// ========================================================================
// monotone cubic (Fritsch–Carlson)
// ========================================================================

MonotoneCubic::MonotoneCubic(std::vector<double> xs, std::vector<double> ys)
    : xs_(std::move(xs)), ys_(std::move(ys)) {
  const std::size_t n = xs_.size();
  require_config(n >= 2, "monotone cubic: need at least 2 points");
  require_config(ys_.size() == n, "monotone cubic: size mismatch");
  for (std::size_t i = 1; i < n; ++i)
    require_config(xs_[i] > xs_[i - 1],
                   "monotone cubic: abscissae must increase");
  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    h[i] = xs_[i + 1] - xs_[i];
    delta[i] = (ys_[i + 1] - ys_[i]) / h[i];
  }
  d_.assign(n, 0.0);
  d_[0] = delta[0];
  d_[n - 1] = delta[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (delta[i - 1] * delta[i] <= 0.0) {
      d_[i] = 0.0;
    } else {
      const double w1 = 2.0 * h[i] + h[i - 1];
      const double w2 = h[i] + 2.0 * h[i - 1];
      d_[i] = (w1 + w2) / (w1 / delta[i - 1] + w2 / delta[i]);
    }
  }
  // clip endpoint slopes to preserve monotonicity
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (delta[i] == 0.0) {
      d_[i] = d_[i + 1] = 0.0;
    } else {
      const double a = d_[i] / delta[i], b = d_[i + 1] / delta[i];
      const double s = a * a + b * b;
      if (s > 9.0) {
        const double tau = 3.0 / std::sqrt(s);
        d_[i] = tau * a * delta[i];
        d_[i + 1] = tau * b * delta[i];
      }
    }
  }
}

double MonotoneCubic::operator()(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) i = 1;
  if (i >= xs_.size()) i = xs_.size() - 1;
  --i;
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double h00 = (1.0 + 2.0 * t) * (1.0 - t) * (1.0 - t);
  const double h10 = t * (1.0 - t) * (1.0 - t);
  const double h01 = t * t * (3.0 - 2.0 * t);
  const double h11 = t * t * (t - 1.0);
  return h00 * ys_[i] + h * h10 * d_[i] + h01 * ys_[i + 1] + h * h11 * d_[i + 1];
}

double MonotoneCubic::derivative(double x) const {
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin());
  if (i == 0) i = 1;
  if (i >= xs_.size()) i = xs_.size() - 1;
  --i;
  const double h = xs_[i + 1] - xs_[i];
  const double t = (x - xs_[i]) / h;
  const double g00 = 6.0 * t * t - 6.0 * t;
  const double g10 = 3.0 * t * t - 4.0 * t + 1.0;
  const double g01 = -6.0 * t * t + 6.0 * t;
  const double g11 = 3.0 * t * t - 2.0 * t;
  return g00 * ys_[i] / h + g10 * d_[i] + g01 * ys_[i + 1] / h + g11 * d_[i + 1];
}

// ========================================================================
// adaptive Simpson
// ========================================================================

namespace {

double simpson(double a, double fa, double b, double fb, double fm) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_rec(const std::function<double(double)>& f, double a,
                            double fa, double b, double fb, double m,
                            double fm, double whole, double tol, int depth,
                            int max_depth) {
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = simpson(a, fa, m, fm, flm);
  const double right = simpson(m, fm, b, fb, frm);
  const double delta = left + right - whole;
  if (depth >= max_depth)
    fail_numerical("adaptive Simpson: max recursion depth reached");
  if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return adaptive_simpson_rec(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                              depth + 1, max_depth) +
         adaptive_simpson_rec(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                              depth + 1, max_depth);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol, int max_depth) {
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fb = f(b), fm = f(m);
  const double whole = simpson(a, fa, b, fb, fm);
  return adaptive_simpson_rec(f, a, fa, b, fb, m, fm, whole, tol, 0, max_depth);
}

// ========================================================================
// safeguarded scalar root finding
// ========================================================================

double solve_scalar(const std::function<double(double)>& f,
                    const std::function<double(double)>& df, double lo,
                    double hi, double tol, int max_iter) {
  require_config(lo < hi, "solve_scalar: empty bracket");
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  require_numerical(flo * fhi < 0.0, "solve_scalar: root not bracketed");
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < max_iter; ++it) {
    const double fx = f(x);
    if (fx == 0.0) return x;
    if (flo * fx < 0.0) {
      hi = x;
      fhi = fx;
    } else {
      lo = x;
      flo = fx;
    }
    double xn = std::numeric_limits<double>::quiet_NaN();
    if (df) {
      const double dfx = df(x);
      if (dfx != 0.0) xn = x - fx / dfx;
    }
    if (!std::isfinite(xn) || xn <= lo || xn >= hi) xn = 0.5 * (lo + hi);
    if (std::abs(xn - x) <= tol * (1.0 + std::abs(xn))) return xn;
    x = xn;
  }
  return x;
}

// ========================================================================
// Dormand–Prince 5(4)
// ========================================================================

namespace {

// Butcher tableau
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                 a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                 a75 = -2187.0 / 6784, a76 = 11.0 / 84;
// embedded 4th-order weights
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
// dense-output coefficients
constexpr double d1 = -12715105075.0 / 11282082432.0;
constexpr double d3 = 87487479700.0 / 32700410799.0;
constexpr double d4 = -10690763975.0 / 1880347072.0;
constexpr double d5 = 701980252875.0 / 199316789632.0;
constexpr double d6 = -1453857185.0 / 822651844.0;
constexpr double d7 = 69997945.0 / 29380423.0;

}  // namespace

OdeSolution integrate_ode_dense(
    const std::function<void(double, const std::vector<double>&,
                             std::vector<double>&)>& rhs,
    double t0, std::vector<double> y0, double t1, const OdeOptions& opt) {
  OdeSolution sol;
  sol.t_begin_ = t0;
  sol.t_end_ = t0;
  sol.dim_ = y0.size();
  sol.forward_ = t1 >= t0;
  if (t1 == t0) return sol;

  const double dir = sol.forward_ ? 1.0 : -1.0;
  const double span = std::abs(t1 - t0);
  const double hmax = opt.max_step > 0.0 ? opt.max_step : span;
  const std::size_t n = y0.size();

  auto try_rhs = [&](double t, const std::vector<double>& y,
                     std::vector<double>& dy) -> bool {
    try {
      rhs(t, y, dy);
    } catch (const Error&) {
      return false;
    }
    for (double v : dy)
      if (!std::isfinite(v)) return false;
    return true;
  };

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n),
      ynew(n);
  if (!try_rhs(t0, y0, k1))
    fail_numerical("ode: right-hand side undefined at initial point");

  double h = opt.initial_step > 0.0 ? opt.initial_step : span / 100.0;
  h = std::min(h, hmax);
  double t = t0;
  int accepted_steps = 0;

  for (int iter = 0; iter < opt.max_steps; ++iter) {
    if (dir * (t1 - t) <= 0.0) break;
    h = std::min(h, std::abs(t1 - t));
    const double hd = dir * h;

    bool ok = true;
    for (std::size_t i = 0; i < n; ++i) ytmp[i] = y0[i] + hd * a21 * k1[i];
    ok = try_rhs(t + c2 * hd, ytmp, k2);
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y0[i] + hd * (a31 * k1[i] + a32 * k2[i]);
      ok = try_rhs(t + c3 * hd, ytmp, k3);
    }
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y0[i] + hd * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
      ok = try_rhs(t + c4 * hd, ytmp, k4);
    }
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y0[i] + hd * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] +
                                a54 * k4[i]);
      ok = try_rhs(t + c5 * hd, ytmp, k5);
    }
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ytmp[i] = y0[i] + hd * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                a64 * k4[i] + a65 * k5[i]);
      ok = try_rhs(t + hd, ytmp, k6);
    }
    if (ok) {
      for (std::size_t i = 0; i < n; ++i)
        ynew[i] = y0[i] + hd * (a71 * k1[i] + a73 * k3[i] + a74 * k4[i] +
                                a75 * k5[i] + a76 * k6[i]);
      if (!try_rhs(t + hd, ynew, k7)) ok = false;
    }

    if (!ok) {
      h *= 0.25;
      if (h < 1e-14 * span + 1e-300) {
        sol.stopped_early_ = true;
        sol.stop_reason_ =
            "step size underflow (singularity or domain boundary)";
        sol.t_end_ = t;
        return sol;
      }
      continue;
    }

    // error estimate
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double sc =
          opt.atol +
          opt.rtol * std::max(std::abs(y0[i]), std::abs(ynew[i]));
      const double ei = hd * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                              e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      err = std::max(err, std::abs(ei) / sc);
    }

    if (err <= 1.0) {
      // accept: store dense coefficients
      OdeSolutionSegment seg;
      seg.t0 = t;
      seg.h = hd;
      seg.rcont.resize(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double ydiff = ynew[i] - y0[i];
        const double bspl = hd * k1[i] - ydiff;
        seg.rcont[i] = {y0[i], ydiff, bspl, ydiff - hd * k7[i] - bspl,
                        hd * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] +
                              d5 * k5[i] + d6 * k6[i] + d7 * k7[i])};
      }
      sol.segments_.push_back(std::move(seg));
      t += hd;
      y0 = ynew;
      k1 = k7;  // FSAL
      sol.t_end_ = t;
      ++accepted_steps;
      if (opt.stop && opt.stop(t, y0)) {
        sol.stopped_early_ = true;
        sol.stop_reason_ = "stop condition met";
        return sol;
      }
      const double fac =
          std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
      h = std::min(h * fac, hmax);
    } else {
      h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
      if (h < 1e-14 * span + 1e-300) {
        sol.stopped_early_ = true;
        sol.stop_reason_ = "step size underflow (error control stalled)";
        sol.t_end_ = t;
        return sol;
      }
    }
  }
  if (dir * (t1 - sol.t_end_) > 1e-12 * span && !sol.stopped_early_) {
    sol.stopped_early_ = true;
    sol.stop_reason_ = "max step count exceeded";
  }
  return sol;
}

std::size_t OdeSolution::locate(double t) const {
  require_config(!segments_.empty(), "ode solution: empty");
  const double lo = std::min(t_begin_, t_end_);
  const double hi = std::max(t_begin_, t_end_);
  require_config(t >= lo - 1e-9 * (1.0 + hi - lo) &&
                     t <= hi + 1e-9 * (1.0 + hi - lo),
                 "ode solution: evaluation outside integrated span");
  std::size_t a = 0, b = segments_.size();
  while (b - a > 1) {
    const std::size_t m = (a + b) / 2;
    const double start = segments_[m].t0;
    if (forward_ ? (t >= start) : (t <= start))
      a = m;
    else
      b = m;
  }
  return a;
}

std::vector<double> OdeSolution::eval(double t) const {
  std::vector<double> out(dim_);
  for (std::size_t i = 0; i < dim_; ++i) out[i] = eval(t, i);
  return out;
}

double OdeSolution::eval(double t, std::size_t component) const {
  const auto& seg = segments_[locate(t)];
  const double th = (t - seg.t0) / seg.h;
  const double th1 = 1.0 - th;
  const auto& r = seg.rcont[component];
  return r[0] + th * (r[1] + th1 * (r[2] + th * (r[3] + th1 * r[4])));
}

double OdeSolution::eval_derivative(double t, std::size_t component) const {
  const auto& seg = segments_[locate(t)];
  const double th = (t - seg.t0) / seg.h;
  const double th1 = 1.0 - th;
  const auto& r = seg.rcont[component];
  // d/dth of r0 + th (r1 + th1 (r2 + th (r3 + th1 r4)))
  const double inner = r[3] + th1 * r[4];
  const double d_inner = -r[4];
  const double mid = r[2] + th * inner;
  const double d_mid = inner + th * d_inner;
  const double val = r[1] + th1 * mid;
  const double d_val = -mid + th1 * d_mid;
  return (val + th * d_val) / seg.h;
}

// ========================================================================
// Lagrange differentiation
// ========================================================================

double lagrange_derivative(const std::vector<double>& ts,
                           const std::vector<double>& ys, double t) {
  const std::size_t n = ts.size();
  require_config(n >= 2 && ys.size() == n, "lagrange: bad input");
  double acc = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    // derivative of basis polynomial l_j at t
    double dlj = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j) continue;
      double prod = 1.0;
      for (std::size_t m = 0; m < n; ++m) {
        if (m == j || m == i) continue;
        prod *= (t - ts[m]) / (ts[j] - ts[m]);
      }
      dlj += prod / (ts[j] - ts[i]);
    }
    acc += ys[j] * dlj;
  }
  return acc;
}

}  // namespace plasma
