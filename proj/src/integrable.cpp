#include "plasma/integrable.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>

#include "plasma/coefficient.hpp"
#include "plasma/errors.hpp"
#include "plasma/scenario.hpp"
#include "plasma/solver.hpp"

namespace plasma {
namespace {

// Running integral on a uniform grid, fourth order: Simpson pairs for
// even indices and the three-point half rule for odd ones.
std::vector<double> cumulative_integral(const std::vector<double>& f,
                                        double h) {
  const std::size_t n = f.size();
  std::vector<double> out(n, 0.0);
  for (std::size_t j = 1; j + 1 < n; j += 2) {
    out[j] = out[j - 1] + h / 12.0 * (5.0 * f[j - 1] + 8.0 * f[j] - f[j + 1]);
    out[j + 1] = out[j - 1] + h / 3.0 * (f[j - 1] + 4.0 * f[j] + f[j + 1]);
  }
  return out;
}

// Node derivatives on a uniform grid, fourth order (one-sided stencils
// at the two points nearest each end).
std::vector<double> node_derivative(const std::vector<double>& f, double h) {
  const std::size_t n = f.size();
  std::vector<double> d(n, 0.0);
  const double c = 1.0 / (12.0 * h);
  d[0] = c * (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] -
              3.0 * f[4]);
  d[1] = c * (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]);
  for (std::size_t j = 2; j + 2 < n; ++j) {
    d[j] = c * (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]);
  }
  d[n - 2] = -c * (-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] -
                   6.0 * f[n - 4] + f[n - 5]);
  d[n - 1] = -c * (-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] +
                   16.0 * f[n - 4] - 3.0 * f[n - 5]);
  return d;
}

// Integral of the heat kernel against an exponential ramp over one side:
// int_{-inf}^{R} K(phi - s, t) e^{a (s - R)} ds with K the 1/sqrt(4 pi t)
// Gaussian. The mirrored side follows by s -> -s.
double tail_integral_left(double phi, double t, double a, double R) {
  const double arg = (phi - R + 2.0 * a * t) / (2.0 * std::sqrt(t));
  const double expo = a * (phi - R) + a * a * t;
  if (expo > 700.0) fail_numerical("tail integral overflow");
  return std::exp(expo) * 0.5 * std::erfc(arg);
}

double tail_integral_right(double phi, double t, double b, double R) {
  const double arg = (R - phi - 2.0 * b * t) / (2.0 * std::sqrt(t));
  const double expo = b * (phi - R) + b * b * t;
  if (expo > 700.0) fail_numerical("tail integral overflow");
  return std::exp(expo) * 0.5 * std::erfc(arg);
}

}  // namespace

std::vector<double> field_to_face_potential(const Grid& g,
                                            const std::vector<double>& u,
                                            double base) {
  require_config(static_cast<int>(u.size()) == g.cells(),
                 "potential: field size does not match the grid");
  std::vector<double> phi(g.cells() + 1);
  phi[0] = base;
  for (int i = 0; i < g.cells(); ++i) phi[i + 1] = phi[i] + g.dx() * u[i];
  return phi;
}

std::vector<double> face_potential_to_field(const Grid& g,
                                            const std::vector<double>& phi) {
  require_config(static_cast<int>(phi.size()) == g.cells() + 1,
                 "potential: face data does not match the grid");
  std::vector<double> u(g.cells());
  for (int i = 0; i < g.cells(); ++i) u[i] = (phi[i + 1] - phi[i]) / g.dx();
  return u;
}

HeatSolution::HeatSolution(const std::function<double(double)>& x0,
                           double phi_lo, double phi_hi, int points) {
  require_config(points >= 9 && points % 2 == 1,
                 "heat propagation: points must be odd and >= 9");
  require_config(phi_hi > phi_lo, "heat propagation: empty window");
  lo_ = phi_lo;
  hi_ = phi_hi;
  n_ = points;
  h_ = (phi_hi - phi_lo) / (points - 1);
  t_floor_ = 8.0 * h_ * h_;

  s_.resize(n_);
  x0_.resize(n_);
  for (int j = 0; j < n_; ++j) {
    s_[j] = lo_ + j * h_;
    x0_[j] = x0(s_[j]);
    require_numerical(std::isfinite(x0_[j]),
                      "heat propagation: initial data not finite");
  }
  x0_interp_ = MonotoneCubic(s_, x0_);

  // theta0 = exp(-C/2) with C the running integral of x0, gauged at the
  // window midpoint to keep the dynamic range centred.
  std::vector<double> c = cumulative_integral(x0_, h_);
  const double c_mid = c[n_ / 2];
  std::vector<double> theta0(n_);
  for (int j = 0; j < n_; ++j) theta0[j] = std::exp(-0.5 * (c[j] - c_mid));
  theta_lo_ = theta0.front();
  theta_hi_ = theta0.back();
  tilt_left_ = -0.5 * x0_.front();
  tilt_right_ = -0.5 * x0_.back();
  tilt_max_ = 0.0;
  for (double v : x0_) tilt_max_ = std::max(tilt_max_, 0.5 * std::abs(v));

  const std::vector<double> dx0 = node_derivative(x0_, h_);
  psi_.assign(3, std::vector<double>(n_));
  for (int j = 0; j < n_; ++j) {
    psi_[0][j] = theta0[j];
    psi_[1][j] = -0.5 * x0_[j] * theta0[j];
    psi_[2][j] = (0.25 * x0_[j] * x0_[j] - 0.5 * dx0[j]) * theta0[j];
  }
  dpsi_.resize(3);
  for (int k = 0; k < 3; ++k) dpsi_[k] = node_derivative(psi_[k], h_);
}

double HeatSolution::initial_x0(double phi) const {
  if (phi <= lo_) return x0_.front();
  if (phi >= hi_) return x0_.back();
  return x0_interp_(phi);
}

double HeatSolution::numeric_part(double phi, double t, int k) const {
  const double sigma = std::sqrt(2.0 * t);
  const double half = 8.0 * sigma + 2.0 * tilt_max_ * t;
  int jlo = static_cast<int>(std::ceil((phi - half - lo_) / h_));
  int jhi = static_cast<int>(std::floor((phi + half - lo_) / h_));
  jlo = std::max(jlo, 0);
  jhi = std::min(jhi, n_ - 1);
  if (jlo >= jhi) return 0.0;

  const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
  const double inv4t = 1.0 / (4.0 * t);
  const std::vector<double>& p = psi_[k];
  const std::vector<double>& dp = dpsi_[k];

  double sum = 0.0;
  for (int j = jlo; j <= jhi; ++j) {
    const double d = phi - s_[j];
    const double kern = norm * std::exp(-d * d * inv4t);
    const double f = kern * p[j];
    sum += (j == jlo || j == jhi) ? 0.5 * f : f;
  }
  // Euler-Maclaurin endpoint correction: - h^2/12 [f'(b) - f'(a)] with
  // f'(s) = K_s psi + K psi'.
  auto fprime = [&](int j) {
    const double d = phi - s_[j];
    const double kern = norm * std::exp(-d * d * inv4t);
    return kern * (d * 2.0 * inv4t * p[j] + dp[j]);
  };
  return h_ * sum - h_ * h_ / 12.0 * (fprime(jhi) - fprime(jlo));
}

double HeatSolution::tail_part(double phi, double t, int k) const {
  const double a = tilt_left_;
  const double b = tilt_right_;
  const double pa = (k == 0) ? 1.0 : (k == 1 ? a : a * a);
  const double pb = (k == 0) ? 1.0 : (k == 1 ? b : b * b);
  return pa * theta_lo_ * tail_integral_left(phi, t, a, lo_) +
         pb * theta_hi_ * tail_integral_right(phi, t, b, hi_);
}

double HeatSolution::theta(double phi, double t, int k) const {
  require_config(k >= 0 && k <= 2, "theta derivative order must be 0..2");
  require_numerical(t > 0.0, "theta propagation needs t > 0");
  return numeric_part(phi, t, k) + tail_part(phi, t, k);
}

std::array<double, 3> HeatSolution::theta_triple(double phi, double t) const {
  require_numerical(t > 0.0, "theta propagation needs t > 0");
  const double sigma = std::sqrt(2.0 * t);
  const double half = 8.0 * sigma + 2.0 * tilt_max_ * t;
  int jlo = static_cast<int>(std::ceil((phi - half - lo_) / h_));
  int jhi = static_cast<int>(std::floor((phi + half - lo_) / h_));
  jlo = std::max(jlo, 0);
  jhi = std::min(jhi, n_ - 1);

  std::array<double, 3> out = {0.0, 0.0, 0.0};
  if (jlo < jhi) {
    const double norm = 1.0 / std::sqrt(4.0 * M_PI * t);
    const double inv4t = 1.0 / (4.0 * t);
    std::array<double, 3> sum = {0.0, 0.0, 0.0};
    for (int j = jlo; j <= jhi; ++j) {
      const double d = phi - s_[j];
      const double kern = norm * std::exp(-d * d * inv4t);
      const double wgt = (j == jlo || j == jhi) ? 0.5 : 1.0;
      for (int k = 0; k < 3; ++k) sum[k] += wgt * kern * psi_[k][j];
    }
    auto fprime = [&](int j, int k) {
      const double d = phi - s_[j];
      const double kern = norm * std::exp(-d * d * inv4t);
      return kern * (d * 2.0 * inv4t * psi_[k][j] + dpsi_[k][j]);
    };
    for (int k = 0; k < 3; ++k) {
      out[k] =
          h_ * sum[k] - h_ * h_ / 12.0 * (fprime(jhi, k) - fprime(jlo, k));
    }
  }
  for (int k = 0; k < 3; ++k) out[k] += tail_part(phi, t, k);
  return out;
}

double HeatSolution::x(double phi, double t) const {
  if (t <= t_floor_) return initial_x0(phi);
  const double th = theta(phi, t, 0);
  require_numerical(th != 0.0 && std::isfinite(th),
                    "linearized state vanished");
  return -2.0 * theta(phi, t, 1) / th;
}

double HeatSolution::x_phi(double phi, double t) const {
  if (t <= t_floor_) {
    if (phi <= lo_ || phi >= hi_) {
      // constant continuation: pick the interior-sided slope
      return x0_interp_.derivative(std::clamp(phi, lo_, hi_));
    }
    return x0_interp_.derivative(phi);
  }
  const double th = theta(phi, t, 0);
  require_numerical(th != 0.0 && std::isfinite(th),
                    "linearized state vanished");
  const double xx = -2.0 * theta(phi, t, 1) / th;
  return -2.0 * theta(phi, t, 2) / th + 0.5 * xx * xx;
}

double HeatSolution::phi_at(double x_target, double t) const {
  // share one kernel pass between the function and derivative callbacks
  struct Cache {
    double p = std::numeric_limits<double>::quiet_NaN();
    std::array<double, 3> th{};
  };
  auto cache = std::make_shared<Cache>();
  auto fill = [&, cache](double p) {
    if (p != cache->p) {
      cache->th = theta_triple(p, t);
      cache->p = p;
    }
  };
  auto f = [&, cache](double p) -> double {
    if (t <= t_floor_) return initial_x0(p) - x_target;
    fill(p);
    require_numerical(cache->th[0] != 0.0 && std::isfinite(cache->th[0]),
                      "linearized state vanished");
    return -2.0 * cache->th[1] / cache->th[0] - x_target;
  };
  auto df = [&, cache](double p) -> double {
    if (t <= t_floor_) return x_phi(p, t);
    fill(p);
    const double xx = -2.0 * cache->th[1] / cache->th[0];
    return -2.0 * cache->th[2] / cache->th[0] + 0.5 * xx * xx;
  };

  const double sigma = (t > t_floor_) ? std::sqrt(2.0 * t) : h_;
  double blo = lo_ - 4.0 * sigma - 2.0 * tilt_max_ * t - 1.0;
  double bhi = hi_ + 4.0 * sigma + 2.0 * tilt_max_ * t + 1.0;
  double flo = f(blo), fhi = f(bhi);
  const double grow = std::max(1.0, 2.0 * sigma);
  int guard = 0;
  while (flo * fhi > 0.0 && guard++ < 60) {
    blo -= grow;
    bhi += grow;
    flo = f(blo);
    fhi = f(bhi);
  }
  require_numerical(flo * fhi <= 0.0,
                    "inverse hodograph: target outside the attained range");
  return solve_scalar(f, df, blo, bhi, 1e-14);
}

double HeatSolution::u_at(double x_target, double t) const {
  const double p = phi_at(x_target, t);
  double slope;
  if (t <= t_floor_) {
    slope = x_phi(p, t);
  } else {
    const std::array<double, 3> th = theta_triple(p, t);
    require_numerical(th[0] != 0.0 && std::isfinite(th[0]),
                      "linearized state vanished");
    const double xx = -2.0 * th[1] / th[0];
    slope = -2.0 * th[2] / th[0] + 0.5 * xx * xx;
  }
  require_numerical(std::abs(slope) > 1e-300,
                    "inverse hodograph: degenerate slope");
  return 1.0 / slope;
}

RoundtripReport integrable_roundtrip(int cells, double t_end, double shift) {
  require_config(cells >= 8 && t_end > 0.0, "roundtrip: bad parameters");

  auto u0 = [](double x) { return 1.5 + 0.5 * std::sin(M_PI * x + 0.5); };

  // Potential of the initial state and its inverse on a fine grid.
  const int m = 4097;
  const double hx = 1.0 / (m - 1);
  std::vector<double> u0s(m);
  for (int j = 0; j < m; ++j) u0s[j] = u0(j * hx);
  std::vector<double> phi0 = cumulative_integral(u0s, hx);
  const double cap = phi0.back();
  std::vector<double> xs(m);
  for (int j = 0; j < m; ++j) xs[j] = j * hx;
  CubicSpline phi_of_x(xs, phi0);

  const double ul = u0(0.0), ur = u0(1.0);
  auto x0 = [&](double phi) -> double {
    if (phi <= 0.0) return phi / ul;
    if (phi >= cap) return 1.0 + (phi - cap) / ur;
    return solve_scalar([&](double x) { return phi_of_x(x) - phi; },
                        [&](double x) { return phi_of_x.derivative(x); }, 0.0,
                        1.0, 1e-14);
  };

  const double pad = 2.0;
  HeatSolution hs(x0, -pad, cap + pad, 2401);

  // Traces get re-queried at the same times across Newton iterations;
  // memoize the two most recent evaluations per wall.
  auto make_trace = [&hs](double wall, double offset) {
    struct Memo {
      double t[2] = {-1.0, -1.0};
      double v[2] = {0.0, 0.0};
      int next = 0;
    };
    auto memo = std::make_shared<Memo>();
    return [&hs, wall, offset, memo](double t) -> double {
      for (int k = 0; k < 2; ++k)
        if (memo->t[k] == t) return memo->v[k] + offset;
      const double u = hs.u_at(wall, t);
      memo->t[memo->next] = t;
      memo->v[memo->next] = u;
      memo->next = 1 - memo->next;
      return u + offset;
    };
  };

  Scenario sc;
  sc.g = CoefficientFn::constant(1.0);
  sc.a = CoefficientFn::monomial(-2.0);
  sc.w = CoefficientFn::constant(1.0);
  sc.x_left = 0.0;
  sc.x_right = 1.0;
  sc.t0 = 0.0;
  sc.t1 = t_end;
  sc.initial = u0;
  sc.left = BoundaryCondition::dirichlet(make_trace(0.0, 0.0));
  sc.right = BoundaryCondition::dirichlet(make_trace(1.0, 0.0));
  sc.name = "linearizable";

  SolveOptions opt;
  opt.cells = cells;
  opt.theta = 0.5;
  opt.dt = t_end / 512.0;
  opt.newton_tol = 1e-13;
  opt.output_times = {0.0, 0.5 * t_end, t_end};
  const SolveResult base = solve_pde(sc, opt);

  RoundtripReport rep;
  rep.cells = cells;
  rep.t_end = t_end;
  const Grid& grid = base.samples.grid;
  const std::vector<double>& uf = base.samples.data.back();
  for (int i = 0; i < grid.cells(); ++i) {
    const double ref = hs.u_at(grid.center(i), t_end);
    rep.centers.push_back(grid.center(i));
    rep.u_direct.push_back(uf[i]);
    rep.u_chain.push_back(ref);
    rep.max_error = std::max(rep.max_error, std::abs(uf[i] - ref));
  }

  // Identical discrete problem in the shifted variable v = u + shift.
  Scenario sv = sc;
  sv.a = CoefficientFn::shifted_inv_square(shift);
  sv.initial = [u0, shift](double x) { return u0(x) + shift; };
  sv.left = BoundaryCondition::dirichlet(make_trace(0.0, shift));
  sv.right = BoundaryCondition::dirichlet(make_trace(1.0, shift));
  sv.name = "linearizable (shifted state)";
  const SolveResult shifted = solve_pde(sv, opt);

  for (std::size_t f = 0; f < base.samples.data.size(); ++f) {
    for (int i = 0; i < grid.cells(); ++i) {
      rep.shifted_max_error =
          std::max(rep.shifted_max_error,
                   std::abs(shifted.samples.data[f][i] - shift -
                            base.samples.data[f][i]));
    }
  }
  return rep;
}

double kink_max_error(double speed, int points) {
  const double c = speed;
  require_config(c > 0.0, "kink check needs a positive speed");
  auto x0 = [c](double phi) {
    return c * (1.0 - std::tanh(0.5 * c * phi));
  };
  HeatSolution hs(x0, -25.0, 25.0, points);

  double worst = 0.0;
  const double times[] = {0.1, 0.5, 1.0};
  for (double t : times) {
    for (int j = 0; j <= 400; ++j) {
      const double phi = -10.0 + 20.0 * j / 400.0;
      const double got = hs.x(phi, t);
      const double want = c * (1.0 - std::tanh(0.5 * c * (phi - c * t)));
      worst = std::max(worst, std::abs(got - want));
    }
  }
  return worst;
}

}  // namespace plasma
