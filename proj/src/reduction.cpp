#include "plasma/reduction.hpp"

#include <cmath>

#include "plasma/errors.hpp"

namespace plasma {
namespace {

bool near_int(double v) { return std::abs(v - std::round(v)) < 1e-12; }

// Power of a possibly-negative/zero base with domain checks mirroring
// the coefficient evaluators.
double guarded_pow(double base, double expo) {
  if (base == 0.0 && expo <= 0.0) {
    fail_numerical("similarity lift hit 0^negative");
  }
  if (base < 0.0 && !near_int(expo)) {
    fail_numerical("similarity lift hit fractional power of a negative value");
  }
  return std::pow(base, expo);
}

}  // namespace

ReducedProblem::ReducedProblem(const ReductionSpec& spec) : spec_(spec) {
  const double m = spec_.m;
  const double n = spec_.n;
  const double k = spec_.k;
  require_config(spec_.row >= 1 && spec_.row <= 6,
                 "reduction row must be in 1..6");
  require_config(m != 0.0, "reduction requires nonlinear state dependence (m != 0)");
  if (spec_.row == 1) {
    require_config(m != -1.0, "row 1 requires m != -1 (source shape degenerates)");
  }
  if (spec_.row == 2 || spec_.row == 3) {
    require_config(k != 2.0, "rows 2 and 3 require k != 2");
  }
  if (spec_.row == 6) {
    require_config(spec_.g != 0.0, "row 6 needs a nonzero diffusivity multiplier");
  }

  scenario_.a = CoefficientFn::monomial(m);
  switch (spec_.row) {
    case 1:
      scenario_.g = spec_.G;
      scenario_.w = CoefficientFn::power_t(-(m + 1.0) / m);
      profile_ = spec_.G;
      div_sign_ = m;
      break;
    case 2:
      scenario_.g = CoefficientFn::power(spec_.g, k);
      scenario_.w = CoefficientFn::power_t(n);
      profile_ = CoefficientFn::power(spec_.g, k);
      div_sign_ = 1.0;
      break;
    case 3:
      scenario_.g = CoefficientFn::power(spec_.g, k);
      scenario_.w = CoefficientFn::exp_t(spec_.w);
      profile_ = CoefficientFn::power(spec_.g, k);
      div_sign_ = -1.0;
      break;
    case 4:
      scenario_.g = CoefficientFn::exponential(spec_.g);
      scenario_.w = CoefficientFn::power_t(n);
      profile_ = CoefficientFn::exponential(spec_.g);
      div_sign_ = -1.0;
      break;
    case 5:
      scenario_.g = CoefficientFn::exponential(spec_.g);
      scenario_.w = CoefficientFn::exp_t(spec_.w);
      profile_ = CoefficientFn::exponential(spec_.g);
      div_sign_ = -1.0;
      break;
    case 6:
      scenario_.g = CoefficientFn::power(spec_.g, 2.0);
      // m = -1 degenerates t^(-(m+1)/m) to a constant source.
      scenario_.w = (m == -1.0) ? CoefficientFn::constant(1.0)
                                : CoefficientFn::power_t(-(m + 1.0) / m);
      profile_ = CoefficientFn::power(spec_.g, 2.0);
      div_sign_ = 1.0;
      break;
    default:
      break;
  }
  scenario_.name = "similarity-row-" + std::to_string(spec_.row);
}

double ReducedProblem::omega(double t, double x) const {
  const double m = spec_.m;
  const double n = spec_.n;
  const double k = spec_.k;
  switch (spec_.row) {
    case 1:
      return x;
    case 2:
      return x * guarded_pow(t, (m * n + m + 1.0) / (k - 2.0));
    case 3:
      return x * std::exp(m * t / (k - 2.0));
    case 4:
      return x + (m * n + m + 1.0) * std::log(t);
    case 5:
      return x + m * t;
    case 6:
      return x * guarded_pow(t, -spec_.eps / m);
    default:
      return x;
  }
}

double ReducedProblem::x_from_omega(double t, double w) const {
  const double m = spec_.m;
  const double n = spec_.n;
  const double k = spec_.k;
  switch (spec_.row) {
    case 1:
      return w;
    case 2:
      return w / guarded_pow(t, (m * n + m + 1.0) / (k - 2.0));
    case 3:
      return w / std::exp(m * t / (k - 2.0));
    case 4:
      return w - (m * n + m + 1.0) * std::log(t);
    case 5:
      return w - m * t;
    case 6:
      return w / guarded_pow(t, -spec_.eps / m);
    default:
      return w;
  }
}

double ReducedProblem::time_shape(double t) const {
  const double m = spec_.m;
  const double n = spec_.n;
  switch (spec_.row) {
    case 1:
    case 6:
      return guarded_pow(t, -1.0 / m);
    case 2:
    case 4:
      return guarded_pow(t, n + 1.0);
    case 3:
    case 5:
      return std::exp(t);
    default:
      return 1.0;
  }
}

double ReducedProblem::factor(double t) const {
  const double m = spec_.m;
  const double n = spec_.n;
  switch (spec_.row) {
    case 1:
      return -guarded_pow(t, -1.0 - 1.0 / m) / m;
    case 2:
      return -guarded_pow(t, n);
    case 3:
      return std::exp(t);
    case 4:
      return guarded_pow(t, n);
    case 5:
      return std::exp(t);
    case 6:
      return -guarded_pow(t, -1.0 - 1.0 / m);
    default:
      return 1.0;
  }
}

double ReducedProblem::ode_residual(double w, double phi, double dphi,
                                    double ddphi) const {
  const double m = spec_.m;
  const double n = spec_.n;
  const double k = spec_.k;
  const double F = profile_.evaluate(w);
  const double dF = profile_.differentiate(w);
  const double phim = guarded_pow(phi, m);
  const double phim1 = guarded_pow(phi, m - 1.0);
  // (F phi^m phi')' expanded.
  const double div = dF * phim * dphi + F * (m * phim1 * dphi * dphi + phim * ddphi);
  switch (spec_.row) {
    case 1:
      return m * div + phi + m;
    case 2: {
      const double beta = (m * n + m + 1.0) / (k - 2.0);
      return div + 1.0 - (n + 1.0) * phi - beta * w * dphi;
    }
    case 3:
      return phi + (m / (k - 2.0)) * w * dphi - div - spec_.w;
    case 4:
      return (n + 1.0) * phi + (m * n + m + 1.0) * dphi - div - 1.0;
    case 5:
      return m * dphi + phi - div - spec_.w;
    case 6:
      return div + 1.0 + (1.0 / m) * phi + (spec_.eps / m) * w * dphi;
    default:
      return 0.0;
  }
}

double ReducedProblem::second_derivative(double w, double phi,
                                         double dphi) const {
  const double r0 = ode_residual(w, phi, dphi, 0.0);
  const double lead = div_sign_ * profile_.evaluate(w) * guarded_pow(phi, spec_.m);
  if (std::abs(lead) < 1e-300) {
    fail_numerical("reduced equation degenerates: leading coefficient vanished");
  }
  return -r0 / lead;
}

AnalyticFn ReducedProblem::lift(std::function<double(double)> phi,
                                std::function<double(double)> dphi,
                                std::function<double(double)> ddphi) const {
  // omega = sigma(t) x + rho(t) for every row; the chain rule only needs
  // sigma, rho and the time shape T(t).
  const double m = spec_.m;
  const double n = spec_.n;
  const double k = spec_.k;
  const int row = spec_.row;
  const double eps = spec_.eps;

  auto sigma = [row, m, n, k, eps](double t) -> double {
    switch (row) {
      case 1:
        return 1.0;
      case 2:
        return guarded_pow(t, (m * n + m + 1.0) / (k - 2.0));
      case 3:
        return std::exp(m * t / (k - 2.0));
      case 4:
      case 5:
        return 1.0;
      case 6:
        return guarded_pow(t, -eps / m);
      default:
        return 1.0;
    }
  };
  auto dsigma = [row, m, n, k, eps](double t) -> double {
    switch (row) {
      case 2: {
        const double b = (m * n + m + 1.0) / (k - 2.0);
        return b * guarded_pow(t, b - 1.0);
      }
      case 3:
        return (m / (k - 2.0)) * std::exp(m * t / (k - 2.0));
      case 6: {
        const double b = -eps / m;
        return b * guarded_pow(t, b - 1.0);
      }
      default:
        return 0.0;
    }
  };
  auto rho = [row, m, n](double t) -> double {
    switch (row) {
      case 4:
        return (m * n + m + 1.0) * std::log(t);
      case 5:
        return m * t;
      default:
        return 0.0;
    }
  };
  auto drho = [row, m, n](double t) -> double {
    switch (row) {
      case 4:
        return (m * n + m + 1.0) / t;
      case 5:
        return m;
      default:
        return 0.0;
    }
  };
  auto shape = [this](double t) { return time_shape(t); };
  auto dshape = [row, m, n](double t) -> double {
    switch (row) {
      case 1:
      case 6:
        return (-1.0 / m) * guarded_pow(t, -1.0 / m - 1.0);
      case 2:
      case 4:
        return (n + 1.0) * guarded_pow(t, n);
      case 3:
      case 5:
        return std::exp(t);
      default:
        return 0.0;
    }
  };

  AnalyticFn f;
  f.u = [=, this](double t, double x) {
    return shape(t) * phi(omega(t, x));
  };
  f.ut = [=, this](double t, double x) {
    const double w = omega(t, x);
    // d omega/dt at fixed x: sigma' x + rho' = sigma'/sigma (w - rho) + rho'.
    const double wdot = dsigma(t) / sigma(t) * (w - rho(t)) + drho(t);
    return dshape(t) * phi(w) + shape(t) * dphi(w) * wdot;
  };
  f.ux = [=, this](double t, double x) {
    return shape(t) * sigma(t) * dphi(omega(t, x));
  };
  f.uxx = [=, this](double t, double x) {
    const double s = sigma(t);
    return shape(t) * s * s * ddphi(omega(t, x));
  };
  return f;
}

AnalyticFn ReducedProblem::lift(const OdeSolution& sol) const {
  auto phi = [&sol](double w) { return sol.eval(w, 0); };
  auto dphi = [&sol](double w) { return sol.eval(w, 1); };
  auto ddphi = [this, &sol](double w) {
    return second_derivative(w, sol.eval(w, 0), sol.eval(w, 1));
  };
  return lift(phi, dphi, ddphi);
}

ReducedProblem build_reduced(const ReductionSpec& spec) {
  return ReducedProblem(spec);
}

OdeSolution integrate_reduced(const ReducedProblem& rp, double w0, double phi0,
                              double dphi0, double w1) {
  auto rhs = [&rp](double w, const std::vector<double>& y,
                   std::vector<double>& dy) {
    dy[0] = y[1];
    dy[1] = rp.second_derivative(w, y[0], y[1]);
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  opt.stop = [](double, const std::vector<double>& y) {
    return !std::isfinite(y[0]) || !std::isfinite(y[1]) ||
           std::abs(y[0]) > 1e12 || std::abs(y[1]) > 1e12;
  };
  return integrate_ode_dense(rhs, w0, {phi0, dphi0}, w1, opt);
}

double verify_reduction(const ReducedProblem& rp,
                        const std::array<double, 4>& cubic, double t_lo,
                        double t_hi, double w_lo, double w_hi, int nt,
                        int nw) {
  require_config(t_hi > t_lo && w_hi > w_lo, "verification window is empty");
  auto phi = [&cubic](double w) {
    return cubic[0] + w * (cubic[1] + w * (cubic[2] + w * cubic[3]));
  };
  auto dphi = [&cubic](double w) {
    return cubic[1] + w * (2.0 * cubic[2] + w * 3.0 * cubic[3]);
  };
  auto ddphi = [&cubic](double w) {
    return 2.0 * cubic[2] + 6.0 * cubic[3] * w;
  };
  AnalyticFn f = rp.lift(phi, dphi, ddphi);
  const Scenario& sc = rp.scenario();

  double worst = 0.0;
  for (int it = 0; it <= nt; ++it) {
    const double t = t_lo + (t_hi - t_lo) * it / nt;
    for (int iw = 0; iw <= nw; ++iw) {
      const double w = w_lo + (w_hi - w_lo) * iw / nw;
      const double x = rp.x_from_omega(t, w);
      const double r_pde = pde_residual(sc, f, t, x);
      const double r_ode =
          rp.factor(t) * rp.ode_residual(w, phi(w), dphi(w), ddphi(w));
      const double scale =
          std::max({1.0, std::abs(r_pde), std::abs(r_ode)});
      worst = std::max(worst, std::abs(r_pde - r_ode) / scale);
    }
  }
  return worst;
}

}  // namespace plasma
