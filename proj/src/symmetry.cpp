#include "plasma/symmetry.hpp"

#include <cmath>
#include <sstream>

#include "plasma/errors.hpp"
#include "plasma/numerics.hpp"

namespace plasma {

namespace {

bool near(double a, double b) {
  return std::abs(a - b) <= 1e-9 * std::max({1.0, std::abs(a), std::abs(b)});
}

/// Exponent n when W is proportional to t^n (1/t counts as n = -1).
std::optional<double> source_power(const CoefficientFn& w) {
  if (w.kind() == CoefKind::PowerT) return w.param1();
  if (w.kind() == CoefKind::InvT) return -1.0;
  return std::nullopt;
}

void append_term(std::ostringstream& os, double c, const char* sym,
                 bool& first) {
  if (c == 0.0) return;
  const double mag = std::abs(c);
  if (first) {
    if (c < 0.0) os << "-";
  } else {
    os << (c < 0.0 ? " - " : " + ");
  }
  if (!near(mag, 1.0)) os << mag << " ";
  os << sym;
  first = false;
}

std::string affine_label(const std::array<double, 6>& a) {
  std::ostringstream os;
  bool first = true;
  append_term(os, a[0], "t dt", first);
  append_term(os, a[1], "dt", first);
  append_term(os, a[2], "x dx", first);
  append_term(os, a[3], "dx", first);
  append_term(os, a[4], "u du", first);
  append_term(os, a[5], "du", first);
  if (first) os << "0";
  return os.str();
}

/// Flow of z' = a z + b through z at parameter eps.
double affine_flow_1d(double a, double b, double z, double eps) {
  if (a == 0.0) return z + b * eps;
  return z * std::exp(a * eps) + b * std::expm1(a * eps) / a;
}

}  // namespace

std::string family_name(Family f) {
  switch (f) {
    case Family::AnyState: return "any-state";
    case Family::ExpState: return "exp-state";
    case Family::PowerState: return "power-state";
  }
  return "?";
}

std::string case_name(CaseId id) {
  return family_name(id.family) + "/" + std::to_string(id.index);
}

Generator make_affine_generator(double a, double b, double c, double d,
                                double e, double f) {
  Generator gen;
  gen.affine = std::array<double, 6>{a, b, c, d, e, f};
  gen.label = affine_label(*gen.affine);
  gen.tau = [a, b](double t, double, double) { return a * t + b; };
  gen.xi = [c, d](double, double x, double) { return c * x + d; };
  gen.eta = [e, f](double, double, double u) { return e * u + f; };
  gen.closed_flow = [a, b, c, d, e, f](double eps, double t, double x,
                                       double u) {
    return std::array<double, 3>{affine_flow_1d(a, b, t, eps),
                                 affine_flow_1d(c, d, x, eps),
                                 affine_flow_1d(e, f, u, eps)};
  };
  return gen;
}

bool same_ray(const Generator& lhs, const Generator& rhs) {
  if (!lhs.affine || !rhs.affine) return lhs.label == rhs.label;
  const auto& v = *lhs.affine;
  const auto& w = *rhs.affine;
  // lambda from the largest entry of w, then demand v = lambda w.
  int pivot = 0;
  for (int i = 1; i < 6; ++i)
    if (std::abs(w[i]) > std::abs(w[pivot])) pivot = i;
  if (w[pivot] == 0.0) {
    for (int i = 0; i < 6; ++i)
      if (v[i] != 0.0) return false;
    return true;  // both null
  }
  const double lambda = v[pivot] / w[pivot];
  if (lambda == 0.0) return false;
  double scale = 0.0;
  for (int i = 0; i < 6; ++i)
    scale = std::max(scale, std::abs(v[i]) + std::abs(lambda * w[i]));
  for (int i = 0; i < 6; ++i)
    if (std::abs(v[i] - lambda * w[i]) > 1e-10 * std::max(1.0, scale))
      return false;
  return true;
}

SourceFlow::SourceFlow(CoefficientFn w, double t_ref, double t_lo, double t_hi)
    : w_(std::move(w)), t_ref_(t_ref), t_lo_(t_lo), t_hi_(t_hi) {
  require_config(t_lo < t_hi && t_lo <= t_ref && t_ref <= t_hi,
                 "source flow: reference time must lie in the window");
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto rhs = [this](double t, const std::vector<double>&,
                    std::vector<double>& dy) {
    dy[0] = std::exp(w_.antiderivative(t, t_ref_));
  };
  phat_ = integrate_ode_dense(rhs, t_lo_, {0.0}, t_hi_, opt);
  if (phat_.stopped_early())
    fail_numerical("source flow: could not cover the time window (" +
                   phat_.stop_reason() + ")");
  phat_ref_ = phat_.eval(t_ref_, 0);
}

double SourceFlow::S(double t) const { return w_.antiderivative(t, t_ref_); }

double SourceFlow::expS(double t) const { return std::exp(S(t)); }

double SourceFlow::P(double t) const {
  require_numerical(t >= t_lo_ && t <= t_hi_,
                    "source flow: time outside the covered window");
  return phat_.eval(t, 0) - phat_ref_;
}

double SourceFlow::P_inverse(double p) const {
  const double plo = P(t_lo_), phi = P(t_hi_);
  require_numerical(p >= plo && p <= phi,
                    "source flow: flow parameter leaves the covered time "
                    "window; widen it");
  if (p == plo) return t_lo_;
  if (p == phi) return t_hi_;
  return solve_scalar([this, p](double t) { return P(t) - p; },
                      [this](double t) { return expS(t); }, t_lo_, t_hi_,
                      1e-14, 200);
}

namespace {

std::shared_ptr<SourceFlow> make_source_flow(const Scenario& sc) {
  const double span = sc.t1 - sc.t0;
  double pad_lo = sc.t0 - 0.75 * span;
  // keep clear of a source singularity at t = 0
  const bool singular_at_zero =
      sc.w.kind() == CoefKind::InvT ||
      (sc.w.kind() == CoefKind::PowerT && sc.w.param1() < 0.0);
  if (singular_at_zero && sc.t0 > 0.0) pad_lo = std::max(pad_lo, 0.25 * sc.t0);
  return std::make_shared<SourceFlow>(sc.w, sc.t0, pad_lo,
                                      sc.t1 + 0.75 * span);
}

/// The two generators valid for exponential state dependence and
/// arbitrary G, W: exp(-S)(dt + W du) and its scaling companion.
std::vector<Generator> exp_state_core(const Scenario& sc) {
  auto sf = make_source_flow(sc);
  CoefficientFn w = sc.w;

  Generator g1;
  g1.label = "e^{-S(t)} (dt + W(t) du)";
  g1.tau = [sf](double t, double, double) { return std::exp(-sf->S(t)); };
  g1.xi = [](double, double, double) { return 0.0; };
  g1.eta = [sf, w](double t, double, double) {
    return w.evaluate(t) * std::exp(-sf->S(t));
  };
  g1.closed_flow = [sf](double eps, double t, double x, double u) {
    const double tn = sf->P_inverse(sf->P(t) + eps);
    return std::array<double, 3>{tn, x, u + sf->S(tn) - sf->S(t)};
  };

  Generator g2;
  g2.label = "e^{-S(t)} P(t) dt + (W(t) e^{-S(t)} P(t) - 1) du";
  g2.tau = [sf](double t, double, double) {
    return std::exp(-sf->S(t)) * sf->P(t);
  };
  g2.xi = [](double, double, double) { return 0.0; };
  g2.eta = [sf, w](double t, double, double) {
    return w.evaluate(t) * std::exp(-sf->S(t)) * sf->P(t) - 1.0;
  };
  g2.closed_flow = [sf](double eps, double t, double x, double u) {
    const double tn = sf->P_inverse(sf->P(t) * std::exp(eps));
    return std::array<double, 3>{tn, x, u + sf->S(tn) - sf->S(t) - eps};
  };
  return {g1, g2};
}

bool is_null(const Generator& g) {
  if (!g.affine) return false;
  for (double c : *g.affine)
    if (c != 0.0) return false;
  return true;
}

void push_affine(std::vector<Generator>& out, double a, double b, double c,
                 double d, double e, double f) {
  Generator g = make_affine_generator(a, b, c, d, e, f);
  if (!is_null(g)) out.push_back(std::move(g));
}

}  // namespace

std::vector<Generator> catalog(CaseId id, const Scenario& sc) {
  std::vector<Generator> out;
  const auto wpow = source_power(sc.w);
  const bool w_exp = sc.w.kind() == CoefKind::ExpT;

  auto need = [&](bool ok, const char* what) {
    require_config(ok, "catalog " + case_name(id) +
                           ": scenario does not fit this case (" + what + ")");
  };

  switch (id.family) {
    case Family::AnyState:
      switch (id.index) {
        case 1: {
          need(sc.g.kind() == CoefKind::Power, "G must be a power of x");
          need(wpow && near(*wpow, -1.0), "W must be proportional to 1/t");
          const double a = sc.g.param2();
          push_affine(out, a - 2.0, 0, -1.0, 0, 0, 0);
          return out;
        }
        case 2:
          need(sc.g.kind() == CoefKind::Exponential, "G must be e^x");
          need(wpow && near(*wpow, -1.0), "W must be proportional to 1/t");
          push_affine(out, 1.0, 0, 0, -1.0, 0, 0);
          return out;
        case 3:
          need(sc.g.kind() == CoefKind::Power && near(sc.g.param2(), 2.0),
               "G must be proportional to x^2");
          push_affine(out, 0, 0, 1.0, 0, 0, 0);
          return out;
        case 4:
          need(sc.g.is_constant(), "G must be constant");
          push_affine(out, 0, 0, 0, 1.0, 0, 0);
          return out;
        case 5:
          need(sc.g.is_constant(), "G must be constant");
          need(wpow && near(*wpow, -1.0), "W must be proportional to 1/t");
          push_affine(out, 0, 0, 0, 1.0, 0, 0);
          push_affine(out, 2.0, 0, 1.0, 0, 0, 0);
          return out;
      }
      break;

    case Family::ExpState:
      need(sc.a.kind() == CoefKind::ExpU, "A must be e^u");
      need(sc.w.is_varying(), "W must depend on t");
      switch (id.index) {
        case 1:
          return exp_state_core(sc);
        case 2:
          fail_config("catalog " + case_name(id) +
                      ": the implicitly-defined diffusivity case has no "
                      "constructive recognition rule");
        case 3: {
          need(sc.g.is_constant(), "G must be constant");
          out = exp_state_core(sc);
          push_affine(out, 0, 0, 0, 1.0, 0, 0);
          push_affine(out, 0, 0, 1.0, 0, 0, 2.0);
          return out;
        }
      }
      break;

    case Family::PowerState: {
      need(sc.a.kind() == CoefKind::Monomial, "A must be a power of u");
      const double m = sc.a.param1();
      switch (id.index) {
        case 1:
          need(!near(m, -1.0) && m != 0.0, "exponent m must avoid 0 and -1");
          need(wpow && near(*wpow, -(m + 1.0) / m),
               "W must be proportional to t^(-(m+1)/m)");
          push_affine(out, m, 0, 0, 0, -1.0, 0);
          return out;
        case 2: {
          need(sc.g.kind() == CoefKind::Power, "G must be a power of x");
          need(static_cast<bool>(wpow), "W must be a power of t");
          const double k = sc.g.param2(), n = *wpow;
          push_affine(out, k - 2.0, 0, -(m * n + m + 1.0), 0,
                      (k - 2.0) * (n + 1.0), 0);
          return out;
        }
        case 3: {
          need(sc.g.kind() == CoefKind::Power, "G must be a power of x");
          need(w_exp, "W must be proportional to e^t");
          const double k = sc.g.param2();
          push_affine(out, 0, k - 2.0, -m, 0, k - 2.0, 0);
          return out;
        }
        case 4: {
          need(sc.g.kind() == CoefKind::Exponential, "G must be e^x");
          need(static_cast<bool>(wpow), "W must be a power of t");
          const double n = *wpow;
          push_affine(out, 1.0, 0, 0, -(m * n + m + 1.0), n + 1.0, 0);
          return out;
        }
        case 5:
          need(sc.g.kind() == CoefKind::Exponential, "G must be e^x");
          need(w_exp, "W must be proportional to e^t");
          push_affine(out, 0, 1.0, 0, -m, 1.0, 0);
          return out;
        case 6:
          need(sc.g.kind() == CoefKind::Power && near(sc.g.param2(), 2.0),
               "G must be proportional to x^2");
          need(!near(m, -1.0) && m != 0.0, "exponent m must avoid 0 and -1");
          need(wpow && near(*wpow, -(m + 1.0) / m),
               "W must be proportional to t^(-(m+1)/m)");
          push_affine(out, 0, 0, 1.0, 0, 0, 0);
          push_affine(out, m, 0, 0, 0, -1.0, 0);
          return out;
        case 7: {
          need(sc.g.is_constant(), "G must be constant");
          need(static_cast<bool>(wpow), "W must be a power of t");
          const double n = *wpow;
          push_affine(out, 0, 0, 0, 1.0, 0, 0);
          push_affine(out, 2.0, 0, m * n + m + 1.0, 0, 2.0 * (n + 1.0), 0);
          return out;
        }
        case 8:
          need(sc.g.is_constant(), "G must be constant");
          need(w_exp, "W must be proportional to e^t");
          push_affine(out, 0, 0, 0, 1.0, 0, 0);
          push_affine(out, 0, 2.0, m, 0, 2.0, 0);
          return out;
      }
      break;
    }
  }
  fail_config("catalog: unknown case " + case_name(id));
}

Generator conjugate_by_reflection(const Generator& gen, double u_inf) {
  Generator out;
  out.label = gen.label + " [via v = " + std::to_string(u_inf) + " - u]";
  if (gen.affine) {
    const auto& a = *gen.affine;
    // eta_u = -(e v + f) at v = u_inf - u  =>  e u - (e u_inf + f)
    out.affine = std::array<double, 6>{a[0], a[1], a[2],
                                       a[3], a[4], -(a[4] * u_inf + a[5])};
    Generator plain = make_affine_generator(
        (*out.affine)[0], (*out.affine)[1], (*out.affine)[2], (*out.affine)[3],
        (*out.affine)[4], (*out.affine)[5]);
    out.tau = plain.tau;
    out.xi = plain.xi;
    out.eta = plain.eta;
    out.closed_flow = plain.closed_flow;
    out.label = plain.label;
    return out;
  }
  auto tau = gen.tau, xi = gen.xi, eta = gen.eta;
  out.tau = [tau, u_inf](double t, double x, double u) {
    return tau(t, x, u_inf - u);
  };
  out.xi = [xi, u_inf](double t, double x, double u) {
    return xi(t, x, u_inf - u);
  };
  out.eta = [eta, u_inf](double t, double x, double u) {
    return -eta(t, x, u_inf - u);
  };
  if (gen.closed_flow) {
    auto cf = gen.closed_flow;
    out.closed_flow = [cf, u_inf](double eps, double t, double x, double u) {
      auto r = cf(eps, t, x, u_inf - u);
      return std::array<double, 3>{r[0], r[1], u_inf - r[2]};
    };
  }
  return out;
}

std::array<double, 3> flow_point_numeric(const Generator& gen, double eps,
                                         double t, double x, double u) {
  if (eps == 0.0) return {t, x, u};
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  auto rhs = [&gen](double, const std::vector<double>& y,
                    std::vector<double>& dy) {
    dy[0] = gen.tau(y[0], y[1], y[2]);
    dy[1] = gen.xi(y[0], y[1], y[2]);
    dy[2] = gen.eta(y[0], y[1], y[2]);
  };
  OdeSolution sol = integrate_ode_dense(rhs, 0.0, {t, x, u}, eps, opt);
  if (sol.stopped_early())
    fail_numerical("symmetry flow: " + sol.stop_reason());
  auto y = sol.eval(eps);
  return {y[0], y[1], y[2]};
}

std::array<double, 3> flow_point(const Generator& gen, double eps, double t,
                                 double x, double u) {
  if (gen.closed_flow) return gen.closed_flow(eps, t, x, u);
  return flow_point_numeric(gen, eps, t, x, u);
}

SolutionSamples act_on_solution(const Generator& gen, double eps,
                                const SolutionSamples& s) {
  const int nt = s.frames();
  const int nx = s.grid.cells();
  require_config(nt >= 1 && nx >= 1, "act_on_solution: empty samples");

  auto probe = [&](double t, double x, double u) {
    return flow_point(gen, eps, t, x, u);
  };

  // The x-component of every catalog flow is an affine map independent
  // of t and u; verify that before remapping the grid without
  // interpolation.
  const double xl = probe(s.times.front(), s.grid.x_left(), s.data[0][0])[1];
  const double xr =
      probe(s.times.front(), s.grid.x_right(), s.data[0][nx - 1])[1];
  const double xl_late =
      probe(s.times.back(), s.grid.x_left(), s.data[nt - 1][0])[1];
  require_numerical(xr > xl,
                    "act_on_solution: flow reversed the grid orientation");
  require_numerical(std::abs(xl - xl_late) <= 1e-9 * (xr - xl),
                    "act_on_solution: x-map varies with time; exact grid "
                    "remap impossible");

  SolutionSamples out{Grid(xl, xr, nx), {}, {}};
  out.times.resize(nt);
  out.data.assign(nt, std::vector<double>(nx));
  for (int k = 0; k < nt; ++k) {
    out.times[k] = probe(s.times[k], s.grid.center(0), s.data[k][0])[0];
    for (int i = 0; i < nx; ++i)
      out.data[k][i] = probe(s.times[k], s.grid.center(i), s.data[k][i])[2];
  }
  for (int k = 1; k < nt; ++k)
    require_numerical(out.times[k] > out.times[k - 1],
                      "act_on_solution: flow reversed the frame order");

  // mapped centers must land on the image grid's centers
  const int mid = nx / 2;
  const double cm =
      probe(s.times.front(), s.grid.center(mid), s.data[0][mid])[1];
  require_numerical(std::abs(cm - out.grid.center(mid)) <=
                        1e-9 * std::max(1.0, xr - xl),
                    "act_on_solution: x-map is not affine");
  return out;
}

}  // namespace plasma
