#include "plasma/conservation.hpp"

#include <algorithm>
#include <cmath>

#include "plasma/errors.hpp"
#include "plasma/grid.hpp"
#include "plasma/numerics.hpp"

namespace plasma {
namespace {

double state_anchor(const Scenario& sc) {
  return sc.initial ? sc.initial(sc.x_left) : 1.0;
}

void require_records(const SolveResult& r) {
  require_config(!r.history.empty(),
                 "balance audit needs step records (record_history)");
  require_config(!r.samples.times.empty(), "balance audit needs output frames");
}

// Index of the record whose t_new closes each output frame (frames are
// committed exactly at record boundaries).
std::vector<std::size_t> frame_record_index(const SolveResult& r) {
  const auto& times = r.samples.times;
  const double span =
      std::max(1e-300, times.back() - times.front());
  std::vector<std::size_t> idx;
  idx.reserve(times.size());
  std::size_t k = 0;
  for (std::size_t f = 1; f < times.size(); ++f) {
    while (k < r.history.size() &&
           r.history[k].t_new < times[f] - 1e-9 * span) {
      ++k;
    }
    require_numerical(k < r.history.size(),
                      "step records do not reach the requested frame");
    idx.push_back(k);
    ++k;
  }
  return idx;
}

}  // namespace

std::vector<ConservedPair> conserved_pairs(const Scenario& sc) {
  sc.validate();
  const CoefficientFn g = sc.g;
  const CoefficientFn a = sc.a;
  const CoefficientFn w = sc.w;
  const double t0 = sc.t0;
  const double xl = sc.x_left;
  const double u_ref = state_anchor(sc);

  std::vector<ConservedPair> out;
  ConservedPair plain;
  plain.name = "content";
  plain.description =
      "density u - IW(t) with IW the accumulated interior source; "
      "flux -G A u_x";
  plain.density = [w, t0](double t, double, double u) {
    return u - w.antiderivative(t, t0);
  };
  plain.flux = [g, a](double, double x, double u, double ux) {
    return -g.evaluate(x) * a.evaluate(u) * ux;
  };
  out.push_back(std::move(plain));

  ConservedPair weighted;
  weighted.name = "weighted-content";
  weighted.description =
      "density (u - IW(t)) R(x) with R the reciprocal diffusivity "
      "integral from the left wall; flux -(G A u_x R - IA(u))";
  weighted.density = [w, g, t0, xl](double t, double x, double u) {
    return (u - w.antiderivative(t, t0)) * g.reciprocal_antiderivative(x, xl);
  };
  weighted.flux = [g, a, xl, u_ref](double, double x, double u, double ux) {
    return -(g.evaluate(x) * a.evaluate(u) * ux *
                 g.reciprocal_antiderivative(x, xl) -
             a.antiderivative(u, u_ref));
  };
  out.push_back(std::move(weighted));
  return out;
}

BalanceReport mass_balance(const Scenario& sc, const SolveResult& result,
                           double theta) {
  require_records(result);
  const double L = sc.x_right - sc.x_left;
  BalanceReport rep;
  rep.steps = static_cast<long>(result.history.size());
  rep.initial = result.history.front().mass_old;
  rep.final_value = result.history.back().mass_new;

  double running = 0.0;
  double sup = 1.0;
  for (const StepRecord& r : result.history) {
    const double dt = r.t_new - r.t_old;
    const double flux_term =
        dt * (theta * (r.flux_right_new - r.flux_left_new) +
              (1.0 - theta) * (r.flux_right_old - r.flux_left_old));
    const double defect = r.mass_new - r.mass_old - flux_term -
                          L * r.w_integral - r.source_integral;
    running += defect;
    rep.max_step_defect = std::max(rep.max_step_defect, std::abs(defect));
    sup = std::max({sup, std::abs(r.mass_old), std::abs(r.mass_new)});
  }
  rep.cumulative_defect = std::abs(running);
  rep.scale = sup;
  rep.relative = rep.cumulative_defect / rep.scale;
  return rep;
}

BalanceReport weighted_balance(const Scenario& sc, const SolveResult& result,
                               double theta) {
  require_records(result);
  require_config(!sc.extra_source,
                 "weighted balance requires a source-free interior "
                 "(the weighted law holds for the bare equation)");
  const Grid grid = result.samples.grid;
  const int n = grid.cells();
  const double dx = grid.dx();
  const double u_ref = state_anchor(sc);

  std::vector<double> rc(n);
  for (int i = 0; i < n; ++i) {
    rc[i] = sc.g.reciprocal_antiderivative(grid.center(i), sc.x_left);
  }
  const double r_left = 0.0;
  const double r_right = sc.g.reciprocal_antiderivative(sc.x_right, sc.x_left);

  auto weighted_integral = [&](const std::vector<double>& u,
                               double t) -> double {
    const double iw = sc.w.antiderivative(t, sc.t0);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += (u[i] - iw) * rc[i];
    return s * dx;
  };

  BalanceReport rep;
  rep.steps = static_cast<long>(result.history.size());
  rep.initial = weighted_integral(result.samples.data.front(),
                                  result.samples.times.front());
  rep.final_value = weighted_integral(result.samples.data.back(),
                                      result.samples.times.back());

  double flux_sum = 0.0;
  for (const StepRecord& r : result.history) {
    const double dt = r.t_new - r.t_old;
    const double term_new =
        r.flux_right_new * r_right - r.flux_left_new * r_left -
        (sc.a.antiderivative(r.u_right_new, u_ref) -
         sc.a.antiderivative(r.u_left_new, u_ref));
    const double term_old =
        r.flux_right_old * r_right - r.flux_left_old * r_left -
        (sc.a.antiderivative(r.u_right_old, u_ref) -
         sc.a.antiderivative(r.u_left_old, u_ref));
    flux_sum += dt * (theta * term_new + (1.0 - theta) * term_old);
  }
  rep.cumulative_defect =
      std::abs(rep.final_value - rep.initial - flux_sum);
  rep.scale = std::max({1.0, std::abs(rep.initial), std::abs(rep.final_value)});
  rep.relative = rep.cumulative_defect / rep.scale;
  return rep;
}

PotentialSurface mass_potential(const Scenario& sc, const SolveResult& result,
                                double theta) {
  require_records(result);
  const Grid grid = result.samples.grid;
  const int n = grid.cells();
  const double dx = grid.dx();
  const auto frame_idx = frame_record_index(result);

  PotentialSurface ps;
  ps.faces = grid.faces();
  ps.times = result.samples.times;
  ps.values.resize(ps.times.size());

  // Left-wall value: gauge 0 at t0, then the accumulated boundary flux.
  std::vector<double> left(ps.times.size(), 0.0);
  {
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t f = 1; f < ps.times.size(); ++f) {
      for (; k <= frame_idx[f - 1]; ++k) {
        const StepRecord& r = result.history[k];
        const double dt = r.t_new - r.t_old;
        acc += dt * (theta * r.flux_left_new + (1.0 - theta) * r.flux_left_old);
      }
      left[f] = acc;
    }
  }

  for (std::size_t f = 0; f < ps.times.size(); ++f) {
    const double t = ps.times[f];
    const double iw = sc.w.antiderivative(t, sc.t0);
    const std::vector<double>& u = result.samples.data[f];
    std::vector<double> v(n + 1);
    v[0] = left[f];
    for (int i = 0; i < n; ++i) v[i + 1] = v[i] + dx * (u[i] - iw);
    ps.values[f] = std::move(v);
  }

  // Path independence at the far corner: temporal integration of the
  // right-wall flux against the spatial value at the final frame.
  double right_acc = ps.values.front().back();
  for (const StepRecord& r : result.history) {
    const double dt = r.t_new - r.t_old;
    right_acc +=
        dt * (theta * r.flux_right_new + (1.0 - theta) * r.flux_right_old);
  }
  ps.corner_defect = std::abs(ps.values.back().back() - right_acc);
  return ps;
}

PotentialSurface weighted_potential(const Scenario& sc,
                                    const SolveResult& result, double theta) {
  require_records(result);
  require_config(!sc.extra_source,
                 "weighted potential requires a source-free interior");
  const Grid grid = result.samples.grid;
  const int n = grid.cells();
  const double dx = grid.dx();
  const double u_ref = state_anchor(sc);
  const auto frame_idx = frame_record_index(result);

  std::vector<double> rc(n);
  for (int i = 0; i < n; ++i) {
    rc[i] = sc.g.reciprocal_antiderivative(grid.center(i), sc.x_left);
  }
  const double r_right = sc.g.reciprocal_antiderivative(sc.x_right, sc.x_left);

  PotentialSurface ps;
  ps.faces = grid.faces();
  ps.times = result.samples.times;
  ps.values.resize(ps.times.size());

  // d/dt at the left wall is F R - IA(u); R vanishes there by the gauge.
  std::vector<double> left(ps.times.size(), 0.0);
  {
    double acc = 0.0;
    std::size_t k = 0;
    for (std::size_t f = 1; f < ps.times.size(); ++f) {
      for (; k <= frame_idx[f - 1]; ++k) {
        const StepRecord& r = result.history[k];
        const double dt = r.t_new - r.t_old;
        acc -= dt * (theta * sc.a.antiderivative(r.u_left_new, u_ref) +
                     (1.0 - theta) * sc.a.antiderivative(r.u_left_old, u_ref));
      }
      left[f] = acc;
    }
  }

  for (std::size_t f = 0; f < ps.times.size(); ++f) {
    const double t = ps.times[f];
    const double iw = sc.w.antiderivative(t, sc.t0);
    const std::vector<double>& u = result.samples.data[f];
    std::vector<double> z(n + 1);
    z[0] = left[f];
    for (int i = 0; i < n; ++i) z[i + 1] = z[i] + dx * (u[i] - iw) * rc[i];
    ps.values[f] = std::move(z);
  }

  double right_acc = ps.values.front().back();
  for (const StepRecord& r : result.history) {
    const double dt = r.t_new - r.t_old;
    const double term_new = r.flux_right_new * r_right -
                            sc.a.antiderivative(r.u_right_new, u_ref);
    const double term_old = r.flux_right_old * r_right -
                            sc.a.antiderivative(r.u_right_old, u_ref);
    right_acc += dt * (theta * term_new + (1.0 - theta) * term_old);
  }
  ps.corner_defect = std::abs(ps.values.back().back() - right_acc);
  return ps;
}

double source_ode_h(double s, double a2) {
  if (a2 == 0.0) {
    require_numerical(s != 0.0, "first integral undefined at S = 0");
    return -1.0 / s;
  }
  if (a2 > 0.0) {
    const double r = std::sqrt(a2);
    return std::atan(s / r) / r;
  }
  const double r = std::sqrt(-a2);
  require_numerical(s != r && s != -r,
                    "first integral undefined at S^2 = -a2");
  return std::log(std::abs((s - r) / (s + r))) / (2.0 * r);
}

SourceOde integrate_source_ode(double a1, double a2, double t0, double t1,
                               double s0, double sp0) {
  require_config(t1 > t0, "source equation needs a forward window");
  require_config(sp0 != 0.0,
                 "the source W = S' must start nonzero (W == 0 is excluded)");

  SourceOde out;
  out.a1 = a1;
  out.a2 = a2;
  out.t0 = t0;
  out.s0 = s0;
  out.sp0 = sp0;

  if (a1 == 0.0) {
    out.linear = true;
    out.t_end = t1;
    out.invariant0 = sp0;  // exp(0) = 1
    out.invariant_drift = 0.0;
    out.S = [s0, sp0, t0](double t) { return s0 + sp0 * (t - t0); };
    out.W = [sp0](double) { return sp0; };
    return out;
  }

  require_numerical(std::abs(s0 * s0 + a2) > 1e-14 * std::max(1.0, std::abs(a2)),
                    "source equation starts on its singular set S^2 = -a2");

  auto rhs = [a1, a2](double, const std::vector<double>& y,
                      std::vector<double>& dy) {
    const double denom = y[0] * y[0] + a2;
    if (std::abs(denom) < 1e-300) {
      fail_numerical("source equation crossed its singular set");
    }
    dy[0] = y[1];
    dy[1] = a1 * y[1] * y[1] / denom;
  };
  OdeOptions opt;
  opt.rtol = 1e-12;
  opt.atol = 1e-14;
  opt.stop = [a2](double, const std::vector<double>& y) {
    if (!std::isfinite(y[0]) || !std::isfinite(y[1])) return true;
    if (std::abs(y[1]) > 1e12 || std::abs(y[0]) > 1e12) return true;
    // Approach to the singular set (only reachable when a2 <= 0).
    return std::abs(y[0] * y[0] + a2) < 1e-10 * std::max(1.0, std::abs(a2));
  };
  auto sol = std::make_shared<OdeSolution>(
      integrate_ode_dense(rhs, t0, {s0, sp0}, t1, opt));
  out.t_end = sol->t_end();
  out.stopped_early = sol->stopped_early();
  out.stop_reason = sol->stop_reason();

  const double h0 = source_ode_h(s0, a2);
  out.invariant0 = sp0 * std::exp(-a1 * h0);
  double drift = 0.0;
  const int samples = 400;
  for (int i = 0; i <= samples; ++i) {
    const double t = t0 + (out.t_end - t0) * i / samples;
    const double s = sol->eval(t, 0);
    const double sp = sol->eval(t, 1);
    double inv;
    try {
      inv = sp * std::exp(-a1 * source_ode_h(s, a2));
    } catch (const Error&) {
      continue;  // sample sits on the singular set; neighbours carry the check
    }
    drift = std::max(drift,
                     std::abs(inv - out.invariant0) /
                         std::max(1.0, std::abs(out.invariant0)));
  }
  out.invariant_drift = drift;
  out.S = [sol](double t) { return sol->eval(t, 0); };
  out.W = [sol](double t) { return sol->eval(t, 1); };
  return out;
}

}  // namespace plasma
