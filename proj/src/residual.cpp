#include "plasma/residual.hpp"

#include <algorithm>
#include <cmath>

#include "plasma/errors.hpp"
#include "plasma/numerics.hpp"

namespace plasma {

double pde_residual(const Scenario& sc, const AnalyticFn& f, double t,
                    double x) {
  const double u = f.u(t, x);
  const double ut = f.ut(t, x);
  const double ux = f.ux(t, x);
  const double uxx = f.uxx(t, x);
  const double G = sc.g.evaluate(x);
  const double Gp = sc.g.differentiate(x);
  const double A = sc.a.evaluate(u);
  const double Ap = sc.a.differentiate(u);
  double r = ut - Gp * A * ux - G * Ap * ux * ux - G * A * uxx -
             sc.w.evaluate(t);
  if (sc.extra_source) r -= sc.extra_source(t, x);
  return r;
}

double max_stencil_residual(const Scenario& sc, const SolutionSamples& s) {
  const int nt = s.frames();
  const int nx = s.grid.cells();
  require_config(nt >= 5 && nx >= 5,
                 "stencil residual: need at least 5 frames and 5 cells");
  const double dx = s.grid.dx();

  double worst = 0.0;
  for (int k = 2; k < nt - 2; ++k) {
    const double t = s.times[k];
    const double W = sc.w.evaluate(t);
    // Five-point Lagrange derivative in time handles non-uniform frames.
    const std::vector<double> ts(s.times.begin() + (k - 2),
                                 s.times.begin() + (k + 3));
    for (int i = 2; i < nx - 2; ++i) {
      const double x = s.grid.center(i);
      const double u = s.data[k][i];
      std::vector<double> us(5);
      for (int j = 0; j < 5; ++j) us[j] = s.data[k - 2 + j][i];
      const double ut = lagrange_derivative(ts, us, t);
      const double ux =
          central_d1_o4(s.data[k][i - 2], s.data[k][i - 1], s.data[k][i + 1],
                        s.data[k][i + 2], dx);
      const double uxx =
          central_d2_o4(s.data[k][i - 2], s.data[k][i - 1], u, s.data[k][i + 1],
                        s.data[k][i + 2], dx);
      const double G = sc.g.evaluate(x);
      const double Gp = sc.g.differentiate(x);
      const double A = sc.a.evaluate(u);
      const double Ap = sc.a.differentiate(u);
      double r = ut - Gp * A * ux - G * Ap * ux * ux - G * A * uxx - W;
      if (sc.extra_source) r -= sc.extra_source(t, x);
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

}  // namespace plasma
