#include "plasma/special.hpp"

#include <cmath>

#include "plasma/errors.hpp"

namespace plasma {

namespace {
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kBranchSwitch = 15.0;
constexpr double kOverflowArg = 709.0;
}  // namespace

double expint_ei_series(double x) {
  require_numerical(x > 0.0, "Ei: series branch requires x > 0");
  // All terms are positive for x > 0, so no cancellation occurs and the
  // sum is accurate to rounding even for large x (just slow there).
  double term = 1.0;
  double sum = 0.0;
  for (int k = 1; k < 100000; ++k) {
    term *= x / k;
    const double add = term / k;
    sum += add;
    if (add < 1e-18 * sum) return kEulerGamma + std::log(x) + sum;
  }
  fail_numerical("Ei: series did not converge");
}

double expint_ei_asymptotic(double x) {
  require_numerical(x > 1.0, "Ei: asymptotic branch requires x > 1");
  // e^x/x * (1 + 1!/x + 2!/x^2 + ...): divergent, so stop at the
  // smallest term; the remainder is comparable to that term.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 1000; ++k) {
    const double next = term * k / x;
    if (next >= term) break;  // terms started growing: truncate
    term = next;
    sum += term;
  }
  return std::exp(x) / x * sum;
}

double expint_ei(double x) {
  require_numerical(x > 0.0, "Ei: argument must be positive");
  require_numerical(x <= kOverflowArg, "Ei: argument overflows double range");
  return x < kBranchSwitch ? expint_ei_series(x) : expint_ei_asymptotic(x);
}

}  // namespace plasma
