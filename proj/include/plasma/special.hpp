#pragma once

namespace plasma {

/// Exponential integral Ei(x) for x > 0.
///
/// Uses the convergent power series gamma + ln x + sum x^k/(k k!) for
/// x < 15 and the divergent asymptotic expansion e^x/x sum k!/x^k,
/// truncated at its smallest term, for x >= 15. The asymptotic branch
/// carries an irreducible error of order sqrt(2 pi x) e^{-x} (about
/// 4e-6 relative at x = 15, below 1e-12 relative by x = 35); the series
/// branch is exact to rounding. Arguments above ~709 overflow double
/// range and raise a numerical error, as do non-positive arguments.
double expint_ei(double x);

/// Series evaluation alone (valid for any 0 < x < ~700, slow when large).
double expint_ei_series(double x);

/// Asymptotic evaluation alone (meaningful for x >= ~10).
double expint_ei_asymptotic(double x);

}  // namespace plasma
