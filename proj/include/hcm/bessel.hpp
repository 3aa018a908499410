#pragma once

// Bessel functions of the first kind for the fractional orders that appear
// in the lateral-torsional buckling mode of a thin prestressed ribbon:
// J_{1/4} gives the twist mode shape and J_{-3/4} its derivative.

namespace hcm {

// J_{1/4}(x) for x >= 0.  Absolute accuracy better than 1e-10 over
// [0, 50].  Throws ValidationError for negative or non-finite x.
double bessel_j_quarter(double x);

// J_{-3/4}(x) for x > 0 (diverges like x^{-3/4} at the origin).
double bessel_j_neg_three_quarter(double x);

// First positive zero of J_{1/4}, located by bisection inside [2, 3]
// and cached.  j ~= 2.78089.
double first_zero_j_quarter();

// Twice the first zero of J_{1/4}: the dimensionless constant relating
// the critical load to sqrt(EI*C)/l^2.  ~= 5.5618.
double buckling_mode_constant();

namespace detail {
// Ascending power series; adequate for x <= 12.
double bessel_j_series(double nu, double x);
// Hankel large-argument expansion; adequate for x >= 12.
double bessel_j_asymptotic(double nu, double x);
} // namespace detail

} // namespace hcm
