// SPDX-License-Identifier: Apache-2.0
//
// Special functions used by the capacity statistics: log-gamma, the
// confluent and Gauss hypergeometric functions, the Tricomi function
// and the exponential integral E1. Self-contained implementations with
// stated accuracy targets; no external math library is required.

#ifndef KMSHADOW_SPECFUN_HPP
#define KMSHADOW_SPECFUN_HPP

namespace kmshadow::specfun {

// Natural log of Gamma(x) for x > 0. Relative error <= 1e-12 on (0, 500];
// the Stirling series keeps improving beyond that range.
double log_gamma(double x);

// Kummer confluent hypergeometric 1F1(a; b; z). Guaranteed domain:
// b not a non-positive integer, z in [0, 700], relative error <= 1e-10.
// Negative z is accepted for moderate |z| (alternating series evaluated
// in extended precision; accuracy degrades as exp(|z|)*eps_ld).
double kummer_1f1(double a, double b, double z);

// log(1F1(a; b; z)) for a > 0, b > 0, z >= 0 where every series term is
// positive; usable far beyond the overflow limit of kummer_1f1.
double kummer_1f1_log(double a, double b, double z);

// Gauss hypergeometric 2F1(a, b; c; z) for a, b, c > 0 and z in [0, 1),
// where every series term is positive. Relative error <= 1e-10 away from
// z = 1; cost grows like 1/(1-z) as the argument approaches 1.
double gauss_2f1(double a, double b, double c, double z);

// log(2F1(a, b; c; z)) on the same domain; usable when the value
// overflows a double.
double gauss_2f1_log(double a, double b, double c, double z);

// Tricomi confluent hypergeometric Psi(a, b, z) for a > 0, z > 0.
// Relative error <= 1e-9. Evaluated through the Laplace-type integral
// representation for moderate z and the divergent asymptotic series for
// large z; the integral form is uniform in b, so no special handling is
// needed near integer b.
double tricomi_psi(double a, double b, double z);

// Exponential integral E1(x) = int_x^inf exp(-t)/t dt for x > 0.
// Relative error <= 1e-12.
double exp_integral_e1(double x);

namespace detail {
// Direct power series for 1F1 in extended precision, no transformations.
// Slow and overflow-prone; exists as an independent cross-check for the
// production paths.
double kummer_1f1_series_raw(double a, double b, double z);
} // namespace detail

} // namespace kmshadow::specfun

#endif // KMSHADOW_SPECFUN_HPP
