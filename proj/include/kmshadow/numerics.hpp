// SPDX-License-Identifier: Apache-2.0
//
// Generic numeric machinery: adaptive semi-infinite quadrature, one-sided
// numerical differentiation at zero with Richardson extrapolation, and
// bracketed scalar minimization.

#ifndef KMSHADOW_NUMERICS_HPP
#define KMSHADOW_NUMERICS_HPP

#include <functional>

namespace kmshadow::num {

struct QuadratureSpec {
    double abs_tol = 1e-14;
    double rel_tol = 1e-11;
    int max_subdivisions = 2000;
    // Where the finite head [0, split_point] ends and the transformed
    // tail begins for integrals over [0, inf).
    double split_point = 50.0;
    // The integrand behaves like p^(singularity_exponent - 1) near p = 0.
    // Values below 1 trigger the variable change t = p^exponent on the
    // head interval so the transformed integrand is bounded.
    double singularity_exponent = 1.0;
};

// Adaptive Gauss-Kronrod (7, 15) integration of f over the finite
// interval [lo, hi].
double integrate_adaptive(const std::function<double(double)> &f, double lo,
                          double hi, const QuadratureSpec &spec);

// Integral of f over [0, inf). The head interval handles an integrable
// endpoint singularity per QuadratureSpec::singularity_exponent; the tail
// is folded to a finite interval by p = split_point / u.
double integrate_semiinfinite(const std::function<double(double)> &f,
                              const QuadratureSpec &spec);

struct DifferentiationPlan {
    int order = 1; // derivative order n, 1 or 2
    // The ladder below balances stencil truncation, which grows with the
    // log-moment scale of the target, against amplified quadrature noise
    // in the kernel values. Second moments at extreme mean SNR stay below
    // roughly 1e-7 relative error with these settings.
    double step = 5e-4;
    int richardson_levels = 4;
};

struct DerivativeResult {
    double value;
    double error_estimate; // magnitude of the last extrapolation delta
};

// n-th derivative of g at 0 using strictly one-sided stencils: g is
// never evaluated at 0 or below, and never beyond n * step * 2^levels.
// Stencil scales s = step * 2^l (l = 0 .. levels-1) feed a Richardson
// table that removes the O(s), O(s^2), ... error terms in turn.
DerivativeResult derivative_at_zero(const std::function<double(double)> &g,
                                    const DifferentiationPlan &plan);

struct BracketedMinimum {
    double x_star;
    double f_star;
    int iterations;
    double lo;
    double hi;
    bool boundary; // true when the coarse scan bottomed out at an endpoint
};

// Coarse 16-point scan followed by golden-section refinement until the
// bracket width drops below tol. f is never evaluated outside [lo, hi].
BracketedMinimum minimize_scalar(const std::function<double(double)> &f,
                                 double lo, double hi, double tol);

} // namespace kmshadow::num

#endif // KMSHADOW_NUMERICS_HPP
