// SPDX-License-Identifier: Apache-2.0
//
// SNR density, moment generating function, capacity log-moments (exact,
// direct-quadrature and three asymptotic variants), amount of dispersion
// and capacity reliability.

#ifndef KMSHADOW_STATISTICS_HPP
#define KMSHADOW_STATISTICS_HPP

#include "kmshadow/channel.hpp"
#include "kmshadow/numerics.hpp"

namespace kmshadow {

enum class Method { EXACT_MGF, DIRECT_PDF, APPROX_A, APPROX_B, APPROX_C };

enum class ApproxVariant { A, B, C };

// Capacity log-moment summary at one mean-SNR point. lambda1 is the
// ergodic capacity in bits, lambda2 the second log-moment in bits^2.
struct CapacityStats {
    double lambda1 = 0;
    double lambda2 = 0;
    double aod = 0;         // lambda2/lambda1 - lambda1
    double reliability = 0; // 1 - aod
    Method method = Method::EXACT_MGF;
};

// Immutable bundle every evaluator takes: derived parameters, the matching
// coefficient series and the numeric plans. The damped (TILDE) series backs
// pdf/mgf/chos_exact; the undamped (BAR) series backs chos_approx.
struct EvaluationContext {
    DerivedParams params;
    CoefficientSeries coefficients;
    num::QuadratureSpec quadrature;
    num::DifferentiationPlan differentiation;
};

// Convenience builder: derives parameters and the requested series variant
// from a validated config.
EvaluationContext make_context(const ChannelConfig &config,
                               SeriesVariant variant = SeriesVariant::TILDE);

// Density of the combined SNR at gamma > 0.
double pdf(double gamma, const EvaluationContext &ctx);

// Moment generating function E[e^{p gamma}], finite for p strictly below
// the convergence abscissa reported by DerivedParams::mgf_abscissa().
// Throws DomainError naming the abscissa otherwise.
double mgf(double p, const EvaluationContext &ctx);

// Optional per-call diagnostics for the differentiation-based evaluators.
struct ChosDiagnostics {
    double derivative_error = 0; // extrapolation error estimate, nats^n
    bool accuracy_warning = false; // estimate exceeded 1e-4 * |value|
};

// n-th log-moment of capacity, bits^n, n in {1, 2}, via the regularized
// Mellin-transform route differentiated at zero.
double chos_exact(int n, const EvaluationContext &ctx,
                  ChosDiagnostics *diag = nullptr);

// Same moment by direct quadrature of log2^n(1+gamma) against the density.
double chos_direct(int n, const EvaluationContext &ctx);

// Asymptotic variants. A keeps the full hypergeometric kernel, B keeps a
// three-term large-argument expansion, C its leading term only. All expect
// a BAR series in ctx.
double chos_approx(int n, ApproxVariant variant, const EvaluationContext &ctx,
                   ChosDiagnostics *diag = nullptr);

double amount_of_dispersion(const EvaluationContext &ctx, Method method);
double capacity_reliability(const EvaluationContext &ctx, Method method);

// Both moments plus the derived dispersion figures in one pass.
CapacityStats capacity_stats(const EvaluationContext &ctx, Method method);

namespace detail {
// MGF evaluated through the coefficient series instead of the closed
// product form; cross-check path only. Needs a TILDE series in ctx.
double mgf_series(double p, const EvaluationContext &ctx);
// Natural-log capacity moment (nats^n). The bits-mode results divide this
// by ln^n(2) and nothing else; tests assert that relation exactly.
double chos_exact_nats(int n, const EvaluationContext &ctx,
                       ChosDiagnostics *diag);
double chos_approx_nats(int n, ApproxVariant variant,
                        const EvaluationContext &ctx, ChosDiagnostics *diag);
// Regularized moment kernel H(a) = 1 + (1/Gamma(a)) * integral of
// p^{a-1} e^{-p} (M(-p) - 1); analytic at 0 with H(0) = 1. Exposed for
// property tests.
double moment_kernel(double a, const EvaluationContext &ctx);
// First log-moment in nats via the single-integral shortcut
// -integral p^{-1} e^{-p} (M(-p) - 1) dp; cross-check path only.
double first_moment_shortcut_nats(const EvaluationContext &ctx);
// Asymptotic moment kernels behind chos_approx. Exposed for the
// normalization property tests: A and B equal 1 at a = 0 by construction,
// C equals (1 + lambda)^{-m n_branches} there, which is exactly its
// error driver. All expect a BAR series in ctx.
double approx_kernel_a(double a, const EvaluationContext &ctx);
double approx_kernel_b(double a, const EvaluationContext &ctx);
double approx_kernel_c(double a, const EvaluationContext &ctx);
} // namespace detail

} // namespace kmshadow

#endif // KMSHADOW_STATISTICS_HPP
