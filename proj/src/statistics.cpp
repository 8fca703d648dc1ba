// SPDX-License-Identifier: Apache-2.0
//
// Density, moment generating function and the capacity log-moment
// evaluators. The MGF is computed from its closed product form; the series
// expansion stays available as a cross-check. Capacity moments come from
// the regularized Mellin kernel H differentiated at zero.

#include "kmshadow/statistics.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

#include "kmshadow/errors.hpp"
#include "kmshadow/specfun.hpp"

namespace kmshadow {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kLseCutoff = -45.0;

double neg_inf() { return -std::numeric_limits<double>::infinity(); }

void require_variant(const EvaluationContext &ctx, SeriesVariant v,
                     const char *what) {
    if (ctx.coefficients.variant != v) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "%s needs the %s coefficient series in the context", what,
                      v == SeriesVariant::TILDE ? "damped" : "undamped");
        throw ValidationError(buf);
    }
}

// log M(-p) for p >= 0 from the closed product form:
// M(-p) = (1 + p/alpha)^(m N - U) * prod_i (1 + (1+lambda_i) p/alpha)^(-m)
double log_mgf_neg(const DerivedParams &d, double p) {
    const double x = p / d.alpha;
    double lv = (d.m * d.n_branches - d.U) * std::log1p(x);
    for (double li : d.lambda_all) lv -= d.m * std::log1p((1.0 + li) * x);
    return lv;
}

double pow_int_mix(const DerivedParams &d, double p) {
    // log M(p) for p below the convergence abscissa (p may be positive).
    const double x = -p / d.alpha;
    double lv = (d.m * d.n_branches - d.U) * std::log1p(x);
    for (double li : d.lambda_all) lv -= d.m * std::log1p((1.0 + li) * x);
    return lv;
}

// d/dp log M(-p). At p = 0 this is minus the mean SNR.
double log_mgf_neg_slope(const DerivedParams &d, double p) {
    double sv = (d.m * d.n_branches - d.U) / (d.alpha + p);
    for (double li : d.lambda_all)
        sv -= d.m * (1.0 + li) / (d.alpha + (1.0 + li) * p);
    return sv;
}

double chos_nats_from_kernel(const std::function<double(double)> &kernel, int n,
                             const num::DifferentiationPlan &plan,
                             ChosDiagnostics *diag) {
    if (n != 1 && n != 2)
        throw ValidationError("capacity moment order must be 1 or 2");
    num::DifferentiationPlan local = plan;
    local.order = n;
    const num::DerivativeResult der = num::derivative_at_zero(kernel, local);
    const double value = (n == 1 ? -1.0 : 1.0) * der.value;
    if (diag) {
        diag->derivative_error = der.error_estimate;
        diag->accuracy_warning = der.error_estimate > 1e-4 * std::abs(value);
    }
    return value;
}

} // namespace

EvaluationContext make_context(const ChannelConfig &config,
                               SeriesVariant variant) {
    ChannelConfig c = config;
    c.validate_and_normalize();
    EvaluationContext ctx;
    ctx.params = derive_params(c);
    ctx.coefficients =
        delta_coefficients(ctx.params, variant, c.series_tol, c.k_max);
    return ctx;
}

double pdf(double gamma, const EvaluationContext &ctx) {
    require_variant(ctx, SeriesVariant::TILDE, "pdf");
    if (!(gamma > 0)) throw DomainError("pdf requires gamma > 0");
    const DerivedParams &d = ctx.params;
    const CoefficientSeries &s = ctx.coefficients;
    const double lam_frac = d.lambda_min / (1.0 + d.lambda_min);
    const double x = d.alpha * gamma * lam_frac;

    double mx = neg_inf();
    std::vector<double> lt(static_cast<size_t>(s.size()));
    for (int k = 0; k < s.size(); ++k) {
        const double mk = d.m * d.n_branches + k;
        lt[static_cast<size_t>(k)] =
            s.log_value(k) + specfun::kummer_1f1_log(mk, d.U, x);
        mx = std::max(mx, lt[static_cast<size_t>(k)]);
    }
    double acc = 0.0;
    for (double v : lt)
        if (v - mx > kLseCutoff) acc += std::exp(v - mx);

    const double lf = d.log_c0 - d.alpha * gamma + (d.U - 1.0) * std::log(gamma) +
                      mx + std::log(acc);
    return lf < -745.0 ? 0.0 : std::exp(lf);
}

double mgf(double p, const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    const double abscissa = d.mgf_abscissa();
    if (!(p < abscissa)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "mgf undefined at p=%.6g: abscissa of convergence is %.6g",
                      p, abscissa);
        throw DomainError(buf);
    }
    return std::exp(pow_int_mix(d, p));
}

namespace detail {

double mgf_series(double p, const EvaluationContext &ctx) {
    require_variant(ctx, SeriesVariant::TILDE, "mgf_series");
    const DerivedParams &d = ctx.params;
    const double abscissa = d.mgf_abscissa();
    if (!(p < abscissa)) {
        char buf[128];
        std::snprintf(buf, sizeof buf,
                      "mgf series diverges at p=%.6g: abscissa is %.6g", p,
                      abscissa);
        throw DomainError(buf);
    }
    const CoefficientSeries &s = ctx.coefficients;
    const double la = std::log(d.alpha - p);
    const double lab = std::log(d.alpha_bar - p);
    const double base = d.log_c0 + specfun::log_gamma(d.U);

    double mx = neg_inf();
    std::vector<double> lt(static_cast<size_t>(s.size()));
    for (int k = 0; k < s.size(); ++k) {
        const double mk = d.m * d.n_branches + k;
        lt[static_cast<size_t>(k)] = s.log_value(k) - mk * lab + (mk - d.U) * la;
        mx = std::max(mx, lt[static_cast<size_t>(k)]);
    }
    double acc = 0.0;
    for (double v : lt)
        if (v - mx > kLseCutoff) acc += std::exp(v - mx);
    return std::exp(base + mx + std::log(acc));
}

double moment_kernel(double a, const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    if (a == 0.0) return 1.0;
    if (!(a > 0)) throw DomainError("moment kernel requires a >= 0");
    num::QuadratureSpec spec = ctx.quadrature;
    spec.singularity_exponent = 1.0;
    // Integrating the Mellin form by parts once trades the p^(a-1) endpoint
    // singularity for the derivative of e^(-p) (M(-p) - 1), which is bounded
    // on the whole half line. Small probe offsets a, the ones the derivative
    // stencils use, then need no variable change at all.
    auto f = [&](double p) {
        const double lm = log_mgf_neg(d, p);
        const double slope = log_mgf_neg_slope(d, p);
        return std::pow(p, a) * std::exp(-p) *
               (std::exp(lm) * slope - std::expm1(lm));
    };
    const double integral = num::integrate_semiinfinite(f, spec);
    return 1.0 - integral / std::exp(specfun::log_gamma(a + 1.0));
}

double chos_exact_nats(int n, const EvaluationContext &ctx,
                       ChosDiagnostics *diag) {
    auto kernel = [&](double a) { return moment_kernel(a, ctx); };
    return chos_nats_from_kernel(kernel, n, ctx.differentiation, diag);
}

double first_moment_shortcut_nats(const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    num::QuadratureSpec spec = ctx.quadrature;
    spec.singularity_exponent = 1.0;
    auto f = [&](double p) {
        return std::exp(-p) * std::expm1(log_mgf_neg(d, p)) / p;
    };
    return -num::integrate_semiinfinite(f, spec);
}

// Variant A kernel: exponential factor dropped from the Mellin integral,
// leaving a Gauss-hypergeometric reduction. Exact at a = 0.
double approx_kernel_a(double a, const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    const CoefficientSeries &s = ctx.coefficients;
    if (!(d.U - a > 0))
        throw DomainError("variant A needs U larger than the probe offset");
    const double lam = d.lambda_min;
    const double lam_frac = lam / (1.0 + lam);
    const double l1p = std::log1p(lam);

    double mx = neg_inf();
    std::vector<double> lt(static_cast<size_t>(s.size()));
    for (int k = 0; k < s.size(); ++k) {
        const double mk = d.m * d.n_branches + k;
        lt[static_cast<size_t>(k)] =
            s.log_value(k) - k * l1p +
            specfun::gauss_2f1_log(mk, d.U - a, d.U, lam_frac);
        mx = std::max(mx, lt[static_cast<size_t>(k)]);
    }
    double acc = 0.0;
    for (double v : lt)
        if (v - mx > kLseCutoff) acc += std::exp(v - mx);

    const double lv = d.log_A - d.m * d.n_branches * l1p -
                      specfun::log_gamma(d.U) + a * std::log(d.alpha) +
                      specfun::log_gamma(d.U - a) + mx + std::log(acc);
    return std::exp(lv);
}

// Variant B kernel: three-term large-argument expansion with Tricomi
// functions. Exact at a = 0.
double approx_kernel_b(double a, const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    const CoefficientSeries &s = ctx.coefficients;
    const double lam = d.lambda_min;
    const double al = d.alpha;

    // Weighted sums over the undamped coefficients, in log space.
    double mx0 = neg_inf(), mx1 = neg_inf(), mx2 = neg_inf();
    std::vector<double> l0(static_cast<size_t>(s.size()));
    std::vector<double> l1(static_cast<size_t>(s.size()));
    std::vector<double> l2(static_cast<size_t>(s.size()));
    for (int k = 0; k < s.size(); ++k) {
        const double mk = d.m * d.n_branches + k;
        const double base = s.log_value(k);
        l0[static_cast<size_t>(k)] = base;
        l1[static_cast<size_t>(k)] = base + std::log(mk);
        l2[static_cast<size_t>(k)] =
            base + std::log(mk) + std::log(lam * (mk + 1.0) + 2.0);
        mx0 = std::max(mx0, l0[static_cast<size_t>(k)]);
        mx1 = std::max(mx1, l1[static_cast<size_t>(k)]);
        mx2 = std::max(mx2, l2[static_cast<size_t>(k)]);
    }
    auto lse = [](const std::vector<double> &v, double mx) {
        double acc = 0.0;
        for (double e : v)
            if (e - mx > kLseCutoff) acc += std::exp(e - mx);
        return mx + std::log(acc);
    };
    const double ls0 = lse(l0, mx0), ls1 = lse(l1, mx1), ls2 = lse(l2, mx2);

    // Prefactor A * alpha^U in log space, applied to each term separately
    // so extreme configurations cannot overflow intermediates.
    const double lpre = d.log_A + d.U * std::log(al);
    const double t1 =
        std::exp(lpre + ls0) * specfun::tricomi_psi(d.U, d.U + 1.0 - a, al);
    const double t2 = -(a * lam / al) * std::exp(lpre + ls1) *
                      specfun::tricomi_psi(d.U, d.U - a, al);
    const double t3 = (a * (a + 1.0) * lam / (2.0 * al * al)) *
                      std::exp(lpre + ls2) *
                      specfun::tricomi_psi(d.U, d.U - 1.0 - a, al);
    return t1 + t2 + t3;
}

// Variant C kernel: leading term only, as printed; its value at a = 0 is
// (1+lambda)^(-m N), not 1, which is precisely the error this variant
// carries into the moments.
double approx_kernel_c(double a, const EvaluationContext &ctx) {
    const DerivedParams &d = ctx.params;
    const double lv = d.U * std::log(d.alpha) -
                      d.m * d.n_branches * std::log1p(d.lambda_min);
    return std::exp(lv) * specfun::tricomi_psi(d.U, d.U + 1.0 - a, d.alpha);
}

double chos_approx_nats(int n, ApproxVariant variant,
                        const EvaluationContext &ctx, ChosDiagnostics *diag) {
    require_variant(ctx, SeriesVariant::BAR, "chos_approx");
    std::function<double(double)> kernel;
    switch (variant) {
    case ApproxVariant::A:
        kernel = [&](double a) { return approx_kernel_a(a, ctx); };
        break;
    case ApproxVariant::B:
        kernel = [&](double a) { return approx_kernel_b(a, ctx); };
        break;
    case ApproxVariant::C:
        kernel = [&](double a) { return approx_kernel_c(a, ctx); };
        break;
    }
    return chos_nats_from_kernel(kernel, n, ctx.differentiation, diag);
}

} // namespace detail

double chos_exact(int n, const EvaluationContext &ctx, ChosDiagnostics *diag) {
    return detail::chos_exact_nats(n, ctx, diag) / std::pow(kLn2, n);
}

double chos_direct(int n, const EvaluationContext &ctx) {
    if (n != 1 && n != 2)
        throw ValidationError("capacity moment order must be 1 or 2");
    require_variant(ctx, SeriesVariant::TILDE, "chos_direct");
    const DerivedParams &d = ctx.params;
    num::QuadratureSpec spec = ctx.quadrature;
    // Integrand behaves like gamma^(U+n-1) at the origin.
    spec.singularity_exponent = std::min(d.U, 1.0);
    // Scale the finite/tail split with the mean so the head captures the
    // bulk of the density mass.
    spec.split_point = std::max(spec.split_point, 8.0 * d.mean_snr);
    auto f = [&](double g) {
        const double lc = std::log1p(g) / kLn2;
        return (n == 1 ? lc : lc * lc) * pdf(g, ctx);
    };
    return num::integrate_semiinfinite(f, spec);
}

double chos_approx(int n, ApproxVariant variant, const EvaluationContext &ctx,
                   ChosDiagnostics *diag) {
    return detail::chos_approx_nats(n, variant, ctx, diag) / std::pow(kLn2, n);
}

namespace {

double chos_by_method(int n, const EvaluationContext &ctx, Method method) {
    switch (method) {
    case Method::EXACT_MGF:
        return chos_exact(n, ctx);
    case Method::DIRECT_PDF:
        return chos_direct(n, ctx);
    case Method::APPROX_A:
        return chos_approx(n, ApproxVariant::A, ctx);
    case Method::APPROX_B:
        return chos_approx(n, ApproxVariant::B, ctx);
    case Method::APPROX_C:
        return chos_approx(n, ApproxVariant::C, ctx);
    }
    throw ValidationError("unknown evaluation method");
}

} // namespace

CapacityStats capacity_stats(const EvaluationContext &ctx, Method method) {
    CapacityStats out;
    out.method = method;
    out.lambda1 = chos_by_method(1, ctx, method);
    out.lambda2 = chos_by_method(2, ctx, method);
    out.aod = out.lambda2 / out.lambda1 - out.lambda1;
    out.reliability = 1.0 - out.aod;
    return out;
}

double amount_of_dispersion(const EvaluationContext &ctx, Method method) {
    return capacity_stats(ctx, method).aod;
}

double capacity_reliability(const EvaluationContext &ctx, Method method) {
    return capacity_stats(ctx, method).reliability;
}

} // namespace kmshadow
