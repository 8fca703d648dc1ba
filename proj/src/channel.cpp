// SPDX-License-Identifier: Apache-2.0
//
// Config validation, the correlation matrix, derived parameters via a
// symmetrized eigenproblem, and the coefficient recursion in log domain.

#include "kmshadow/channel.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <string>
#include <vector>

#include "kmshadow/errors.hpp"
#include "kmshadow/specfun.hpp"

namespace kmshadow {

namespace {

// Streaming log-sum-exp against a known maximum; terms far below the
// maximum cannot move the sum at double precision and are skipped.
constexpr double kLseCutoff = -45.0;

double neg_inf() { return -std::numeric_limits<double>::infinity(); }

std::string fmtd(const char *pattern, double v) {
    char buf[128];
    std::snprintf(buf, sizeof buf, pattern, v);
    return buf;
}

} // namespace

ChannelConfig ChannelConfig::broadcast(int n_branches, double mu, double kappa,
                                       double m, double rho, double mean_snr) {
    ChannelConfig config;
    config.n_branches = n_branches;
    config.mu.assign(static_cast<size_t>(std::max(n_branches, 0)), mu);
    config.kappa.assign(static_cast<size_t>(std::max(n_branches, 0)), kappa);
    config.m = m;
    config.rho = rho;
    config.mean_snr = mean_snr;
    return config;
}

void ChannelConfig::validate_and_normalize() {
    if (n_branches < 1)
        throw ValidationError("n_branches must be at least 1");
    if (mu.size() != static_cast<size_t>(n_branches) ||
        kappa.size() != static_cast<size_t>(n_branches))
        throw ValidationError("mu and kappa must each have one entry per branch");
    for (double v : mu)
        if (!(v > 0)) throw ValidationError(fmtd("mu entries must be positive, got %g", v));
    for (double &v : kappa) {
        if (!(v >= 0)) throw ValidationError(fmtd("kappa entries must be non-negative, got %g", v));
        if (v == 0) v = kKappaEpsilon;
    }
    if (!(m > 0)) throw ValidationError(fmtd("m must be positive, got %g", m));
    if (!(rho >= 0) || rho >= 1.0)
        throw ValidationError(fmtd("rho must lie in [0, 1), got %g", rho));
    if (!(mean_snr > 0)) throw ValidationError(fmtd("mean_snr must be positive, got %g", mean_snr));
    if (!(series_tol > 0) || series_tol >= 1.0)
        throw ValidationError(fmtd("series_tol must lie in (0, 1), got %g", series_tol));
    if (k_max < 1) throw ValidationError("k_max must be at least 1");
}

std::string config_fingerprint(const ChannelConfig &config) {
    char buf[64];
    std::string canon;
    auto put = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g|", v);
        canon += buf;
    };
    canon += std::to_string(config.n_branches) + "|";
    for (double v : config.mu) put(v);
    for (double v : config.kappa) put(v);
    put(config.m);
    put(config.rho);
    put(config.mean_snr);
    put(config.series_tol);
    canon += std::to_string(config.k_max);

    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (unsigned char ch : canon) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

CorrelationMatrix build_correlation_matrix(double rho, int n) {
    if (n < 1) throw ValidationError("correlation matrix needs n >= 1");
    if (!(rho >= 0) || rho >= 1.0)
        throw ValidationError(fmtd("rho must lie in [0, 1), got %g", rho));
    CorrelationMatrix out;
    out.n = n;
    out.entries.resize(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.entries[static_cast<size_t>(i) * n + j] =
                std::pow(rho, std::abs(i - j) / 2.0);
    return out;
}

double DerivedParams::mgf_abscissa() const {
    return alpha / (1.0 + lambda_all.back());
}

DerivedParams DerivedParams::with_mean_snr(double new_mean_snr) const {
    if (!(new_mean_snr > 0))
        throw ValidationError(fmtd("mean_snr must be positive, got %g", new_mean_snr));
    DerivedParams out = *this;
    out.mean_snr = new_mean_snr;
    out.alpha = eta / new_mean_snr;
    out.alpha_bar = out.alpha / (1.0 + lambda_min);
    out.log_c0 = log_c0 + U * (std::log(out.alpha) - std::log(alpha));
    out.c0 = std::exp(out.log_c0);
    return out;
}

DerivedParams derive_params(const ChannelConfig &config) {
    ChannelConfig c = config;
    c.validate_and_normalize();
    const int n = c.n_branches;

    // Eigenvalues of D*C with D = diag(mu_i kappa_i / m), via the similar
    // symmetric form D^(1/2) C D^(1/2).
    const CorrelationMatrix corr = build_correlation_matrix(c.rho, n);
    Eigen::MatrixXd sym(n, n);
    std::vector<double> droot(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        droot[static_cast<size_t>(i)] =
            std::sqrt(c.mu[static_cast<size_t>(i)] * c.kappa[static_cast<size_t>(i)] / c.m);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sym(i, j) = droot[static_cast<size_t>(i)] * corr(i, j) * droot[static_cast<size_t>(j)];
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sym);
    if (solver.info() != Eigen::Success)
        throw DegenerateConfigError("eigen decomposition of the shadowing matrix failed");

    DerivedParams params;
    params.n_branches = n;
    params.m = c.m;
    params.mean_snr = c.mean_snr;
    params.lambda_all.assign(solver.eigenvalues().data(),
                             solver.eigenvalues().data() + n);
    std::sort(params.lambda_all.begin(), params.lambda_all.end());
    if (!(params.lambda_all.front() > 0))
        throw DegenerateConfigError(
            fmtd("shadowing matrix is not positive definite (min eigenvalue %g); "
                 "the correlation model requires rho < 1 and positive kappa",
                 params.lambda_all.front()));
    params.lambda_min = params.lambda_all.front();

    params.U = 0;
    params.eta = 0;
    for (int i = 0; i < n; ++i) {
        params.U += c.mu[static_cast<size_t>(i)];
        params.eta += c.mu[static_cast<size_t>(i)] * (1.0 + c.kappa[static_cast<size_t>(i)]);
    }
    params.alpha = params.eta / c.mean_snr;
    params.alpha_bar = params.alpha / (1.0 + params.lambda_min);

    params.log_A = 0;
    for (double li : params.lambda_all)
        params.log_A += c.m * (std::log(params.lambda_min) - std::log(li));
    params.A = std::exp(params.log_A);

    params.log_c0 = params.log_A + params.U * std::log(params.alpha) -
                    c.m * n * std::log1p(params.lambda_min) -
                    specfun::log_gamma(params.U);
    params.c0 = std::exp(params.log_c0);
    return params;
}

double CoefficientSeries::value(int k) const {
    const double lv = log_value(k);
    if (lv > 709.0)
        throw OverflowError(
            fmtd("coefficient exp(%g) exceeds double range; use log_value", lv));
    return std::exp(lv);
}

namespace detail {

CoefficientSeries delta_coefficients_with_placement(
    const DerivedParams &params, SeriesVariant variant, double tol, int k_max,
    MFactorPlacement placement) {
    if (!(tol > 0) || tol >= 1.0)
        throw ValidationError("series tolerance must lie in (0, 1)");
    if (k_max < 1) throw ValidationError("k_max must be at least 1");

    const int n = params.n_branches;
    const double step_m =
        placement == MFactorPlacement::kPerStep ? params.m : 1.0;

    // w_i = 1 - lambda/lambda_i in log form; identical eigenvalues make
    // every g_q vanish and the series collapses to its first term.
    std::vector<double> log_w;
    log_w.reserve(static_cast<size_t>(n));
    for (double li : params.lambda_all) {
        const double w = 1.0 - params.lambda_min / li;
        if (w > 1e-15) log_w.push_back(std::log(w));
    }

    CoefficientSeries series;
    series.variant = variant;
    const double damp =
        variant == SeriesVariant::TILDE ? std::log1p(params.lambda_min) : 0.0;

    std::vector<double> log_bar; // undamped log delta
    log_bar.push_back(0.0);
    series.tail_estimate = 0.0;

    if (!log_w.empty()) {
        std::vector<double> log_wq(log_w); // q-th powers, advanced incrementally
        std::vector<double> log_g;         // log g_q at index q-1
        log_g.reserve(1024);
        auto push_g = [&]() {
            double mw = neg_inf();
            for (double lw : log_wq) mw = std::max(mw, lw);
            double acc = 0.0;
            for (size_t i = 0; i < log_wq.size(); ++i) {
                const double d = log_wq[i] - mw;
                if (d > kLseCutoff) acc += std::exp(d);
                log_wq[i] += log_w[i];
            }
            log_g.push_back(mw + std::log(acc));
        };

        double log_sum_bar = 0.0; // log running sum of undamped deltas
        for (int k = 1; k <= k_max; ++k) {
            if (static_cast<int>(log_g.size()) < k) push_g();
            double mx = neg_inf();
            for (int q = 1; q <= k; ++q) {
                const double e = log_g[static_cast<size_t>(q - 1)] +
                                 log_bar[static_cast<size_t>(k - q)];
                if (e > mx) mx = e;
            }
            double acc = 0.0;
            for (int q = 1; q <= k; ++q) {
                const double e = log_g[static_cast<size_t>(q - 1)] +
                                 log_bar[static_cast<size_t>(k - q)] - mx;
                if (e > kLseCutoff) acc += std::exp(e);
            }
            const double lk = std::log(step_m / k) + mx + std::log(acc);
            if (std::isnan(lk) || lk == std::numeric_limits<double>::infinity())
                throw OverflowError("coefficient recursion produced a non-finite value; "
                                    "rescale the configuration");
            log_bar.push_back(lk);
            log_sum_bar = std::max(lk, log_sum_bar) +
                          std::log1p(std::exp(-std::abs(lk - log_sum_bar)));
            series.tail_estimate = std::exp(lk - log_sum_bar);
            const bool past_peak = lk < log_bar[static_cast<size_t>(k - 1)];
            if (past_peak && series.tail_estimate < tol) break;
        }
    }

    series.k_used = static_cast<int>(log_bar.size()) - 1;
    series.log_values.resize(log_bar.size());
    for (size_t k = 0; k < log_bar.size(); ++k)
        series.log_values[k] = log_bar[k] - damp * static_cast<double>(k);

    double mx = neg_inf();
    for (double lv : series.log_values) mx = std::max(mx, lv);
    double acc = 0.0;
    for (double lv : series.log_values)
        if (lv - mx > kLseCutoff) acc += std::exp(lv - mx);
    series.log_sum = mx + std::log(acc);
    return series;
}

} // namespace detail

CoefficientSeries delta_coefficients(const DerivedParams &params,
                                     SeriesVariant variant, double tol,
                                     int k_max) {
    return detail::delta_coefficients_with_placement(
        params, variant, tol, k_max, detail::MFactorPlacement::kPerStep);
}

} // namespace kmshadow
