// SPDX-License-Identifier: Apache-2.0
//
// Channel configuration, the shadowing correlation matrix, derived model
// parameters and the coefficient recursions of the branch-sum SNR series.

#ifndef KMSHADOW_CHANNEL_HPP
#define KMSHADOW_CHANNEL_HPP

#include <string>
#include <vector>

namespace kmshadow {

// Exact-zero kappa entries are replaced by this epsilon before any
// derivation; the eigen-spectrum is singular at kappa = 0.
inline constexpr double kKappaEpsilon = 1e-6;

// Large-but-finite shadowing severity used by the limit-model presets
// that call for m -> infinity.
inline constexpr double kMLarge = 200.0;

struct ChannelConfig {
    int n_branches = 1;
    std::vector<double> mu;    // clusters per branch, > 0
    std::vector<double> kappa; // dominant-to-scatter power ratio, linear, >= 0
    double m = 1.0;            // shadowing severity, > 0, shared by all branches
    double rho = 0.0;          // one-step correlation coefficient, [0, 1)
    double mean_snr = 1.0;     // linear mean SNR after combining
    double series_tol = 1e-12;
    int k_max = 500;

    // Scalar mu/kappa broadcast to every branch.
    static ChannelConfig broadcast(int n_branches, double mu, double kappa,
                                   double m, double rho, double mean_snr);

    // Throws ValidationError on any malformed field and substitutes
    // kKappaEpsilon for exact-zero kappa entries.
    void validate_and_normalize();
};

// Canonical short hash of a configuration, stable across runs.
std::string config_fingerprint(const ChannelConfig &config);

struct CorrelationMatrix {
    int n = 0;
    std::vector<double> entries; // row-major n x n, entry = rho^(|i-j|/2)

    double operator()(int i, int j) const { return entries[static_cast<size_t>(i) * n + j]; }
};

CorrelationMatrix build_correlation_matrix(double rho, int n);

// Everything the evaluation formulas need, computed once per configuration.
// The product term A and the normalizing factor c0 underflow double range
// for extreme severity/correlation combinations, so their logs are the
// authoritative representation.
struct DerivedParams {
    int n_branches = 0;
    double m = 0;
    double U = 0;          // sum of mu_i
    double eta = 0;        // sum of mu_i * (1 + kappa_i)
    double mean_snr = 0;
    double alpha = 0;      // eta / mean_snr
    double alpha_bar = 0;  // alpha / (1 + lambda_min)
    double lambda_min = 0;
    std::vector<double> lambda_all; // eigenvalues of D C, ascending
    double log_A = 0;      // log prod_i (lambda_min / lambda_i)^m
    double A = 0;          // exp(log_A); may underflow to 0, log_A is authoritative
    double log_c0 = 0;     // log of the PDF normalizing factor
    double c0 = 0;         // exp(log_c0); may underflow, log_c0 is authoritative

    // Largest p for which the moment generating function series converges:
    // alpha / (1 + max lambda_i). This is at or below alpha_bar, with
    // equality when all eigenvalues coincide.
    double mgf_abscissa() const;

    // Same channel at a different mean SNR: rescales alpha, alpha_bar and
    // c0; eigenvalues and coefficient series are unaffected.
    DerivedParams with_mean_snr(double new_mean_snr) const;
};

DerivedParams derive_params(const ChannelConfig &config);

// Two bookkeeping variants of the same underlying coefficient sequence.
// TILDE carries the (1+lambda)^-k damping used by the PDF/MGF series;
// BAR is the undamped sequence used by the asymptotic capacity forms.
enum class SeriesVariant { TILDE, BAR };

struct CoefficientSeries {
    SeriesVariant variant = SeriesVariant::TILDE;
    std::vector<double> log_values; // log of coefficient k, k = 0..k_used
    int k_used = 0;
    // Relative contribution of the last computed term to the running
    // series sum; <= series_tol when the recursion converged before k_max.
    double tail_estimate = 0;
    // Log of the total series sum (all variants share truncation metadata
    // computed on the undamped sequence).
    double log_sum = 0;

    double log_value(int k) const { return log_values[static_cast<size_t>(k)]; }
    double value(int k) const;
    int size() const { return static_cast<int>(log_values.size()); }
};

CoefficientSeries delta_coefficients(const DerivedParams &params,
                                     SeriesVariant variant, double tol,
                                     int k_max);

namespace detail {
// The severity factor appears in two places across printed statements of
// the recursion: as m/k per recursion step, or as 1/k steps with a lone m
// folded into the normalizing constant. Both are implemented; density
// normalization singles out kPerStep, which the public API hard-codes.
// The kConstant variant implies pdf mass m * integral(series density), so
// the selection test multiplies its integral by m. See README.md.
enum class MFactorPlacement { kPerStep, kConstant };

CoefficientSeries delta_coefficients_with_placement(
    const DerivedParams &params, SeriesVariant variant, double tol, int k_max,
    MFactorPlacement placement);
} // namespace detail

} // namespace kmshadow

#endif // KMSHADOW_CHANNEL_HPP
