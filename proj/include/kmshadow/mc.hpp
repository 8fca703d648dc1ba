// SPDX-License-Identifier: Apache-2.0
//
// Counter-based Monte Carlo sampler for the physical channel construction,
// empirical capacity moments and the limit-model presets.

#ifndef KMSHADOW_MC_HPP
#define KMSHADOW_MC_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "kmshadow/channel.hpp"

namespace kmshadow {

struct SampleBatch {
    std::uint64_t seed = 0;
    std::int64_t count = 0;
    std::vector<double> snr_samples; // combined SNR per draw, all > 0
    std::string config_fingerprint;
};

struct EmpiricalMoment {
    int order = 0;
    double estimate = 0;
    double std_error = 0;
    std::int64_t count = 0;
};

// Draws `count` combined-SNR samples. Requires every mu_i to be a positive
// integer and 2m a positive integer; otherwise throws
// SamplerUnsupportedError pointing at the quadrature oracle. Deterministic
// in (seed, config) and independent of thread count: every Gaussian draw
// has a fixed 64-bit counter address derived from the sample index.
SampleBatch sample_batch(const ChannelConfig &config, std::uint64_t seed,
                         std::int64_t count, int threads = 0);

// Mean and standard error of log2^n(1 + gamma) over the batch.
EmpiricalMoment empirical_chos(const SampleBatch &batch, int n);

// Writes the batch as single-column CSV with header `snr_linear`.
void write_batch_csv(const SampleBatch &batch, const std::string &path);

enum class LimitModel { RAYLEIGH, RICIAN, NAKAGAMI, GENERAL };

// Named degenerate cases of the general model. `parameter` is the Rician
// K-factor (linear) for RICIAN, the fading parameter for NAKAGAMI and the
// kappa (linear) for GENERAL; it is ignored for RAYLEIGH. GENERAL keeps a
// finite shadowing severity m = 2 and mu per branch = 2.5 unless
// overridden by the caller afterwards.
ChannelConfig limit_model_config(LimitModel model, double parameter,
                                 int n_branches, double rho, double mean_snr);

const char *limit_model_name(LimitModel model);

namespace detail {
// Power-domain correlation of the squared shadowing amplitudes produced by
// the Gaussian-level AR(1) construction with one-step coefficient sqrt(rho):
// corr(xi_i^2, xi_j^2) = rho^{|i-j|}. Documented here because the sampler's
// correlation convention is a construction choice; tests verify the value
// empirically.
double shadow_power_correlation(double rho, int lag);

// Counter-based uniform/normal draws used by the sampler; exposed for
// statistical self-tests.
double counter_uniform(std::uint64_t key, std::uint64_t counter);
void counter_normal_pair(std::uint64_t key, std::uint64_t counter,
                         double &z0, double &z1);

// Squared shadowing amplitudes alone, `count` rows of n_branches values
// (row-major), built with the same chain construction as the sampler.
// Exposed so tests can check the cross-branch power correlation.
std::vector<double> sample_shadow_powers(double m, double rho, int n_branches,
                                         std::uint64_t seed,
                                         std::int64_t count);
} // namespace detail

} // namespace kmshadow

#endif // KMSHADOW_MC_HPP
