// SPDX-License-Identifier: Apache-2.0
//
// Physical-construction Monte Carlo sampler. Every Gaussian draw has a
// fixed counter address derived from the sample index, so batches are
// bitwise reproducible for a given (seed, config) at any thread count.

#include "kmshadow/mc.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <thread>

#include "kmshadow/errors.hpp"

namespace kmshadow {

namespace {

constexpr double kTwoPi = 6.2831853071795864769;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

std::int64_t nearest_int(double x) {
    return static_cast<std::int64_t>(std::llround(x));
}

bool is_positive_integer(double x) {
    return x >= 0.5 && std::abs(x - static_cast<double>(nearest_int(x))) < 1e-9;
}

struct SamplerLayout {
    int n_branches = 0;
    std::int64_t half_components = 0; // 2m, Gaussian pairs behind one shadow
    std::vector<std::int64_t> clusters; // integer mu per branch
    std::int64_t normals_per_sample = 0;
    double root_rho = 0;
    double innovation = 0; // sqrt(1 - rho)
    std::vector<double> dominant; // sqrt(kappa_i / 2) per branch
    double branch_scale = 0;      // mean_snr / eta
};

SamplerLayout make_layout(const ChannelConfig &config) {
    SamplerLayout lay;
    lay.n_branches = config.n_branches;
    if (!is_positive_integer(2.0 * config.m))
        throw SamplerUnsupportedError(
            "sampler needs 2m to be a positive integer; use the quadrature "
            "evaluators for fractional severity");
    lay.half_components = nearest_int(2.0 * config.m);
    double eta = 0.0;
    std::int64_t total_clusters = 0;
    for (int i = 0; i < config.n_branches; ++i) {
        const double mu = config.mu[static_cast<size_t>(i)];
        if (!is_positive_integer(mu))
            throw SamplerUnsupportedError(
                "sampler needs every mu to be a positive integer; use the "
                "quadrature evaluators for fractional mu");
        lay.clusters.push_back(nearest_int(mu));
        total_clusters += lay.clusters.back();
        const double kap = config.kappa[static_cast<size_t>(i)];
        lay.dominant.push_back(std::sqrt(kap / 2.0));
        eta += mu * (1.0 + kap);
    }
    lay.normals_per_sample =
        static_cast<std::int64_t>(lay.n_branches) * lay.half_components +
        2 * total_clusters;
    lay.root_rho = std::sqrt(config.rho);
    lay.innovation = std::sqrt(1.0 - config.rho);
    lay.branch_scale = config.mean_snr / eta;
    return lay;
}

double standard_normal(std::uint64_t key, std::uint64_t normal_index) {
    const std::uint64_t base = normal_index * 2;
    const double u1 = detail::counter_uniform(key, base);
    const double u2 = detail::counter_uniform(key, base + 1);
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
}

// Combined SNR for one sample index. Gaussian draws are consumed in a
// fixed order: the shadow chain normals (component-major, branch-minor),
// then the in-phase/quadrature cluster normals branch by branch.
double one_sample(const SamplerLayout &lay, std::uint64_t key,
                  std::int64_t sample_index) {
    std::uint64_t idx =
        static_cast<std::uint64_t>(sample_index) *
        static_cast<std::uint64_t>(lay.normals_per_sample);

    std::vector<double> shadow_sq(static_cast<size_t>(lay.n_branches), 0.0);
    for (std::int64_t j = 0; j < lay.half_components; ++j) {
        double z = 0.0;
        for (int i = 0; i < lay.n_branches; ++i) {
            const double w = standard_normal(key, idx++);
            z = (i == 0) ? w : lay.root_rho * z + lay.innovation * w;
            shadow_sq[static_cast<size_t>(i)] += z * z;
        }
    }
    for (double &s : shadow_sq) s /= static_cast<double>(lay.half_components);

    const double inv_root2 = 0.70710678118654752440;
    double total = 0.0;
    for (int i = 0; i < lay.n_branches; ++i) {
        const double d =
            lay.dominant[static_cast<size_t>(i)] *
            std::sqrt(shadow_sq[static_cast<size_t>(i)]);
        double power = 0.0;
        for (std::int64_t c = 0; c < lay.clusters[static_cast<size_t>(i)]; ++c) {
            const double x = standard_normal(key, idx++) * inv_root2 + d;
            const double y = standard_normal(key, idx++) * inv_root2 + d;
            power += x * x + y * y;
        }
        total += power;
    }
    return lay.branch_scale * total;
}

} // namespace

namespace detail {

double counter_uniform(std::uint64_t key, std::uint64_t counter) {
    const std::uint64_t h =
        splitmix64(splitmix64(key) ^ splitmix64(counter + 0x517cc1b727220a95ull));
    // 53 high bits, offset by half a step: strictly inside (0, 1).
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

void counter_normal_pair(std::uint64_t key, std::uint64_t counter, double &z0,
                         double &z1) {
    const double u1 = counter_uniform(key, counter * 2);
    const double u2 = counter_uniform(key, counter * 2 + 1);
    const double r = std::sqrt(-2.0 * std::log(u1));
    z0 = r * std::cos(kTwoPi * u2);
    z1 = r * std::sin(kTwoPi * u2);
}

double shadow_power_correlation(double rho, int lag) {
    return std::pow(rho, std::abs(lag));
}

std::vector<double> sample_shadow_powers(double m, double rho, int n_branches,
                                         std::uint64_t seed,
                                         std::int64_t count) {
    ChannelConfig config =
        ChannelConfig::broadcast(n_branches, 1.0, 1.0, m, rho, 1.0);
    config.validate_and_normalize();
    const SamplerLayout lay = make_layout(config);
    const std::uint64_t key = splitmix64(seed);

    std::vector<double> out;
    out.reserve(static_cast<size_t>(count) * static_cast<size_t>(n_branches));
    for (std::int64_t s = 0; s < count; ++s) {
        std::uint64_t idx = static_cast<std::uint64_t>(s) *
                            static_cast<std::uint64_t>(lay.normals_per_sample);
        std::vector<double> acc(static_cast<size_t>(n_branches), 0.0);
        for (std::int64_t j = 0; j < lay.half_components; ++j) {
            double z = 0.0;
            for (int i = 0; i < n_branches; ++i) {
                const double w = standard_normal(key, idx++);
                z = (i == 0) ? w : lay.root_rho * z + lay.innovation * w;
                acc[static_cast<size_t>(i)] += z * z;
            }
        }
        for (double a : acc)
            out.push_back(a / static_cast<double>(lay.half_components));
    }
    return out;
}

} // namespace detail

SampleBatch sample_batch(const ChannelConfig &config, std::uint64_t seed,
                         std::int64_t count, int threads) {
    if (count <= 0) throw ValidationError("sample count must be positive");
    ChannelConfig c = config;
    c.validate_and_normalize();
    const SamplerLayout lay = make_layout(c);
    const std::uint64_t key = splitmix64(seed);

    SampleBatch batch;
    batch.seed = seed;
    batch.count = count;
    batch.config_fingerprint = config_fingerprint(c);
    batch.snr_samples.resize(static_cast<size_t>(count));

    int n_threads = threads > 0
                        ? threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (static_cast<std::int64_t>(n_threads) > count)
        n_threads = static_cast<int>(count);

    auto worker = [&](std::int64_t lo, std::int64_t hi) {
        for (std::int64_t s = lo; s < hi; ++s)
            batch.snr_samples[static_cast<size_t>(s)] = one_sample(lay, key, s);
    };
    if (n_threads == 1) {
        worker(0, count);
    } else {
        std::vector<std::thread> pool;
        const std::int64_t chunk = (count + n_threads - 1) / n_threads;
        for (int t = 0; t < n_threads; ++t) {
            const std::int64_t lo = t * chunk;
            const std::int64_t hi = std::min<std::int64_t>(count, lo + chunk);
            if (lo >= hi) break;
            pool.emplace_back(worker, lo, hi);
        }
        for (auto &th : pool) th.join();
    }
    return batch;
}

EmpiricalMoment empirical_chos(const SampleBatch &batch, int n) {
    if (n != 1 && n != 2)
        throw ValidationError("empirical moment order must be 1 or 2");
    if (batch.snr_samples.empty())
        throw ValidationError("empirical moment of an empty batch");
    const double inv_ln2 = 1.4426950408889634074;
    double mean = 0.0, m2 = 0.0;
    std::int64_t k = 0;
    for (double g : batch.snr_samples) {
        const double lc = std::log1p(g) * inv_ln2;
        const double v = (n == 1) ? lc : lc * lc;
        ++k;
        const double delta = v - mean;
        mean += delta / static_cast<double>(k);
        m2 += delta * (v - mean);
    }
    EmpiricalMoment out;
    out.order = n;
    out.estimate = mean;
    out.count = k;
    out.std_error =
        k > 1 ? std::sqrt(m2 / static_cast<double>(k - 1) /
                          static_cast<double>(k))
              : 0.0;
    return out;
}

void write_batch_csv(const SampleBatch &batch, const std::string &path) {
    std::ofstream out(path);
    if (!out) throw ValidationError("cannot open " + path + " for writing");
    out << "snr_linear\n";
    char buf[40];
    for (double g : batch.snr_samples) {
        std::snprintf(buf, sizeof buf, "%.17g\n", g);
        out << buf;
    }
    if (!out) throw ValidationError("write failed for " + path);
}

ChannelConfig limit_model_config(LimitModel model, double parameter,
                                 int n_branches, double rho, double mean_snr) {
    ChannelConfig c;
    switch (model) {
    case LimitModel::RAYLEIGH:
        c = ChannelConfig::broadcast(n_branches, 1.0, 0.0, kMLarge, rho,
                                     mean_snr);
        c.k_max = 60000;
        break;
    case LimitModel::RICIAN:
        if (!(parameter >= 0))
            throw ValidationError("Rician K-factor must be >= 0");
        c = ChannelConfig::broadcast(n_branches, 1.0, parameter, kMLarge, rho,
                                     mean_snr);
        c.k_max = 60000;
        break;
    case LimitModel::NAKAGAMI:
        if (!(parameter > 0))
            throw ValidationError("Nakagami fading parameter must be > 0");
        c = ChannelConfig::broadcast(n_branches, parameter, 0.0, kMLarge, rho,
                                     mean_snr);
        c.k_max = 60000;
        break;
    case LimitModel::GENERAL:
        if (!(parameter >= 0))
            throw ValidationError("kappa must be >= 0");
        c = ChannelConfig::broadcast(n_branches, 2.5, parameter, 2.0, rho,
                                     mean_snr);
        c.k_max = 8000;
        break;
    }
    c.validate_and_normalize();
    return c;
}

const char *limit_model_name(LimitModel model) {
    switch (model) {
    case LimitModel::RAYLEIGH:
        return "rayleigh";
    case LimitModel::RICIAN:
        return "rician";
    case LimitModel::NAKAGAMI:
        return "nakagami";
    case LimitModel::GENERAL:
        return "general";
    }
    return "unknown";
}

} // namespace kmshadow
