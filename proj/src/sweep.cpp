// SPDX-License-Identifier: Apache-2.0
//
// Mean-SNR sweeps, minimum-reliability search and the cross-model
// comparison grid. The coefficient series never depends on the mean SNR,
// so one context serves a whole sweep; only the rate parameter rescales.

#include "kmshadow/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <thread>

#include "kmshadow/errors.hpp"

namespace kmshadow {

namespace {

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

SeriesVariant variant_for(Method method) {
    switch (method) {
    case Method::APPROX_A:
    case Method::APPROX_B:
    case Method::APPROX_C:
        return SeriesVariant::BAR;
    default:
        return SeriesVariant::TILDE;
    }
}

std::string fmt12(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

void run_partitioned(int n_tasks, int threads,
                     const std::function<void(int)> &task) {
    int n_threads = threads > 0
                        ? threads
                        : static_cast<int>(std::thread::hardware_concurrency());
    if (n_threads < 1) n_threads = 1;
    if (n_threads > n_tasks) n_threads = n_tasks;
    if (n_threads <= 1) {
        for (int i = 0; i < n_tasks; ++i) task(i);
        return;
    }
    std::atomic<int> next{0};
    auto drain = [&] {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_tasks) return;
            task(i);
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < n_threads; ++t) pool.emplace_back(drain);
    for (auto &th : pool) th.join();
}

} // namespace

SweepResult reliability_sweep(const ChannelConfig &config, double snr_lo_db,
                              double snr_hi_db, int points, Method method,
                              int threads) {
    if (points < 2) throw ValidationError("sweep needs at least 2 grid points");
    if (!(snr_lo_db < snr_hi_db))
        throw ValidationError("sweep range must satisfy lo < hi");

    const EvaluationContext base = make_context(config, variant_for(method));

    SweepResult result;
    result.method = method;
    result.config_fingerprint = config_fingerprint(config);
    result.snr_grid_db.resize(static_cast<size_t>(points));
    result.lambda1.resize(static_cast<size_t>(points));
    result.lambda2.resize(static_cast<size_t>(points));
    result.aod.resize(static_cast<size_t>(points));
    result.reliability.resize(static_cast<size_t>(points));

    const double step = (snr_hi_db - snr_lo_db) / (points - 1);
    for (int i = 0; i < points; ++i)
        result.snr_grid_db[static_cast<size_t>(i)] = snr_lo_db + step * i;

    std::atomic<int> failures{0};
    run_partitioned(points, threads, [&](int i) {
        const size_t u = static_cast<size_t>(i);
        EvaluationContext ctx = base;
        ctx.params =
            base.params.with_mean_snr(db_to_linear(result.snr_grid_db[u]));
        try {
            const CapacityStats s = capacity_stats(ctx, method);
            result.lambda1[u] = s.lambda1;
            result.lambda2[u] = s.lambda2;
            result.aod[u] = s.aod;
            result.reliability[u] = s.reliability;
        } catch (const Error &) {
            failures.fetch_add(1);
        }
    });
    result.failed_points = failures.load();
    return result;
}

MinReliabilityPoint find_min_reliability(const ChannelConfig &config,
                                         double snr_lo_db, double snr_hi_db,
                                         Method method) {
    if (!(snr_lo_db < snr_hi_db))
        throw ValidationError("search range must satisfy lo < hi");
    const EvaluationContext base = make_context(config, variant_for(method));
    auto reliability_at = [&](double snr_db) {
        EvaluationContext ctx = base;
        ctx.params = base.params.with_mean_snr(db_to_linear(snr_db));
        return capacity_reliability(ctx, method);
    };
    const num::BracketedMinimum m =
        num::minimize_scalar(reliability_at, snr_lo_db, snr_hi_db, 0.01);
    MinReliabilityPoint out;
    out.snr_db = m.x_star;
    out.reliability_min = m.f_star;
    out.boundary_flag = m.boundary;
    return out;
}

ModelComparison compare_models(const std::vector<double> &rho_grid,
                               const SharedComparisonSettings &settings,
                               int threads) {
    if (rho_grid.empty()) throw ValidationError("empty rho grid");
    ModelComparison cmp;
    cmp.rho_grid = rho_grid;
    cmp.models = {LimitModel::RAYLEIGH, LimitModel::RICIAN,
                  LimitModel::NAKAGAMI, LimitModel::GENERAL};
    const int n_models = static_cast<int>(cmp.models.size());
    const int n_rho = static_cast<int>(rho_grid.size());
    cmp.points.assign(static_cast<size_t>(n_models),
                      std::vector<MinReliabilityPoint>(
                          static_cast<size_t>(n_rho)));

    run_partitioned(n_models * n_rho, threads, [&](int t) {
        const int mi = t / n_rho;
        const int ri = t % n_rho;
        const LimitModel model = cmp.models[static_cast<size_t>(mi)];
        double parameter = 0.0;
        switch (model) {
        case LimitModel::RAYLEIGH:
            parameter = 0.0;
            break;
        case LimitModel::RICIAN:
            parameter = settings.rician_k;
            break;
        case LimitModel::NAKAGAMI:
            parameter = settings.nakagami_parameter;
            break;
        case LimitModel::GENERAL:
            parameter = settings.general_kappa;
            break;
        }
        ChannelConfig config = limit_model_config(
            model, parameter, settings.n_branches,
            rho_grid[static_cast<size_t>(ri)], settings.mean_snr_placeholder);
        if (model == LimitModel::GENERAL)
            config.mu.assign(static_cast<size_t>(config.n_branches),
                             settings.general_mu);
        cmp.points[static_cast<size_t>(mi)][static_cast<size_t>(ri)] =
            find_min_reliability(config, settings.snr_lo_db,
                                 settings.snr_hi_db, Method::EXACT_MGF);
    });
    return cmp;
}

std::string sweep_to_csv(const SweepResult &result) {
    std::string out = "snr_db,lambda1,lambda2,aod,reliability\n";
    auto field = [](const std::optional<double> &v) {
        return v ? fmt12(*v) : std::string();
    };
    for (size_t i = 0; i < result.snr_grid_db.size(); ++i) {
        out += fmt12(result.snr_grid_db[i]);
        out += ',';
        out += field(result.lambda1[i]);
        out += ',';
        out += field(result.lambda2[i]);
        out += ',';
        out += field(result.aod[i]);
        out += ',';
        out += field(result.reliability[i]);
        out += '\n';
    }
    return out;
}

namespace {

std::string comparison_row(const ModelComparison &cmp, int mi, int ri) {
    const MinReliabilityPoint &p =
        cmp.points[static_cast<size_t>(mi)][static_cast<size_t>(ri)];
    std::string row = fmt12(cmp.rho_grid[static_cast<size_t>(ri)]);
    row += ',';
    row += limit_model_name(cmp.models[static_cast<size_t>(mi)]);
    row += ',';
    row += fmt12(p.reliability_min);
    row += ',';
    row += fmt12(p.snr_db);
    row += '\n';
    return row;
}

} // namespace

std::string comparison_to_csv_model_major(const ModelComparison &cmp) {
    std::string out = "rho,model,r_min,snr_at_min_db\n";
    for (size_t mi = 0; mi < cmp.models.size(); ++mi)
        for (size_t ri = 0; ri < cmp.rho_grid.size(); ++ri)
            out += comparison_row(cmp, static_cast<int>(mi),
                                  static_cast<int>(ri));
    return out;
}

std::string comparison_to_csv_rho_major(const ModelComparison &cmp) {
    std::string out = "rho,model,r_min,snr_at_min_db\n";
    for (size_t ri = 0; ri < cmp.rho_grid.size(); ++ri)
        for (size_t mi = 0; mi < cmp.models.size(); ++mi)
            out += comparison_row(cmp, static_cast<int>(mi),
                                  static_cast<int>(ri));
    return out;
}

} // namespace kmshadow
