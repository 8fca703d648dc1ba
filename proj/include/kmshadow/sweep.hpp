// SPDX-License-Identifier: Apache-2.0
//
// Reliability sweeps over mean SNR, minimum-reliability search and the
// cross-model comparison tables.

#ifndef KMSHADOW_SWEEP_HPP
#define KMSHADOW_SWEEP_HPP

#include <optional>
#include <string>
#include <vector>

#include "kmshadow/mc.hpp"
#include "kmshadow/statistics.hpp"

namespace kmshadow {

struct SweepResult {
    std::vector<double> snr_grid_db;
    // Per-point values; a point that failed to evaluate is left empty and
    // counted in failed_points.
    std::vector<std::optional<double>> lambda1;
    std::vector<std::optional<double>> lambda2;
    std::vector<std::optional<double>> aod;
    std::vector<std::optional<double>> reliability;
    Method method = Method::EXACT_MGF;
    std::string config_fingerprint;
    int failed_points = 0;
};

struct MinReliabilityPoint {
    double snr_db = 0;         // argmin of R over the sweep range, dB
    double reliability_min = 0;
    bool boundary_flag = false; // true when the minimum sits at a range edge
};

struct ModelComparison {
    std::vector<double> rho_grid;
    std::vector<LimitModel> models;
    // points[model_index][rho_index]
    std::vector<std::vector<MinReliabilityPoint>> points;
};

// Evaluates capacity statistics on a uniform dB grid. The coefficient
// series depends on the channel only through (mu, kappa, m, rho), so it is
// built once and shared across grid points; only alpha rescales with SNR.
SweepResult reliability_sweep(const ChannelConfig &config, double snr_lo_db,
                              double snr_hi_db, int points, Method method,
                              int threads = 0);

// 16-point coarse scan followed by golden-section refinement of R(snr_db)
// to 0.01 dB. boundary_flag reports an endpoint minimum.
MinReliabilityPoint find_min_reliability(const ChannelConfig &config,
                                         double snr_lo_db, double snr_hi_db,
                                         Method method = Method::EXACT_MGF);

struct SharedComparisonSettings {
    int n_branches = 2;
    double rician_k = 3.16227766016838;  // 5 dB
    double general_kappa = 10.0;         // 10 dB
    double general_mu = 2.5;
    double nakagami_parameter = 2.5;
    double snr_lo_db = -10.0;
    double snr_hi_db = 40.0;
    double mean_snr_placeholder = 1.0;   // overwritten by the sweep
};

// Minimum-reliability points for all four limit models across a rho grid.
ModelComparison compare_models(const std::vector<double> &rho_grid,
                               const SharedComparisonSettings &settings,
                               int threads = 0);

// CSV emission. Sweep columns: snr_db,lambda1,lambda2,aod,reliability
// (missing points render as empty fields). Comparison tables use
// rho,model,r_min,snr_at_min_db; one table grouped by model first and one
// by rho first is written by the CLI layer.
std::string sweep_to_csv(const SweepResult &result);
std::string comparison_to_csv_model_major(const ModelComparison &cmp);
std::string comparison_to_csv_rho_major(const ModelComparison &cmp);

} // namespace kmshadow

#endif // KMSHADOW_SWEEP_HPP
