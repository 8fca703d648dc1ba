// SPDX-License-Identifier: Apache-2.0
//
// Configuration validation, derived parameters and the coefficient
// recursion, including the build-time selection test between the two
// printed placements of the severity factor.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kmshadow/channel.hpp"
#include "kmshadow/errors.hpp"
#include "kmshadow/statistics.hpp"

using namespace kmshadow;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}
} // namespace

TEST_CASE("validation normalizes and rejects") {
    ChannelConfig c = ChannelConfig::broadcast(2, 1.0, 0.0, 1.0, 0.3, 5.0);
    c.validate_and_normalize();
    CHECK(c.kappa[0] == kKappaEpsilon);
    CHECK(c.kappa[1] == kKappaEpsilon);

    auto bad = [](auto mutate) {
        ChannelConfig c = ChannelConfig::broadcast(2, 1.0, 1.0, 1.0, 0.3, 5.0);
        mutate(c);
        CHECK_THROWS_AS(c.validate_and_normalize(), ValidationError);
    };
    bad([](ChannelConfig &c) { c.n_branches = 0; });
    bad([](ChannelConfig &c) { c.mu.pop_back(); });
    bad([](ChannelConfig &c) { c.mu[0] = 0.0; });
    bad([](ChannelConfig &c) { c.kappa[1] = -0.5; });
    bad([](ChannelConfig &c) { c.m = 0.0; });
    bad([](ChannelConfig &c) { c.rho = 1.0; });
    bad([](ChannelConfig &c) { c.rho = -0.1; });
    bad([](ChannelConfig &c) { c.mean_snr = 0.0; });
    bad([](ChannelConfig &c) { c.series_tol = 0.0; });
    bad([](ChannelConfig &c) { c.k_max = 0; });
}

TEST_CASE("config fingerprint is stable and discriminating") {
    ChannelConfig a = ChannelConfig::broadcast(2, 1.0, 1.0, 2.0, 0.3, 5.0);
    ChannelConfig b = a;
    CHECK(config_fingerprint(a) == config_fingerprint(b));
    CHECK(config_fingerprint(a).size() == 16);
    b.rho = 0.31;
    CHECK(config_fingerprint(a) != config_fingerprint(b));
    ChannelConfig c = a;
    c.k_max = 777;
    CHECK(config_fingerprint(a) != config_fingerprint(c));
}

TEST_CASE("correlation matrix entries") {
    const CorrelationMatrix id = build_correlation_matrix(0.0, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            CHECK(id(i, j) == (i == j ? 1.0 : 0.0));

    const CorrelationMatrix two = build_correlation_matrix(0.25, 2);
    CHECK(two(0, 0) == 1.0);
    CHECK(two(0, 1) == 0.5);
    CHECK(two(1, 0) == 0.5);

    const CorrelationMatrix three = build_correlation_matrix(0.5, 3);
    CHECK(rel(three(0, 2), 0.5) < 1e-15);

    CHECK_THROWS_AS(build_correlation_matrix(1.0, 2), ValidationError);
    CHECK_THROWS_AS(build_correlation_matrix(-0.2, 2), ValidationError);
    CHECK_THROWS_AS(build_correlation_matrix(0.5, 0), ValidationError);
}

TEST_CASE("derived parameters on hand-solvable cases") {
    ChannelConfig c1 = ChannelConfig::broadcast(1, 1.0, 2.0, 2.0, 0.7, 1.0);
    c1.validate_and_normalize();
    const DerivedParams d1 = derive_params(c1);
    CHECK(rel(d1.lambda_min, 1.0) < 1e-12);
    CHECK(rel(d1.A, 1.0) < 1e-12);
    CHECK(rel(d1.eta, 3.0) < 1e-15);
    CHECK(d1.U == 1.0);
    CHECK(rel(d1.alpha, 3.0) < 1e-15);
    CHECK(rel(d1.alpha_bar, 1.5) < 1e-12);

    ChannelConfig c2 = ChannelConfig::broadcast(2, 1.0, 1.0, 1.0, 0.0, 1.0);
    c2.validate_and_normalize();
    const DerivedParams d2 = derive_params(c2);
    CHECK(rel(d2.lambda_all[0], 1.0) < 1e-12);
    CHECK(rel(d2.lambda_all[1], 1.0) < 1e-12);
    CHECK(rel(d2.A, 1.0) < 1e-12);
    CHECK(rel(d2.eta, 4.0) < 1e-15);
    CHECK(d2.U == 2.0);

    ChannelConfig c3 = ChannelConfig::broadcast(2, 1.0, 1.0, 1.0, 0.25, 1.0);
    c3.validate_and_normalize();
    const DerivedParams d3 = derive_params(c3);
    CHECK(rel(d3.lambda_all[0], 0.5) < 1e-12);
    CHECK(rel(d3.lambda_all[1], 1.5) < 1e-12);
    CHECK(rel(d3.lambda_min, 0.5) < 1e-12);
    CHECK(rel(d3.A, 1.0 / 3.0) < 1e-12);
}

TEST_CASE("branch permutation is immaterial when rho = 0") {
    ChannelConfig a;
    a.n_branches = 2;
    a.mu = {1.0, 2.0};
    a.kappa = {0.5, 2.0};
    a.m = 1.5;
    a.rho = 0.0;
    a.mean_snr = 4.0;
    a.validate_and_normalize();
    ChannelConfig b = a;
    b.mu = {2.0, 1.0};
    b.kappa = {2.0, 0.5};
    const DerivedParams da = derive_params(a);
    const DerivedParams db = derive_params(b);
    CHECK(rel(da.A, db.A) < 1e-12);
    CHECK(rel(da.eta, db.eta) < 1e-15);
    CHECK(da.U == db.U);
    CHECK(rel(da.lambda_min, db.lambda_min) < 1e-12);
}

TEST_CASE("mean-SNR rescaling touches only the rate parameters") {
    ChannelConfig c = ChannelConfig::broadcast(2, 2.0, 1.5, 2.0, 0.4, 5.0);
    c.validate_and_normalize();
    const DerivedParams d = derive_params(c);
    const DerivedParams d2 = d.with_mean_snr(15.0);
    CHECK(rel(d2.alpha, d.alpha / 3.0) < 1e-14);
    CHECK(rel(d2.alpha_bar, d.alpha_bar / 3.0) < 1e-14);
    CHECK(d2.lambda_min == d.lambda_min);
    CHECK(d2.log_A == d.log_A);
    CHECK(d2.U == d.U);
    ChannelConfig c3 = c;
    c3.mean_snr = 15.0;
    const DerivedParams fresh = derive_params(c3);
    CHECK(rel(d2.alpha, fresh.alpha) < 1e-14);
    CHECK(std::abs(d2.log_c0 - fresh.log_c0) < 1e-10);
}

TEST_CASE("coefficient recursion on hand-solvable cases") {
    // Identical eigenvalues: every cross-branch weight vanishes and the
    // series collapses to its leading term.
    ChannelConfig eq = ChannelConfig::broadcast(2, 1.0, 1.0, 1.0, 0.0, 1.0);
    eq.validate_and_normalize();
    const DerivedParams deq = derive_params(eq);
    const CoefficientSeries seq =
        delta_coefficients(deq, SeriesVariant::BAR, 1e-12, 500);
    CHECK(seq.value(0) == 1.0);
    for (int k = 1; k < seq.size(); ++k) CHECK(seq.value(k) < 1e-300);

    // Eigenvalues {0.5, 1.5} at m = 1: the first coefficient equals
    // (1 - 0.5/0.5) + (1 - 0.5/1.5) = 2/3.
    ChannelConfig c = ChannelConfig::broadcast(2, 1.0, 1.0, 1.0, 0.25, 1.0);
    c.validate_and_normalize();
    const DerivedParams d = derive_params(c);
    const CoefficientSeries bar =
        delta_coefficients(d, SeriesVariant::BAR, 1e-12, 500);
    CHECK(bar.value(0) == 1.0);
    CHECK(rel(bar.value(1), 2.0 / 3.0) < 1e-12);

    // The undamped series sums to 1/A exactly.
    CHECK(std::abs(bar.log_sum + d.log_A) < 1e-10);

    // The damped variant differs per index by the documented factor.
    const CoefficientSeries til =
        delta_coefficients(d, SeriesVariant::TILDE, 1e-12, 500);
    CHECK(til.size() == bar.size());
    const double l1p = std::log1p(d.lambda_min);
    for (int k = 0; k < til.size(); ++k)
        CHECK(std::abs(til.log_value(k) - (bar.log_value(k) - k * l1p)) <
              1e-12);
}

TEST_CASE("series truncation metadata") {
    ChannelConfig c = ChannelConfig::broadcast(2, 2.0, 3.0, 2.0, 0.6, 5.0);
    c.validate_and_normalize();
    const DerivedParams d = derive_params(c);
    const CoefficientSeries full =
        delta_coefficients(d, SeriesVariant::BAR, 1e-12, 2000);
    CHECK(full.tail_estimate <= 1e-12);

    const CoefficientSeries cut =
        delta_coefficients(d, SeriesVariant::BAR, 1e-12, 4);
    CHECK(cut.size() == 5);
    CHECK(cut.tail_estimate > 1e-12);

    // Beyond the peak, relative contributions decrease monotonically.
    int peak = 0;
    for (int k = 1; k < full.size(); ++k)
        if (full.log_value(k) > full.log_value(peak)) peak = k;
    for (int k = std::max(peak + 1, full.size() - 20); k + 1 < full.size();
         ++k)
        CHECK(full.log_value(k + 1) < full.log_value(k));
}

TEST_CASE("series value overflow reporting") {
    CoefficientSeries s;
    s.log_values = {0.0, 800.0};
    CHECK(s.value(0) == 1.0);
    CHECK_THROWS_AS(s.value(1), OverflowError);
}

TEST_CASE("severity-factor placement: density mass selects per-step") {
    // Both printed placements of the severity factor are implemented; the
    // density integrating to one is the arbiter. The per-step placement
    // wins on every config of this grid; the constant placement is off by
    // far more than the acceptance band whenever m != 1 and branches
    // differ. delta_coefficients hard-codes the winner.
    num::QuadratureSpec spec;
    spec.rel_tol = 1e-10;
    int checked = 0;
    for (double mu : {1.0, 2.0}) {
        for (double kap : {0.5, 2.0}) {
            for (double m : {0.5, 2.0, 5.0}) {
                for (double rho : {0.3, 0.7}) {
                    ChannelConfig c =
                        ChannelConfig::broadcast(2, mu, kap, m, rho, 5.0);
                    c.validate_and_normalize();
                    EvaluationContext ctx = make_context(c);
                    auto mass = [&](detail::MFactorPlacement placement) {
                        ctx.coefficients =
                            detail::delta_coefficients_with_placement(
                                ctx.params, SeriesVariant::TILDE, 1e-13, 4000,
                                placement);
                        num::QuadratureSpec qs = spec;
                        qs.split_point = 8.0 * ctx.params.mean_snr;
                        return num::integrate_semiinfinite(
                            [&](double g) { return pdf(g, ctx); }, qs);
                    };
                    const double per_step =
                        mass(detail::MFactorPlacement::kPerStep);
                    CHECK(std::abs(per_step - 1.0) < 1e-8);
                    const double constant =
                        mass(detail::MFactorPlacement::kConstant);
                    CHECK(std::abs(constant - 1.0) > 1e-4);
                    ++checked;
                }
            }
        }
    }
    CHECK(checked >= 20);

    // The public recursion equals the per-step variant.
    ChannelConfig c = ChannelConfig::broadcast(2, 1.0, 1.0, 2.0, 0.25, 1.0);
    c.validate_and_normalize();
    const DerivedParams d = derive_params(c);
    const CoefficientSeries pub =
        delta_coefficients(d, SeriesVariant::BAR, 1e-12, 500);
    const CoefficientSeries sel = detail::delta_coefficients_with_placement(
        d, SeriesVariant::BAR, 1e-12, 500, detail::MFactorPlacement::kPerStep);
    REQUIRE(pub.size() == sel.size());
    for (int k = 0; k < pub.size(); ++k)
        CHECK(pub.log_value(k) == sel.log_value(k));
}
