// SPDX-License-Identifier: Apache-2.0
//
// Quadrature, differentiation and minimization tests against analytic
// references.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "kmshadow/errors.hpp"
#include "kmshadow/numerics.hpp"
#include "kmshadow/specfun.hpp"

using namespace kmshadow;
using kmshadow::num::DifferentiationPlan;
using kmshadow::num::QuadratureSpec;

namespace {
double rel(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}
} // namespace

TEST_CASE("integrate_adaptive on finite intervals") {
    QuadratureSpec spec;
    const double s = num::integrate_adaptive(
        [](double x) { return std::sin(x); }, 0.0, 3.14159265358979323846,
        spec);
    CHECK(rel(s, 2.0) < 1e-12);
    const double q = num::integrate_adaptive(
        [](double x) { return x * x; }, -1.0, 2.0, spec);
    CHECK(rel(q, 3.0) < 1e-12);
}

TEST_CASE("integrate_adaptive reports unreachable accuracy") {
    QuadratureSpec spec;
    spec.max_subdivisions = 4;
    spec.rel_tol = 1e-15;
    spec.abs_tol = 1e-300;
    CHECK_THROWS_AS(num::integrate_adaptive(
                        [](double x) { return std::sqrt(std::abs(x - 0.3)); },
                        0.0, 1.0, spec),
                    AccuracyError);
}

TEST_CASE("integrate_semiinfinite basics") {
    QuadratureSpec spec;
    CHECK(rel(num::integrate_semiinfinite(
                  [](double p) { return std::exp(-p); }, spec),
              1.0) < 1e-11);
    CHECK(rel(num::integrate_semiinfinite(
                  [](double p) { return p * std::exp(-p); }, spec),
              1.0) < 1e-11);
    QuadratureSpec half = spec;
    half.singularity_exponent = 0.5;
    CHECK(rel(num::integrate_semiinfinite(
                  [](double p) { return std::exp(-p) / std::sqrt(p); }, half),
              std::sqrt(3.14159265358979323846)) < 1e-11);
}

TEST_CASE("integrate_semiinfinite reproduces the gamma function") {
    for (double a : {0.1, 0.5, 1.0, 2.5}) {
        QuadratureSpec spec;
        spec.singularity_exponent = std::min(a, 1.0);
        const double got = num::integrate_semiinfinite(
            [a](double p) { return std::pow(p, a - 1.0) * std::exp(-p); },
            spec);
        CHECK(rel(got, std::exp(specfun::log_gamma(a))) < 1e-10);
    }
}

TEST_CASE("derivative_at_zero exact on low-order polynomials") {
    DifferentiationPlan p1;
    p1.order = 1;
    CHECK(rel(num::derivative_at_zero([](double a) { return a; }, p1).value,
              1.0) < 1e-12);
    DifferentiationPlan p2;
    p2.order = 2;
    CHECK(rel(num::derivative_at_zero([](double a) { return a * a; }, p2).value,
              2.0) < 1e-10);
}

TEST_CASE("derivative_at_zero on analytic functions") {
    DifferentiationPlan p2;
    p2.order = 2;
    const auto d = num::derivative_at_zero(
        [](double a) { return std::exp(2.0 * a); }, p2);
    CHECK(rel(d.value, 4.0) < 1e-6);
}

TEST_CASE("derivative error estimate bounds the true error") {
    for (double c : {0.5, 1.0, 2.0, 4.0}) {
        struct Case {
            std::function<double(double)> g;
            double d1, d2;
        };
        const std::vector<Case> cases = {
            {[c](double a) { return std::exp(c * a); }, c, c * c},
            {[c](double a) { return std::pow(1.0 + a, -c); }, -c, c * (c + 1)},
            {[](double a) { return a * std::exp(a); }, 1.0, 2.0},
        };
        for (const auto &cs : cases) {
            for (int n : {1, 2}) {
                DifferentiationPlan plan;
                plan.order = n;
                const auto d = num::derivative_at_zero(cs.g, plan);
                const double truth = n == 1 ? cs.d1 : cs.d2;
                CHECK(std::abs(d.value - truth) <=
                      d.error_estimate + 1e-9 * std::abs(truth));
            }
        }
    }
}

TEST_CASE("derivative_at_zero is strictly one-sided") {
    double lo_seen = 1e300, hi_seen = -1e300;
    DifferentiationPlan plan;
    plan.order = 2;
    num::derivative_at_zero(
        [&](double a) {
            lo_seen = std::min(lo_seen, a);
            hi_seen = std::max(hi_seen, a);
            return std::exp(a);
        },
        plan);
    CHECK(lo_seen > 0.0);
    CHECK(hi_seen <= 2.0 * plan.step * std::pow(2.0, plan.richardson_levels) +
                         1e-15);
}

TEST_CASE("derivative_at_zero propagates non-finite evaluations") {
    DifferentiationPlan plan;
    CHECK_THROWS_AS(num::derivative_at_zero(
                        [](double a) { return std::log(a - 1.0); }, plan),
                    Error);
}

TEST_CASE("minimize_scalar recovers interior minima") {
    const auto m1 = num::minimize_scalar(
        [](double x) { return (x - 3.0) * (x - 3.0); }, 0.0, 10.0, 1e-4);
    CHECK(std::abs(m1.x_star - 3.0) < 1e-3);
    CHECK_FALSE(m1.boundary);
    CHECK(m1.f_star <= 9.0 + 1e-12);

    const auto m2 = num::minimize_scalar(
        [](double x) { return -std::exp(-(x - 1.0) * (x - 1.0)); }, -5.0, 5.0,
        1e-4);
    CHECK(std::abs(m2.x_star - 1.0) < 1e-3);
    CHECK_FALSE(m2.boundary);
}

TEST_CASE("minimize_scalar flags boundary minima") {
    const auto m = num::minimize_scalar([](double x) { return x; }, 0.0, 10.0,
                                        1e-4);
    CHECK(m.x_star == 0.0);
    CHECK(m.boundary);
}

TEST_CASE("minimize_scalar never leaves the bracket") {
    double lo_seen = 1e300, hi_seen = -1e300;
    num::minimize_scalar(
        [&](double x) {
            lo_seen = std::min(lo_seen, x);
            hi_seen = std::max(hi_seen, x);
            return std::cos(x);
        },
        2.0, 5.0, 1e-5);
    CHECK(lo_seen >= 2.0);
    CHECK(hi_seen <= 5.0);
}
