// SPDX-License-Identifier: Apache-2.0
//
// Adaptive Gauss-Kronrod quadrature, the semi-infinite wrapper with an
// endpoint-singularity change of variable, one-sided Richardson
// differentiation at zero, and golden-section minimization.

#include "kmshadow/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <queue>
#include <vector>

#include "kmshadow/errors.hpp"

namespace kmshadow::num {

namespace {

// 15-point Kronrod nodes (positive half) and weights with the embedded
// 7-point Gauss rule.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct PanelResult {
    double kronrod;
    double error;
};

PanelResult gk15(const std::function<double(double)> &f, double lo, double hi) {
    const double mid = 0.5 * (lo + hi), half = 0.5 * (hi - lo);
    const double fc = f(mid);
    double kron = kWgk[7] * fc;
    double gauss = kWg[3] * fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        const double fsum = f(mid - dx) + f(mid + dx);
        kron += kWgk[i] * fsum;
        if (i % 2 == 1) gauss += kWg[i / 2] * fsum;
    }
    kron *= half;
    gauss *= half;
    return {kron, std::abs(kron - gauss)};
}

struct Panel {
    double lo, hi, value, error;
    bool operator<(const Panel &other) const { return error < other.error; }
};

} // namespace

double integrate_adaptive(const std::function<double(double)> &f, double lo,
                          double hi, const QuadratureSpec &spec) {
    if (!(spec.abs_tol > 0) || !(spec.rel_tol > 0))
        throw ValidationError("quadrature tolerances must be positive");
    if (lo == hi) return 0.0;

    std::priority_queue<Panel> queue;
    PanelResult first = gk15(f, lo, hi);
    queue.push({lo, hi, first.kronrod, first.error});
    double total = first.kronrod, total_err = first.error;

    for (int iter = 0; iter < spec.max_subdivisions; ++iter) {
        if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
            return total;
        Panel worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (mid <= worst.lo || mid >= worst.hi) {
            // Interval at the resolution limit; keep its estimate as is.
            total_err -= worst.error;
            continue;
        }
        PanelResult left = gk15(f, worst.lo, mid);
        PanelResult right = gk15(f, mid, worst.hi);
        total += left.kronrod + right.kronrod - worst.value;
        total_err += left.error + right.error - worst.error;
        queue.push({worst.lo, mid, left.kronrod, left.error});
        queue.push({mid, worst.hi, right.kronrod, right.error});
    }
    if (total_err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total)))
        return total;
    throw AccuracyError("quadrature subdivision limit reached", total, total_err);
}

double integrate_semiinfinite(const std::function<double(double)> &f,
                              const QuadratureSpec &spec) {
    const double split = spec.split_point;
    if (!(split > 0)) throw ValidationError("split_point must be positive");
    const double expo = spec.singularity_exponent;

    double head;
    if (expo > 0 && expo < 1.0) {
        // Integrable endpoint singularity p^(expo-1) at p = 0: substitute
        // t = p^expo so the transformed integrand is regular.
        const double inv = 1.0 / expo;
        auto g = [&](double t) {
            const double p = std::pow(t, inv);
            if (p <= 0) return 0.0;
            return f(p) * inv * std::pow(t, inv - 1.0);
        };
        head = integrate_adaptive(g, 0.0, std::pow(split, expo), spec);
    } else {
        head = integrate_adaptive(f, 0.0, split, spec);
    }

    // Tail via p = split/u, u in (0, 1].
    auto tail_g = [&](double u) {
        const double p = split / u;
        return f(p) * split / (u * u);
    };
    const double tail = integrate_adaptive(tail_g, 0.0, 1.0, spec);
    return head + tail;
}

DerivativeResult derivative_at_zero(const std::function<double(double)> &g,
                                    const DifferentiationPlan &plan) {
    if (plan.order != 1 && plan.order != 2)
        throw ValidationError("differentiation order must be 1 or 2");
    if (!(plan.step > 0) || plan.richardson_levels < 1)
        throw ValidationError("differentiation plan malformed");

    const int levels = plan.richardson_levels;
    std::map<double, double> memo;
    double scale_g = 0.0;
    auto eval = [&](double a) {
        auto it = memo.find(a);
        if (it != memo.end()) return it->second;
        const double v = g(a);
        if (!std::isfinite(v)) {
            char buf[96];
            std::snprintf(buf, sizeof buf, "non-finite evaluation at a=%.6g", a);
            throw AccuracyError(buf, v, 0.0);
        }
        memo.emplace(a, v);
        scale_g = std::max(scale_g, std::abs(v));
        return v;
    };

    // One-sided stencils that never touch a = 0, first-order accurate in
    // the step; Richardson with step doubling removes successive powers.
    std::vector<double> T(static_cast<size_t>(levels));
    for (int l = 0; l < levels; ++l) {
        const double s = plan.step * std::pow(2.0, l);
        if (plan.order == 1)
            T[static_cast<size_t>(l)] = (eval(2 * s) - eval(s)) / s;
        else
            T[static_cast<size_t>(l)] =
                (eval(3 * s) - 2 * eval(2 * s) + eval(s)) / (s * s);
    }
    double err = std::abs(T[0]) * 1e-3; // placeholder for levels == 1
    for (int j = 1; j < levels; ++j) {
        const double top_before = T[0];
        const double denom = std::pow(2.0, j) - 1.0;
        for (int i = 0; i + j < levels; ++i)
            T[static_cast<size_t>(i)] =
                T[static_cast<size_t>(i)] +
                (T[static_cast<size_t>(i)] - T[static_cast<size_t>(i + 1)]) / denom;
        err = std::abs(T[0] - top_before);
    }
    // The last extrapolation delta tracks truncation only. Rounding in the
    // g values enters the finest stencil as roughly eps * |g| / step^order
    // and the table can only amplify it, so report at least that floor.
    const double eps = std::numeric_limits<double>::epsilon();
    const double floor = (plan.order == 1 ? 8.0 : 32.0) * eps * scale_g /
                         std::pow(plan.step, plan.order);
    return {T[0], std::max(err, floor)};
}

BracketedMinimum minimize_scalar(const std::function<double(double)> &f,
                                 double lo, double hi, double tol) {
    if (!(hi > lo)) throw ValidationError("minimize_scalar: empty interval");
    if (!(tol > 0)) throw ValidationError("minimize_scalar: tol must be positive");

    constexpr int kScan = 16;
    double best_x = lo, best_f = 0;
    int best_i = 0;
    std::vector<double> xs(kScan), fs(kScan);
    for (int i = 0; i < kScan; ++i) {
        xs[static_cast<size_t>(i)] = lo + (hi - lo) * i / (kScan - 1);
        fs[static_cast<size_t>(i)] = f(xs[static_cast<size_t>(i)]);
        if (i == 0 || fs[static_cast<size_t>(i)] < best_f) {
            best_f = fs[static_cast<size_t>(i)];
            best_x = xs[static_cast<size_t>(i)];
            best_i = i;
        }
    }
    if (best_i == 0 || best_i == kScan - 1)
        return {best_x, best_f, kScan, lo, hi, true};

    double a = xs[static_cast<size_t>(best_i - 1)];
    double b = xs[static_cast<size_t>(best_i + 1)];
    constexpr double kGolden = 0.61803398874989484820;
    double c = b - kGolden * (b - a), d = a + kGolden * (b - a);
    double fc = f(c), fd = f(d);
    int iterations = kScan + 2;
    while (b - a > tol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kGolden * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kGolden * (b - a);
            fd = f(d);
        }
        ++iterations;
    }
    const double x_star = fc < fd ? c : d;
    const double f_star = std::min(fc, fd);
    return {x_star, f_star, iterations, a, b, false};
}

} // namespace kmshadow::num
