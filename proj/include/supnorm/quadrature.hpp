#pragma once

// One-dimensional adaptive Gauss-Kronrod (7/15) quadrature, a panel-marching
// variant for exponentially decaying integrands on [a, inf), and a nested
// two-dimensional driver.

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <string>
#include <vector>

#include "supnorm/errors.hpp"

namespace supnorm::quad {

struct Result {
    double value = 0.0;
    double abs_error = 0.0;
    int evaluations = 0;
};

namespace detail {

// QUADPACK nodes; xgk[1], xgk[3], xgk[5] and the centre carry the Gauss rule.
inline constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
inline constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Interval {
    double a, b, value, error;
    bool operator<(const Interval& o) const { return error < o.error; }
};

}  // namespace detail

/// Single G7K15 panel; the error estimate is |K15 - G7|.
template <typename F>
Result gauss_kronrod15(F&& f, double a, double b)
{
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double kronrod = detail::wgk[7] * fc;
    double gauss = detail::wg[3] * fc;
    for (int j = 0; j < 7; ++j) {
        const double dx = h * detail::xgk[j];
        const double pair = f(c - dx) + f(c + dx);
        kronrod += detail::wgk[j] * pair;
        if (j % 2 == 1)
            gauss += detail::wg[j / 2] * pair;
    }
    return {kronrod * h, std::abs((kronrod - gauss) * h), 15};
}

/// Globally adaptive bisection driven by a max-error priority queue. Stops
/// when the summed error estimate is below max(abs_tol, rel_tol * |value|).
template <typename F>
Result integrate(F&& f, double a, double b, double abs_tol, double rel_tol, int max_intervals = 4000)
{
    if (a == b)
        return {};
    std::priority_queue<detail::Interval> heap;
    Result first = gauss_kronrod15(f, a, b);
    heap.push({a, b, first.value, first.abs_error});
    double total = first.value;
    double error = first.abs_error;
    int evals = first.evaluations;

    while (error > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= max_intervals)
            throw AccuracyError("adaptive quadrature did not converge", total, error);
        const detail::Interval worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b))
            throw AccuracyError("adaptive quadrature hit interval resolution limit", total, error);
        const Result left = gauss_kronrod15(f, worst.a, mid);
        const Result right = gauss_kronrod15(f, mid, worst.b);
        evals += 30;
        total += left.value + right.value - worst.value;
        error += left.abs_error + right.abs_error - worst.error;
        heap.push({worst.a, mid, left.value, left.abs_error});
        heap.push({mid, worst.b, right.value, right.abs_error});
    }

    // Re-sum to shed the drift accumulated by incremental updates.
    double value = 0.0;
    double err = 0.0;
    while (!heap.empty()) {
        value += heap.top().value;
        err += heap.top().error;
        heap.pop();
    }
    return {value, err, evals};
}

struct TailOptions {
    double first_width = 1.0;
    double growth = 1.25;
    double stop_ratio = 1e-20;
    int quiet_panels = 5;
    int max_panels = 2000;
};

/// Integral over [a, inf) for integrands that decay at least exponentially.
/// Panels of geometrically growing width are integrated in turn; marching
/// ends once `quiet_panels` consecutive panels each contribute less than
/// `stop_ratio` of the running integral.
template <typename F>
Result integrate_to_infinity(F&& f, double a, double rel_tol, const TailOptions& opt = {})
{
    Result acc;
    double lo = a;
    double width = opt.first_width;
    int quiet = 0;
    for (int panel = 0; panel < opt.max_panels; ++panel) {
        const double hi = lo + width;
        const double floor = rel_tol * std::abs(acc.value) * 1e-3;
        const Result r = integrate(f, lo, hi, std::max(floor, 1e-300), rel_tol);
        acc.value += r.value;
        acc.abs_error += r.abs_error;
        acc.evaluations += r.evaluations;
        // A panel that underflows to zero counts as quiet as well.
        if (std::abs(r.value) <= opt.stop_ratio * std::abs(acc.value)) {
            if (++quiet >= opt.quiet_panels)
                return acc;
        } else {
            quiet = 0;
        }
        lo = hi;
        width *= opt.growth;
    }
    throw AccuracyError("semi-infinite quadrature did not settle", acc.value, acc.abs_error);
}

/// Nested 2-D quadrature of f(x, y) over {x0 <= x <= x1, y in pieces(x)},
/// where `pieces(x)` returns disjoint [lo, hi] intervals.
template <typename F, typename Pieces>
Result integrate_2d(F&& f, Pieces&& pieces, double x0, double x1, double abs_tol, double rel_tol)
{
    int evals = 0;
    double inner_err = 0.0;
    auto outer = [&](double x) {
        double sum = 0.0;
        for (const auto& [lo, hi] : pieces(x)) {
            if (!(hi > lo))
                continue;
            const Result r = integrate([&](double y) { return f(x, y); }, lo, hi, abs_tol * 1e-2, rel_tol * 1e-2);
            sum += r.value;
            evals += r.evaluations;
            inner_err = std::max(inner_err, r.abs_error);
        }
        return sum;
    };
    Result r = integrate(outer, x0, x1, abs_tol, rel_tol);
    r.abs_error += inner_err * (x1 - x0);
    r.evaluations = evals;
    return r;
}

}  // namespace supnorm::quad
