#include "supnorm/kernel_check.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <numbers>
#include <sstream>

#include "supnorm/bounds.hpp"
#include "supnorm/kernels.hpp"
#include "supnorm/report.hpp"

namespace supnorm {

namespace {

constexpr double pi = std::numbers::pi;

// Tracks the worst ratio observed; a check passes while ratio <= limit.
struct Tally {
    std::string suite;
    double limit;
    std::string detail;
    int points = 0;
    double worst = 0.0;
    bool ok = true;

    void add(double ratio)
    {
        ++points;
        if (!(ratio <= limit))
            ok = false;
        if (std::isnan(ratio) || ratio > worst)
            worst = ratio;
    }
    void fail()
    {
        ++points;
        ok = false;
    }
    KernelCheckItem item() const { return {suite, ok && points > 0, points, worst, limit, detail}; }
};

double rel_err(double a, double b) { return std::fabs(a - b) / std::max(std::fabs(b), 1e-300); }

KernelCheckItem chebyshev_suite(const KernelGrid& g)
{
    Tally t{"chebyshev-majorant", 1.0, "T_2k(cosh(r/2)) / e^{kr}, r in [0,10], k <= " + std::to_string(g.chebyshev_k_max)};
    for (int k = 1; k <= g.chebyshev_k_max; ++k)
        for (int i = 0; i <= 40; ++i) {
            const double r = 0.25 * i;
            // Ratio in log space; both sides overflow for large k r.
            t.add(std::exp(log_chebyshev_T2k(k, std::cosh(r / 2.0)) - k * r));
        }
    return t.item();
}

KernelCheckItem transform_suite(const KernelGrid& g)
{
    Tally t{"heat-transform", g.transform_tol, "relative gap between the heat-kernel transform and G_k"};
    const double triples[3][3] = {{1, 2, 2}, {1, 1.5, 3}, {2, 3, 1.5}};
    for (const auto& p : triples) {
        const int k = static_cast<int>(p[0]);
        try {
            t.add(rel_err(heat_kernel_transform(k, p[1], p[2]), resolvent_G(k, p[1], p[2])));
        } catch (const std::exception&) {
            t.fail();
        }
    }
    return t.item();
}

std::vector<KernelCheckItem> difference_suites(const KernelGrid& g)
{
    Tally dual{"g_k-dual-route", g.dual_tol, "series difference vs integral representation"};
    Tally decay{"g_k-decay-bound", 1.0, "g_k(k+eps) / ((3/(2 pi eps)) sigma^{-(k+eps)})"};
    Tally major{"exponential-majorant", 1.0, "integral / ((3 sqrt 2/eps) e^{-eps rho})"};
    for (int k : g.ks)
        for (double e : g.eps)
            for (double sg : g.sigmas) {
                const double s = k + e;
                try {
                    const DifferenceKernel d = g_k_both(k, s, sg);
                    dual.add(rel_err(d.series, d.quadrature));
                    decay.add(d.series / g_k_decay_bound(k, e, sg));
                } catch (const std::exception&) {
                    dual.fail();
                    decay.fail();
                }
                const double rho = rho_from_sigma(sg);
                try {
                    major.add(exponential_majorant_integral(k, e, rho) / exponential_majorant_bound(e, rho));
                } catch (const std::exception&) {
                    major.fail();
                }
            }
    return {dual.item(), decay.item(), major.item()};
}

KernelCheckItem stirling_suite()
{
    Tally t{"effective-stirling", 1.0, "Gamma(Z-1/2)/Gamma(Z) / (e^{5/4}/sqrt Z), Z in [1, 1e6]"};
    for (int i = 0; i <= 120; ++i) {
        const double Z = std::pow(10.0, 6.0 * i / 120.0);
        const GammaRatio r = gamma_ratio_bound(Z);
        t.add(r.ratio / r.bound);
    }
    return t.item();
}

KernelCheckItem parabolic_suite(const KernelGrid& g)
{
    Tally t{"parabolic-intermediate", 1.0, "(k/sqrt pi) Gamma(k-1/2+eps)/Gamma(k+eps) / parabolic bound"};
    int k_top = std::max(60, g.chebyshev_k_max);
    for (int k = 1; k <= k_top; ++k)
        for (double e : {0.001, 0.01, 0.1, 0.5, 1.0}) {
            const double mid = k / std::sqrt(pi) * std::exp(log_gamma(k - 0.5 + e) - log_gamma(k + e));
            t.add(mid / parabolic_sum_bound(k, e));
        }
    return t.item();
}

KernelCheckItem digamma_suite(const KernelGrid& g)
{
    Tally t{"digamma-combination", 1e-9, "closed form vs four digamma evaluations"};
    for (int k = 1; k <= g.chebyshev_k_max; ++k)
        for (double e : {0.01, 0.1, 0.5, 1.0, 2.0})
            t.add(rel_err(digamma_combo(k, e), digamma_combo_direct(k, e)));
    return t.item();
}

std::vector<KernelCheckItem> heat_suites(const KernelGrid& g)
{
    Tally mono{"heat-monotone", 1.0, "K_k(t; rho_2) / K_k(t; rho_1) for rho_2 > rho_1"};
    Tally peak{"heat-peak", 1.0, "K_k(t; rho) / K_k(t; 0)"};
    const std::vector<double> rhos = {0.0, 0.25, 0.5, 1.0, 2.0, 3.0};
    for (int k : g.ks) {
        for (double tt : {0.25, 1.0, 3.0}) {
            try {
                std::vector<double> v;
                for (double r : rhos)
                    v.push_back(log_heat_kernel(k, tt, r));
                for (std::size_t i = 1; i < v.size(); ++i) {
                    mono.add(std::exp(v[i] - v[i - 1]));
                    peak.add(std::exp(v[i] - v[0]));
                }
            } catch (const std::exception&) {
                mono.fail();
                peak.fail();
            }
        }
    }
    return {mono.item(), peak.item()};
}

KernelCheckItem transfer_height_suite()
{
    // (64/15)^{k-2} against Y^{2k-4} / 4^{k-2} at Y = 16/sqrt 15: equality.
    Tally t{"transfer-height", 1.0 + 1e-12, "(64/15)^{k-2} / (Y^{2k-4}/4^{k-2}) at Y = 16/sqrt 15"};
    const double Y = minimal_truncation_height();
    for (int k = 2; k <= 60; ++k)
        t.add(std::exp((k - 2) * std::log(64.0 / 15.0) - (2.0 * k - 4.0) * std::log(Y) + (k - 2) * std::log(4.0)));
    return t.item();
}

}  // namespace

KernelGrid kernel_grid(int k_max)
{
    KernelGrid g;
    for (int k : {10, 20, 30, 40, 50})
        if (k <= k_max)
            g.ks.push_back(k);
    g.chebyshev_k_max = std::max(50, k_max);
    return g;
}

bool KernelCheckReport::all_passed() const
{
    return std::all_of(items.begin(), items.end(), [](const KernelCheckItem& i) { return i.passed; });
}

nlohmann::json KernelCheckReport::to_json() const
{
    nlohmann::json arr = nlohmann::json::array();
    for (const KernelCheckItem& i : items)
        arr.push_back({{"suite", i.suite},
                       {"passed", i.passed},
                       {"points", i.points},
                       {"worst", std::isfinite(i.worst) ? nlohmann::json(i.worst) : nlohmann::json(nullptr)},
                       {"limit", i.limit},
                       {"detail", i.detail}});
    return {{"passed", all_passed()}, {"items", arr}};
}

std::string KernelCheckReport::table() const
{
    std::ostringstream os;
    char line[256];
    std::snprintf(line, sizeof line, "%-24s %-6s %-7s %-20s %-12s %s\n", "suite", "result", "points", "worst", "limit",
                  "detail");
    os << line;
    for (const KernelCheckItem& i : items) {
        std::snprintf(line, sizeof line, "%-24s %-6s %-7d %-20s %-12s ", i.suite.c_str(), i.passed ? "PASS" : "FAIL",
                      i.points, format_number(i.worst).c_str(), format_number(i.limit).c_str());
        os << line << i.detail << '\n';
    }
    return os.str();
}

KernelCheckReport run_kernel_checks(const KernelGrid& g)
{
    // Suites are independent; results are collected in a fixed order.
    auto diff = std::async(std::launch::async, [&] { return difference_suites(g); });
    auto heat = std::async(std::launch::async, [&] { return heat_suites(g); });
    auto transform = std::async(std::launch::async, [&] { return transform_suite(g); });

    KernelCheckReport r;
    r.items.push_back(chebyshev_suite(g));
    r.items.push_back(digamma_suite(g));
    r.items.push_back(stirling_suite());
    r.items.push_back(parabolic_suite(g));
    r.items.push_back(transfer_height_suite());
    r.items.push_back(transform.get());
    for (auto& i : diff.get())
        r.items.push_back(i);
    for (auto& i : heat.get())
        r.items.push_back(i);
    return r;
}

}  // namespace supnorm
