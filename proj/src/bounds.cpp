#include "supnorm/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "supnorm/errors.hpp"

namespace supnorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

void require_weight(int k)
{
    if (k < 2)
        throw UnsupportedError("bounds are available for k >= 2 (weight >= 4)");
}

// Runs one pipeline step, tagging any failure with its step index.
template <typename F>
auto step(int index, F&& f)
{
    try {
        return f();
    } catch (const AlgorithmError&) {
        throw;
    } catch (const std::exception& e) {
        throw AlgorithmError(index, e.what());
    }
}

}  // namespace

double minimal_truncation_height() { return 16.0 / std::sqrt(15.0); }

double truncation_height(double Y0)
{
    if (!(Y0 > 0.0))
        throw DomainError("Y0 must be positive");
    return std::max(2.0 * Y0, minimal_truncation_height());
}

double mu_gamma(const FundamentalDomain& d)
{
    double mu = inf;
    for (const Segment& s : d.boundary) {
        for (const EllipticPointData& e : d.elliptic) {
            const double dist = dist_point_to_segment(s, e.location);
            if (dist < 1e-9)
                continue;  // the point lies on this segment
            mu = std::min(mu, dist);
        }
    }
    return mu;
}

double DisplacementBranches::minimum() const
{
    double m = inf;
    for (const auto& b : {hyperbolic, elliptic, parabolic_low, parabolic_high})
        if (b)
            m = std::min(m, *b);
    return m;
}

DisplacementBranches sigma_Y_branches(std::optional<double> ell, double mu, std::optional<double> theta,
                                      std::optional<double> m_Y, std::optional<double> M_Y)
{
    DisplacementBranches b;
    if (ell)
        b.hyperbolic = (std::cosh(*ell) + 1.0) / 2.0;
    if (theta && std::isfinite(mu)) {
        const double sh = std::sinh(mu);
        const double sn = std::sin(*theta / 2.0);
        b.elliptic = sh * sh * sn * sn + 1.0;
    }
    if (m_Y)
        b.parabolic_low = (*m_Y) * (*m_Y) / 4.0 + 1.0;
    if (M_Y)
        b.parabolic_high = 1.0 / (4.0 * (*M_Y) * (*M_Y)) + 1.0;
    return b;
}

double b_Y(double diameter, double volume)
{
    if (!(volume > 0.0))
        throw DomainError("region volume must be positive");
    return std::exp(diameter / 2.0) / volume;
}

double b_k_Y0(int k, double Y0, double B_Y0, double eps)
{
    if (k < 1 || !(Y0 > 0.0) || !(eps > 0.0))
        throw DomainError("B_{k,Y0} needs k >= 1, Y0 > 0, eps > 0");
    return pi * std::pow(Y0, -4.0 - 2.0 * eps) * B_Y0 * std::pow(4.0, 3.0 - k) * (2.0 + eps) / (1.0 + eps) *
           std::pow(k / (2.0 * pi), 4.0 + 2.0 * eps);
}

double b_k_Y0_limit(int k, double Y0, double B_Y0)
{
    if (k < 1 || !(Y0 > 0.0))
        throw DomainError("B_{k,Y0} needs k >= 1, Y0 > 0");
    return 2.0 * pi * std::pow(Y0, -4.0) * B_Y0 * std::pow(4.0, 3.0 - k) * std::pow(k / (2.0 * pi), 4.0);
}

double poincare_bound_compact(int k, double eps, double B_Y, double sigma_Y, int elliptic_excess)
{
    require_weight(k);
    if (!(eps > 0.0))
        throw DomainError("eps must be positive");
    return 4.0 * pi * (2.0 + eps) / (1.0 + eps) * B_Y * std::pow(sigma_Y, -(k - 2.0)) + elliptic_excess;
}

double poincare_bound_compact_limit(int k, double B_Y, double sigma_Y, int elliptic_excess)
{
    require_weight(k);
    return 8.0 * pi * B_Y * std::pow(sigma_Y, -(k - 2.0)) + elliptic_excess;
}

double spectral_gap_bound(int k, double eps, double P)
{
    if (k < 1)
        throw DomainError("k must be at least 1");
    if (!(eps > 0.0 && eps < 1.0))
        throw DomainError("eps must lie in (0, 1)");
    if (!(P >= 0.0))
        throw DomainError("Poincare bound must be nonnegative");
    const double a = (2.0 * k - 1.0 + eps) * (1.0 + eps);
    return a / (4.0 * pi) + 3.0 * (2.0 * k + eps) * a / (4.0 * pi * (k + eps)) * P;
}

double spectral_gap_bound_limit(int k, double P)
{
    if (k < 1)
        throw DomainError("k must be at least 1");
    return (2.0 * k - 1.0) / (4.0 * pi) + 3.0 * (2.0 * k - 1.0) / (2.0 * pi) * P;
}

double compact_series_coefficient(double B_Y) { return 12.0 * B_Y; }

double sup_bound_compact(int k, double B_Y, double sigma_Y, int elliptic_excess)
{
    require_weight(k);
    const double w = 2.0 * k - 1.0;
    return w / (4.0 * pi) * (1.0 + 6.0 * elliptic_excess) +
           compact_series_coefficient(B_Y) * w * std::pow(sigma_Y, -(k - 2.0));
}

CuspBound sup_bound_cusp(int k, double Y0, double B_Y0)
{
    return sup_bound_cusp_at(k, Y0, truncation_height(Y0), B_Y0);
}

CuspBound sup_bound_cusp_at(int k, double Y0, double Y, double B_Y0)
{
    require_weight(k);
    if (!(Y >= truncation_height(Y0)))
        throw DomainError("Y must be at least max{2 Y0, 16/sqrt(15)}");
    if (Y >= k / (2.0 * pi))
        return {true, 0.0};
    const double w = 2.0 * k - 1.0;
    const double parabolic = std::sqrt(static_cast<double>(k)) * std::exp(1.25) / std::sqrt(pi);
    return {false, w / (4.0 * pi) + 3.0 * w / (2.0 * pi) * (b_k_Y0_limit(k, Y0, B_Y0) + parabolic)};
}

CocompactConstants cocompact_constants(int genus, double ell)
{
    if (genus < 2)
        throw DomainError("closed-form cocompact constants need genus >= 2");
    if (!(ell > 0.0))
        throw DomainError("systole must be positive");
    const double c1 = std::cosh(ell) + 1.0;
    const double log_sigma = std::log(c1 / 2.0);
    const double C = 3.0 * std::exp(4.0 * pi * genus / ell) / (pi * (genus - 1.0)) * c1 * c1 / log_sigma;
    return {C, 0.5 * log_sigma};
}

double sup_bound_cocompact(int k, const CocompactConstants& c)
{
    require_weight(k);
    return (2.0 * k - 1.0) / (4.0 * pi) + c.C * std::exp(-c.delta * k);
}

double sup_bound_weight2(double eps, double Y, double B_Y)
{
    if (!(eps > 0.0 && eps < 1.0))
        throw DomainError("eps must lie in (0, 1)");
    if (!(Y >= 1.0 / (2.0 * pi)))
        throw DomainError("weight-2 bound needs Y >= 1/(2 pi)");
    const double a = (1.0 + eps) * (1.0 + eps);
    return a / (4.0 * pi) + 3.0 * a * (2.0 + eps) / eps * B_Y;
}

std::vector<double> weight2_eps_grid()
{
    std::vector<double> g(200);
    const double lo = std::log(1e-3);
    const double hi = std::log(1.0 - 1e-3);
    for (int i = 0; i < 200; ++i)
        g[i] = std::exp(lo + (hi - lo) * i / 199.0);
    return g;
}

Weight2Optimum sup_bound_weight2_best(double Y, double B_Y)
{
    Weight2Optimum best{0.0, inf};
    for (double e : weight2_eps_grid()) {
        const double v = sup_bound_weight2(e, Y, B_Y);
        if (v < best.bound)
            best = {e, v};
    }
    return best;
}

LowerBound sup_lower_bound(int k, const FundamentalDomain& d)
{
    if (k == 1)
        return {0.0, d.genus >= 1 ? std::optional<double>(0.0) : std::nullopt};  // vacuous
    require_weight(k);
    LowerBound lb{dimension_d2k(d, k) / covolume(d), std::nullopt};
    if (d.genus >= 1)
        lb.genus_simple = (k - 1.0) / (2.0 * pi);
    return lb;
}

std::string compact_region_label() { return "F_Y"; }
std::string cusp_region_label(int j) { return "F_" + std::to_string(j) + "^Y"; }
std::string whole_domain_label() { return "F"; }

AlgorithmResult run_algorithm(const FundamentalDomain& d, double Y0, int k_min, int k_max,
                              std::optional<double> Y_override)
{
    AlgorithmResult out;
    EffectiveConstants& c = out.constants;

    c.Y0 = Y0;
    c.Y = step(1, [&] {
        const double Y = truncation_height(Y0);
        if (Y_override) {
            if (!(*Y_override >= Y))
                throw DomainError("Y must be at least max{2 Y0, 16/sqrt(15)}");
            return *Y_override;
        }
        return Y;
    });
    if (k_min < 2 && k_min <= k_max)
        throw AlgorithmError(1, "k_min must be at least 2");

    c.ell_gamma = step(2, [&]() -> std::optional<double> {
        if (!d.min_hyperbolic_trace)
            return std::nullopt;
        return shortest_geodesic_length(d);
    });

    c.theta_gamma = theta_gamma(d);
    c.elliptic_excess = elliptic_excess(d);
    c.covolume = covolume(d);

    if (!d.cocompact()) {
        step(4, [&] {
            const auto [m, M] = cusp_height_range(d, c.Y);
            c.m_Y = m;
            c.M_Y = M;
            return 0;
        });
    }

    c.mu_gamma = step(5, [&] { return mu_gamma(d); });

    c.branches = sigma_Y_branches(c.ell_gamma, c.mu_gamma, c.theta_gamma, c.m_Y, c.M_Y);
    c.sigma_Y = step(6, [&] {
        const double s = c.branches.minimum();
        if (!std::isfinite(s))
            throw MissingDataError("no displacement branch is available; supply min_hyperbolic_trace");
        return s;
    });

    const bool torsionfree_cocompact = d.cocompact() && d.elliptic.empty();
    const bool has_geometry = d.bounding_rect.has_value() && (d.region.has_value() || d.cocompact());

    if (has_geometry) {
        step(7, [&] {
            c.diam_Y = diameter_upper_bound(d, c.Y);
            if (!d.cocompact())
                c.diam_Y0 = diameter_upper_bound(d, Y0);
            return 0;
        });
        step(8, [&] {
            if (d.cocompact()) {
                c.vol_Y = c.covolume;
            } else {
                c.vol_Y = volume_region(d, c.Y);
                c.vol_Y0 = volume_region(d, Y0);
            }
            return 0;
        });
        step(9, [&] {
            c.B_Y = b_Y(*c.diam_Y, *c.vol_Y);
            c.compact_coefficient = compact_series_coefficient(*c.B_Y);
            if (c.diam_Y0 && c.vol_Y0)
                c.B_Y0 = b_Y(*c.diam_Y0, *c.vol_Y0);
            c.weight2 = sup_bound_weight2_best(c.Y, *c.B_Y);
            return 0;
        });
    }

    if (torsionfree_cocompact && d.genus >= 2 && c.ell_gamma) {
        c.cocompact = step(10, [&] { return cocompact_constants(d.genus, *c.ell_gamma); });
    }

    step(11, [&] {
        for (int k = k_min; k <= k_max; ++k) {
            const double lower = sup_lower_bound(k, d).dimension_over_volume;
            if (c.cocompact) {
                out.report.rows.push_back(
                    {k, whole_domain_label(), sup_bound_cocompact(k, *c.cocompact), lower, "cocompact-closed-form"});
                continue;
            }
            if (!c.B_Y)
                throw MissingDataError("diameter and volume data are required for the compact bound");
            const double compact = sup_bound_compact(k, *c.B_Y, c.sigma_Y, c.elliptic_excess);
            if (d.cocompact()) {
                out.report.rows.push_back({k, whole_domain_label(), compact, lower, "poincare-compact"});
                continue;
            }
            out.report.rows.push_back({k, compact_region_label(), compact, std::nullopt, "poincare-compact"});
            double overall = compact;
            for (int j = 1; j <= d.cusp_count(); ++j) {
                // Above k/(2 pi) the sup over a cusp region is attained on its
                // horocycle at height Y, so the compact bound carries over.
                if (c.Y >= k / (2.0 * pi)) {
                    out.report.rows.push_back({k, cusp_region_label(j), compact, std::nullopt, "maximum-principle"});
                    continue;
                }
                const double cusp = sup_bound_cusp_at(k, Y0, c.Y, *c.B_Y0).value;
                overall = std::max(overall, cusp);
                out.report.rows.push_back({k, cusp_region_label(j), cusp, std::nullopt, "faddeev-cusp"});
            }
            out.report.rows.push_back({k, whole_domain_label(), overall, lower, "maximum-over-regions"});
        }
        return 0;
    });
    return out;
}

}  // namespace supnorm
