#pragma once

// Fundamental domains of Fuchsian groups: data model, JSON ingestion and the
// derived geometry (covolume, dimension of cusp-form spaces, truncation into
// a compact part and cusp neighbourhoods, diameters and volumes).

#include "json.hpp"

#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "supnorm/hyperbolic.hpp"

namespace supnorm {

struct CuspData {
    std::string label;
    Moebius scaling;  // sends i*infinity to the cusp

    /// Im(scaling^{-1} z), the height of z in this cusp's chart.
    double chart_height(const Point& z) const;
    bool at_infinity() const { return scaling.c() == 0.0; }
};

struct EllipticPointData {
    Point location;
    int order = 2;
    bool class_representative = true;
};

struct Circle {
    double center = 0.0;
    double radius = 1.0;
};

/// Membership description in the chart of the cusp at infinity:
/// x_min <= x <= x_max and |z - c| >= r for every listed circle.
struct RegionDescription {
    double x_min = 0.0;
    double x_max = 0.0;
    std::vector<Circle> outside;
};

/// Rectangle [x_min, x_max] x [y_min, y_max] containing the truncated domain.
/// y_max defaults to the truncation height when the domain has a cusp at infinity.
struct BoundingRect {
    double x_min = 0.0;
    double x_max = 0.0;
    double y_min = 0.0;
    std::optional<double> y_max;
};

struct FundamentalDomain {
    std::string name;
    std::string group;  // "PSL2Z" marks the modular group, used to gate verification
    int genus = 0;
    std::vector<Segment> boundary;
    std::vector<CuspData> cusps;
    std::vector<EllipticPointData> elliptic;
    std::optional<double> min_hyperbolic_trace;
    std::optional<RegionDescription> region;
    std::optional<BoundingRect> bounding_rect;

    bool cocompact() const { return cusps.empty(); }
    bool is_modular_group() const { return group == "PSL2Z"; }
    int cusp_count() const { return static_cast<int>(cusps.size()); }
};

FundamentalDomain load_domain(const nlohmann::json& doc);
FundamentalDomain load_domain_file(const std::string& path);
FundamentalDomain load_domain_text(const std::string& text);
/// The standard domain of PSL(2,Z), built from the shipped fixture text.
FundamentalDomain psl2z_domain();
/// Schema-conforming JSON text of the built-in modular-group domain.
const std::string& psl2z_document();

/// (2g-2) + h + sum over elliptic classes of (1 - 1/n).
double euler_characteristic_term(const FundamentalDomain& d);
double covolume(const FundamentalDomain& d);
/// Dimension of the weight-2k cusp form space; refuses k < 2.
int dimension_d2k(const FundamentalDomain& d, int k);
/// Sum of (n_j - 1) over the full elliptic list of the domain.
int elliptic_excess(const FundamentalDomain& d);
/// Minimum of 2 pi / n_j over the elliptic list; nullopt when there is none.
std::optional<double> theta_gamma(const FundamentalDomain& d);
/// 2 arccosh(trace / 2) from the minimal hyperbolic trace.
double shortest_geodesic_length(const FundamentalDomain& d);
double geodesic_length_from_trace(double trace);

/// True when z satisfies the region description (to a small tolerance).
bool contains(const FundamentalDomain& d, const Point& z, double tol = 1e-12);

/// 0 for the compact part F_Y, j >= 1 for the j-th cusp neighbourhood.
int classify(const FundamentalDomain& d, double Y, const Point& z);

/// Sample of the boundary of F_Y (512 points per segment and horocycle).
std::vector<Point> truncated_boundary_sample(const FundamentalDomain& d, double Y, int per_piece = 512);

/// Lowest point of F_Y, taken over the boundary sample (the height has no
/// interior minimum and the sample includes all corners).
double truncated_min_height(const FundamentalDomain& d, double Y);

/// Bounds m_Y <= Im(sigma_j^{-1} z) <= M_Y over F_Y.
std::pair<double, double> cusp_height_range(const FundamentalDomain& d, double Y);

/// arccosh(1 + (w^2 + (b-a)^2) / (2 a^2)) for the rectangle bounding F_Y.
double diameter_from_rect(double width, double a, double b);
double diameter_upper_bound(const FundamentalDomain& d, double Y);

/// Pieces of the vertical line through x lying in F_Y, as [y_lo, y_hi] intervals.
std::vector<std::pair<double, double>> truncated_column(const FundamentalDomain& d, double Y, double x);

/// Integral of f(x, y) dx dy / y^2 over F_Y, evaluated as a nested
/// quadrature in (x, u = 1/y) so the direction toward the cusp at infinity
/// becomes a finite interval.
double integrate_truncated(const FundamentalDomain& d, double Y, const std::function<double(double, double)>& f,
                           double abs_tol, double rel_tol);

/// Hyperbolic area of F_Y by 2-D quadrature in (x, 1/y); Y = +inf gives the
/// whole domain when every cusp sits at infinity.
double volume_region(const FundamentalDomain& d, double Y);
/// Area of the whole domain: quadrature of F_Y plus the exact cusp areas 1/Y.
double volume_full(const FundamentalDomain& d, double Y);

}  // namespace supnorm
