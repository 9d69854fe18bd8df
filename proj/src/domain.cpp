#include "supnorm/domain.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include "supnorm/errors.hpp"
#include "supnorm/quadrature.hpp"

namespace supnorm {

using nlohmann::json;

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

const std::string kModularGroupDocument = R"({
  "name": "PSL(2,Z) standard domain",
  "group": "PSL2Z",
  "genus": 0,
  "cusps": [{"label": "i*inf", "scaling": [[1, 0], [0, 1]]}],
  "elliptic": [
    {"x": -0.5, "y": 0.8660254037844386, "order": 3, "is_class_rep": true},
    {"x": 0.0, "y": 1.0, "order": 2, "is_class_rep": true},
    {"x": 0.5, "y": 0.8660254037844386, "order": 3, "is_class_rep": false}
  ],
  "boundary": [
    {"type": "vertical", "x": -0.5, "y_min": 0.8660254037844386},
    {"type": "arc", "center": 0.0, "radius": 1.0, "x_min": -0.5, "x_max": 0.0},
    {"type": "vertical", "x": 0.5, "y_min": 0.8660254037844386},
    {"type": "arc", "center": 0.0, "radius": 1.0, "x_min": 0.0, "x_max": 0.5}
  ],
  "region": {"x_min": -0.5, "x_max": 0.5, "outside_circles": [{"center": 0.0, "radius": 1.0}]},
  "min_hyperbolic_trace": 3,
  "bounding_rect": {"x_min": -0.5, "x_max": 0.5, "y_min": 0.8660254037844386}
}
)";

double get_number(const json& obj, const char* key)
{
    if (!obj.contains(key) || !obj.at(key).is_number())
        throw LoadError(std::string("missing or non-numeric field '") + key + "'");
    return obj.at(key).get<double>();
}

std::optional<double> get_optional_number(const json& obj, const char* key)
{
    if (!obj.contains(key) || obj.at(key).is_null())
        return std::nullopt;
    if (!obj.at(key).is_number())
        throw LoadError(std::string("field '") + key + "' must be numeric");
    return obj.at(key).get<double>();
}

Moebius parse_matrix(const json& m)
{
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || !m[1].is_array() || m[0].size() != 2 ||
        m[1].size() != 2)
        throw LoadError("scaling map must be a 2x2 array of rows");
    try {
        return Moebius(m[0][0].get<double>(), m[0][1].get<double>(), m[1][0].get<double>(), m[1][1].get<double>());
    } catch (const DomainError& e) {
        throw LoadError(std::string("scaling map: ") + e.what());
    }
}

Segment parse_segment(const json& s)
{
    if (!s.is_object() || !s.contains("type") || !s.at("type").is_string())
        throw LoadError("boundary segment needs a string 'type'");
    const std::string type = s.at("type").get<std::string>();
    try {
        if (type == "vertical") {
            const double x = get_number(s, "x");
            const double lo = get_number(s, "y_min");
            const auto hi = get_optional_number(s, "y_max");
            return hi ? Segment::vertical(x, lo, *hi) : Segment::vertical_ray(x, lo);
        }
        if (type == "arc") {
            const double c = get_number(s, "center");
            const double r = get_number(s, "radius");
            if (s.contains("x_min")) {
                const double x0 = std::clamp((get_number(s, "x_min") - c) / r, -1.0, 1.0);
                const double x1 = std::clamp((get_number(s, "x_max") - c) / r, -1.0, 1.0);
                return Segment::arc(c, r, std::acos(x1), std::acos(x0));
            }
            return Segment::arc(c, r, get_number(s, "theta_min"), get_number(s, "theta_max"));
        }
    } catch (const DomainError& e) {
        throw LoadError(std::string("boundary segment: ") + e.what());
    }
    throw LoadError("unknown boundary segment type '" + type + "'");
}

// Top of the truncated domain in the chart at infinity, if there is such a cusp.
std::optional<double> top_height(const FundamentalDomain& d, double Y)
{
    for (const CuspData& c : d.cusps)
        if (c.at_infinity())
            return c.scaling.a() * c.scaling.a() * Y;
    return std::nullopt;
}

bool in_truncated(const FundamentalDomain& d, double Y, const Point& z, double tol = 1e-12)
{
    if (!contains(d, z, tol))
        return false;
    for (const CuspData& c : d.cusps)
        if (c.chart_height(z) > Y * (1.0 + tol))
            return false;
    return true;
}

// Horoball {Im(sigma^{-1} z) >= Y} of a finite cusp is the disk tangent to the
// real axis at a/c with radius 1/(2 c^2 Y).
Circle horoball(const CuspData& c, double Y)
{
    const double cc = c.scaling.c();
    return {c.scaling.a() / cc, 1.0 / (2.0 * cc * cc * Y)};
}

// Samples a parametrized curve, keeping points in F_Y and refining every
// membership change by bisection so corners are captured exactly.
template <typename Curve>
void sample_curve(const FundamentalDomain& d, double Y, Curve&& at, double t0, double t1, int n,
                  std::vector<Point>& out)
{
    auto point = [&](double t) -> std::optional<Point> {
        try {
            return at(t);
        } catch (const DomainError&) {
            return std::nullopt;
        }
    };
    auto inside = [&](double t) {
        const auto p = point(t);
        return p && in_truncated(d, Y, *p, 1e-12);
    };
    double prev_t = t0;
    bool prev_in = inside(t0);
    if (prev_in)
        out.push_back(*point(t0));
    for (int i = 1; i < n; ++i) {
        const double t = t0 + (t1 - t0) * i / (n - 1);
        const bool now_in = inside(t);
        if (now_in != prev_in) {
            double a = prev_t;
            double b = t;
            for (int it = 0; it < 100; ++it) {
                const double m = 0.5 * (a + b);
                if (inside(m) == prev_in)
                    a = m;
                else
                    b = m;
            }
            const double edge = prev_in ? a : b;
            if (auto p = point(edge))
                out.push_back(*p);
        }
        if (now_in)
            out.push_back(*point(t));
        prev_t = t;
        prev_in = now_in;
    }
}

}  // namespace

double CuspData::chart_height(const Point& z) const
{
    // sigma^{-1} = (d, -b; -c, a), Im(sigma^{-1} z) = y / |a - c z|^2.
    const double re = scaling.a() - scaling.c() * z.x;
    const double im = -scaling.c() * z.y;
    return z.y / (re * re + im * im);
}

FundamentalDomain load_domain(const json& doc)
{
    if (!doc.is_object())
        throw LoadError("domain document must be an object");
    FundamentalDomain d;
    try {
        d.name = doc.value("name", std::string("unnamed"));
        d.group = doc.value("group", std::string());
        if (!doc.contains("genus") || !doc.at("genus").is_number_integer())
            throw LoadError("'genus' must be an integer");
        d.genus = doc.at("genus").get<int>();
        if (d.genus < 0)
            throw LoadError("'genus' must be nonnegative");

        if (doc.contains("cusps")) {
            if (!doc.at("cusps").is_array())
                throw LoadError("'cusps' must be an array");
            int idx = 0;
            for (const json& c : doc.at("cusps")) {
                ++idx;
                CuspData cd;
                if (c.is_object()) {
                    cd.label = c.value("label", "cusp " + std::to_string(idx));
                    if (!c.contains("scaling"))
                        throw LoadError("cusp entry needs 'scaling'");
                    cd.scaling = parse_matrix(c.at("scaling"));
                } else {
                    cd.label = "cusp " + std::to_string(idx);
                    cd.scaling = parse_matrix(c);
                }
                d.cusps.push_back(cd);
            }
        }

        if (doc.contains("elliptic")) {
            if (!doc.at("elliptic").is_array())
                throw LoadError("'elliptic' must be an array");
            for (const json& e : doc.at("elliptic")) {
                EllipticPointData ep;
                const double x = get_number(e, "x");
                const double y = get_number(e, "y");
                if (!(y > 0.0))
                    throw LoadError("elliptic point must lie in the upper half-plane");
                ep.location = Point{x, y};
                if (!e.contains("order") || !e.at("order").is_number_integer())
                    throw LoadError("elliptic point needs an integer 'order'");
                ep.order = e.at("order").get<int>();
                if (ep.order < 2)
                    throw LoadError("elliptic order must be at least 2");
                ep.class_representative = e.value("is_class_rep", true);
                d.elliptic.push_back(ep);
            }
        }

        if (doc.contains("boundary")) {
            if (!doc.at("boundary").is_array())
                throw LoadError("'boundary' must be an array");
            for (const json& s : doc.at("boundary"))
                d.boundary.push_back(parse_segment(s));
        }

        d.min_hyperbolic_trace = get_optional_number(doc, "min_hyperbolic_trace");

        if (doc.contains("region") && !doc.at("region").is_null()) {
            const json& r = doc.at("region");
            RegionDescription rd;
            rd.x_min = get_number(r, "x_min");
            rd.x_max = get_number(r, "x_max");
            if (!(rd.x_max > rd.x_min))
                throw LoadError("region needs x_min < x_max");
            if (r.contains("outside_circles")) {
                for (const json& c : r.at("outside_circles")) {
                    Circle circ{get_number(c, "center"), get_number(c, "radius")};
                    if (!(circ.radius > 0.0))
                        throw LoadError("region circle radius must be positive");
                    rd.outside.push_back(circ);
                }
            }
            d.region = rd;
        }

        if (doc.contains("bounding_rect") && !doc.at("bounding_rect").is_null()) {
            const json& r = doc.at("bounding_rect");
            BoundingRect br;
            br.x_min = get_number(r, "x_min");
            br.x_max = get_number(r, "x_max");
            br.y_min = get_optional_number(r, "y_min").value_or(0.0);
            br.y_max = get_optional_number(r, "y_max");
            if (!(br.x_max >= br.x_min) || br.y_min < 0.0)
                throw LoadError("bounding_rect is malformed");
            d.bounding_rect = br;
        }
    } catch (const json::exception& e) {
        throw LoadError(std::string("malformed domain document: ") + e.what());
    }

    if (!(euler_characteristic_term(d) > 0.0))
        throw LoadError("Gauss-Bonnet term (2g-2) + h + sum(1 - 1/n) must be positive");
    if (d.region) {
        for (const EllipticPointData& e : d.elliptic)
            if (!contains(d, e.location, 1e-9))
                throw LoadError("elliptic point lies outside the domain");
    }
    return d;
}

FundamentalDomain load_domain_text(const std::string& text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw LoadError(std::string("cannot parse domain document: ") + e.what());
    }
    return load_domain(doc);
}

FundamentalDomain load_domain_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw LoadError("cannot open domain file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return load_domain_text(ss.str());
}

const std::string& psl2z_document() { return kModularGroupDocument; }

FundamentalDomain psl2z_domain() { return load_domain_text(kModularGroupDocument); }

double euler_characteristic_term(const FundamentalDomain& d)
{
    double t = 2.0 * d.genus - 2.0 + d.cusp_count();
    for (const EllipticPointData& e : d.elliptic)
        if (e.class_representative)
            t += 1.0 - 1.0 / e.order;
    return t;
}

double covolume(const FundamentalDomain& d) { return 2.0 * std::numbers::pi * euler_characteristic_term(d); }

int dimension_d2k(const FundamentalDomain& d, int k)
{
    if (k < 2)
        throw UnsupportedError("dimension formula is only used for weights 2k >= 4");
    long dim = static_cast<long>(2 * k - 1) * (d.genus - 1) + static_cast<long>(k - 1) * d.cusp_count();
    for (const EllipticPointData& e : d.elliptic)
        if (e.class_representative)
            dim += (static_cast<long>(k) * (e.order - 1)) / e.order;  // floor(k (1 - 1/n))
    return static_cast<int>(std::max(dim, 0L));
}

int elliptic_excess(const FundamentalDomain& d)
{
    int s = 0;
    for (const EllipticPointData& e : d.elliptic)
        s += e.order - 1;
    return s;
}

std::optional<double> theta_gamma(const FundamentalDomain& d)
{
    if (d.elliptic.empty())
        return std::nullopt;
    int n = 0;
    for (const EllipticPointData& e : d.elliptic)
        n = std::max(n, e.order);
    return 2.0 * std::numbers::pi / n;
}

double geodesic_length_from_trace(double trace)
{
    if (!(trace > 2.0))
        throw DomainError("trace must exceed 2 for a hyperbolic element");
    return 2.0 * std::acosh(trace / 2.0);
}

double shortest_geodesic_length(const FundamentalDomain& d)
{
    if (!d.min_hyperbolic_trace)
        throw MissingDataError("domain does not provide min_hyperbolic_trace");
    return geodesic_length_from_trace(*d.min_hyperbolic_trace);
}

bool contains(const FundamentalDomain& d, const Point& z, double tol)
{
    if (!d.region)
        return true;
    const RegionDescription& r = *d.region;
    if (z.x < r.x_min - tol || z.x > r.x_max + tol)
        return false;
    for (const Circle& c : r.outside) {
        const double dx = z.x - c.center;
        if (std::sqrt(dx * dx + z.y * z.y) < c.radius - tol)
            return false;
    }
    return true;
}

int classify(const FundamentalDomain& d, double Y, const Point& z)
{
    if (!(Y > 0.0))
        throw DomainError("truncation height must be positive");
    if (!contains(d, z, 1e-12))
        throw DomainError("point lies outside the fundamental domain");
    for (int j = 0; j < d.cusp_count(); ++j)
        if (d.cusps[j].chart_height(z) >= Y)
            return j + 1;
    return 0;
}

std::vector<Point> truncated_boundary_sample(const FundamentalDomain& d, double Y, int per_piece)
{
    std::vector<Point> out;
    const auto top = top_height(d, Y);
    for (const Segment& s : d.boundary) {
        if (s.is_arc()) {
            sample_curve(d, Y, [&](double t) { return s.at(t); }, s.lo, s.hi, per_piece, out);
        } else {
            const double hi = s.unbounded ? (top ? *top : inf) : s.hi;
            if (!std::isfinite(hi))
                throw MissingDataError("unbounded boundary ray without a cusp at infinity");
            const double lo = s.lo;
            // Logarithmic parametrization along the ray.
            sample_curve(d, Y, [&](double t) { return Point::make(s.anchor, lo * std::exp(t)); }, 0.0,
                         std::log(hi / lo), per_piece, out);
        }
    }
    if (top && d.region) {
        sample_curve(d, Y, [&](double t) { return Point::make(t, *top); }, d.region->x_min, d.region->x_max,
                     per_piece, out);
    }
    for (const CuspData& c : d.cusps) {
        if (c.at_infinity())
            continue;
        const Circle h = horoball(c, Y);
        const double pi = std::numbers::pi;
        sample_curve(d, Y, [&](double phi) { return Point::make(h.center + h.radius * std::cos(phi), h.radius * (1.0 + std::sin(phi))); },
                     -pi / 2 + 1e-9, 3 * pi / 2 - 1e-9, per_piece, out);
    }
    return out;
}

double truncated_min_height(const FundamentalDomain& d, double Y)
{
    const std::vector<Point> pts = truncated_boundary_sample(d, Y);
    if (pts.empty())
        throw MissingDataError("truncated domain has no boundary sample");
    double m = inf;
    for (const Point& p : pts)
        m = std::min(m, p.y);
    return m;
}

std::pair<double, double> cusp_height_range(const FundamentalDomain& d, double Y)
{
    if (d.cocompact())
        throw MissingDataError("cusp heights are undefined for a cocompact domain");
    const std::vector<Point> pts = truncated_boundary_sample(d, Y);
    double m = inf;
    for (const Point& p : pts)
        for (const CuspData& c : d.cusps)
            m = std::min(m, c.chart_height(p));
    if (!std::isfinite(m))
        throw MissingDataError("cannot sample the boundary of the truncated domain");
    return {m - 1e-9, Y};
}

double diameter_from_rect(double width, double a, double b)
{
    if (!(a > 0.0) || !(b >= a) || width < 0.0)
        throw DomainError("bounding rectangle needs 0 < a <= b and width >= 0");
    return std::acosh(1.0 + (width * width + (b - a) * (b - a)) / (2.0 * a * a));
}

double diameter_upper_bound(const FundamentalDomain& d, double Y)
{
    if (!d.bounding_rect)
        throw MissingDataError("domain has no bounding rectangle for the diameter bound");
    const BoundingRect& r = *d.bounding_rect;
    double b;
    if (r.y_max)
        b = *r.y_max;
    else if (auto top = top_height(d, Y))
        b = *top;
    else
        throw MissingDataError("bounding rectangle has no upper height");
    double a = r.y_min;
    if (!(a > 0.0)) {
        // Lowest point of F_Y; refined corners make this the true minimum.
        a = truncated_min_height(d, Y) * (1.0 - 1e-12);
    }
    return diameter_from_rect(r.x_max - r.x_min, a, b);
}

std::vector<std::pair<double, double>> truncated_column(const FundamentalDomain& d, double Y, double x)
{
    if (!d.region)
        throw MissingDataError("domain has no region description");
    const auto top = top_height(d, Y);
    double lo = 0.0;
    for (const Circle& c : d.region->outside) {
        const double dx = x - c.center;
        if (std::abs(dx) < c.radius)
            lo = std::max(lo, std::sqrt(c.radius * c.radius - dx * dx));
    }
    std::vector<std::pair<double, double>> pieces{{lo, top.value_or(inf)}};
    for (const CuspData& c : d.cusps) {
        if (c.at_infinity())
            continue;
        const Circle h = horoball(c, Y);
        const double dx = x - h.center;
        if (std::abs(dx) >= h.radius)
            continue;
        const double half = std::sqrt(h.radius * h.radius - dx * dx);
        const double b0 = h.radius - half;
        const double b1 = h.radius + half;
        std::vector<std::pair<double, double>> next;
        for (const auto& [p, q] : pieces) {
            if (b1 <= p || b0 >= q) {
                next.push_back({p, q});
                continue;
            }
            if (p < b0)
                next.push_back({p, b0});
            if (b1 < q)
                next.push_back({b1, q});
        }
        pieces = std::move(next);
    }
    return pieces;
}

double integrate_truncated(const FundamentalDomain& d, double Y, const std::function<double(double, double)>& f,
                           double abs_tol, double rel_tol)
{
    if (!d.region)
        throw MissingDataError("domain has no region description for quadrature");
    auto pieces_u = [&](double x) {
        std::vector<std::pair<double, double>> out;
        for (const auto& [ylo, yhi] : truncated_column(d, Y, x)) {
            if (!(ylo > 0.0))
                throw MissingDataError("truncated column reaches the real axis");
            out.push_back({std::isfinite(yhi) ? 1.0 / yhi : 0.0, 1.0 / ylo});
        }
        return out;
    };
    // dx dy / y^2 = dx du with u = 1/y.
    auto g = [&](double x, double u) { return u > 0.0 ? f(x, 1.0 / u) : 0.0; };
    const quad::Result r = quad::integrate_2d(g, pieces_u, d.region->x_min, d.region->x_max, abs_tol, rel_tol);
    return r.value;
}

double volume_region(const FundamentalDomain& d, double Y)
{
    if (!std::isfinite(Y)) {
        for (const CuspData& c : d.cusps)
            if (!c.at_infinity())
                throw MissingDataError("full-domain quadrature needs every cusp at infinity");
    }
    return integrate_truncated(d, Y, [](double, double) { return 1.0; }, 1e-8, 1e-6);
}

double volume_full(const FundamentalDomain& d, double Y)
{
    // Each cusp neighbourhood is a unit-width strip above height Y in its own chart.
    return volume_region(d, Y) + d.cusp_count() / Y;
}

}  // namespace supnorm
