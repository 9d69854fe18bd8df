#pragma once

// Upper half-plane geometry: points, Möbius maps, geodesic segments and the
// closed-form distance identities used throughout the library.

#include <Eigen/Core>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "supnorm/errors.hpp"

namespace supnorm {

template <typename Scalar>
struct UhpPoint {
    Scalar x;
    Scalar y;

    std::complex<Scalar> z() const { return {x, y}; }

    static UhpPoint from_complex(const std::complex<Scalar>& w) { return make(w.real(), w.imag()); }

    /// Checked constructor: y must be positive and both coordinates finite.
    static UhpPoint make(Scalar x, Scalar y)
    {
        using std::isfinite;
        if (!(y > Scalar(0)) || !isfinite(x) || !isfinite(y))
            throw DomainError("point is not in the upper half-plane");
        return UhpPoint{x, y};
    }
};

/// Element of PSL(2,R) stored as a unit-determinant 2x2 matrix. The sign is
/// canonicalized so that the first nonzero entry among (c, d, a, b) is
/// positive; M and -M therefore compare equal.
template <typename Scalar>
class MoebiusMap {
public:
    using Matrix = Eigen::Matrix<Scalar, 2, 2>;

    MoebiusMap() : m_(Matrix::Identity()) {}

    MoebiusMap(Scalar a, Scalar b, Scalar c, Scalar d)
    {
        m_ << a, b, c, d;
        check_and_normalize();
    }

    explicit MoebiusMap(const Matrix& m) : m_(m) { check_and_normalize(); }

    /// Rescales an arbitrary positive-determinant matrix to determinant one.
    static MoebiusMap from_positive_determinant(Scalar a, Scalar b, Scalar c, Scalar d)
    {
        using std::sqrt;
        const Scalar det = a * d - b * c;
        if (!(det > Scalar(0)))
            throw DomainError("Möbius map needs a positive determinant");
        const Scalar s = sqrt(det);
        return MoebiusMap(a / s, b / s, c / s, d / s);
    }

    static MoebiusMap identity() { return MoebiusMap(); }
    static MoebiusMap translation(Scalar n) { return MoebiusMap(1, n, 0, 1); }
    static MoebiusMap inversion() { return MoebiusMap(0, -1, 1, 0); }

    Scalar a() const { return m_(0, 0); }
    Scalar b() const { return m_(0, 1); }
    Scalar c() const { return m_(1, 0); }
    Scalar d() const { return m_(1, 1); }
    const Matrix& matrix() const { return m_; }

    Scalar determinant() const { return m_.determinant(); }

    MoebiusMap inverse() const { return MoebiusMap(d(), -b(), -c(), a()); }

    MoebiusMap operator*(const MoebiusMap& other) const { return MoebiusMap(Matrix(m_ * other.m_)); }

    UhpPoint<Scalar> operator()(const UhpPoint<Scalar>& p) const { return apply(p); }

    UhpPoint<Scalar> apply(const UhpPoint<Scalar>& p) const
    {
        // Im((az+b)/(cz+d)) = y / |cz+d|^2 keeps the imaginary part positive
        // without cancellation.
        const Scalar cx_d = c() * p.x + d();
        const Scalar cy = c() * p.y;
        const Scalar denom = cx_d * cx_d + cy * cy;
        const Scalar ax_b = a() * p.x + b();
        const Scalar ay = a() * p.y;
        const Scalar re = (ax_b * cx_d + ay * cy) / denom;
        const Scalar im = p.y / denom;
        return UhpPoint<Scalar>::make(re, im);
    }

    /// Image of the point at infinity; nullopt-free: returns +inf when c == 0.
    Scalar image_of_infinity() const
    {
        if (c() == Scalar(0))
            return std::numeric_limits<Scalar>::infinity();
        return a() / c();
    }

    bool approx_equal(const MoebiusMap& other, Scalar tol = Scalar(1e-12)) const
    {
        return (m_ - other.m_).cwiseAbs().maxCoeff() <= tol;
    }

private:
    void check_and_normalize()
    {
        using std::abs;
        const Scalar det = m_.determinant();
        const Scalar scale = std::max<Scalar>(Scalar(1), abs(m_(0, 0) * m_(1, 1)) + abs(m_(0, 1) * m_(1, 0)));
        if (!(abs(det - Scalar(1)) <= Scalar(1e-12) * scale))
            throw DomainError("Möbius map must have determinant 1");
        const Scalar order[4] = {m_(1, 0), m_(1, 1), m_(0, 0), m_(0, 1)};
        for (Scalar v : order) {
            if (v != Scalar(0)) {
                if (v < Scalar(0))
                    m_ = -m_;
                break;
            }
        }
    }

    Matrix m_;
};

/// sigma(z, w) = |z - conj(w)|^2 / (4 Im z Im w) = cosh^2(dist/2).
template <typename Scalar>
Scalar displacement(const UhpPoint<Scalar>& z, const UhpPoint<Scalar>& w)
{
    const Scalar dx = z.x - w.x;
    const Scalar sy = z.y + w.y;
    return (dx * dx + sy * sy) / (Scalar(4) * z.y * w.y);
}

/// Hyperbolic distance. Evaluated as 2 asinh(sqrt(u)) with
/// u = |z-w|^2 / (4 Im z Im w), which is accurate for nearby points and
/// satisfies cosh^2(d/2) = 1 + u = displacement(z, w).
template <typename Scalar>
Scalar dist_hyp(const UhpPoint<Scalar>& z, const UhpPoint<Scalar>& w)
{
    using std::asinh;
    using std::sqrt;
    const Scalar dx = z.x - w.x;
    const Scalar dy = z.y - w.y;
    const Scalar u = (dx * dx + dy * dy) / (Scalar(4) * z.y * w.y);
    return Scalar(2) * asinh(sqrt(u));
}

/// Hyperbolic area of a disk of radius r: 4 pi sinh^2(r/2).
template <typename Scalar>
Scalar disk_volume(Scalar r)
{
    using std::sinh;
    if (r < Scalar(0))
        throw DomainError("disk radius must be nonnegative");
    const Scalar s = sinh(r / Scalar(2));
    return Scalar(4) * std::numbers::pi_v<Scalar> * s * s;
}

/// A geodesic segment of the upper half-plane: either a piece of a vertical
/// ray {foot + iy : lo <= y <= hi} or a piece of a circle centred on the real
/// axis {center + radius e^{i theta} : lo <= theta <= hi}. Vertical rays that
/// run up to the cusp at infinity carry the `unbounded` flag and ignore `hi`.
template <typename Scalar>
struct GeodesicSegment {
    enum class Kind { VerticalRay, Arc };

    Kind kind = Kind::VerticalRay;
    Scalar anchor = 0;  // foot x-coordinate (ray) or centre (arc)
    Scalar radius = 0;  // arcs only
    Scalar lo = 0;      // height (ray) or angle (arc)
    Scalar hi = 0;
    bool unbounded = false;

    static GeodesicSegment vertical(Scalar foot, Scalar y_lo, Scalar y_hi)
    {
        if (!(y_lo > Scalar(0)) || !(y_hi >= y_lo))
            throw DomainError("vertical segment needs 0 < y_lo <= y_hi");
        return GeodesicSegment{Kind::VerticalRay, foot, Scalar(0), y_lo, y_hi, false};
    }

    static GeodesicSegment vertical_ray(Scalar foot, Scalar y_lo)
    {
        if (!(y_lo > Scalar(0)))
            throw DomainError("vertical ray needs y_lo > 0");
        return GeodesicSegment{Kind::VerticalRay, foot, Scalar(0), y_lo,
                               std::numeric_limits<Scalar>::infinity(), true};
    }

    static GeodesicSegment arc(Scalar center, Scalar radius, Scalar theta_lo, Scalar theta_hi)
    {
        if (!(radius > Scalar(0)))
            throw DomainError("arc radius must be positive");
        if (!(theta_lo >= Scalar(0)) || !(theta_hi <= std::numbers::pi_v<Scalar>) || !(theta_lo <= theta_hi))
            throw DomainError("arc angle range must satisfy 0 <= lo <= hi <= pi");
        return GeodesicSegment{Kind::Arc, center, radius, theta_lo, theta_hi, false};
    }

    bool is_arc() const { return kind == Kind::Arc; }

    /// Point at the given parameter (height for rays, angle for arcs).
    UhpPoint<Scalar> at(Scalar t) const
    {
        using std::cos;
        using std::sin;
        if (kind == Kind::VerticalRay)
            return UhpPoint<Scalar>::make(anchor, t);
        return UhpPoint<Scalar>::make(anchor + radius * cos(t), radius * sin(t));
    }
};

namespace detail {

/// cosh(dist(p, q)) = 1 + |p - q|^2 / (2 Im p Im q).
template <typename Scalar>
Scalar cosh_dist(const UhpPoint<Scalar>& p, Scalar qx, Scalar qy)
{
    const Scalar dx = p.x - qx;
    const Scalar dy = p.y - qy;
    return Scalar(1) + (dx * dx + dy * dy) / (Scalar(2) * p.y * qy);
}

}  // namespace detail

/// Infimum of the hyperbolic distance from p to a point of the segment.
/// Rays are handled in closed form; along an arc the distance is convex in
/// arclength (hence unimodal in the angle), so a golden-section search on
/// the angle finds the minimum.
template <typename Scalar>
Scalar dist_point_to_segment(const GeodesicSegment<Scalar>& s, const UhpPoint<Scalar>& p)
{
    using std::acosh;
    using std::cos;
    using std::max;
    using std::min;
    using std::sin;
    using std::sqrt;

    if (s.kind == GeodesicSegment<Scalar>::Kind::VerticalRay) {
        // cosh d(y) = (dx^2 + py^2) / (2 y py) + y / (2 py), minimized at
        // y* = sqrt(dx^2 + py^2).
        const Scalar dx = p.x - s.anchor;
        const Scalar y_top = s.unbounded ? std::numeric_limits<Scalar>::infinity() : s.hi;
        const Scalar y = min(max(sqrt(dx * dx + p.y * p.y), s.lo), y_top);
        const Scalar c = detail::cosh_dist(p, s.anchor, y);
        return acosh(max(c, Scalar(1)));
    }

    auto f = [&](Scalar theta) {
        const Scalar qy = s.radius * sin(theta);
        if (!(qy > Scalar(0)))
            return std::numeric_limits<Scalar>::infinity();
        return detail::cosh_dist(p, s.anchor + s.radius * cos(theta), qy);
    };

    const Scalar inv_phi = (sqrt(Scalar(5)) - Scalar(1)) / Scalar(2);
    Scalar a = s.lo;
    Scalar b = s.hi;
    Scalar c = b - inv_phi * (b - a);
    Scalar d = a + inv_phi * (b - a);
    Scalar fc = f(c);
    Scalar fd = f(d);
    for (int it = 0; it < 200 && (b - a) > std::numeric_limits<Scalar>::epsilon() * Scalar(4); ++it) {
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    const Scalar best = min({fc, fd, f(s.lo), f(s.hi)});
    return acosh(max(best, Scalar(1)));
}

using Point = UhpPoint<double>;
using Moebius = MoebiusMap<double>;
using Segment = GeodesicSegment<double>;

}  // namespace supnorm
