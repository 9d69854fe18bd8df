#include "supnorm/modular_forms.hpp"

#include <cmath>
#include <numbers>

#include "supnorm/domain.hpp"
#include "supnorm/quadrature.hpp"

namespace supnorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double kNormHeight = 20.0;

__int128 checked_mul(__int128 x, __int128 y)
{
    __int128 r = 0;
    if (__builtin_mul_overflow(x, y, &r))
        throw AccuracyError("q-series coefficient overflow", 0.0, 0.0);
    return r;
}

__int128 checked_add(__int128 x, __int128 y)
{
    __int128 r = 0;
    if (__builtin_add_overflow(x, y, &r))
        throw AccuracyError("q-series coefficient overflow", 0.0, 0.0);
    return r;
}

__int128 divisor_power_sum(int n, int p)
{
    __int128 s = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d)
            continue;
        __int128 t = 1;
        for (int i = 0; i < p; ++i)
            t = checked_mul(t, d);
        s = checked_add(s, t);
    }
    return s;
}

Coefficients eisenstein(int n, int p, int scale)
{
    if (n < 1)
        throw DomainError("series length must be positive");
    Coefficients e(n, 0);
    e[0] = 1;
    for (int m = 1; m < n; ++m)
        e[m] = checked_mul(scale, divisor_power_sum(m, p));
    return e;
}

// Integral of e^{-a y} y^m over [Y, inf), bounded by e^{-a Y} Y^m / (a - m/Y)
// since the log-derivative of the integrand stays below -(a - m/Y) there.
double exp_power_tail(double a, double m, double Y)
{
    const double rate = a - m / Y;
    if (!(rate > 0.0))
        throw DomainError("tail height too small for the exponential majorant");
    return std::exp(-a * Y + m * std::log(Y)) / rate;
}

// Petersson norm on F_Y by quadrature, plus the strip above Y.
double norm_at(const CuspFormBasis& b, double rel_tol)
{
    static const FundamentalDomain dom = psl2z_domain();
    auto f = [&](double x, double y) {
        const std::complex<double> v = evaluate_form(b, Point::make(x, y));
        return std::norm(v) * std::pow(y, b.weight);
    };
    return integrate_truncated(dom, kNormHeight, f, 0.0, rel_tol);
}

// |f(z)|^2 y^w <= (|q| (1 + c))^2 y^w for y >= Y with c bounding the
// normalized higher terms; integrated against dx dy / y^2 over a unit strip.
double strip_tail(const CuspFormBasis& b, double Y)
{
    const double q = std::exp(-2.0 * pi * Y);
    const double c = q_series_tail_bound(b, q) / q;  // includes the n = 1 term
    return c * c * exp_power_tail(4.0 * pi, b.weight - 2.0, Y);
}

}  // namespace

Coefficients multiply_series(const Coefficients& f, const Coefficients& g)
{
    const std::size_t n = std::min(f.size(), g.size());
    Coefficients h(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (f[i] == 0)
            continue;
        for (std::size_t j = 0; i + j < n; ++j)
            h[i + j] = checked_add(h[i + j], checked_mul(f[i], g[j]));
    }
    return h;
}

Coefficients discriminant_series(int n)
{
    if (n < 2)
        throw DomainError("series length must be at least 2");
    // prod (1 - q^m)^24 to order q^{n-2}, then shift by one.
    Coefficients p(n - 1, 0);
    p[0] = 1;
    for (int m = 1; m < n - 1; ++m)
        for (int rep = 0; rep < 24; ++rep)
            for (int i = n - 2; i >= m; --i)
                p[i] = checked_add(p[i], -p[i - m]);
    Coefficients delta(n, 0);
    for (int i = 0; i < n - 1; ++i)
        delta[i + 1] = p[i];
    return delta;
}

Coefficients eisenstein4_series(int n) { return eisenstein(n, 3, 240); }
Coefficients eisenstein6_series(int n) { return eisenstein(n, 5, -504); }

bool weight_has_single_cusp_form(int weight)
{
    if (weight < 4 || weight % 2)
        return false;
    return dimension_d2k(psl2z_domain(), weight / 2) == 1;
}

CuspFormBasis build_basis(int weight, int n_coefficients)
{
    if (weight < 4 || weight % 2 || !weight_has_single_cusp_form(weight))
        throw UnsupportedError("weight " + std::to_string(weight) + " does not have a one-dimensional cusp space");
    if (n_coefficients < 8)
        throw DomainError("too few q-coefficients requested");

    // weight - 12 = 4a + 6b has a unique solution for the one-dimensional weights.
    const int rest = weight - 12;
    int a = -1, bb = -1;
    for (int j = 0; 6 * j <= rest; ++j)
        if ((rest - 6 * j) % 4 == 0) {
            a = (rest - 6 * j) / 4;
            bb = j;
            break;
        }
    if (a < 0)
        throw UnsupportedError("weight " + std::to_string(weight) + " is not reachable from E4, E6 and the discriminant");

    Coefficients f = discriminant_series(n_coefficients);
    const Coefficients e4 = eisenstein4_series(n_coefficients);
    const Coefficients e6 = eisenstein6_series(n_coefficients);
    for (int i = 0; i < a; ++i)
        f = multiply_series(f, e4);
    for (int i = 0; i < bb; ++i)
        f = multiply_series(f, e6);

    CuspFormBasis b;
    b.weight = weight;
    b.q_coefficients = std::move(f);

    // Crude Hecke-type majorant |a_n| <= A n^{w/2 + 1/2}; A is fitted on the
    // computed range and inflated by 4 for the unseen coefficients.
    const double p = weight / 2.0 + 0.5;
    double A = 0.0;
    for (int n = 1; n < n_coefficients; ++n)
        A = std::max(A, std::fabs(static_cast<double>(b.q_coefficients[n])) / std::pow(n, p));
    b.hecke_constant = 4.0 * A;

    const double coarse = norm_at(b, 1e-7);
    const double fine = norm_at(b, 1e-10);
    const double tail = strip_tail(b, kNormHeight);
    b.petersson_norm = fine + tail;
    b.petersson_error = std::fabs(fine - coarse) + tail;
    return b;
}

double q_series_tail_bound(const CuspFormBasis& b, double abs_q)
{
    // Terms A n^p |q|^n with n >= N decrease at ratio at most ((N+1)/N)^p |q|.
    const int N = static_cast<int>(b.q_coefficients.size());
    if (abs_q == 0.0)
        return 0.0;
    const double p = b.weight / 2.0 + 0.5;
    const double ratio = std::pow((N + 1.0) / N, p) * abs_q;
    if (!(ratio < 1.0))
        return INFINITY;
    return b.hecke_constant * std::exp(p * std::log(N) + N * std::log(abs_q)) / (1.0 - ratio);
}

std::complex<double> evaluate_form(const CuspFormBasis& b, const Point& z)
{
    const double abs_q = std::exp(-2.0 * pi * z.y);
    const std::complex<double> q = std::polar(abs_q, 2.0 * pi * z.x);
    std::complex<double> acc = 0.0;
    for (std::size_t n = b.q_coefficients.size(); n-- > 1;)
        acc = acc * q + static_cast<double>(b.q_coefficients[n]);
    acc *= q;
    const double tail = q_series_tail_bound(b, abs_q);
    if (!(tail <= 1e-10 * std::abs(acc)))
        throw AccuracyError("q-expansion truncated too early at this height; more coefficients required",
                            std::abs(acc), tail);
    return acc;
}

double s2k_eval(const CuspFormBasis& b, const Point& z)
{
    if (!(b.petersson_norm > 0.0))
        throw DomainError("basis has no Petersson norm");
    return std::norm(evaluate_form(b, z)) * std::pow(z.y, b.weight) / b.petersson_norm;
}

Reduction reduce_to_standard(const Point& z0)
{
    IntegerMoebius g = IntegerMoebius::identity();
    Point z = z0;
    for (int iter = 0; iter < 10000; ++iter) {
        const long long n = std::llround(std::floor(z.x + 0.5));
        if (n != 0) {
            const IntegerMoebius t = IntegerMoebius::translation(-n);
            g = t * g;
            z = Point::make(z.x - static_cast<double>(n), z.y);
        }
        if (z.x * z.x + z.y * z.y >= 1.0 - 1e-15)
            return {z, g};
        g = IntegerMoebius::inversion() * g;
        z = IntegerMoebius::inversion().apply(z);
    }
    throw AccuracyError("reduction to the standard domain did not terminate", z.y, 0.0);
}

double s2k_eval_reduced(const CuspFormBasis& b, const Point& z)
{
    return s2k_eval(b, reduce_to_standard(z).point);
}

double s2k_mass(const CuspFormBasis& b, double y_top)
{
    // Lower boundary: |z| = 1 on [0, 1/2] and |z - 1| = 1 on [1/2, 1].
    auto column = [&](double x) {
        const double lo = x <= 0.5 ? std::sqrt(1.0 - x * x) : std::sqrt(1.0 - (x - 1.0) * (x - 1.0));
        auto g = [&](double y) { return s2k_eval(b, Point::make(x, y)) / (y * y); };
        return quad::integrate(g, lo, y_top, 0.0, 1e-11).value;
    };
    const double left = quad::integrate(column, 0.0, 0.5, 0.0, 1e-9).value;
    const double right = quad::integrate(column, 0.5, 1.0, 0.0, 1e-9).value;
    return left + right + strip_tail(b, y_top) / b.petersson_norm;
}

}  // namespace supnorm
