#include "supnorm/kernels.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "supnorm/errors.hpp"
#include "supnorm/quadrature.hpp"

namespace supnorm {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double ln2 = std::numbers::ln2;

// log(sinh x) for x > 0 without overflow.
double log_sinh(double x)
{
    return x + std::log(-std::expm1(-2.0 * x)) - ln2;
}

double log_cosh(double x)
{
    x = std::abs(x);
    return x + std::log1p(std::exp(-2.0 * x)) - ln2;
}

// log(sinh(v) / v), v >= 0.
double log_sinhc(double v)
{
    if (v < 1e-4)
        return std::log1p(v * v / 6.0);
    return log_sinh(v) - std::log(v);
}

// log T_{2k}(X) from log(X - 1); tiny X - 1 keeps full precision and huge
// X - 1 does not overflow.
double log_T2k_from_log_delta(int k, double log_delta)
{
    double arc;
    if (log_delta > 20.0) {
        const double d = std::exp(-log_delta);
        arc = log_delta + std::log1p(d + std::sqrt(1.0 + 2.0 * d));
    } else {
        const double delta = std::exp(log_delta);
        arc = std::log1p(delta + std::sqrt(delta * (delta + 2.0)));
    }
    const double A = 2.0 * k * arc;
    return A + std::log1p(std::exp(-2.0 * A)) - ln2;
}

// Pieces shared by the integrals along r = rho + u^2 on [rho, inf):
//  r, log T_{2k}(cosh(r/2)/cosh(rho/2)), and log of
//  2u / sqrt(cosh r - cosh rho) = 2 / sqrt(sinh(rho + v) sinhc(v)), v = u^2/2.
struct RayPoint {
    double r;
    double log_cheb;
    double log_jacobian;
};

RayPoint ray_point(int k, double rho, double u)
{
    const double v = 0.5 * u * u;
    const double r = rho + u * u;
    RayPoint p{};
    p.r = r;
    if (k == 0) {
        p.log_cheb = 0.0;
    } else {
        // X - 1 = 2 sinh((r+rho)/4) sinh((r-rho)/4) / cosh(rho/2)
        const double log_delta = ln2 + log_sinh(0.25 * (r + rho)) + log_sinh(0.25 * u * u) - log_cosh(0.5 * rho);
        p.log_cheb = log_T2k_from_log_delta(k, log_delta);
    }
    const double sinh_part = (rho + v) > 0.0 ? log_sinh(rho + v) : -INFINITY;
    p.log_jacobian = ln2 - 0.5 * (sinh_part + log_sinhc(v));
    return p;
}

void require_kernel_args(int k, double s, double sigma)
{
    if (k < 0)
        throw DomainError("weight parameter k must be nonnegative");
    if (!(s > k))
        throw DomainError("spectral parameter must satisfy s > k");
    if (!(sigma > 1.0))
        throw DomainError("kernel is singular at sigma <= 1");
}

}  // namespace

double log_gamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("log_gamma needs a positive argument");
    return std::lgamma(x);
}

double digamma(double x)
{
    if (!(x > 0.0))
        throw DomainError("digamma needs a positive argument");
    // Shift upward with psi(x) = psi(x+1) - 1/x, then use the asymptotic series.
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x;
    const double inv2 = inv * inv;
    // Bernoulli coefficients B_{2n} / (2n).
    const double series =
        inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 / 12.0))))));
    return acc + std::log(x) - 0.5 * inv - series;
}

double digamma_combo(int k, double eps)
{
    if (k < 1 || !(eps > 0.0))
        throw DomainError("digamma_combo needs k >= 1 and eps > 0");
    return -2.0 * (k + eps) / (eps * (2.0 * k + eps));
}

double digamma_combo_direct(int k, double eps)
{
    if (k < 1 || !(eps > 0.0))
        throw DomainError("digamma_combo needs k >= 1 and eps > 0");
    return digamma(2.0 * k + eps) + digamma(eps) - digamma(2.0 * k + 1.0 + eps) - digamma(1.0 + eps);
}

double r_factor(int k, double eps)
{
    if (k < 1 || !(eps > 0.0))
        throw DomainError("r_factor needs k >= 1 and eps > 0");
    return 2.0 * (k + eps) / (eps * (2.0 * k + eps) * (2.0 * k - 1.0 + eps) * (1.0 + eps));
}

double chebyshev_T2k(int k, double x)
{
    if (!(x >= 1.0))
        throw DomainError("Chebyshev majorant needs x >= 1");
    return std::cosh(2.0 * k * std::acosh(x));
}

double log_chebyshev_T2k(int k, double x)
{
    if (!(x >= 1.0))
        throw DomainError("Chebyshev majorant needs x >= 1");
    if (x == 1.0)
        return 0.0;
    return log_T2k_from_log_delta(k, std::log(x - 1.0));
}

GammaRatio gamma_ratio_bound(double Z)
{
    if (!(Z >= 1.0))
        throw DomainError("gamma ratio bound needs Z >= 1");
    const double ratio = std::exp(log_gamma(Z - 0.5) - log_gamma(Z));
    const double bound = std::exp(1.25) / std::sqrt(Z);
    if (!(ratio <= bound))
        throw ConsistencyError("Gamma(Z-1/2)/Gamma(Z) exceeds e^{5/4}/sqrt(Z)", ratio, bound);
    return {ratio, bound};
}

double rho_from_sigma(double sigma)
{
    if (!(sigma >= 1.0))
        throw DomainError("displacement must be at least 1");
    return 2.0 * std::acosh(std::sqrt(sigma));
}

double sigma_from_rho(double rho)
{
    const double c = std::cosh(0.5 * rho);
    return c * c;
}

double resolvent_G(int k, double s, double sigma)
{
    require_kernel_args(k, s, sigma);
    const double a = s + k;
    const double b = s - k;
    const double c = 2.0 * s;
    const double x = 1.0 / sigma;

    double term = 1.0;
    double sum = 1.0;
    bool converged = false;
    for (int n = 0; n < 1000000; ++n) {
        const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
        term *= ratio;
        sum += term;
        // Past the peak the ratio stays below 1; bound the geometric tail.
        if (ratio < 1.0 && term * std::max(1.0, ratio / (1.0 - ratio)) < 1e-16 * sum) {
            converged = true;
            break;
        }
    }
    if (!converged)
        throw AccuracyError("hypergeometric series did not converge", sum, term);

    const double log_pref = -s * std::log(sigma) + log_gamma(a) + log_gamma(b) - log_gamma(c) - std::log(4.0 * pi);
    return std::exp(log_pref) * sum;
}

double g_k_integral(int k, double s, double sigma)
{
    require_kernel_args(k, s, sigma);
    const double rho = rho_from_sigma(sigma);
    auto integrand = [&](double u) {
        const RayPoint p = ray_point(k, rho, u);
        if (!(p.r > 0.0))
            return 0.0;
        const double lg = -(s - 0.5) * p.r + std::log(-std::expm1(-p.r)) + p.log_cheb + p.log_jacobian;
        return std::exp(lg);
    };
    const quad::Result r = quad::integrate_to_infinity(integrand, 0.0, 1e-11);
    return r.value / (2.0 * pi * std::numbers::sqrt2);
}

DifferenceKernel g_k_both(int k, double s, double sigma)
{
    const double series = resolvent_G(k, s, sigma) - resolvent_G(k, s + 1.0, sigma);
    return {series, g_k_integral(k, s, sigma)};
}

double g_k_difference(int k, double s, double sigma, double rel_tol)
{
    const DifferenceKernel d = g_k_both(k, s, sigma);
    if (std::abs(d.series - d.quadrature) > rel_tol * std::max(std::abs(d.series), 1e-30))
        throw ConsistencyError("g_k series and integral representations disagree", d.series, d.quadrature);
    return d.series;
}

double g_k_decay_bound(int k, double eps, double sigma)
{
    if (!(eps > 0.0) || !(sigma >= 1.0))
        throw DomainError("g_k decay bound needs eps > 0 and sigma >= 1");
    return 3.0 / (2.0 * pi * eps) * std::pow(sigma, -(k + eps));
}

double exponential_majorant_integral(int k, double eps, double rho)
{
    if (!(eps > 0.0) || !(rho >= 0.0))
        throw DomainError("majorant integral needs eps > 0 and rho >= 0");
    const double s = k + eps;
    auto integrand = [&](double u) {
        const RayPoint p = ray_point(0, rho, u);
        if (!(p.r > 0.0))
            return 0.0;
        const double lg = (k - (s - 0.5)) * p.r + std::log(-std::expm1(-p.r)) + p.log_jacobian;
        return std::exp(lg);
    };
    return quad::integrate_to_infinity(integrand, 0.0, 1e-10).value;
}

double exponential_majorant_bound(double eps, double rho)
{
    return 3.0 * std::numbers::sqrt2 / eps * std::exp(-eps * rho);
}

double log_heat_kernel(int k, double t, double rho, double rel_tol)
{
    if (!(t > 0.0))
        throw DomainError("heat kernel needs t > 0");
    if (!(rho >= 0.0))
        throw DomainError("heat kernel needs rho >= 0");
    auto log_integrand = [&](double u) {
        const RayPoint p = ray_point(k, rho, u);
        if (!(p.r > 0.0))
            return -std::numeric_limits<double>::infinity();
        return std::log(p.r) - p.r * p.r / (4.0 * t) + p.log_cheb + p.log_jacobian;
    };
    // The Gaussian against e^{kr} peaks near r = 2kt; locate the peak on a
    // coarse scan and factor it out so large k t cannot overflow.
    const double u_span = std::sqrt(2.0 * k * t + 10.0 * std::sqrt(t) + 10.0);
    double shift = -INFINITY, u_peak = 0.0;
    for (int i = 1; i <= 64; ++i) {
        const double u = u_span * i / 64.0;
        const double v = log_integrand(u);
        if (v > shift) {
            shift = v;
            u_peak = u;
        }
    }
    auto integrand = [&](double u) { return std::exp(log_integrand(u) - shift); };
    const quad::Result head = quad::integrate(integrand, 0.0, u_peak, 1e-300, rel_tol);
    // Width of the Gaussian in u near the lower endpoint is about t^{1/4}.
    quad::TailOptions opt;
    opt.first_width = std::min(1.0, std::sqrt(std::sqrt(t)) + 0.1);
    const quad::Result tail = quad::integrate_to_infinity(integrand, u_peak, rel_tol, opt);
    const double log_pref = 0.5 * ln2 - 0.25 * t - 1.5 * std::log(4.0 * pi * t);
    return log_pref + shift + std::log(head.value + tail.value);
}

double heat_kernel(int k, double t, double rho, double rel_tol)
{
    return std::exp(log_heat_kernel(k, t, rho, rel_tol));
}

double heat_kernel_transform(int k, double s, double sigma, double rel_tol)
{
    require_kernel_args(k, s, sigma);
    const double rho = rho_from_sigma(sigma);
    const double a2 = (s - 0.5) * (s - 0.5);
    auto integrand = [&](double t) {
        if (!(t > 0.0))
            return 0.0;
        return std::exp(-(a2 - 0.25) * t) * heat_kernel(k, t, rho, 1e-9);
    };
    quad::TailOptions opt;
    opt.first_width = 0.25;
    return quad::integrate_to_infinity(integrand, 0.0, rel_tol, opt).value;
}

double parabolic_sum_bound(int k, double eps)
{
    if (k < 1 || !(eps > 0.0))
        throw DomainError("parabolic bound needs k >= 1 and eps > 0");
    return k * std::exp(1.25) / (std::sqrt(pi) * std::sqrt(k + eps));
}

double faddeev_transfer(double y0, double y, double d1, double d2)
{
    if (!(y0 > 0.0) || !(y >= 2.0 * y0))
        throw DomainError("transfer factor needs y >= 2 y0 > 0");
    if (!(d1 > 0.0) || !(d2 >= d1 + 1.0))
        throw DomainError("transfer factor needs d1 > 0 and d2 >= d1 + 1");
    return std::pow(64.0 / 15.0, d2 - d1 - 1.0) * std::pow(y0, -2.0 * d1 - 2.0) * std::pow(y, -2.0 * d2 + 4.0 * d1 + 4.0);
}

}  // namespace supnorm
