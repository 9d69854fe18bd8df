#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "supnorm/errors.hpp"
#include "supnorm/kernel_check.hpp"
#include "supnorm/kernels.hpp"

using namespace supnorm;

namespace {

constexpr double pi = std::numbers::pi;

// psi(x) = ln x - 1/(2x) - sum B_2n / (2n x^{2n}), valid for large x.
double digamma_asymptotic(double x)
{
    const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730, 7.0 / 6};
    double s = std::log(x) - 0.5 / x;
    double p = 1.0;
    for (int n = 1; n <= 7; ++n) {
        p *= x * x;
        s -= b[n - 1] / (2.0 * n * p);
    }
    return s;
}

// ln Gamma(x) = (x-1/2) ln x - x + ln(2 pi)/2 + sum B_2n / (2n(2n-1) x^{2n-1}).
double log_gamma_stirling(double x)
{
    double shift = 0.0;
    while (x < 15.0) {
        shift -= std::log(x);
        x += 1.0;
    }
    const double b[] = {1.0 / 6, -1.0 / 30, 1.0 / 42, -1.0 / 30, 5.0 / 66, -691.0 / 2730};
    double s = (x - 0.5) * std::log(x) - x + 0.5 * std::log(2 * pi);
    double p = x;
    for (int n = 1; n <= 6; ++n) {
        s += b[n - 1] / (2.0 * n * (2.0 * n - 1) * p);
        p *= x * x;
    }
    return s + shift;
}

}  // namespace

TEST_CASE("digamma values")
{
    // psi(1) as the limit of ln n - H_n, with the 1/(2n) - 1/(12 n^2) terms of H_n restored
    const int n = 100000;
    double H = 0.0;
    for (int m = n; m >= 1; --m)
        H += 1.0 / m;
    const double psi1 = std::log(static_cast<double>(n)) - H + 0.5 / n - 1.0 / (12.0 * n * n);
    CHECK(digamma(1.0) == doctest::Approx(psi1).epsilon(1e-11));
    CHECK(digamma(1.0) == doctest::Approx(-0.5772156649015329).epsilon(1e-13));
    CHECK(digamma(2.0) == doctest::Approx(digamma(1.0) + 1.0).epsilon(1e-13));
    CHECK(digamma(10.5) == doctest::Approx(digamma_asymptotic(10.5)).epsilon(1e-12));
    CHECK(digamma(10.5) == doctest::Approx(2.30300103429768637).epsilon(1e-13));
    CHECK_THROWS_AS(digamma(0.0), DomainError);
    CHECK_THROWS_AS(digamma(-1.5), DomainError);
}

TEST_CASE("property: digamma functional equation")
{
    for (double x = 0.05; x < 60.0; x *= 1.17)
        CHECK(digamma(x + 1) - digamma(x) == doctest::Approx(1.0 / x).epsilon(1e-12));
}

TEST_CASE("log-gamma against the Stirling series")
{
    for (double x = 1.0; x < 500.0; x *= 1.3)
        CHECK(log_gamma(x) == doctest::Approx(log_gamma_stirling(x)).epsilon(1e-12));
    CHECK(log_gamma(0.5) == doctest::Approx(0.5 * std::log(pi)).epsilon(1e-14));
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
}

TEST_CASE("digamma combination")
{
    CHECK(digamma_combo(1, 0.5) == doctest::Approx(-2.4).epsilon(1e-13));
    CHECK(digamma_combo(6, 0.1) == doctest::Approx(-2 * 6.1 / (0.1 * 12.1)).epsilon(1e-13));
    CHECK(digamma_combo(6, 0.1) == doctest::Approx(-10.0826).epsilon(1e-5));
    for (int k = 1; k <= 30; ++k)
        for (double e : {0.01, 0.3, 1.0, 4.0}) {
            CHECK(digamma_combo(k, e) < 0.0);
            CHECK(digamma_combo(k, e) == doctest::Approx(digamma_combo_direct(k, e)).epsilon(1e-9));
        }
}

TEST_CASE("spectral cutoff weight")
{
    CHECK(r_factor(1, 1.0) == doctest::Approx(1.0 / 3).epsilon(1e-14));
    for (int k : {1, 2, 6, 20})
        CHECK(1e-8 * r_factor(k, 1e-8) == doctest::Approx(1.0 / (2 * k - 1)).epsilon(1e-6));
    for (int k = 1; k <= 20; ++k)
        for (double e : {0.01, 0.5, 3.0})
            CHECK(r_factor(k, e) > 0.0);
}

TEST_CASE("Chebyshev polynomial and its exponential majorant")
{
    for (int k = 1; k <= 10; ++k)
        CHECK(chebyshev_T2k(k, 1.0) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(chebyshev_T2k(2, 2.0) == doctest::Approx(97.0).epsilon(1e-13));
    for (double x = 1.0; x < 4.0; x += 0.1)
        CHECK(chebyshev_T2k(2, x) == doctest::Approx(8 * x * x * x * x - 8 * x * x + 1).epsilon(1e-12));
    CHECK_THROWS_AS(chebyshev_T2k(2, 0.5), DomainError);
    for (int k = 1; k <= 50; ++k)
        for (double r = 0.0; r <= 10.0; r += 0.125)
            CHECK(log_chebyshev_T2k(k, std::cosh(r / 2)) <= k * r + 1e-12);
}

TEST_CASE("effective Stirling ratio")
{
    const GammaRatio one = gamma_ratio_bound(1.0);
    CHECK(one.ratio == doctest::Approx(std::sqrt(pi)).epsilon(1e-14));
    CHECK(one.bound == doctest::Approx(std::exp(1.25)).epsilon(1e-14));
    const GammaRatio ten = gamma_ratio_bound(10.0);
    // Gamma(9.5)/Gamma(10), independent high-precision value
    CHECK(ten.ratio == doctest::Approx(0.328738045620064504).epsilon(1e-12));
    CHECK(ten.bound == doctest::Approx(3.49034295746184 / std::sqrt(10.0)).epsilon(1e-12));
    CHECK(ten.ratio <= ten.bound);
    CHECK(gamma_ratio_bound(1e6).ratio * 1e3 == doctest::Approx(1.0).epsilon(1e-5));
    CHECK_THROWS_AS(gamma_ratio_bound(0.5), DomainError);
}

TEST_CASE("displacement and radius conversions")
{
    for (double s = 1.0; s < 1e6; s *= 1.9)
        CHECK(sigma_from_rho(rho_from_sigma(s)) == doctest::Approx(s).epsilon(1e-12));
    CHECK(rho_from_sigma(1.0) == 0.0);
    CHECK_THROWS_AS(rho_from_sigma(0.5), DomainError);
}

TEST_CASE("resolvent kernel")
{
    // independent high-precision evaluations of the hypergeometric form
    CHECK(resolvent_G(1, 2.0, 2.0) == doctest::Approx(0.0108459606438912118).epsilon(1e-10));
    CHECK(resolvent_G(1, 1.5, 3.0) == doctest::Approx(0.0212842400546438674).epsilon(1e-10));
    CHECK(resolvent_G(2, 3.0, 1.5) == doctest::Approx(0.0110250063778640667).epsilon(1e-10));
    // leading term at large sigma
    const double s = 2.5, sg = 1e8;
    const double lead = std::exp(log_gamma(s + 1) + log_gamma(s - 1) - log_gamma(2 * s)) / (4 * pi);
    CHECK(resolvent_G(1, s, sg) * std::pow(sg, s) == doctest::Approx(lead).epsilon(1e-7));
    for (int k : {0, 1, 3})
        for (double e : {0.1, 1.0})
            for (double x : {1.01, 2.0, 50.0})
                CHECK(resolvent_G(k, k + e, x) > 0.0);
    CHECK_THROWS_AS(resolvent_G(1, 2.0, 1.0), DomainError);
    CHECK_THROWS_AS(resolvent_G(2, 1.5, 2.0), DomainError);
}

TEST_CASE("difference kernel by two routes")
{
    CHECK(g_k_difference(2, 2.5, 2.0) == doctest::Approx(0.0153788993434806150).epsilon(1e-9));
    for (int k : {1, 2, 6})
        for (double e : {0.1, 0.5})
            for (double sg : {1.5, 2.0, 10.0}) {
                const DifferenceKernel d = g_k_both(k, k + e, sg);
                CHECK(d.series == doctest::Approx(d.quadrature).epsilon(1e-6));
                CHECK(g_k_integral(k, k + e, sg) == doctest::Approx(d.quadrature).epsilon(1e-12));
                CHECK(d.series <= g_k_decay_bound(k, e, sg));
                const double rho = rho_from_sigma(sg);
                CHECK(exponential_majorant_integral(k, e, rho) <= exponential_majorant_bound(e, rho));
            }
}

TEST_CASE("heat kernel")
{
    const double t = 1.0;
    CHECK(heat_kernel(1, t, 0.5) == doctest::Approx(std::exp(log_heat_kernel(1, t, 0.5))).epsilon(1e-12));
    for (int k : {0, 1, 2, 6})
        for (double tt : {0.25, 1.0, 3.0}) {
            const double peak = log_heat_kernel(k, tt, 0.0);
            double prev = peak;
            for (double r = 0.25; r <= 4.0; r += 0.25) {
                const double v = log_heat_kernel(k, tt, r);
                CHECK(v <= prev + 1e-12);
                CHECK(v <= peak + 1e-12);
                prev = v;
            }
        }
    CHECK_THROWS_AS(heat_kernel(1, 0.0, 1.0), DomainError);
    CHECK_THROWS_AS(heat_kernel(1, 1.0, -1.0), DomainError);
}

TEST_CASE("heat kernel transform recovers the resolvent")
{
    CHECK(heat_kernel_transform(1, 2.0, 2.0) == doctest::Approx(resolvent_G(1, 2.0, 2.0)).epsilon(1e-4));
    CHECK(heat_kernel_transform(1, 1.5, 3.0) == doctest::Approx(resolvent_G(1, 1.5, 3.0)).epsilon(1e-4));
    CHECK(heat_kernel_transform(2, 3.0, 1.5) == doctest::Approx(resolvent_G(2, 3.0, 1.5)).epsilon(1e-4));
}

TEST_CASE("parabolic sum majorant")
{
    CHECK(parabolic_sum_bound(26, 1e-12) ==
          doctest::Approx(std::sqrt(26.0) * std::exp(1.25) / std::sqrt(pi)).epsilon(1e-10));
    for (int k = 1; k <= 60; ++k)
        for (double e : {0.001, 0.1, 1.0}) {
            const double mid = k / std::sqrt(pi) * std::exp(log_gamma(k - 0.5 + e) - log_gamma(k + e));
            CHECK(mid <= parabolic_sum_bound(k, e));
        }
    CHECK_THROWS_AS(parabolic_sum_bound(0, 0.1), DomainError);
}

TEST_CASE("transfer factor")
{
    // d2 = d1 + 1 leaves no (64/15) factor
    CHECK(faddeev_transfer(1.0, 3.0, 1.5, 2.5) == doctest::Approx(std::pow(3.0, -2 * 2.5 + 4 * 1.5 + 4)).epsilon(1e-14));
    CHECK(faddeev_transfer(2.0, 4.0, 1.0, 3.0) ==
          doctest::Approx(64.0 / 15 * std::pow(2.0, -4.0) * std::pow(4.0, -6.0 + 8.0)).epsilon(1e-14));
    CHECK_THROWS_AS(faddeev_transfer(1.0, 1.5, 1.0, 2.0), DomainError);
    CHECK_THROWS_AS(faddeev_transfer(1.0, 3.0, 1.0, 1.5), DomainError);
    // (64/15)^{k-2} = Y^{2k-4}/4^{k-2} at Y = 16/sqrt 15
    const double Y = 16 / std::sqrt(15.0);
    for (int k = 2; k <= 40; ++k)
        CHECK(std::pow(64.0 / 15, k - 2) == doctest::Approx(std::pow(Y, 2 * k - 4) / std::pow(4.0, k - 2)).epsilon(1e-11));
}

TEST_CASE("kernel check suites")
{
    const KernelCheckReport r = run_kernel_checks(kernel_grid());
    CHECK(r.items.size() == 11);
    for (const KernelCheckItem& i : r.items) {
        INFO(i.suite);
        CHECK(i.passed);
        CHECK(i.points > 0);
    }
    KernelGrid strict = kernel_grid();
    strict.transform_tol = 1e-16;
    const KernelCheckReport s = run_kernel_checks(strict);
    CHECK_FALSE(s.all_passed());
    for (const KernelCheckItem& i : s.items)
        CHECK(i.passed == (i.suite != "heat-transform"));
    CHECK(r.to_json()["passed"] == true);
}
