#pragma once

// Special functions and point-pair kernels of the weight-k hyperbolic
// Laplacian: digamma, effective Stirling, Chebyshev majorant, the
// hypergeometric resolvent G_k, its difference g_k, and the heat kernel K_k.

namespace supnorm {

double log_gamma(double x);
double digamma(double x);

/// psi(2k+e) + psi(e) - psi(2k+1+e) - psi(1+e) in closed form.
double digamma_combo(int k, double eps);
/// The same combination from four digamma evaluations.
double digamma_combo_direct(int k, double eps);

/// Weight attached to the spectral cutoff at s = k+eps, t = k+1+eps.
double r_factor(int k, double eps);

/// T_{2k}(x) = cosh(2k arccosh x) for x >= 1, and its logarithm.
double chebyshev_T2k(int k, double x);
double log_chebyshev_T2k(int k, double x);

struct GammaRatio {
    double ratio;  // Gamma(Z - 1/2) / Gamma(Z)
    double bound;  // e^{5/4} / sqrt(Z)
};
GammaRatio gamma_ratio_bound(double Z);

/// Displacement sigma = cosh^2(rho/2) and its inverse.
double rho_from_sigma(double sigma);
double sigma_from_rho(double rho);

/// sigma^{-s} Gamma(s+k) Gamma(s-k) / (4 pi Gamma(2s)) 2F1(s+k, s-k; 2s; 1/sigma).
double resolvent_G(int k, double s, double sigma);

struct DifferenceKernel {
    double series;      // G_k(s) - G_k(s+1)
    double quadrature;  // direct integral representation
};

/// g_k(s; sigma) evaluated from the hypergeometric series and from the
/// integral representation. Does not compare the two.
DifferenceKernel g_k_both(int k, double s, double sigma);
/// g_k(s; sigma) by the integral representation only.
double g_k_integral(int k, double s, double sigma);
/// Series value of g_k; throws ConsistencyError when the integral
/// representation disagrees by more than rel_tol.
double g_k_difference(int k, double s, double sigma, double rel_tol = 1e-6);

/// Closed-form majorant (3 / (2 pi eps)) sigma^{-(k+eps)} for g_k(k+eps; sigma).
double g_k_decay_bound(int k, double eps, double sigma);

/// Integral of (e^{-(s-1/2) r} - e^{-(s+1/2) r}) e^{k r} / sqrt(cosh r - cosh rho)
/// over [rho, inf) at s = k + eps, and its majorant (3 sqrt 2 / eps) e^{-eps rho}.
double exponential_majorant_integral(int k, double eps, double rho);
double exponential_majorant_bound(double eps, double rho);

/// Weight-k heat kernel K_k(t; rho) by direct quadrature.
double heat_kernel(int k, double t, double rho, double rel_tol = 1e-8);
/// Its logarithm, finite even where K_k itself overflows.
double log_heat_kernel(int k, double t, double rho, double rel_tol = 1e-8);

/// Integral over t in (0, inf) of e^{-(s-1/2)^2 t} e^{t/4} K_k(t; rho(sigma)).
/// Recovers resolvent_G(k, s, sigma).
double heat_kernel_transform(int k, double s, double sigma, double rel_tol = 1e-7);

/// k e^{5/4} / (sqrt(pi) sqrt(k + eps)), majorant of the parabolic sum.
double parabolic_sum_bound(int k, double eps);

/// (64/15)^{d2-d1-1} y0^{-2 d1 - 2} y^{-2 d2 + 4 d1 + 4} for y >= 2 y0, d2 >= d1 + 1.
double faddeev_transfer(double y0, double y, double d1, double d2);

}  // namespace supnorm
