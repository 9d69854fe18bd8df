#pragma once

// Level-one cusp forms in the one-dimensional weights, built from the
// discriminant and the weight 4 and 6 Eisenstein series, with quadrature
// Petersson norms and pointwise evaluation of S_2k.

#include <complex>
#include <vector>

#include "supnorm/integer_moebius.hpp"

namespace supnorm {

using Coefficients = std::vector<__int128>;

/// Coefficients of q^0..q^{n-1}; each throws on __int128 overflow.
Coefficients discriminant_series(int n);  // q prod (1 - q^m)^24
Coefficients eisenstein4_series(int n);   // 1 + 240 sum sigma_3(m) q^m
Coefficients eisenstein6_series(int n);   // 1 - 504 sum sigma_5(m) q^m
Coefficients multiply_series(const Coefficients& f, const Coefficients& g);

bool weight_has_single_cusp_form(int weight);

struct CuspFormBasis {
    int weight = 0;
    Coefficients q_coefficients;  // index n holds a_n, a_0 = 0, a_1 = 1
    double petersson_norm = 0.0;  // integral of |f|^2 y^weight over the quotient
    double petersson_error = 0.0;
    double hecke_constant = 0.0;  // A with |a_n| <= A n^{weight/2 + 1/2} on the computed range
};

/// Normalized generator of the weight-`weight` cusp forms for PSL(2,Z).
/// Throws UnsupportedError unless that space is one-dimensional.
CuspFormBasis build_basis(int weight, int n_coefficients = 64);

/// Majorant for sum_{n >= N} |a_n| |q|^n, from |a_n| <= A n^{weight/2 + 1/2}.
double q_series_tail_bound(const CuspFormBasis& b, double abs_q);

/// f(z) from the q-expansion; AccuracyError when the tail majorant exceeds
/// 1e-10 |f(z)|, meaning more coefficients are required at that height.
std::complex<double> evaluate_form(const CuspFormBasis& b, const Point& z);

/// |f(z)|^2 Im(z)^weight / <f, f> evaluated at z as given.
double s2k_eval(const CuspFormBasis& b, const Point& z);

struct Reduction {
    Point point;
    IntegerMoebius map;  // map.apply(z) == point
};
/// Standard reduction into |x| <= 1/2, |z| >= 1.
Reduction reduce_to_standard(const Point& z);

/// s2k_eval after reduction to the standard domain.
double s2k_eval_reduced(const CuspFormBasis& b, const Point& z);

/// Integral of S_2k over the domain {0 <= x <= 1, |z| >= 1, |z - 1| >= 1},
/// computed with plain (x, y) coordinates and an analytic tail above y = y_top.
/// This domain and these coordinates differ from those used for the norm.
double s2k_mass(const CuspFormBasis& b, double y_top = 20.0);

}  // namespace supnorm
