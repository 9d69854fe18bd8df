#pragma once

// Independent numerical checks for PSL(2,Z): displacement-ball enumeration,
// lattice counting, direct Poincaré and parabolic sums, Faddeev's transfer
// inequality, and S_2k from explicit cusp forms.

#include "json.hpp"

#include <map>
#include <string>
#include <vector>

#include "supnorm/bounds.hpp"
#include "supnorm/integer_moebius.hpp"
#include "supnorm/modular_forms.hpp"

namespace supnorm {

/// Shared acceptance rule for "sigma(z, gamma z) <= R" so enumeration and
/// the brute-force oracle agree on boundary cases.
bool within_displacement(double sigma, double R);

/// All gamma in PSL(2,Z) with sigma(z, gamma z) <= R, sorted. Cosets of the
/// translation subgroup are indexed by coprime (c, d); c is bounded through
/// sigma >= |cz + d|^2 / 4 >= c^2 y^2 / 4, then translations are scanned
/// outward from the closest one until the displacement exceeds R.
std::vector<IntegerMoebius> enumerate_ball(const Point& z, double R);

/// Entry-bounded search over all matrices with |entries| <= E; E defaults to
/// a bound guaranteed to contain the whole ball (at least 20).
std::vector<IntegerMoebius> brute_force_ball(const Point& z, double R, long long entry_bound = 0);
long long ball_entry_bound(const Point& z, double R);

struct CountingCheck {
    long long count;
    double bound;  // 4 pi B_Y r
    bool passed;
};
CountingCheck counting_check(const Point& z, double r, double B_Y);

struct PoincareCheck {
    double partial;     // sum over gamma != id with sigma <= R_cut
    double tail_bound;  // 4 pi B_Y (2+eps)/(1+eps) R_cut^{-(k+eps-1)}
    double bound;       // compact Poincaré bound
    bool passed;
};
PoincareCheck poincare_direct(const Point& z, int k, double eps, double R_cut, const EffectiveConstants& c);
/// Partial sums over the same enumeration at increasing cutoffs.
std::vector<double> poincare_partial_sums(const Point& z, int k, double eps, const std::vector<double>& cutoffs);

/// 2 sum_{n >= 1} (1 + (n / 2y)^2)^{-(k+eps)}, stopped when terms fall below
/// 1e-18 of the running total.
double parabolic_direct(double y, int k, double eps);

struct FaddeevCheck {
    double left;    // sum over c != 0 of sigma(z, gamma z)^{-d2}
    double right;   // factor * sum of sigma(z0, gamma z0)^{-d1-1}
    bool termwise;  // every term obeys the inequality
    bool passed;
};
/// z = x + i y and z0 = x + i y0 with y >= 2 y0; sums run over the union of
/// both displacement balls of radius R, excluding the translations.
FaddeevCheck faddeev_check(double x, double y0, double y, double d1, double d2, double R);

struct GridSample {
    Point point;
    int region;  // 0 for F_Y, 1 for the cusp line
};
/// 100 x 100-style grid in (x, 1/y) over F_Y plus points along
/// y in [Y, k/(2 pi)] at x = 0 when that interval is nonempty.
std::vector<GridSample> sample_grid(int n, double Y, int k);

struct GridMaximum {
    double value;
    Point argmax;
    int samples;
};
GridMaximum s2k_grid_maximum(const CuspFormBasis& b, const std::vector<GridSample>& grid);

/// Published closed-form bound for the modular group in the compact branch.
double published_modular_bound(int k);

struct VerificationItem {
    int weight = 0;  // 0 for weight-independent checks
    std::string check;
    bool passed = false;
    double value = 0.0;
    double reference = 0.0;
    std::string detail;
    std::map<std::string, double> data;
};

struct VerificationReport {
    std::vector<VerificationItem> items;
    bool all_passed() const;
    nlohmann::json to_json() const;
    std::string table() const;
};

/// Full verification for the given weights. Throws UnsupportedError for a
/// weight outside {12, 16, 18, 20, 22, 26}.
VerificationReport verify_all(const std::vector<int>& weights, int grid = 100, double Y0 = 2.0);

}  // namespace supnorm
