#pragma once

// Effective constants and sup-norm bounds for cusp forms of weight 2k,
// assembled into per-k report rows.

#include <optional>
#include <string>
#include <vector>

#include "supnorm/domain.hpp"

namespace supnorm {

/// Truncation height used for the cusp estimates: max{2 Y0, 16/sqrt(15)}.
double truncation_height(double Y0);
double minimal_truncation_height();  // 16 / sqrt(15)

/// Infimum of boundary-to-elliptic-point distances over pairs with the
/// point off the segment; +inf when no such pair exists.
double mu_gamma(const FundamentalDomain& d);

/// The four candidate lower bounds for the displacement of non-trivial
/// elements on F_Y; absent branches are those the group cannot realize.
struct DisplacementBranches {
    std::optional<double> hyperbolic;      // (cosh l + 1) / 2
    std::optional<double> elliptic;        // sinh^2(mu) sin^2(theta/2) + 1
    std::optional<double> parabolic_low;   // m_Y^2 / 4 + 1
    std::optional<double> parabolic_high;  // 1 / (4 M_Y^2) + 1
    double minimum() const;
};

DisplacementBranches sigma_Y_branches(std::optional<double> ell, double mu, std::optional<double> theta,
                                      std::optional<double> m_Y, std::optional<double> M_Y);

/// e^{diam/2} / vol.
double b_Y(double diameter, double volume);

double b_k_Y0(int k, double Y0, double B_Y0, double eps);
double b_k_Y0_limit(int k, double Y0, double B_Y0);

/// 4 pi (2+eps)/(1+eps) B_Y sigma_Y^{-(k-2)} + sum (n_j - 1).
double poincare_bound_compact(int k, double eps, double B_Y, double sigma_Y, int elliptic_excess);
/// The same at eps -> 0, i.e. 8 pi B_Y sigma_Y^{-(k-2)} + sum (n_j - 1).
double poincare_bound_compact_limit(int k, double B_Y, double sigma_Y, int elliptic_excess);

/// Bound on S_2k from a Poincare-series bound P, for 0 < eps < 1.
double spectral_gap_bound(int k, double eps, double P);
/// Its eps -> 0 form (2k-1)/4pi + 3(2k-1)/(2pi) P.
double spectral_gap_bound_limit(int k, double P);

/// (2k-1)/4pi (1 + 6 sum(n_j-1)) + 12 (2k-1) B_Y sigma_Y^{-(k-2)}.
double sup_bound_compact(int k, double B_Y, double sigma_Y, int elliptic_excess);
/// Coefficient multiplying (2k-1) sigma_Y^{-(k-2)} in the compact bound.
double compact_series_coefficient(double B_Y);

struct CuspBound {
    bool use_compact = false;  // Y >= k/(2 pi): the compact bound governs the cusp region
    double value = 0.0;
};
CuspBound sup_bound_cusp(int k, double Y0, double B_Y0);
/// Same with an explicit truncation height Y >= max{2 Y0, 16/sqrt(15)}.
CuspBound sup_bound_cusp_at(int k, double Y0, double Y, double B_Y0);

struct CocompactConstants {
    double C;
    double delta;
};
CocompactConstants cocompact_constants(int genus, double ell);
/// (2k-1)/4pi + C e^{-delta k}.
double sup_bound_cocompact(int k, const CocompactConstants& c);

/// (1+eps)^2/4pi + 3(1+eps)^2 (2+eps)/eps B_Y for weight 2.
double sup_bound_weight2(double eps, double Y, double B_Y);
struct Weight2Optimum {
    double eps;
    double bound;
};
/// Minimum over a 200-point log grid of eps in (1e-3, 1 - 1e-3).
Weight2Optimum sup_bound_weight2_best(double Y, double B_Y);
std::vector<double> weight2_eps_grid();

struct LowerBound {
    double dimension_over_volume;        // d_2k / vol
    std::optional<double> genus_simple;  // (k-1)/(2pi), when g >= 1
};
LowerBound sup_lower_bound(int k, const FundamentalDomain& d);

struct EffectiveConstants {
    double Y0 = 0.0;
    double Y = 0.0;
    std::optional<double> ell_gamma;
    std::optional<double> theta_gamma;
    double mu_gamma = 0.0;  // may be +inf
    std::optional<double> m_Y;
    std::optional<double> M_Y;
    DisplacementBranches branches;
    double sigma_Y = 1.0;
    std::optional<double> diam_Y;
    std::optional<double> diam_Y0;
    std::optional<double> vol_Y;
    std::optional<double> vol_Y0;
    std::optional<double> B_Y;
    std::optional<double> B_Y0;
    std::optional<double> compact_coefficient;  // 12 B_Y
    int elliptic_excess = 0;
    double covolume = 0.0;
    std::optional<CocompactConstants> cocompact;
    std::optional<Weight2Optimum> weight2;
};

struct BoundRow {
    int k = 0;
    std::string region;
    double upper = 0.0;
    std::optional<double> lower;
    std::string source;

    bool operator==(const BoundRow&) const = default;
};

struct BoundReport {
    std::vector<BoundRow> rows;
    bool operator==(const BoundReport&) const = default;
};

struct AlgorithmResult {
    EffectiveConstants constants;
    BoundReport report;
};

/// Full pipeline: truncation height, systole, elliptic data, cusp heights,
/// mu, sigma_Y, diameters, volumes, B constants, then one row per region and k.
/// `Y_override` replaces the default truncation height and must not be below it.
AlgorithmResult run_algorithm(const FundamentalDomain& d, double Y0, int k_min, int k_max,
                              std::optional<double> Y_override = std::nullopt);

/// Region labels used in reports.
std::string compact_region_label();
std::string cusp_region_label(int j);
std::string whole_domain_label();

}  // namespace supnorm
