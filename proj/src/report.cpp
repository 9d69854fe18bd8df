#include "supnorm/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "supnorm/errors.hpp"

namespace supnorm {

using nlohmann::json;

namespace {

std::optional<double> finite_or_absent(double v)
{
    if (!std::isfinite(v))
        return std::nullopt;
    return v;
}

json optional_number(const std::optional<double>& v)
{
    if (!v || !std::isfinite(*v))
        return nullptr;
    return *v;
}

}  // namespace

std::string format_number(double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::vector<LedgerEntry> constants_ledger(const EffectiveConstants& c, const FundamentalDomain& d)
{
    std::vector<LedgerEntry> L;
    L.push_back({"Y0", c.Y0, 1, "user-chosen base height"});
    L.push_back({"Y", c.Y, 1, "truncation height max{2 Y0, 16/sqrt(15)}"});
    L.push_back({"cusp_branch_threshold_k", d.cocompact() ? std::nullopt : std::optional<double>(2.0 * std::numbers::pi * c.Y), 1,
                 "cusp estimate applies for k > 2 pi Y"});
    L.push_back({"ell_gamma", c.ell_gamma, 2, "2 arccosh(minimal hyperbolic trace / 2)"});
    L.push_back({"theta_gamma", c.theta_gamma, 3, "min 2 pi / n_j over elliptic points"});
    L.push_back({"elliptic_excess", static_cast<double>(c.elliptic_excess), 3, "sum of (n_j - 1) over the elliptic list"});
    L.push_back({"covolume", c.covolume, 3, "Gauss-Bonnet over elliptic classes"});
    L.push_back({"m_Y", c.m_Y, 4, "min cusp-chart height on the boundary of F_Y"});
    L.push_back({"M_Y", c.M_Y, 4, "max cusp-chart height on F_Y"});
    L.push_back({"mu_gamma", finite_or_absent(c.mu_gamma), 5, "min distance from boundary segments to elliptic points off them"});
    L.push_back({"sigma_Y_hyperbolic", c.branches.hyperbolic, 6, "(cosh ell + 1) / 2"});
    L.push_back({"sigma_Y_elliptic", c.branches.elliptic, 6, "sinh^2(mu) sin^2(theta/2) + 1"});
    L.push_back({"sigma_Y_parabolic_low", c.branches.parabolic_low, 6, "m_Y^2 / 4 + 1"});
    L.push_back({"sigma_Y_parabolic_high", c.branches.parabolic_high, 6, "1 / (4 M_Y^2) + 1"});
    L.push_back({"sigma_Y", c.sigma_Y, 6, "minimum over available displacement branches"});
    L.push_back({"diam_Y", c.diam_Y, 7, "bounding-rectangle diameter bound of F_Y"});
    L.push_back({"diam_Y0", c.diam_Y0, 7, "bounding-rectangle diameter bound of F_Y0"});
    L.push_back({"vol_Y", c.vol_Y, 8, "hyperbolic area of F_Y by quadrature"});
    L.push_back({"vol_Y0", c.vol_Y0, 8, "hyperbolic area of F_Y0 by quadrature"});
    L.push_back({"B_Y", c.B_Y, 9, "e^{diam_Y / 2} / vol_Y"});
    L.push_back({"B_Y0", c.B_Y0, 9, "e^{diam_Y0 / 2} / vol_Y0"});
    L.push_back({"compact_coefficient", c.compact_coefficient, 9, "12 B_Y, multiplies (2k-1) sigma_Y^{-(k-2)}"});
    if (d.is_modular_group())
        L.push_back({"published_compact_coefficient", 72.0, 9, "rounded coefficient printed for the modular group"});
    L.push_back({"weight2_eps", c.weight2 ? std::optional<double>(c.weight2->eps) : std::nullopt, 9,
                 "grid minimizer of the weight-2 bound"});
    L.push_back({"weight2_bound", c.weight2 ? std::optional<double>(c.weight2->bound) : std::nullopt, 9,
                 "weight-2 sup-norm bound at the grid minimizer"});
    L.push_back({"C_gamma", c.cocompact ? std::optional<double>(c.cocompact->C) : std::nullopt, 10,
                 "cocompact torsionfree amplitude"});
    L.push_back({"delta_gamma", c.cocompact ? std::optional<double>(c.cocompact->delta) : std::nullopt, 10,
                 "cocompact torsionfree decay rate"});
    return L;
}

std::string ledger_to_csv(const std::vector<LedgerEntry>& ledger)
{
    std::ostringstream os;
    os << "name,value,step,provenance\n";
    for (const LedgerEntry& e : ledger)
        os << e.name << ',' << (e.value ? format_number(*e.value) : std::string()) << ',' << e.step << ",\""
           << e.provenance << "\"\n";
    return os.str();
}

json ledger_to_json(const std::vector<LedgerEntry>& ledger)
{
    json arr = json::array();
    for (const LedgerEntry& e : ledger)
        arr.push_back({{"name", e.name}, {"value", optional_number(e.value)}, {"step", e.step}, {"provenance", e.provenance}});
    return json{{"constants", arr}};
}

std::string report_to_csv(const BoundReport& r)
{
    std::ostringstream os;
    os << "k,region,upper,lower,source\n";
    for (const BoundRow& row : r.rows)
        os << row.k << ',' << row.region << ',' << format_number(row.upper) << ','
           << (row.lower ? format_number(*row.lower) : std::string()) << ',' << row.source << '\n';
    return os.str();
}

json report_to_json(const BoundReport& r)
{
    json rows = json::array();
    for (const BoundRow& row : r.rows)
        rows.push_back({{"k", row.k},
                        {"region", row.region},
                        {"upper", row.upper},
                        {"lower", optional_number(row.lower)},
                        {"source", row.source}});
    return json{{"rows", rows}};
}

BoundReport report_from_json(const json& j)
{
    BoundReport r;
    try {
        for (const json& row : j.at("rows")) {
            BoundRow b;
            b.k = row.at("k").get<int>();
            b.region = row.at("region").get<std::string>();
            b.upper = row.at("upper").get<double>();
            if (!row.at("lower").is_null())
                b.lower = row.at("lower").get<double>();
            b.source = row.at("source").get<std::string>();
            r.rows.push_back(b);
        }
    } catch (const json::exception& e) {
        throw LoadError(std::string("malformed bound report: ") + e.what());
    }
    return r;
}

std::map<std::string, std::string> report_plot_series(const BoundReport& r)
{
    std::map<std::string, std::ostringstream> streams;
    for (const BoundRow& row : r.rows) {
        auto& os = streams[row.region];
        if (os.tellp() == 0)
            os << "k,bound\n";
        os << row.k << ',' << format_number(row.upper) << '\n';
    }
    std::map<std::string, std::string> out;
    for (auto& [region, os] : streams)
        out[region] = os.str();
    return out;
}

}  // namespace supnorm
