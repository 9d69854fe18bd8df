#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "supnorm/errors.hpp"
#include "supnorm/report.hpp"

using namespace supnorm;

namespace {

std::string data_path(const char* name) { return std::string(SUPNORM_DATA_DIR) + "/" + name; }

const LedgerEntry& entry(const std::vector<LedgerEntry>& L, const std::string& name)
{
    for (const LedgerEntry& e : L)
        if (e.name == name)
            return e;
    throw std::runtime_error("no ledger entry " + name);
}

}  // namespace

TEST_CASE("fixed twelve-digit formatting")
{
    CHECK(format_number(1.0) == "1");
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3) == "0.333333333333");
    CHECK(format_number(62.333464050412345) == "62.3334640504");
    CHECK(format_number(6.5e-12) == "6.5e-12");
}

TEST_CASE("JSON round trip of a bound report")
{
    const BoundReport r = run_algorithm(psl2z_domain(), 2.0, 2, 30).report;
    const BoundReport back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
    CHECK(back == r);
    REQUIRE(back.rows.size() == r.rows.size());
    for (std::size_t i = 0; i < r.rows.size(); ++i)
        CHECK(back.rows[i].lower.has_value() == r.rows[i].lower.has_value());

    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse(R"({"rows":[{"k":2}]})")), LoadError);
    CHECK_THROWS_AS(report_from_json(nlohmann::json::parse("[]")), LoadError);
}

TEST_CASE("CSV output is deterministic and leaves absent lower bounds empty")
{
    const std::string a = report_to_csv(run_algorithm(psl2z_domain(), 2.0, 2, 30).report);
    const std::string b = report_to_csv(run_algorithm(psl2z_domain(), 2.0, 2, 30).report);
    CHECK(a == b);
    CHECK(a.rfind("k,region,upper,lower,source\n", 0) == 0);
    CHECK(a.find("2,F_Y,") != std::string::npos);
    // compact-part rows carry no lower bound
    const auto pos = a.find("\n2,F_Y,");
    REQUIRE(pos != std::string::npos);
    const std::string line = a.substr(pos + 1, a.find('\n', pos + 1) - pos - 1);
    CHECK(line.find(",,poincare-compact") != std::string::npos);
}

TEST_CASE("constants ledger for the modular group")
{
    const FundamentalDomain d = psl2z_domain();
    const auto L = constants_ledger(run_algorithm(d, 2.0, 2, 2).constants, d);
    CHECK(*entry(L, "ell_gamma").value == doctest::Approx(1.924).epsilon(1e-3));
    CHECK(*entry(L, "B_Y").value == doctest::Approx(5.194).epsilon(1e-3));
    CHECK(*entry(L, "published_compact_coefficient").value == 72.0);
    CHECK(*entry(L, "compact_coefficient").value <= 72.0);
    CHECK_FALSE(entry(L, "C_gamma").value);
    for (const LedgerEntry& e : L) {
        CHECK(e.step >= 1);
        CHECK_FALSE(e.provenance.empty());
    }
    const std::string csv = ledger_to_csv(L);
    CHECK(csv.rfind("name,value,step,provenance\n", 0) == 0);
    CHECK(ledger_to_json(L)["constants"].size() == L.size());
}

TEST_CASE("cocompact ledger marks cusp fields absent")
{
    const FundamentalDomain d = load_domain_file(data_path("genus2_cocompact.json"));
    const auto L = constants_ledger(run_algorithm(d, 2.0, 2, 2).constants, d);
    for (const char* name : {"m_Y", "M_Y", "cusp_branch_threshold_k", "sigma_Y_parabolic_low", "theta_gamma", "mu_gamma"})
        CHECK_FALSE(entry(L, name).value);
    CHECK(std::abs(*entry(L, "delta_gamma").value - 0.405465) < 1e-6);
    CHECK(std::isfinite(*entry(L, "C_gamma").value));
    const nlohmann::json j = ledger_to_json(L);
    bool saw_null = false;
    for (const auto& e : j["constants"])
        if (e["name"] == "m_Y")
            saw_null = e["value"].is_null();
    CHECK(saw_null);
}

TEST_CASE("plot series per region")
{
    const auto series = report_plot_series(run_algorithm(psl2z_domain(), 2.0, 2, 4).report);
    CHECK(series.size() == 3);
    const std::string& body = series.at("F_Y");
    CHECK(body.rfind("k,bound\n2,", 0) == 0);
    CHECK(std::count(body.begin(), body.end(), '\n') == 4);
}
