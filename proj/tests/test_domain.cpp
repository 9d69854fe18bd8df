#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>

#include "supnorm/bounds.hpp"
#include "supnorm/domain.hpp"

using namespace supnorm;

namespace {

constexpr double pi = std::numbers::pi;
const double rt3 = std::sqrt(3.0);

std::string data_path(const char* name) { return std::string(SUPNORM_DATA_DIR) + "/" + name; }

FundamentalDomain genus_cusp_domain(int genus, int cusps)
{
    nlohmann::json doc = {{"genus", genus}, {"elliptic", nlohmann::json::array()}, {"boundary", nlohmann::json::array()}};
    nlohmann::json c = nlohmann::json::array();
    for (int j = 0; j < cusps; ++j)
        c.push_back({{"label", "c" + std::to_string(j)}, {"scaling", {{1, 0}, {0, 1}}}});
    doc["cusps"] = c;
    return load_domain(doc);
}

}  // namespace

TEST_CASE("built-in modular-group domain")
{
    const FundamentalDomain d = psl2z_domain();
    CHECK(d.genus == 0);
    CHECK(d.cusp_count() == 1);
    CHECK(d.is_modular_group());
    REQUIRE(d.elliptic.size() == 3);
    CHECK(d.elliptic[0].location.x == doctest::Approx(-0.5));
    CHECK(d.elliptic[0].location.y == doctest::Approx(rt3 / 2));
    CHECK(d.elliptic[0].order == 3);
    CHECK(d.elliptic[1].location.x == doctest::Approx(0.0));
    CHECK(d.elliptic[1].location.y == doctest::Approx(1.0));
    CHECK(d.elliptic[1].order == 2);
    CHECK(d.elliptic[2].location.x == doctest::Approx(0.5));
    CHECK(d.elliptic[2].order == 3);
    // the shipped file and the embedded document agree
    const FundamentalDomain f = load_domain_file(data_path("psl2z.json"));
    CHECK(f.elliptic.size() == 3);
    CHECK(covolume(f) == doctest::Approx(covolume(d)).epsilon(1e-15));
}

TEST_CASE("load errors")
{
    nlohmann::json doc = nlohmann::json::parse(psl2z_document());
    doc["elliptic"][1]["order"] = 1;
    CHECK_THROWS_AS(load_domain(doc), LoadError);

    nlohmann::json bad_scaling = nlohmann::json::parse(psl2z_document());
    bad_scaling["cusps"][0]["scaling"] = {{2, 0}, {0, 1}};
    CHECK_THROWS_AS(load_domain(bad_scaling), LoadError);

    // genus 0 without cusps or elliptic points has negative Gauss-Bonnet term
    CHECK_THROWS_AS(genus_cusp_domain(0, 0), LoadError);
    CHECK_THROWS_AS(load_domain_text("{not json"), LoadError);
    CHECK_THROWS_AS(load_domain_file(data_path("does_not_exist.json")), LoadError);
}

TEST_CASE("cocompact genus-2 fixture loads")
{
    const FundamentalDomain d = load_domain_file(data_path("genus2_cocompact.json"));
    CHECK(d.cocompact());
    CHECK(d.genus == 2);
    CHECK(d.elliptic.empty());
    CHECK_FALSE(theta_gamma(d).has_value());
    CHECK(shortest_geodesic_length(d) == doctest::Approx(2 * std::acosh(1.5)).epsilon(1e-14));
}

TEST_CASE("covolume from Gauss-Bonnet")
{
    CHECK(covolume(psl2z_domain()) == doctest::Approx(pi / 3).epsilon(1e-14));
    CHECK(covolume(load_domain_file(data_path("genus2_cocompact.json"))) == doctest::Approx(4 * pi).epsilon(1e-14));
    CHECK(covolume(genus_cusp_domain(1, 1)) == doctest::Approx(2 * pi).epsilon(1e-14));
    // Gamma0(2): two cusps and one order-2 class
    CHECK(covolume(load_domain_file(data_path("gamma0_2.json"))) == doctest::Approx(pi).epsilon(1e-14));
}

TEST_CASE("dimension of cusp-form spaces")
{
    const FundamentalDomain d = psl2z_domain();
    CHECK(dimension_d2k(d, 6) == 1);
    CHECK(dimension_d2k(d, 2) == 0);
    CHECK(dimension_d2k(d, 7) == 0);   // weight 14
    CHECK(dimension_d2k(d, 12) == 2);  // weight 24
    CHECK(dimension_d2k(load_domain_file(data_path("genus2_cocompact.json")), 2) == 3);
    CHECK_THROWS_AS(dimension_d2k(d, 1), UnsupportedError);
    // level-one dimensions from the classical generating function 1/((1-t^4)(1-t^6)) minus Eisenstein
    const int classical[] = {0, 0, 0, 0, 1, 0, 1, 1, 1, 1, 2, 1, 2, 2, 2, 2, 3};
    for (int k = 2; k <= 18; ++k)
        CHECK(dimension_d2k(d, k) == classical[k - 2]);
}

TEST_CASE("property: dimension dominates (k-1) covolume / 2 pi when genus >= 1")
{
    for (int g = 1; g <= 3; ++g)
        for (int h = (g == 1 ? 1 : 0); h <= 2; ++h) {
            const FundamentalDomain d = genus_cusp_domain(g, h);
            for (int k = 2; k <= 40; ++k)
                CHECK(dimension_d2k(d, k) >= (k - 1) * covolume(d) / (2 * pi) - 1e-9);
        }
}

TEST_CASE("elliptic data")
{
    const FundamentalDomain d = psl2z_domain();
    CHECK(elliptic_excess(d) == 5);
    REQUIRE(theta_gamma(d).has_value());
    CHECK(*theta_gamma(d) == doctest::Approx(2 * pi / 3).epsilon(1e-15));
}

TEST_CASE("shortest geodesic from the minimal trace")
{
    CHECK(geodesic_length_from_trace(3.0) == doctest::Approx(1.92484730023841378).epsilon(1e-13));
    CHECK(geodesic_length_from_trace(2.5) == doctest::Approx(2 * 0.693147180559945309).epsilon(1e-13));
    CHECK_THROWS(geodesic_length_from_trace(2.0));
    CHECK_THROWS(geodesic_length_from_trace(1.0));
    CHECK(shortest_geodesic_length(psl2z_domain()) == doctest::Approx(1.924).epsilon(2e-3));
}

TEST_CASE("classification into compact part and cusp")
{
    const FundamentalDomain d = psl2z_domain();
    const double Y = minimal_truncation_height();
    CHECK(classify(d, Y, Point::make(0, 1)) == 0);
    CHECK(classify(d, Y, Point::make(0, 5)) == 1);
    CHECK(classify(d, Y, Point::make(0.3, Y)) == 1);
    CHECK_THROWS_AS(classify(d, Y, Point::make(0, 0.5)), DomainError);
    CHECK_THROWS_AS(classify(d, Y, Point::make(0.7, 2)), DomainError);
}

TEST_CASE("property: classification is monotone in height")
{
    const FundamentalDomain d = psl2z_domain();
    const double Y = minimal_truncation_height();
    for (int i = 0; i <= 20; ++i) {
        const double x = -0.5 + i / 20.0;
        const double y0 = std::sqrt(1.0 - x * x) + 1e-9;
        int prev = 0;
        for (int j = 0; j <= 200; ++j) {
            const double y = y0 + j * 0.05;
            const int tag = classify(d, Y, Point::make(x, y));
            CHECK((tag == 0 || tag == 1));
            CHECK(tag >= prev);
            CHECK(tag == (y >= Y ? 1 : 0));
            prev = tag;
        }
    }
}

TEST_CASE("cusp height range")
{
    const FundamentalDomain d = psl2z_domain();
    const double Y = minimal_truncation_height();
    const auto [m, M] = cusp_height_range(d, Y);
    CHECK(m == doctest::Approx(rt3 / 2).epsilon(1e-9));
    CHECK(M == doctest::Approx(Y).epsilon(1e-12));
    CHECK(M == doctest::Approx(4.131).epsilon(1e-3));
    CHECK_THROWS_AS(cusp_height_range(load_domain_file(data_path("genus2_cocompact.json")), Y), MissingDataError);
    // spot check: every sampled boundary point lies between the two heights
    for (const Point& p : truncated_boundary_sample(d, Y, 64)) {
        CHECK(p.y >= m - 1e-12);
        CHECK(p.y <= M + 1e-12);
    }
}

TEST_CASE("diameter bounds")
{
    const FundamentalDomain d = psl2z_domain();
    CHECK(diameter_upper_bound(d, minimal_truncation_height()) == doctest::Approx(2.861).epsilon(1e-3));
    CHECK(diameter_upper_bound(d, 2.0) == doctest::Approx(1.577).epsilon(1e-3));
    // zero height term
    CHECK(diameter_from_rect(1.0, 0.5, 0.5) == doctest::Approx(std::acosh(1.0 + 1.0 / (2 * 0.25))).epsilon(1e-14));
    CHECK_THROWS_AS(diameter_from_rect(1.0, 1.0, 0.5), DomainError);
    CHECK_THROWS_AS(diameter_upper_bound(load_domain_file(data_path("genus2_cocompact.json")), 2.0),
                    MissingDataError);
}

TEST_CASE("volumes by quadrature")
{
    const FundamentalDomain d = psl2z_domain();
    const double Y = minimal_truncation_height();
    // exact value: pi/3 - 1/Y
    CHECK(volume_region(d, Y) == doctest::Approx(0.805).epsilon(2e-3));
    CHECK(volume_region(d, Y) == doctest::Approx(pi / 3 - 1 / Y).epsilon(1e-6));
    CHECK(volume_region(d, 2.0) == doctest::Approx(0.547).epsilon(2e-3));
    CHECK(volume_region(d, 2.0) == doctest::Approx(pi / 3 - 0.5).epsilon(1e-6));
    CHECK(volume_full(d, Y) == doctest::Approx(covolume(d)).epsilon(1e-5));
    CHECK(volume_region(d, std::numeric_limits<double>::infinity()) == doctest::Approx(pi / 3).epsilon(1e-5));
}

TEST_CASE("membership")
{
    const FundamentalDomain d = psl2z_domain();
    CHECK(contains(d, Point::make(0, 1)));
    CHECK(contains(d, Point::make(0.5, rt3 / 2)));
    CHECK_FALSE(contains(d, Point::make(0, 0.9)));
    CHECK_FALSE(contains(d, Point::make(0.6, 3)));
    const auto col = truncated_column(d, 2.0, 0.0);
    REQUIRE(col.size() == 1);
    CHECK(col[0].first == doctest::Approx(1.0));
    CHECK(col[0].second == doctest::Approx(2.0));
}
