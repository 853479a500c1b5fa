#include "oracles.hpp"

#include "transgress/scenario.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <optional>

using namespace transgress;

namespace {

nlohmann::json golden(const std::string& name) {
    std::ifstream in(std::filesystem::path(TRANSGRESS_SOURCE_DIR) / "tests" / "golden" / (name + ".json"));
    REQUIRE(in);
    return nlohmann::json::parse(in);
}

std::optional<double> expected_of(const Scenario& s, const std::string& check) {
    for (const CheckSpec& c : s.checks)
        if (c.name == check) return c.expected;
    return std::nullopt;
}

}  // namespace

TEST_SUITE("oracle") {

TEST_CASE("oracle output reproduces the golden files") {
    for (const std::string& name : builtin_scenario_names()) {
        CAPTURE(name);
        CHECK(nlohmann::json::parse(run_oracle(resolve_scenario(name))) == golden(name));
    }
}

TEST_CASE("every oracle check carries its golden value") {
    for (const std::string& name : builtin_scenario_names()) {
        const Scenario s = resolve_scenario(name);
        const nlohmann::json values = golden(name).at("values");
        std::size_t oracle_checks = 0;
        for (const CheckSpec& c : s.checks) {
            if (c.provenance != "oracle") continue;
            ++oracle_checks;
            CAPTURE(c.name);
            REQUIRE(values.contains(c.name));
            CHECK(*c.expected == values.at(c.name).get<double>());
        }
        CHECK(values.size() == oracle_checks);
    }
}

TEST_CASE("golden values agree with closed forms where one exists") {
    const double pi = std::numbers::pi;
    CHECK(*expected_of(resolve_scenario("sphere2_point"), "latitude_value") ==
          doctest::Approx(oracles::cap_fraction(1.0)).epsilon(1e-12));
    const Scenario unknot = resolve_scenario("s3_unknot");
    // The fill of a round sphere of radius r is the complement of the geodesic ball.
    CHECK(*expected_of(unknot, "small_sphere_value") == doctest::Approx(1.0 - oracles::s3_ball_fraction(1.0)).epsilon(1e-12));
    CHECK(*expected_of(unknot, "great_circle_transgression") ==
          doctest::Approx(oracles::great_circle_rotation_pairing()).epsilon(1e-9));
    CHECK(*expected_of(unknot, "great_circle_cocycle") ==
          doctest::Approx(-oracles::great_circle_rotation_pairing()).epsilon(1e-9));
    CHECK(oracles::great_circle_rotation_pairing() == doctest::Approx(1.0 / (2 * pi)));
}

TEST_CASE("the reference quadrature is exact on polynomials") {
    const oracles::Rule r = oracles::gauss_legendre(6, 0.0, 2.0);
    double q = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) q += r.weights[i] * std::pow(r.nodes[i], 11);
    CHECK(q == doctest::Approx(std::pow(2.0, 12) / 12).epsilon(1e-13));
}

}  // TEST_SUITE
