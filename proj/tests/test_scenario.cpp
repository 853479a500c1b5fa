#include "checks.hpp"

#include "transgress/errors.hpp"
#include "transgress/scenario.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

using namespace transgress;

namespace {

const std::string header = R"t(name = "tiny"
manifold = "sphere2"
volume_form = "sphere_area_normalized"
seed = 7
resolutions = [4, 8]
)t";

std::string error_of(const std::string& text) {
    try {
        parse_scenario(text, "tiny.toml");
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("scenario") {

TEST_CASE("spec strings: keywords, positionals and nesting") {
    const SpecString s = parse_spec_string(" rotated( small_circle(rho=0.5, i=2), i = 0, j=1 ) ");
    CHECK(s.name == "rotated");
    REQUIRE(s.args.size() == 3);
    CHECK(s.text("0") == "small_circle(rho=0.5, i=2)");
    CHECK(s.integer_or("i", 9) == 0);
    CHECK(s.number("j") == 1.0);
    CHECK(s.number_or("angle", 0.25) == 0.25);
    CHECK(parse_spec_string("fundamental").name == "fundamental");
    CHECK(parse_spec_string("fundamental()").args.empty());
    CHECK(parse_spec_string("f(a=1, g(x=2))").str() == "f(a=1, g(x=2))");
}

TEST_CASE("spec strings: malformed input is a config error") {
    for (const char* bad : {"f(a=1", "f(a=1))", "(a=1)", "3f(a=1)", "f(a=1,,b=2)", "f(a=1, a=2)", "f(1x=2)", "f(a=(1)"})
        CHECK_THROWS_AS(parse_spec_string(bad), ConfigError);
    const SpecString s = parse_spec_string("f(a=x, b=1.5)");
    CHECK_THROWS_AS(s.number("a"), ConfigError);
    CHECK_THROWS_AS(s.text("missing"), ConfigError);
    CHECK_THROWS_AS(s.integer_or("b", 0), ConfigError);
}

TEST_CASE("params: typed getters") {
    const Params p("c", {{"x", 2.0}, {"flag", true}, {"name", std::string("u")}, {"v", std::vector<double>{1, 2}},
                         {"names", std::vector<std::string>{"a", "b"}}, {"half", 0.5}});
    CHECK(p.number("x") == 2.0);
    CHECK(p.integer_or("x", 0) == 2);
    CHECK(p.integer_or("absent", 5) == 5);
    CHECK(p.flag_or("flag", false));
    CHECK(p.text("name") == "u");
    CHECK(p.text_or("absent", "z") == "z");
    CHECK(p.numbers("v").size() == 2);
    CHECK(p.texts("names").size() == 2);
    CHECK_THROWS_AS(p.number("name"), ConfigError);
    CHECK_THROWS_AS(p.number("absent"), ConfigError);
    CHECK_THROWS_AS(p.integer_or("half", 0), ConfigError);
    CHECK_THROWS_AS(p.flag_or("x", false), ConfigError);
    CHECK_THROWS_AS(p.text("x"), ConfigError);
    CHECK_THROWS_AS(p.texts("v"), ConfigError);
}

TEST_CASE("a minimal scenario parses") {
    const Scenario s = parse_scenario(header + R"t(
[fields]
spin = "rotation(i=0, j=1)"

[[check]]
name = "area"
op = "total_volume"
provenance = "closed_form"
expected = 1.0
tolerance = 1e-2
resolutions = [8]
extra = [1, 2]
)t",
                                      "tiny.toml");
    CHECK(s.name == "tiny");
    CHECK(s.seed == 7);
    CHECK(s.resolutions == std::vector<int>{4, 8});
    REQUIRE(s.checks.size() == 1);
    const CheckSpec& c = s.checks[0];
    CHECK(c.expected == 1.0);
    CHECK(c.tolerance == 1e-2);
    CHECK(c.resolutions == std::vector<int>{8});
    CHECK(c.params.numbers("extra").size() == 2);
    CHECK_FALSE(c.params.has("expected"));
    CHECK(s.fields.at("spin") == "rotation(i=0, j=1)");
}

TEST_CASE("config errors name the source, line and field") {
    const std::string unknown = error_of(header + "colour = \"red\"\n");
    CHECK(unknown.find("tiny.toml:6") != std::string::npos);
    CHECK(unknown.find("colour") != std::string::npos);

    CHECK(error_of(header + "[[check]]\nname = \"a\"\nop = \"no_such_op\"\n").find("no_such_op") != std::string::npos);
    const std::string dup = error_of(header + "[[check]]\nname = \"a\"\nop = \"total_volume\"\n"
                                              "[[check]]\nname = \"a\"\nop = \"total_volume\"\n");
    CHECK(dup.find("duplicate") != std::string::npos);
    CHECK(error_of(header + "[[check]]\nname = \"a\"\nop = \"total_volume\"\nprovenance = \"folklore\"\n")
              .find("provenance") != std::string::npos);
    CHECK(error_of(header + "[[check]]\nname = \"a\"\nop = \"total_volume\"\nprovenance = \"oracle\"\n")
              .find("expected") != std::string::npos);
    CHECK(error_of(header + "[[check]]\nname = \"a\"\nop = \"total_volume\"\nresolutions = [8, 8]\n")
              .find("increasing") != std::string::npos);
    CHECK(error_of(header + "[[check]]\nname = \"a\"\nop = \"total_volume\"\ntolerance = \"loose\"\n")
              .find("tolerance") != std::string::npos);
    CHECK(error_of(header + "[[check]]\nname = \"a b\"\nop = \"total_volume\"\n").find("name") != std::string::npos);
    CHECK(error_of(header + "[fields]\nspin = \"rotation(i=0\"\n").find("fields.spin") != std::string::npos);
    CHECK(error_of(header + "[tolerances]\nsloppy = 1.0\n").find("sloppy") != std::string::npos);
    CHECK(error_of("name = \"x\"\nmanifold = \"sphere2\"\nvolume_form = \"su2_biinvariant\"\nresolutions = [1]\n")
              .find("volume_form") != std::string::npos);
    CHECK(error_of("name = [\n").find("tiny.toml:") != std::string::npos);
    CHECK_THROWS_AS(load_scenario("/nonexistent/x.toml"), ConfigError);
    CHECK_THROWS_AS(builtin_scenario_text("nope"), ConfigError);
}

TEST_CASE("built-in scenarios are the files shipped in scenarios/") {
    const std::filesystem::path dir = std::filesystem::path(TRANSGRESS_SOURCE_DIR) / "scenarios";
    REQUIRE(builtin_scenario_names().size() == 5);
    for (const std::string& name : builtin_scenario_names()) {
        CAPTURE(name);
        CHECK(std::string(builtin_scenario_text(name)) == read_file(dir / (name + ".toml")));
        const Scenario s = resolve_scenario(name);
        CHECK(s.name == name);
        CHECK_FALSE(s.checks.empty());
    }
}

TEST_CASE("every check op is exercised by a built-in scenario") {
    std::set<std::string> used;
    for (const std::string& name : builtin_scenario_names())
        for (const CheckSpec& c : resolve_scenario(name).checks) used.insert(c.op);
    for (const std::string& op : check_ops()) {
        CAPTURE(op);
        CHECK(used.count(op) == 1);
    }
    for (const std::string& name : builtin_scenario_names()) {
        const Scenario s = resolve_scenario(name);
        for (const CheckSpec& c : s.checks) CHECK_FALSE(c.anchor.empty());
    }
}

TEST_CASE("run options are validated") {
    const Scenario s = resolve_scenario("sphere2_point");
    RunOptions bad;
    bad.tol_scale = 0.0;
    CHECK_THROWS_AS(run_scenario(s, bad), ConfigError);
    RunOptions missing;
    missing.only = {"no_such_check"};
    CHECK_THROWS_AS(run_scenario(s, missing), ConfigError);
    RunOptions res;
    res.resolution = 0;
    CHECK_THROWS_AS(run_scenario(s, res), ConfigError);
}

TEST_CASE("checks are judged at the finest resolution") {
    const Scenario s = parse_scenario(header + R"t(
[[check]]
name = "area"
op = "total_volume"
expected = 1.0
tolerance = 1e-3
resolutions = [2, 64]
convergence = true
)t",
                                      "tiny.toml");
    const Report r = run_scenario(s);
    REQUIRE(r.records.size() == 1);
    const CheckRecord& c = r.records[0];
    REQUIRE(c.defects.size() == 2);
    CHECK(c.defects[0] > c.tolerance);
    CHECK(c.defect == c.defects.back());
    CHECK(c.monotone == true);
    CHECK(c.pass);
}

TEST_CASE("a floor check passes only above its tolerance") {
    const Scenario s = parse_scenario(header + R"t(
[[check]]
name = "area"
op = "total_volume"
expected = 0.0
compare = "above"
tolerance = 0.5
resolutions = [8]
)t",
                                      "tiny.toml");
    CHECK(run_scenario(s).records[0].pass);
    RunOptions o;
    o.tol_scale = 10.0;
    CHECK_FALSE(run_scenario(s, o).records[0].pass);
}

TEST_CASE("a check that raises is recorded as failed") {
    const Scenario s = parse_scenario(header + R"t(
[[check]]
name = "origin"
op = "retract"
point = [0.0, 0.0, 0.0]
expected_point = [0.0, 0.0, 1.0]
resolutions = [1]

[[check]]
name = "area"
op = "total_volume"
expected = 1.0
tolerance = 1e-2
resolutions = [32]
)t",
                                      "tiny.toml");
    const Report r = run_scenario(s);
    REQUIRE(r.records.size() == 2);
    CHECK_FALSE(r.records[0].pass);
    CHECK(r.records[0].error.find("OutOfBasin") != std::string::npos);
    CHECK(r.records[1].pass);
    CHECK_FALSE(r.all_passed());
    CHECK(report_json(r).find("\"error\"") != std::string::npos);
}

TEST_CASE("reports are byte-identical across runs and carry no timing") {
    const Scenario s = resolve_scenario("sphere2_point");
    RunOptions o;
    o.only = {"area_total", "equator_value", "latitude_value", "jacobi", "point_cocycle_identity"};
    const std::string a = report_json(run_scenario(s, o));
    const std::string b = report_json(run_scenario(s, o));
    CHECK(a == b);
    CHECK(a.find("time") == std::string::npos);
    CHECK(a.find("\"status\": \"pass\"") != std::string::npos);
    RunOptions seeded = o;
    seeded.seed = 99;
    CHECK(report_json(run_scenario(s, seeded)).find("\"seed\": 99") != std::string::npos);
}

TEST_CASE("convergence tables and report files") {
    CheckRecord r;
    r.name = "c";
    r.resolutions = {4, 8};
    r.values = {0.5, 0.25};
    r.defects = {0.1, 0.01};
    CHECK(check_csv(r) == "resolution,value,defect\n4,0.5,0.10000000000000001\n8,0.25,0.01\n");

    Report rep;
    rep.scenario = "tiny";
    rep.records = {r};
    const std::filesystem::path out = std::filesystem::path(TRANSGRESS_BINARY_DIR) / "unit_reports" / "tiny.json";
    write_report(rep, out.string());
    CHECK(read_file(out) == report_json(rep));
    CHECK(read_file(out.parent_path() / "tiny.c.csv") == check_csv(r));
}

}  // TEST_SUITE
