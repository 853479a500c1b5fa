#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace transgress {

/// Constructor call such as `rotation(i=0, j=1, rate=2)` or
/// `from_potential(h1)`. Positional arguments get keys "0", "1", ...
struct SpecString {
    std::string name;
    std::vector<std::pair<std::string, std::string>> args;

    bool has(std::string_view key) const;
    std::string text(std::string_view key) const;
    std::string text_or(std::string_view key, std::string fallback) const;
    double number(std::string_view key) const;
    double number_or(std::string_view key, double fallback) const;
    int integer_or(std::string_view key, int fallback) const;
    std::string str() const;
};

/// Throws ConfigError with the offending position.
SpecString parse_spec_string(std::string_view text);

using Param = std::variant<double, bool, std::string, std::vector<double>, std::vector<std::string>>;

/// Typed view of a check's key-value table.
class Params {
public:
    Params() = default;
    Params(std::string owner, std::map<std::string, Param> values) : owner_(std::move(owner)), values_(std::move(values)) {}

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    double number(const std::string& key) const;
    double number_or(const std::string& key, double fallback) const;
    int integer_or(const std::string& key, int fallback) const;
    bool flag_or(const std::string& key, bool fallback) const;
    const std::string& text(const std::string& key) const;
    std::string text_or(const std::string& key, std::string fallback) const;
    std::vector<double> numbers(const std::string& key) const;
    std::vector<std::string> texts(const std::string& key) const;
    const std::map<std::string, Param>& values() const { return values_; }

private:
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
    std::string owner_;
    std::map<std::string, Param> values_;
};

struct Tolerances {
    double quadrature = 1e-4;
    double bracket = 1e-3;
    double exact = 1e-10;
};

struct CheckSpec {
    std::string name;
    std::string op;
    std::string anchor = "plumbing";
    std::string provenance = "identity";
    std::optional<double> expected;
    /// Either a class name of Tolerances or a literal number.
    std::string tolerance_class = "quadrature";
    std::optional<double> tolerance;
    /// "below" (defect < tol) or "above" (value > tol, for floors).
    std::string compare = "below";
    /// Require defects to be non-increasing across resolutions.
    bool convergence = false;
    std::vector<int> resolutions;  // empty: the scenario's list
    Params params;
};

struct Scenario {
    std::string name;
    std::string description;
    std::string manifold;
    std::string volume_form;
    std::uint64_t seed = 0;
    std::vector<int> resolutions;
    Tolerances tolerances;
    std::map<std::string, std::string> potentials;
    std::map<std::string, std::string> fields;
    std::vector<CheckSpec> checks;
};

/// Parses the TOML text of a scenario; `source` names it in diagnostics.
Scenario parse_scenario(std::string_view text, const std::string& source);
Scenario load_scenario(const std::string& path);

/// Names of the built-in scenarios, in catalog order.
const std::vector<std::string>& builtin_scenario_names();
/// TOML text of a built-in scenario; throws ConfigError for unknown names.
std::string_view builtin_scenario_text(const std::string& name);
/// Built-in name, or a path to a TOML file.
Scenario resolve_scenario(const std::string& name_or_path);

struct CheckRecord {
    std::string name;
    std::string op;
    std::string anchor;
    std::string provenance;
    std::vector<int> resolutions;
    std::vector<double> values;
    std::vector<double> defects;
    std::optional<double> expected;
    double defect = 0.0;
    double tolerance = 0.0;
    std::string compare = "below";
    std::optional<bool> monotone;
    bool pass = false;
    std::string error;  // set when the check raised
};

struct Report {
    std::string scenario;
    std::string description;
    std::string manifold;
    std::string volume_form;
    std::uint64_t seed = 0;
    double tol_scale = 1.0;
    std::vector<CheckRecord> records;

    bool all_passed() const;
};

struct RunOptions {
    std::optional<int> resolution;
    double tol_scale = 1.0;
    std::optional<std::uint64_t> seed;
    /// Run only the named checks (all when empty).
    std::vector<std::string> only;
};

/// Runs the checks in declaration order. A check that throws is recorded
/// as failed with its error message. ConfigError from the scenario itself
/// (unknown manifold, field or op) propagates.
Report run_scenario(const Scenario& scenario, const RunOptions& opts = {});

/// Report as an ordered JSON document (no timing data).
std::string report_json(const Report& report);
/// Convergence table of one check: resolution,value,defect.
std::string check_csv(const CheckRecord& record);
/// Writes the JSON to `path` and one CSV per check next to it
/// (`<stem>.<check>.csv`).
void write_report(const Report& report, const std::string& path);

/// Golden values of every check with provenance "oracle", recomputed by
/// brute-force parametric quadrature; JSON text.
std::string run_oracle(const Scenario& scenario);

}  // namespace transgress
