#include "checks.hpp"

#include "transgress/errors.hpp"

#include <toml.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

namespace transgress {

namespace {

struct Builtin {
    const char* name;
    const char* text;
};

constexpr Builtin builtins[] = {
#include "builtin_scenarios.inc"
};

const std::set<std::string> provenances = {"closed_form", "oracle", "identity", "cross_check"};
const std::set<std::string> reserved = {"name", "op", "anchor", "provenance", "expected", "tolerance",
                                        "compare", "convergence", "resolutions"};

class Reader {
public:
    explicit Reader(std::string source) : source_(std::move(source)) {}

    [[noreturn]] void fail(const toml::node* node, const std::string& field, const std::string& what) const {
        std::ostringstream os;
        os << source_;
        if (node && node->source().begin.line) os << ':' << node->source().begin.line;
        os << ": field '" << field << "': " << what;
        throw ConfigError(os.str());
    }

    std::string string(const toml::table& t, const std::string& key, const std::string& path, bool required = true,
                       std::string fallback = {}) const {
        const toml::node* n = t.get(key);
        if (!n) {
            if (required) fail(&t, path + key, "is required");
            return fallback;
        }
        if (!n->is_string()) fail(n, path + key, "must be a string");
        return n->as_string()->get();
    }

    double number(const toml::node* n, const std::string& field) const {
        if (n->is_integer()) return static_cast<double>(n->as_integer()->get());
        if (n->is_floating_point()) return n->as_floating_point()->get();
        fail(n, field, "must be a number");
    }

    std::vector<int> resolutions(const toml::node* n, const std::string& field) const {
        const toml::array* a = n->as_array();
        if (!a || a->empty()) fail(n, field, "must be a non-empty array of integers");
        std::vector<int> out;
        for (const toml::node& e : *a) {
            if (!e.is_integer() || e.as_integer()->get() < 1) fail(&e, field, "entries must be positive integers");
            out.push_back(static_cast<int>(e.as_integer()->get()));
        }
        for (std::size_t i = 1; i < out.size(); ++i)
            if (out[i] <= out[i - 1]) fail(n, field, "must be strictly increasing");
        return out;
    }

    Param param(const toml::node& n, const std::string& field) const {
        if (n.is_boolean()) return n.as_boolean()->get();
        if (n.is_string()) return n.as_string()->get();
        if (n.is_integer() || n.is_floating_point()) return number(&n, field);
        if (const toml::array* a = n.as_array()) {
            if (a->empty()) return std::vector<double>{};
            if ((*a)[0].is_string()) {
                std::vector<std::string> out;
                for (const toml::node& e : *a) {
                    if (!e.is_string()) fail(&e, field, "mixes strings and other values");
                    out.push_back(e.as_string()->get());
                }
                return out;
            }
            std::vector<double> out;
            for (const toml::node& e : *a) out.push_back(number(&e, field));
            return out;
        }
        fail(&n, field, "has an unsupported type");
    }

    const std::string& source() const { return source_; }

private:
    std::string source_;
};

bool safe_name(const std::string& s) {
    if (s.empty()) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    });
}

void string_table(const Reader& r, const toml::table& root, const char* key, std::map<std::string, std::string>& out) {
    const toml::node* n = root.get(key);
    if (!n) return;
    const toml::table* t = n->as_table();
    if (!t) r.fail(n, key, "must be a table");
    for (const auto& [k, v] : *t) {
        const std::string field = std::string(key) + "." + std::string(k.str());
        if (!v.is_string()) r.fail(&v, field, "must be a spec string");
        try {
            parse_spec_string(v.as_string()->get());
        } catch (const ConfigError& e) {
            r.fail(&v, field, e.what());
        }
        out[std::string(k.str())] = v.as_string()->get();
    }
}

CheckSpec read_check(const Reader& r, const toml::table& t, std::size_t index) {
    const std::string path = "check[" + std::to_string(index) + "].";
    CheckSpec c;
    c.name = r.string(t, "name", path);
    if (!safe_name(c.name)) r.fail(t.get("name"), path + "name", "may only contain letters, digits, '_' and '-'");
    c.op = r.string(t, "op", path);
    if (!known_check(c.op)) r.fail(t.get("op"), path + "op", "unknown check op '" + c.op + "'");
    c.anchor = r.string(t, "anchor", path, false, "plumbing");
    c.provenance = r.string(t, "provenance", path, false, "identity");
    if (!provenances.count(c.provenance))
        r.fail(t.get("provenance"), path + "provenance", "must be closed_form, oracle, identity or cross_check");
    if (const toml::node* n = t.get("expected")) c.expected = r.number(n, path + "expected");
    if (c.provenance == "oracle" && !c.expected) r.fail(&t, path + "expected", "is required for oracle values");
    if (const toml::node* n = t.get("tolerance")) {
        if (n->is_string()) {
            c.tolerance_class = n->as_string()->get();
            if (c.tolerance_class != "quadrature" && c.tolerance_class != "bracket" && c.tolerance_class != "exact")
                r.fail(n, path + "tolerance", "must be quadrature, bracket, exact or a number");
        } else {
            c.tolerance = r.number(n, path + "tolerance");
            if (!(*c.tolerance > 0)) r.fail(n, path + "tolerance", "must be positive");
        }
    }
    c.compare = r.string(t, "compare", path, false, "below");
    if (c.compare != "below" && c.compare != "above") r.fail(t.get("compare"), path + "compare", "must be below or above");
    if (const toml::node* n = t.get("convergence")) {
        if (!n->is_boolean()) r.fail(n, path + "convergence", "must be true or false");
        c.convergence = n->as_boolean()->get();
    }
    if (const toml::node* n = t.get("resolutions")) c.resolutions = r.resolutions(n, path + "resolutions");
    std::map<std::string, Param> params;
    for (const auto& [k, v] : t) {
        const std::string key(k.str());
        if (!reserved.count(key)) params[key] = r.param(v, path + key);
    }
    c.params = Params(c.name, std::move(params));
    return c;
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& source) {
    toml::table root;
    try {
        root = toml::parse(text, source);
    } catch (const toml::parse_error& e) {
        std::ostringstream os;
        os << source << ':' << e.source().begin.line << ": " << e.description();
        throw ConfigError(os.str());
    }
    const Reader r(source);
    static const std::set<std::string> top = {"name", "description", "manifold", "volume_form", "seed", "resolutions",
                                              "tolerances", "potentials", "fields", "check"};
    for (const auto& [k, v] : root)
        if (!top.count(std::string(k.str()))) r.fail(&v, std::string(k.str()), "unknown key");

    Scenario s;
    s.name = r.string(root, "name", "");
    if (!safe_name(s.name)) r.fail(root.get("name"), "name", "may only contain letters, digits, '_' and '-'");
    s.description = r.string(root, "description", "", false);
    s.manifold = r.string(root, "manifold", "");
    s.volume_form = r.string(root, "volume_form", "");
    try {
        make_volume_form(s.volume_form, make_manifold(s.manifold));
    } catch (const ConfigError& e) {
        r.fail(root.get("volume_form"), "manifold/volume_form", e.what());
    }
    if (const toml::node* n = root.get("seed")) {
        if (!n->is_integer() || n->as_integer()->get() < 0) r.fail(n, "seed", "must be a non-negative integer");
        s.seed = static_cast<std::uint64_t>(n->as_integer()->get());
    }
    const toml::node* res = root.get("resolutions");
    if (!res) r.fail(&root, "resolutions", "is required");
    s.resolutions = r.resolutions(res, "resolutions");
    if (const toml::node* n = root.get("tolerances")) {
        const toml::table* t = n->as_table();
        if (!t) r.fail(n, "tolerances", "must be a table");
        for (const auto& [k, v] : *t) {
            const std::string key(k.str());
            const double value = r.number(&v, "tolerances." + key);
            if (!(value > 0)) r.fail(&v, "tolerances." + key, "must be positive");
            if (key == "quadrature")
                s.tolerances.quadrature = value;
            else if (key == "bracket")
                s.tolerances.bracket = value;
            else if (key == "exact")
                s.tolerances.exact = value;
            else
                r.fail(&v, "tolerances." + key, "unknown tolerance class");
        }
    }
    string_table(r, root, "potentials", s.potentials);
    string_table(r, root, "fields", s.fields);
    if (const toml::node* n = root.get("check")) {
        const toml::array* a = n->as_array();
        if (!a) r.fail(n, "check", "must be an array of tables ([[check]])");
        std::set<std::string> names;
        for (std::size_t i = 0; i < a->size(); ++i) {
            const toml::table* t = (*a)[i].as_table();
            if (!t) r.fail(&(*a)[i], "check[" + std::to_string(i) + "]", "must be a table");
            CheckSpec c = read_check(r, *t, i);
            if (!names.insert(c.name).second) r.fail(t, "check[" + std::to_string(i) + "].name", "duplicate check name");
            s.checks.push_back(std::move(c));
        }
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path + ": cannot open file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str(), path);
}

const std::vector<std::string>& builtin_scenario_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> out;
        for (const Builtin& b : builtins) out.emplace_back(b.name);
        return out;
    }();
    return names;
}

std::string_view builtin_scenario_text(const std::string& name) {
    for (const Builtin& b : builtins)
        if (name == b.name) return b.text;
    throw ConfigError("unknown built-in scenario '" + name + "'");
}

Scenario resolve_scenario(const std::string& name_or_path) {
    for (const Builtin& b : builtins)
        if (name_or_path == b.name) return parse_scenario(b.text, name_or_path);
    return load_scenario(name_or_path);
}

bool Report::all_passed() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

namespace {

// Defects below this count as converged when judging monotonicity.
constexpr double monotone_floor = 1e-10;

double class_tolerance(const Tolerances& t, const std::string& name) {
    if (name == "bracket") return t.bracket;
    if (name == "exact") return t.exact;
    return t.quadrature;
}

}  // namespace

Report run_scenario(const Scenario& scenario, const RunOptions& opts) {
    if (!(opts.tol_scale > 0)) throw ConfigError("--tol-scale must be positive");
    if (opts.resolution && *opts.resolution < 1) throw ConfigError("--resolution must be positive");
    for (const std::string& name : opts.only)
        if (std::none_of(scenario.checks.begin(), scenario.checks.end(), [&](const CheckSpec& c) { return c.name == name; }))
            throw ConfigError("no check named '" + name + "'");

    Report report;
    report.scenario = scenario.name;
    report.description = scenario.description;
    report.manifold = scenario.manifold;
    report.volume_form = scenario.volume_form;
    report.seed = opts.seed.value_or(scenario.seed);
    report.tol_scale = opts.tol_scale;
    const ScenarioContext ctx(scenario, report.seed);

    for (const CheckSpec& check : scenario.checks) {
        if (!opts.only.empty() && std::find(opts.only.begin(), opts.only.end(), check.name) == opts.only.end()) continue;
        CheckRecord rec;
        rec.name = check.name;
        rec.op = check.op;
        rec.anchor = check.anchor;
        rec.provenance = check.provenance;
        rec.expected = check.expected;
        rec.compare = check.compare;
        rec.tolerance = check.tolerance.value_or(class_tolerance(scenario.tolerances, check.tolerance_class)) * opts.tol_scale;
        if (opts.resolution)
            rec.resolutions = {*opts.resolution};
        else
            rec.resolutions = check.resolutions.empty() ? scenario.resolutions : check.resolutions;
        try {
            for (int N : rec.resolutions) {
                const Sample s = run_check(ctx, check, N);
                rec.values.push_back(s.value);
                rec.defects.push_back(s.defect);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            rec.error = e.what();
        }
        if (rec.error.empty()) {
            // Judged at the finest resolution; coarser ones only feed the convergence test.
            rec.defect = rec.defects.back();
            rec.pass = check.compare == "above" ? rec.defect > rec.tolerance : rec.defect < rec.tolerance;
            if (check.convergence && rec.defects.size() >= 2) {
                bool monotone = true;
                for (std::size_t i = 1; i < rec.defects.size(); ++i)
                    monotone = monotone && (rec.defects[i] <= rec.defects[i - 1] ||
                                            (rec.defects[i] < monotone_floor && rec.defects[i - 1] < monotone_floor));
                rec.monotone = monotone;
                rec.pass = rec.pass && monotone;
            }
        }
        report.records.push_back(std::move(rec));
    }
    return report;
}

}  // namespace transgress
