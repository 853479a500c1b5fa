// Acceptance suite: runs every built-in scenario twice and judges the
// eight acceptance criteria at their own pinned tolerances, independent of
// the per-check tolerances in the scenario files.

#include "oracles.hpp"

#include "transgress/characters.hpp"
#include "transgress/mesh_families.hpp"
#include "transgress/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

using namespace transgress;

namespace {

constexpr double tol_curvature = 1e-4;
constexpr double tol_equator = 1e-6;
constexpr int min_chains = 10;
constexpr double tol_flux = 1e-4;
constexpr double tol_hat_tilde = 1e-4;
constexpr double tol_reparametrization = 1e-10;
constexpr double tol_patch = 1e-4;
constexpr int patch_grid = 64, patch_grid_refined = 128;
constexpr double tol_hopf_period = 1e-3;
constexpr double tol_null_period = 1e-4;
constexpr double tol_antisymmetry = 1e-10;
constexpr double tol_cocycle = 1e-3;
constexpr double tol_ks = 1e-6;
constexpr double tol_equivariance = 1e-3;
constexpr double tol_closedness = 1e-4;
// Defects below this are treated as converged when judging "decreasing".
constexpr double floor_converged = 1e-10;

struct Run {
    Scenario scenario;
    Report first, second;
};

class Verdict {
public:
    void require(bool ok, const std::string& what) {
        ++count_;
        if (!ok) {
            pass_ = false;
            if (!failures_.empty()) failures_ += "; ";
            failures_ += what;
        }
    }
    bool pass() const { return pass_ && count_ > 0; }
    std::string detail() const {
        std::ostringstream os;
        os << count_ << " assertions";
        if (!failures_.empty()) os << "; failed: " << failures_;
        return os.str();
    }

private:
    bool pass_ = true;
    int count_ = 0;
    std::string failures_;
};

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

bool decreasing(const std::vector<double>& d) {
    for (std::size_t i = 1; i < d.size(); ++i)
        if (!(d[i] <= d[i - 1] || (d[i] < floor_converged && d[i - 1] < floor_converged))) return false;
    return true;
}

const CheckRecord* find(const Run& r, const std::string& name) {
    for (const CheckRecord& c : r.first.records)
        if (c.name == name) return &c;
    return nullptr;
}

const CheckSpec* spec(const Run& r, const std::string& name) {
    for (const CheckSpec& c : r.scenario.checks)
        if (c.name == name) return &c;
    return nullptr;
}

std::vector<const CheckRecord*> with_op(const Run& r, const std::string& op) {
    std::vector<const CheckRecord*> out;
    for (const CheckRecord& c : r.first.records)
        if (c.op == op) out.push_back(&c);
    return out;
}

std::string label(const Run& r, const CheckRecord& c) { return r.scenario.name + "/" + c.name; }

// Every defect below tol, and no error.
void all_below(Verdict& v, const Run& r, const CheckRecord& c, double tol) {
    bool ok = c.error.empty() && !c.defects.empty();
    double worst = 0.0;
    for (double d : c.defects) worst = std::max(worst, d);
    ok = ok && worst < tol;
    v.require(ok, label(r, c) + (c.error.empty() ? " defect " + fmt(worst) : " error " + c.error));
}

Verdict criterion1(const std::vector<Run>& runs) {
    Verdict v;
    for (const Run& r : runs) {
        const auto recs = with_op(r, "curvature_defects");
        v.require(!recs.empty(), r.scenario.name + " has no curvature check");
        for (const CheckRecord* c : recs) {
            const SpecString chains = parse_spec_string(spec(r, c->name)->params.text("chains"));
            v.require(chains.integer_or("count", 0) >= min_chains, label(r, *c) + " uses fewer than 10 chains");
            v.require(c->defects.size() >= 2, label(r, *c) + " has no refinement");
            all_below(v, r, *c, tol_curvature);
            v.require(decreasing(c->defects), label(r, *c) + " not decreasing");
        }
    }
    const ManifoldPtr S2 = make_manifold("sphere2");
    const double equator = evaluate(*make_h_mu(sphere_area_normalized(S2)), great_circle_mesh(*S2, 0, 1, 64)).value();
    v.require(std::abs(equator - 0.5) < tol_equator, "equator " + fmt(equator));
    for (const Run& r : runs)
        if (const CheckRecord* c = find(r, "equator_value")) all_below(v, r, *c, tol_equator);
    return v;
}

Verdict criterion2(const std::vector<Run>& runs) {
    Verdict v;
    const ManifoldPtr T = make_manifold("torus2");
    const double a = 0.3, b = 0.7;
    const FlowMap phi = flow(TimeDependentField(VectorField(T, [a, b](const Point&) { return Vector{{a, b}}; })));
    const FluxResult flux = flux_omega(torus_dxdy(T), phi, T->homology_basis());
    const oracles::TorusFlux want = oracles::torus_translation_flux(a, b);
    v.require(flux.size() == 2, "homology basis of the torus");
    if (flux.size() == 2) {
        v.require(circle_distance(flux[0].value.value(), want.x_circle) < tol_flux, "x-circle flux");
        v.require(circle_distance(flux[1].value.value(), want.y_circle) < tol_flux, "y-circle flux");
    }
    v.require(flux_vs_character_defect(LatticeCochain(T, 16), phi, T->homology_basis()) < tol_flux,
              "translation flux vs character");
    for (const Run& r : runs) {
        if (r.scenario.manifold != "torus2") continue;
        for (const char* name : {"translation_flux", "hamiltonian_flux", "translation_flux_vs_character",
                                 "hamiltonian_flux_vs_character"}) {
            const CheckRecord* c = find(r, name);
            v.require(c != nullptr, r.scenario.name + " lacks " + name);
            if (c) all_below(v, r, *c, tol_flux);
        }
        const CheckSpec* s = spec(r, "translation_flux");
        if (s) {
            const std::vector<double> e = s->params.numbers("expected_values");
            v.require(e.size() == 2 && circle_distance(e[0], want.x_circle) < 1e-15 &&
                          circle_distance(e[1], want.y_circle) < 1e-15,
                      "translation_flux expected values differ from the oracle");
        }
    }
    return v;
}

Verdict criterion3(const std::vector<Run>& runs) {
    Verdict v;
    int loops = 0, forms = 0;
    for (const Run& r : runs) {
        for (const CheckRecord* c : with_op(r, "hat_tilde_form")) {
            ++forms;
            all_below(v, r, *c, tol_hat_tilde);
        }
        for (const CheckRecord* c : with_op(r, "hat_tilde_loop")) {
            ++loops;
            const bool reparam = spec(r, c->name)->params.text("loop").rfind("reparametrized(", 0) == 0;
            all_below(v, r, *c, reparam ? tol_reparametrization : tol_hat_tilde);
        }
        for (const CheckRecord* c : with_op(r, "loop_value"))
            if (spec(r, c->name)->params.text("loop").rfind("reparametrized(", 0) == 0)
                all_below(v, r, *c, tol_reparametrization);
    }
    v.require(loops > 0 && forms > 0, "no hat/tilde checks found");
    return v;
}

Verdict criterion4(const std::vector<Run>& runs) {
    Verdict v;
    bool seen = false;
    for (const Run& r : runs)
        for (const CheckRecord* c : with_op(r, "patch_compatibility")) {
            if (spec(r, c->name)->params.text("patch").rfind("cap_family", 0) != 0) continue;
            seen = true;
            v.require(c->error.empty(), label(r, *c) + " error " + c->error);
            v.require(c->resolutions == std::vector<int>{patch_grid, patch_grid_refined},
                      label(r, *c) + " not run at 64 and 128");
            if (c->defects.size() == 2) {
                v.require(c->defects[0] < tol_patch, label(r, *c) + " defect at 64: " + fmt(c->defects[0]));
                v.require(c->defects[1] < c->defects[0], label(r, *c) + " not decreasing");
            }
        }
    v.require(seen, "no cap-family patch check");
    return v;
}

Verdict criterion5(const std::vector<Run>& runs) {
    Verdict v;
    bool hopf = false, null = false;
    for (const Run& r : runs)
        for (const CheckRecord* c : with_op(r, "patch_value")) {
            const std::string patch = spec(r, c->name)->params.text("patch");
            v.require(c->error.empty() && !c->values.empty(), label(r, *c) + " error " + c->error);
            if (c->values.empty()) continue;
            const double value = c->values.back();
            if (patch.rfind("hopf", 0) == 0) {
                hopf = true;
                v.require(std::abs(value - 1.0) < tol_hopf_period, label(r, *c) + " period " + fmt(value));
            } else if (patch.rfind("null_torus", 0) == 0) {
                null = true;
                v.require(std::abs(value) < tol_null_period, label(r, *c) + " period " + fmt(value));
            }
        }
    v.require(hopf && null, "missing Hopf or null-homotopic patch");
    return v;
}

Verdict criterion6(const std::vector<Run>& runs) {
    Verdict v;
    std::map<std::string, int> cocycles;
    for (const Run& r : runs) {
        for (const CheckRecord* c : with_op(r, "lichnerowicz_antisymmetry")) all_below(v, r, *c, tol_antisymmetry);
        for (const CheckRecord* c : with_op(r, "cocycle")) {
            all_below(v, r, *c, tol_cocycle);
            ++cocycles[r.scenario.name];
        }
        for (const CheckRecord* c : with_op(r, "ks_comparison")) all_below(v, r, *c, tol_ks);
    }
    v.require(cocycles["s3_unknot"] > 0 && cocycles["s2xs2_diagonal"] > 0, "missing S^3 or S^2 x S^2 cocycle");
    return v;
}

Verdict criterion7(const std::vector<Run>& runs) {
    Verdict v;
    bool closedness = false;
    for (const Run& r : runs) {
        for (const CheckRecord* c : with_op(r, "equivariance")) all_below(v, r, *c, tol_equivariance);
        for (const CheckRecord* c : with_op(r, "functoriality")) {
            const bool exterior = spec(r, c->name)->params.text("component") == "exterior";
            closedness = closedness || exterior;
            all_below(v, r, *c, exterior ? tol_closedness : tol_equivariance);
        }
    }
    v.require(closedness, "no closedness check");
    return v;
}

Verdict criterion8(const std::vector<Run>& runs) {
    Verdict v;
    for (const Run& r : runs)
        v.require(report_json(r.first) == report_json(r.second), r.scenario.name + " reports differ");
    return v;
}

}  // namespace

int main() {
    std::vector<Run> runs;
    for (const std::string& name : builtin_scenario_names()) {
        Run r{resolve_scenario(name), {}, {}};
        r.first = run_scenario(r.scenario);
        r.second = run_scenario(r.scenario);
        std::printf("ran %s (%zu checks, %s)\n", name.c_str(), r.first.records.size(),
                    r.first.all_passed() ? "all pass" : "some fail");
        std::fflush(stdout);
        runs.push_back(std::move(r));
    }

    const std::vector<std::pair<const char*, std::function<Verdict(const std::vector<Run>&)>>> criteria = {
        {"character curvature", criterion1},      {"flux", criterion2},
        {"hat/tilde compatibility", criterion3},  {"transgressed curvature", criterion4},
        {"integral periods", criterion5},         {"Lichnerowicz cocycle", criterion6},
        {"equivariance and functoriality", criterion7}, {"reproducibility", criterion8},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Verdict v;
        try {
            v = criteria[i].second(runs);
        } catch (const std::exception& e) {
            v.require(false, e.what());
        }
        failed += v.pass() ? 0 : 1;
        std::printf("criterion %zu (%s): %s  [%s]\n", i + 1, criteria[i].first, v.pass() ? "PASS" : "FAIL",
                    v.detail().c_str());
    }
    std::printf("%s: %d of %zu criteria failed\n", failed ? "FAIL" : "PASS", failed, criteria.size());
    return failed ? 1 : 0;
}
