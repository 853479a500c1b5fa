#include "checks.hpp"

#include "transgress/errors.hpp"
#include "transgress/mesh_families.hpp"
#include "transgress/quadrature.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>

namespace transgress {

namespace {

using CheckFn = std::function<Sample(const ScenarioContext&, const CheckSpec&, int)>;

std::uint64_t check_seed(const ScenarioContext& ctx, const std::string& name) {
    std::uint64_t h = 1469598103934665603ULL;
    for (char c : name) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ULL;
    return ctx.seed() ^ h;
}

double expected(const CheckSpec& spec, double fallback) { return spec.expected.value_or(fallback); }

Sample against(double value, const CheckSpec& spec, double fallback = 0.0) {
    return {value, std::abs(value - expected(spec, fallback))};
}

Sample against_circle(double value, const CheckSpec& spec, double fallback = 0.0) {
    return {value, circle_distance(value, expected(spec, fallback))};
}

Sample defect_only(double value) { return {value, value}; }

SpecString spec_of(const Params& p, const std::string& key) { return parse_spec_string(p.text(key)); }

GrassmannPoint submanifold(const ScenarioContext& ctx, const Params& p, int N) {
    const SubmanifoldFamily f = make_family(ctx, spec_of(p, "submanifold"), N);
    return {f.frame(0.0), f.model};
}

std::vector<VectorField> fields(const ScenarioContext& ctx, const Params& p, std::size_t count) {
    std::vector<VectorField> out;
    for (const std::string& name : p.texts("fields")) out.push_back(ctx.field(name));
    if (count && out.size() != count)
        throw ConfigError("key 'fields' needs " + std::to_string(count) + " entries");
    return out;
}

std::vector<NormalField> as_normals(const std::vector<VectorField>& Xs) {
    std::vector<NormalField> out;
    for (const VectorField& X : Xs) out.push_back(NormalField::from_field(X));
    return out;
}

LoopOfSubmanifolds loop_of(const ScenarioContext& ctx, const Params& p, const std::string& key, int N) {
    return make_loop(make_family(ctx, spec_of(p, key), N), p.integer_or("steps", N));
}

std::vector<Point> probe_points(const ScenarioContext& ctx, const CheckSpec& spec) {
    std::mt19937_64 rng(check_seed(ctx, spec.name));
    std::vector<Point> out;
    for (int i = 0; i < spec.params.integer_or("count", 16); ++i) out.push_back(ctx.manifold()->sample(rng));
    return out;
}

Point point_param(const Params& p, const std::string& key, int D) {
    const std::vector<double> v = p.numbers(key);
    if (static_cast<int>(v.size()) != D) throw ConfigError("key '" + key + "' needs " + std::to_string(D) + " entries");
    return Eigen::Map<const Vector>(v.data(), D);
}

const std::map<std::string, CheckFn>& registry() {
    static const std::map<std::string, CheckFn> checks = {
        {"total_volume",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SimplicialMesh z = make_cycle(ctx, parse_spec_string(s.params.text_or("cycle", "fundamental()")), N);
             return against(integrate_form(ctx.volume(), z), s, 1.0);
         }},
        {"integrality",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SimplicialMesh z = make_cycle(ctx, parse_spec_string("fundamental()"), N);
             const double period = integrate_form(scaled(ctx.volume(), s.params.number_or("scale", 1.0)), z);
             return against(circle_distance(period, 0.0), s, 0.0);
         }},
        {"retract",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const EmbeddedManifold& M = *ctx.manifold();
             const Point x = point_param(s.params, "point", M.ambient_dim());
             const Point e = point_param(s.params, "expected_point", M.ambient_dim());
             const Point r = M.retract(x);
             return defect_only((r - e).lpNorm<Eigen::Infinity>() + (M.retract(r) - r).lpNorm<Eigen::Infinity>());
         }},
        {"boundary",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SimplicialMesh z = make_cycle(ctx, spec_of(s.params, "cycle"), N);
             double residual = boundary_residual(*ctx.manifold(), z);
             if (z.dim() >= 2) residual += mesh_boundary(mesh_boundary(z)).num_simplices();
             return defect_only(residual);
         }},
        {"length",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SimplicialMesh c = make_cycle(ctx, spec_of(s.params, "cycle"), N);
             return against(integrate_scalar(*ctx.manifold(), c, [](const Point&) { return 1.0; }), s);
         }},
        {"form_probe",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const FormProbeReport r = probe_form(ctx.form(s.params.text_or("form", "volume")), check_seed(ctx, s.name));
             return defect_only(std::max({r.alternation_defect, r.multilinearity_defect, r.projection_defect}));
         }},
        {"pullback_probe",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const SmoothMap phi = make_map(ctx, spec_of(s.params, "map"));
             const DifferentialForm w = ctx.form(s.params.text_or("form", "volume"));
             const DifferentialForm pulled = pullback(phi, w);
             const double sign = s.params.number_or("sign", 1.0);
             double worst = 0.0;
             for (const Point& x : probe_points(ctx, s)) {
                 const Matrix E = ctx.manifold()->tangent_frame(x).leftCols(w.degree());
                 worst = std::max(worst, std::abs(pulled(x, E) - sign * w(x, E)));
             }
             return defect_only(worst);
         }},
        {"potential_residual",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const std::string name = s.params.text("potential");
             return defect_only(potential_residual(field_from_potential(ctx.potential(name), ctx.volume()),
                                                   ctx.potential(name), ctx.volume(), check_seed(ctx, s.name)));
         }},
        {"jacobi",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const auto X = fields(ctx, s.params, 3);
             return defect_only(jacobi_defect(X[0], X[1], X[2], check_seed(ctx, s.name)));
         }},
        {"flow_return",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const FlowMap phi(TimeDependentField(ctx.field(s.params.text("field"))), N);
             const double T = s.params.number("time");
             double worst = 0.0;
             for (const Point& x : probe_points(ctx, s))
                 worst = std::max(worst, (ctx.manifold()->lift_near(phi(T, x), x) - x).norm());
             return defect_only(worst);
         }},
        {"flow_preservation",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const FlowMap phi(TimeDependentField(ctx.field(s.params.text("field"))), N);
             return defect_only(preservation_defect(phi, ctx.volume(), check_seed(ctx, s.name)));
         }},
        {"character_value",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SimplicialMesh c = make_cycle(ctx, spec_of(s.params, "cycle"), N);
             return against_circle(evaluate(*ctx.character(), c).value(), s);
         }},
        {"curvature_defects",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             double worst = 0.0;
             for (const SimplicialMesh& z : make_chains(ctx, spec_of(s.params, "chains"), N))
                 worst = std::max(worst, curvature_defect(*ctx.character(), z));
             return defect_only(worst);
         }},
        {"fill_independence",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const int D = ctx.manifold()->ambient_dim();
             const SimplicialMesh c = make_cycle(ctx, spec_of(s.params, "cycle"), N);
             ConeFillOptions a, b;
             a.apex = point_param(s.params, "apex_a", D);
             b.apex = point_param(s.params, "apex_b", D);
             const double va = evaluate(*make_h_mu(ctx.volume(), a), c).value();
             const double vb = evaluate(*make_h_mu(ctx.volume(), b), c).value();
             return defect_only(circle_distance(va, vb));
         }},
        {"pullback_invariance",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SmoothMap phi = make_map(ctx, spec_of(s.params, "map"));
             const SimplicialMesh c = make_cycle(ctx, spec_of(s.params, "cycle"), N);
             const CharacterPtr pulled = pullback_character(phi, ctx.character(), s.params.integer_or("refinement", 1));
             return defect_only(circle_distance(evaluate(*pulled, c), evaluate(*ctx.character(), c)));
         }},
        {"flux",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const FlowMap phi(TimeDependentField(ctx.field(s.params.text("field"))));
             FluxOptions opts;
             opts.time_samples = N;
             const FluxResult r = flux_omega(ctx.volume(), phi, ctx.manifold()->homology_basis(), opts);
             const std::vector<double> want = s.params.numbers("expected_values");
             if (want.size() != r.size()) throw ConfigError("key 'expected_values' must match the homology basis");
             double worst = 0.0;
             for (std::size_t i = 0; i < r.size(); ++i) worst = std::max(worst, circle_distance(r[i].value.value(), want[i]));
             return Sample{r.empty() ? 0.0 : r.front().value.value(), worst};
         }},
        {"flux_vs_character",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const FlowMap phi(TimeDependentField(ctx.field(s.params.text("field"))));
             FluxOptions opts;
             opts.time_samples = N;
             return defect_only(flux_vs_character_defect(*ctx.character(), phi, ctx.manifold()->homology_basis(), opts));
         }},
        {"tilde_point",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const auto Y = fields(ctx, s.params, 0);
             const DifferentialForm w = ctx.form(s.params.text_or("form", "volume"));
             double worst = 0.0;
             for (const Point& x : probe_points(ctx, s)) {
                 SimplicialMesh pt(0, x.size());
                 pt.add_vertex(x);
                 pt.add_simplex({0});
                 Matrix args(x.size(), static_cast<Eigen::Index>(Y.size()));
                 std::vector<NormalField> vertex_normals;
                 for (std::size_t i = 0; i < Y.size(); ++i) {
                     args.col(static_cast<Eigen::Index>(i)) = Y[i](x);
                     vertex_normals.push_back(NormalField::restrict(Y[i], pt));
                 }
                 const double direct = w(x, args);
                 const double tilde = tilde_form(w, {pt, "point"}, as_normals(Y));
                 const double hat = hat_form(w, {pt, pt.vertex_matrix()}, vertex_normals);
                 worst = std::max({worst, std::abs(tilde - direct), std::abs(hat - direct)});
             }
             return defect_only(worst);
         }},
        {"tilde_value",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const GrassmannPoint P = submanifold(ctx, s.params, N);
             return against(tilde_form(ctx.form(s.params.text_or("form", "volume")), P, as_normals(fields(ctx, s.params, 0))), s);
         }},
        {"tilde_alternation",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const GrassmannPoint P = submanifold(ctx, s.params, N);
             const auto X = fields(ctx, s.params, 2);
             const NormalField a = NormalField::from_field(X[0]), b = NormalField::from_field(X[1]);
             const VolumeForm& mu = ctx.volume();
             return defect_only(std::abs(tilde_form(mu, P, {a, a})) +
                                std::abs(tilde_form(mu, P, {a, b}) + tilde_form(mu, P, {b, a})));
         }},
        {"representative_independence",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const GrassmannPoint P = submanifold(ctx, s.params, N);
             if (P.mesh.dim() != 1) throw ConfigError("representative_independence needs a curve");
             const auto X = fields(ctx, s.params, 2);
             const NormalField a = NormalField::restrict(X[0], P.mesh), b = NormalField::restrict(X[1], P.mesh);
             const Matrix T = s.params.number_or("shift", 0.7) * curve_vertex_tangents(*ctx.manifold(), P.mesh);
             const NormalField shifted = a.plus(NormalField::per_vertex(T));
             const VolumeForm& mu = ctx.volume();
             return defect_only(std::abs(tilde_form(mu, P, {shifted, b}) - tilde_form(mu, P, {a, b})));
         }},
        {"hat_tilde_form",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SubmanifoldFamily f = make_family(ctx, spec_of(s.params, "submanifold"), N);
             const auto X = fields(ctx, s.params, 0);
             const DifferentialForm w = ctx.form(s.params.text_or("form", "volume"));
             const EmbeddingPoint e{f.combinatorics, f.reparametrized_frame(0.0, s.params.number_or("shift", 0.37)).vertex_matrix()};
             std::vector<NormalField> Z;
             for (const VectorField& Xi : X) Z.push_back(NormalField::restrict(Xi, e.image_mesh()));
             return defect_only(std::abs(hat_form(w, e, Z) - tilde_form(w, {f.frame(0.0), f.model}, as_normals(X))));
         }},
        {"loop_value",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             return against_circle(tilde_character_evaluate(*ctx.character(), loop_of(ctx, s.params, "loop", N)).value(), s);
         }},
        {"hat_tilde_loop",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SubmanifoldFamily f = make_family(ctx, spec_of(s.params, "loop"), N);
             const int steps = s.params.integer_or("steps", N * s.params.integer_or("substeps", 1));
             const double tilde = tilde_character_evaluate(*ctx.character(), make_loop(f, steps)).value();
             const double hat =
                 hat_character_evaluate(*ctx.character(), make_embedding_loop(f, steps, s.params.integer_or("turns", 1)))
                     .value();
             return Sample{hat, circle_distance(hat, tilde)};
         }},
        {"loop_concatenation",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const LoopOfSubmanifolds a = loop_of(ctx, s.params, "loop_a", N), b = loop_of(ctx, s.params, "loop_b", N);
             const DifferentialCharacter& h = *ctx.character();
             const CircleValue joined = tilde_character_evaluate(h, a.then(b));
             return Sample{joined.value(),
                           circle_distance(joined, tilde_character_evaluate(h, a) + tilde_character_evaluate(h, b))};
         }},
        {"patch_compatibility",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const PatchFamily f = make_patch_family(ctx, spec_of(s.params, "patch"));
             return defect_only(curvature_compatibility_defect(*ctx.character(), ctx.volume(), f.sample(N)));
         }},
        {"patch_value",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const PatchFamily f = make_patch_family(ctx, spec_of(s.params, "patch"));
             const std::string method = s.params.text_or("method", "direct");
             if (method != "direct" && method != "swept") throw ConfigError("method must be 'direct' or 'swept'");
             const PatchIntegral r = tilde_mu_over_patch(ctx.volume(), f.sample(N), method == "swept");
             return against(method == "direct" ? r.direct : r.swept, s);
         }},
        {"patch_fubini",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const PatchFamily f = make_patch_family(ctx, spec_of(s.params, "patch"));
             const PatchIntegral r = tilde_mu_over_patch(ctx.volume(), f.sample(N), true);
             return defect_only(std::abs(r.direct - r.swept));
         }},
        {"lichnerowicz_value",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const auto X = fields(ctx, s.params, 2);
             const double v = lichnerowicz(submanifold(ctx, s.params, N), X[0], X[1], ctx.volume());
             if (s.compare == "above") return Sample{std::abs(v), std::abs(v)};
             return against(v, s);
         }},
        {"lichnerowicz_antisymmetry",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const GrassmannPoint P = submanifold(ctx, s.params, N);
             const auto X = fields(ctx, s.params, 2);
             const VolumeForm& mu = ctx.volume();
             return defect_only(std::abs(lichnerowicz(P, X[0], X[1], mu) + lichnerowicz(P, X[1], X[0], mu)) +
                                std::abs(lichnerowicz(P, X[0], X[0], mu)));
         }},
        {"lichnerowicz_point",
         [](const ScenarioContext& ctx, const CheckSpec& s, int) {
             const auto X = fields(ctx, s.params, 2);
             double worst = 0.0;
             for (const Point& x : probe_points(ctx, s)) {
                 SimplicialMesh pt(0, x.size());
                 pt.add_vertex(x);
                 pt.add_simplex({0});
                 Matrix args(x.size(), 2);
                 args << X[1](x), X[0](x);
                 worst = std::max(worst, std::abs(lichnerowicz({pt, "point"}, X[0], X[1], ctx.volume()) -
                                                  ctx.volume()(x, args)));
             }
             return defect_only(worst);
         }},
        {"cocycle",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const auto X = fields(ctx, s.params, 3);
             return defect_only(cocycle_identity_defect(submanifold(ctx, s.params, N), X[0], X[1], X[2], ctx.volume()));
         }},
        {"ks_comparison",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const auto X = fields(ctx, s.params, 2);
             return defect_only(ks_comparison_defect(submanifold(ctx, s.params, N), X[0], X[1], ctx.volume()));
         }},
        {"equivariance",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const SmoothMap phi = make_map(ctx, spec_of(s.params, "map"));
             return defect_only(equivariance_defect(phi, ctx.character(), loop_of(ctx, s.params, "loop", N),
                                                    s.params.integer_or("refinement", 2)));
         }},
        {"functoriality",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const std::string part = s.params.text("component");
             const SmoothMap phi = make_map(ctx, spec_of(s.params, "map"));
             const VectorField X = ctx.field(s.params.text("field"));
             FunctorialityOptions opts;
             if (part == "exterior") {
                 opts.cube = make_cube(ctx, spec_of(s.params, "cube"));
                 opts.cube_resolution = s.params.integer_or("cube_resolution", std::max(4, N / 4));
             }
             const FunctorialityReport r =
                 functoriality_form_defects(phi, X, ctx.form(s.params.text_or("form", "volume")),
                                            submanifold(ctx, s.params, N), as_normals(fields(ctx, s.params, 0)), opts);
             if (part == "pullback") return defect_only(r.pullback);
             if (part == "lie") return defect_only(r.lie_derivative);
             if (part == "interior") return defect_only(r.interior);
             if (part == "exterior") return defect_only(r.exterior);
             throw ConfigError("component must be pullback, lie, interior or exterior");
         }},
        {"nondegeneracy",
         [](const ScenarioContext& ctx, const CheckSpec& s, int N) {
             const GrassmannPoint P = submanifold(ctx, s.params, N);
             std::vector<VectorField> dictionary;
             for (const std::string& name : s.params.texts("dictionary")) dictionary.push_back(ctx.field(name));
             const NormalField Y = NormalField::restrict(ctx.field(s.params.text("normal")), P.mesh);
             const double v = nondegeneracy_probe(P, Y, dictionary, ctx.volume());
             return Sample{v, v};
         }},
    };
    return checks;
}

}  // namespace

bool known_check(const std::string& op) { return registry().count(op) != 0; }

const std::vector<std::string>& check_ops() {
    static const std::vector<std::string> ops = [] {
        std::vector<std::string> out;
        for (const auto& [name, fn] : registry()) out.push_back(name);
        return out;
    }();
    return ops;
}

Sample run_check(const ScenarioContext& ctx, const CheckSpec& spec, int resolution) {
    auto it = registry().find(spec.op);
    if (it == registry().end()) throw ConfigError("unknown check op '" + spec.op + "'");
    return it->second(ctx, spec, resolution);
}

}  // namespace transgress
