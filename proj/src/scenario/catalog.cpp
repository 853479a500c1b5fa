#include "transgress/catalog.hpp"

#include "transgress/errors.hpp"
#include "transgress/mesh_families.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace transgress {

namespace {

constexpr double pi = std::numbers::pi;

bool is_sphere(const ManifoldPtr& M) { return M->id() == "sphere2" || M->id() == "sphere3"; }

void require(const ManifoldPtr& M, std::initializer_list<const char*> ids, const SpecString& spec) {
    for (const char* id : ids)
        if (M->id() == id) return;
    throw ConfigError("'" + spec.str() + "' is not available on " + M->id());
}

int index_arg(const SpecString& spec, const char* key, int fallback, int dim) {
    const int v = spec.integer_or(key, fallback);
    if (v < 0 || v >= dim) throw ConfigError(spec.str() + ": index '" + key + "' out of range");
    return v;
}

Point rotate(Point x, int i, int j, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    const double xi = x(i), xj = x(j);
    x(i) = c * xi - s * xj;
    x(j) = s * xi + c * xj;
    return x;
}

Matrix rotation_matrix(int D, int i, int j, double angle) {
    Matrix R = Matrix::Identity(D, D);
    R(i, i) = std::cos(angle);
    R(j, j) = std::cos(angle);
    R(i, j) = -std::sin(angle);
    R(j, i) = std::sin(angle);
    return R;
}

void check_plane(const ManifoldPtr& M, int i, int j, const SpecString& spec) {
    if (i == j) throw ConfigError(spec.str() + ": rotation plane needs two distinct axes");
    if (M->id() == "sphere2xsphere2" && (i / 3 != j / 3))
        throw ConfigError(spec.str() + ": rotation plane must lie in one factor");
    if (M->id() == "torus2") throw ConfigError(spec.str() + ": rotations are not defined on the torus");
}

// Left multiplication by i, j, k on quaternions (a, b, c, d).
Matrix quaternion_unit(int k) {
    Matrix J = Matrix::Zero(4, 4);
    switch (k) {
        case 1:
            J(0, 1) = -1; J(1, 0) = 1; J(2, 3) = -1; J(3, 2) = 1;
            break;
        case 2:
            J(0, 2) = -1; J(1, 3) = 1; J(2, 0) = 1; J(3, 1) = -1;
            break;
        case 3:
            J(0, 3) = -1; J(1, 2) = -1; J(2, 1) = 1; J(3, 0) = 1;
            break;
        default:
            throw ConfigError("quaternion unit must be 1, 2 or 3");
    }
    return J;
}

Matrix random_rotation(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    Matrix A(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) A(i, j) = g(rng);
    Eigen::HouseholderQR<Matrix> qr(A);
    Matrix Q = qr.householderQ();
    if (Q.determinant() < 0) Q.col(0) *= -1;
    return Q;
}

// Combinatorics of a model in ambient dimension D with zero coordinates.
SimplicialMesh blank_copy(const SimplicialMesh& model, int D) {
    SimplicialMesh out(model.dim(), D);
    for (int v = 0; v < model.num_vertices(); ++v) out.add_vertex(Vector::Zero(D));
    for (int s = 0; s < model.num_simplices(); ++s) out.add_simplex(model.simplex(s), model.sign(s));
    return out;
}

struct Model {
    SimplicialMesh combinatorics;
    Matrix params;
    std::string name;
};

Model circle_model(int D, int segments) {
    if (segments < 3) throw ConfigError("a circle needs at least 3 segments");
    Model m{SimplicialMesh(1, D), Matrix(1, segments), "circle"};
    for (int i = 0; i < segments; ++i) {
        m.combinatorics.add_vertex(Vector::Zero(D));
        m.params(0, i) = static_cast<double>(i) / segments;
    }
    for (int i = 0; i < segments; ++i) m.combinatorics.add_simplex({i, (i + 1) % segments});
    return m;
}

Model point_model(int D) {
    Model m{SimplicialMesh(0, D), Matrix::Zero(1, 1), "point"};
    m.combinatorics.add_vertex(Vector::Zero(D));
    m.combinatorics.add_simplex({0});
    return m;
}

Model sphere_model(int D, int resolution) {
    const RoundSphere s2(2);
    const SimplicialMesh sm = sphere_mesh(s2, std::max(1, resolution));
    return {blank_copy(sm, D), sm.vertex_matrix(), "sphere2"};
}

SubmanifoldFamily from_model(Model m, std::function<Point(double, const Vector&)> place) {
    SubmanifoldFamily f;
    f.combinatorics = std::move(m.combinatorics);
    f.params = std::move(m.params);
    f.model = std::move(m.name);
    f.place = std::move(place);
    return f;
}

// Point on the circle of angular radius rho about e_c in the (e_a, e_b) plane.
Point circle_point(int D, int c, int a, int b, double rho, double psi) {
    Point p = Point::Zero(D);
    p(c) = std::cos(rho);
    p(a) = std::sin(rho) * std::cos(psi);
    p(b) = std::sin(rho) * std::sin(psi);
    return p;
}

// exp at e3 of the tangent vector (v1, v2, 0) on the unit 2-sphere.
Vector sphere_exp_north(double v1, double v2) {
    const double a = std::hypot(v1, v2);
    const double sinc = a < 1e-12 ? 1.0 : std::sin(a) / a;
    Vector p(3);
    p << sinc * v1, sinc * v2, std::cos(a);
    return p;
}

}  // namespace

DifferentialForm make_potential(const ManifoldPtr& M, const VolumeForm& mu, const SpecString& spec) {
    const int D = M->ambient_dim();
    if (spec.name == "coordinate") {
        require(M, {"sphere2"}, spec);
        const int axis = index_arg(spec, "axis", 2, D);
        const double c = spec.number_or("scale", 1.0);
        return function_form(
            M, [=](const Point& x) { return c * x(axis); },
            [=](const Point& x) {
                Vector g = Vector::Zero(x.size());
                g(axis) = c;
                return g;
            });
    }
    if (spec.name == "product") {
        require(M, {"sphere2"}, spec);
        const int a = index_arg(spec, "a", 0, D), b = index_arg(spec, "b", 1, D);
        const double c = spec.number_or("scale", 1.0);
        return function_form(
            M, [=](const Point& x) { return c * x(a) * x(b); },
            [=](const Point& x) {
                Vector g = Vector::Zero(x.size());
                g(a) += c * x(b);
                g(b) += c * x(a);
                return g;
            });
    }
    if (spec.name == "wave") {
        require(M, {"torus2"}, spec);
        const double kx = spec.integer_or("kx", 1), ky = spec.integer_or("ky", 0);
        const double amp = spec.number_or("amp", 1.0), phase = spec.number_or("phase", 0.0);
        return function_form(
            M, [=](const Point& x) { return amp * std::sin(2 * pi * (kx * x(0) + ky * x(1)) + phase); },
            [=](const Point& x) {
                const double c = amp * 2 * pi * std::cos(2 * pi * (kx * x(0) + ky * x(1)) + phase);
                return Vector{{c * kx, c * ky}};
            });
    }
    if (spec.name == "left_invariant" || spec.name == "modulated") {
        require(M, {"sphere3"}, spec);
        const Matrix J = quaternion_unit(spec.integer_or("k", 1));
        const double scale = spec.number_or("scale", 1.0);
        const bool modulated = spec.name == "modulated";
        const int axis = modulated ? index_arg(spec, "axis", 0, D) : 0;
        const double c = modulated ? spec.number_or("c", 0.5) : 0.0;
        return covector_form(
            M, [=](const Point& x) -> Vector { return scale * (1.0 + c * x(axis)) * (J * x); },
            [=](const Point& x) -> Matrix {
                Matrix Db = scale * (1.0 + c * x(axis)) * J;
                Db.col(axis) += scale * c * (J * x);
                return Db;
            });
    }
    if (spec.name == "weighted_area") {
        require(M, {"sphere2xsphere2"}, spec);
        const int axis = index_arg(spec, "axis", 2, D);
        const int factor = spec.integer_or("factor", 2);
        if (factor != 1 && factor != 2) throw ConfigError(spec.str() + ": factor must be 1 or 2");
        const int mix = spec.has("mix") ? index_arg(spec, "mix", 0, D) : -1;
        const double c = spec.number_or("c", 0.0);
        const DifferentialForm g = function_form(
            M, [=](const Point& x) { return x(axis) + (mix >= 0 ? c * x(axis) * x(mix) : 0.0); },
            [=](const Point& x) {
                Vector grad = Vector::Zero(x.size());
                grad(axis) += 1.0;
                if (mix >= 0) {
                    grad(axis) += c * x(mix);
                    grad(mix) += c * x(axis);
                }
                return grad;
            });
        const ManifoldPtr s2 = make_manifold("sphere2");
        return wedge(g, pullback(factor_projection(M, s2, factor - 1), sphere_area_normalized(s2)));
    }
    (void)mu;
    throw ConfigError("unknown potential '" + spec.str() + "'");
}

ScenarioContext::ScenarioContext(const Scenario& scenario, std::uint64_t seed)
    : M_(make_manifold(scenario.manifold)), mu_(make_volume_form(scenario.volume_form, M_)), seed_(seed) {
    for (const auto& [name, text] : scenario.potentials) potentials_[name] = make_potential(M_, mu_, parse_spec_string(text));
    field_specs_ = scenario.fields;
    if (M_->id() == "torus2")
        h_ = std::make_shared<LatticeCochain>(M_, 16);
    else
        h_ = make_h_mu(mu_);
}

const DifferentialForm& ScenarioContext::potential(const std::string& name) const {
    auto it = potentials_.find(name);
    if (it == potentials_.end()) throw ConfigError("unknown potential '" + name + "'");
    return it->second;
}

VectorField ScenarioContext::field(const std::string& name_or_spec) const {
    auto it = field_specs_.find(name_or_spec);
    const std::string& text = it == field_specs_.end() ? name_or_spec : it->second;
    if (it == field_specs_.end() && text.find('(') == std::string::npos)
        throw ConfigError("unknown field '" + name_or_spec + "'");
    return make_field(*this, parse_spec_string(text));
}

DifferentialForm ScenarioContext::form(const std::string& text) const {
    if (text == "volume") return mu_;
    if (text.find('(') == std::string::npos) return potential(text);
    const SpecString spec = parse_spec_string(text);
    if (spec.name == "d") return exterior_derivative(potential(spec.text("0")));
    if (spec.name == "wedge") return wedge(potential(spec.text("0")), potential(spec.text("1")));
    throw ConfigError("unknown form '" + text + "'");
}

VectorField make_field(const ScenarioContext& ctx, const SpecString& spec) {
    const ManifoldPtr& M = ctx.manifold();
    const int D = M->ambient_dim();
    if (spec.name == "zero") return VectorField::zero(M);
    if (spec.name == "rotation") {
        const int i = index_arg(spec, "i", 0, D), j = index_arg(spec, "j", 1, D);
        check_plane(M, i, j, spec);
        const double rate = spec.number_or("rate", 1.0);
        return VectorField(
            M,
            [=](const Point& x) {
                Vector v = Vector::Zero(x.size());
                v(j) += rate * x(i);
                v(i) -= rate * x(j);
                return v;
            },
            [=](const Point& x) {
                Matrix J = Matrix::Zero(x.size(), x.size());
                J(j, i) = rate;
                J(i, j) = -rate;
                return J;
            });
    }
    if (spec.name == "constant") {
        require(M, {"torus2"}, spec);
        const double a = spec.has("a") ? spec.number("a") : spec.number("0");
        const double b = spec.has("b") ? spec.number("b") : spec.number("1");
        return VectorField(
            M, [=](const Point&) { return Vector{{a, b}}; }, [](const Point&) { return Matrix::Zero(2, 2); });
    }
    if (spec.name == "from_potential") {
        const std::string name = spec.has("name") ? spec.text("name") : spec.text("0");
        return field_from_potential(ctx.potential(name), ctx.volume());
    }
    throw ConfigError("unknown field constructor '" + spec.str() + "'");
}

SmoothMap make_map(const ScenarioContext& ctx, const SpecString& spec) {
    const ManifoldPtr& M = ctx.manifold();
    const int D = M->ambient_dim();
    if (spec.name == "rotation") {
        const int i = index_arg(spec, "i", 0, D), j = index_arg(spec, "j", 1, D);
        check_plane(M, i, j, spec);
        const double angle = spec.number("angle");
        const Matrix R = rotation_matrix(D, i, j, angle);
        return SmoothMap(
            M, M, [R](const Point& x) -> Point { return R * x; }, [R](const Point&) { return R; });
    }
    if (spec.name == "antipodal") {
        if (!is_sphere(M)) throw ConfigError("antipodal() needs a sphere");
        return SmoothMap(
            M, M, [](const Point& x) -> Point { return -x; },
            [D](const Point&) -> Matrix { return -Matrix::Identity(D, D); });
    }
    if (spec.name == "flow") {
        const VectorField X = ctx.field(spec.has("field") ? spec.text("field") : spec.text("0"));
        const double time = spec.number_or("time", 1.0);
        return FlowMap(TimeDependentField(X)).at(time);
    }
    throw ConfigError("unknown map '" + spec.str() + "'");
}

SimplicialMesh SubmanifoldFamily::frame(double t) const {
    Matrix V(combinatorics.ambient_dim(), combinatorics.num_vertices());
    for (int v = 0; v < V.cols(); ++v) V.col(v) = place(t, params.col(v));
    return combinatorics.with_vertices(V);
}

Vector rotate_model(const std::string& model, const Vector& p, double turns) {
    if (model == "circle") return Vector::Constant(1, p(0) + turns);
    if (model == "sphere2") return rotate(p, 0, 1, 2 * pi * turns);
    return p;
}

SimplicialMesh SubmanifoldFamily::reparametrized_frame(double t, double turns) const {
    Matrix V(combinatorics.ambient_dim(), combinatorics.num_vertices());
    for (int v = 0; v < V.cols(); ++v) V.col(v) = place(t, rotate_model(model, params.col(v), turns));
    return combinatorics.with_vertices(V);
}

SubmanifoldFamily make_family(const ScenarioContext& ctx, const SpecString& spec, int resolution) {
    const ManifoldPtr& M = ctx.manifold();
    const int D = M->ambient_dim();
    const int segments = spec.integer_or("segments", resolution);
    if (spec.name == "point") {
        if (M->id() == "sphere2") {
            const double theta = spec.number("theta"), phi = spec.number_or("phi", 0.0);
            const Point p{{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}};
            return from_model(point_model(D), [p](double, const Vector&) { return p; });
        }
        require(M, {"torus2"}, spec);
        const Point p{{spec.number("x"), spec.number("y")}};
        return from_model(point_model(D), [p](double, const Vector&) { return p; });
    }
    if (spec.name == "great_circle") {
        require(M, {"sphere2", "sphere3"}, spec);
        const int i = index_arg(spec, "i", 0, D), j = index_arg(spec, "j", 1, D);
        if (i == j) throw ConfigError(spec.str() + ": axes must differ");
        return from_model(circle_model(D, segments), [=](double, const Vector& u) {
            Point p = Point::Zero(D);
            p(i) = std::cos(2 * pi * u(0));
            p(j) = std::sin(2 * pi * u(0));
            return p;
        });
    }
    if (spec.name == "small_circle") {
        require(M, {"sphere3"}, spec);
        const double rho = spec.number("rho");
        const int c = index_arg(spec, "center", 0, D), a = index_arg(spec, "i", 1, D), b = index_arg(spec, "j", 2, D);
        return from_model(circle_model(D, segments),
                          [=](double, const Vector& u) { return circle_point(D, c, a, b, rho, 2 * pi * u(0)); });
    }
    if (spec.name == "torus_knot") {
        require(M, {"sphere3"}, spec);
        const double p = spec.integer_or("p", 2), q = spec.integer_or("q", 3), a = spec.number_or("a", pi / 4);
        return from_model(circle_model(D, segments), [=](double, const Vector& u) {
            const double psi = 2 * pi * u(0);
            return Point{{std::cos(a) * std::cos(p * psi), std::cos(a) * std::sin(p * psi),
                          std::sin(a) * std::cos(q * psi), std::sin(a) * std::sin(q * psi)}};
        });
    }
    if (spec.name == "wobbling_circle") {
        require(M, {"sphere3"}, spec);
        const double rho = spec.number("rho"), amp = spec.number_or("amp", 0.1);
        return from_model(circle_model(D, segments), [=](double t, const Vector& u) {
            const double r = rho + amp * std::sin(2 * pi * t), psi = 2 * pi * u(0);
            return Point{{std::cos(r) * std::cos(2 * pi * t), std::cos(r) * std::sin(2 * pi * t),
                          std::sin(r) * std::cos(psi), std::sin(r) * std::sin(psi)}};
        });
    }
    if (spec.name == "equatorial_sweep") {
        require(M, {"sphere3"}, spec);
        // Circles about e_0 growing from a point to the antipode over
        // [0, 4/5], then the collapsed circle returns along a great arc.
        SubmanifoldFamily f = from_model(circle_model(D, segments), [=](double t, const Vector& u) {
            if (t <= 0.8) return circle_point(D, 0, 1, 2, pi * t / 0.8, 2 * pi * u(0));
            const double tau = (t - 0.8) / 0.2;
            return Point{{-std::cos(pi * tau), std::sin(pi * tau), 0.0, 0.0}};
        });
        f.step_multiple = 5;
        return f;
    }
    if (spec.name == "diagonal") {
        require(M, {"sphere2xsphere2"}, spec);
        return from_model(sphere_model(D, spec.integer_or("resolution", std::max(1, resolution / 2))),
                          [](double, const Vector& w) {
                              Point p(6);
                              p << w, w;
                              return p;
                          });
    }
    if (spec.name == "small_sphere") {
        require(M, {"sphere2xsphere2"}, spec);
        const double r = spec.number("r");
        return from_model(sphere_model(D, spec.integer_or("resolution", std::max(1, resolution / 8))),
                          [r](double, const Vector& w) {
                              Point p(6);
                              p << sphere_exp_north(r * w(0), r * w(1)), sphere_exp_north(r * w(1), r * w(2));
                              return p;
                          });
    }
    if (spec.name == "rotated" || spec.name == "reparametrized" || spec.name == "translated") {
        SubmanifoldFamily inner = make_family(ctx, parse_spec_string(spec.text("0")), resolution);
        auto base = inner.place;
        if (spec.name == "rotated") {
            const int i = index_arg(spec, "i", 0, D), j = index_arg(spec, "j", 1, D);
            check_plane(M, i, j, spec);
            const double turns = spec.integer_or("turns", 1);
            inner.place = [=](double t, const Vector& m) { return rotate(base(t, m), i, j, 2 * pi * turns * t); };
        } else if (spec.name == "reparametrized") {
            const double turns = spec.integer_or("turns", 1);
            const std::string model = inner.model;
            inner.place = [=](double t, const Vector& m) { return base(t, rotate_model(model, m, turns * t)); };
        } else {
            require(M, {"torus2"}, spec);
            const Vector shift{{static_cast<double>(spec.integer_or("a", 1)), static_cast<double>(spec.integer_or("b", 0))}};
            inner.place = [=](double t, const Vector& m) -> Point { return base(t, m) + t * shift; };
        }
        return inner;
    }
    throw ConfigError("unknown submanifold family '" + spec.str() + "'");
}

LoopOfSubmanifolds make_loop(const SubmanifoldFamily& family, int steps) {
    const int m = family.step_multiple;
    steps = std::max(m, (steps + m - 1) / m * m);
    LoopOfSubmanifolds loop;
    loop.type = family.model;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        loop.times.push_back(t);
        loop.frames.push_back(family.frame(t));
    }
    return loop;
}

EmbeddingLoop make_embedding_loop(const SubmanifoldFamily& family, int steps, double turns) {
    const int m = family.step_multiple;
    steps = std::max(m, (steps + m - 1) / m * m);
    EmbeddingLoop loop;
    loop.model = family.combinatorics;
    for (int i = 0; i <= steps; ++i) {
        const double t = static_cast<double>(i) / steps;
        loop.times.push_back(t);
        loop.images.push_back(family.reparametrized_frame(t, turns * t).vertex_matrix());
    }
    return loop;
}

SimplicialMesh make_cycle(const ScenarioContext& ctx, const SpecString& spec, int resolution) {
    const ManifoldPtr& M = ctx.manifold();
    const EmbeddedManifold& m = *M;
    if (spec.name == "fundamental") {
        const int r = spec.integer_or("resolution", 0);
        if (M->id() == "torus2") return torus_mesh(m, r ? r : resolution);
        if (is_sphere(M)) return sphere_mesh(m, r ? r : std::max(1, resolution / 8));
        const ManifoldPtr s2 = make_manifold("sphere2");
        const SimplicialMesh block = sphere_mesh(*s2, r ? r : std::max(1, resolution / 8));
        return product_mesh(
            block, block,
            [](const Point& a, const Point& b) {
                Point p(6);
                p << a, b;
                return p;
            },
            6);
    }
    if (spec.name == "latitude") {
        require(M, {"sphere2"}, spec);
        return latitude_mesh(m, spec.number("theta"), spec.integer_or("segments", resolution));
    }
    if (spec.name == "cap") {
        require(M, {"sphere2"}, spec);
        const int segments = spec.integer_or("segments", resolution);
        return cap_mesh(m, spec.number("theta"), std::max(2, segments / 4), segments);
    }
    if (spec.name == "x_circle" || spec.name == "y_circle") {
        require(M, {"torus2"}, spec);
        const double c = spec.number(spec.name == "x_circle" ? "y" : "x");
        const bool along_x = spec.name == "x_circle";
        return closed_curve_mesh(
            m, [=](double u) { return along_x ? Point{{u, c}} : Point{{c, u}}; }, spec.integer_or("segments", resolution));
    }
    if (spec.name == "round_sphere") {
        require(M, {"sphere3"}, spec);
        const double r = spec.number("r");
        const RoundSphere s2(2);
        const SimplicialMesh sm = sphere_mesh(s2, spec.integer_or("resolution", std::max(1, resolution / 2)));
        Matrix V(4, sm.num_vertices());
        for (int v = 0; v < sm.num_vertices(); ++v) {
            V(0, v) = std::cos(r);
            V.block(1, v, 3, 1) = std::sin(r) * sm.vertex(v);
        }
        // Boundary orientation of the ball about e_0.
        return blank_copy(sm, 4).with_vertices(V).reversed();
    }
    return make_family(ctx, spec, resolution).frame(0.0);
}

std::vector<SimplicialMesh> make_chains(const ScenarioContext& ctx, const SpecString& spec, int resolution) {
    const ManifoldPtr& M = ctx.manifold();
    const EmbeddedManifold& m = *M;
    const int count = spec.integer_or("count", 10);
    std::mt19937_64 rng(ctx.seed() ^ 0x9e3779b97f4a7c15ULL);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<SimplicialMesh> out;
    if (spec.name == "caps") {
        require(M, {"sphere2"}, spec);
        for (int c = 0; c < count; ++c) {
            const double theta = 0.3 + 2.4 * c / std::max(1, count - 1);
            const Matrix Q = random_rotation(3, rng);
            const SimplicialMesh cap = cap_mesh(m, theta, std::max(2, resolution / 8), resolution);
            out.push_back(cap.with_vertices(Q * cap.vertex_matrix()));
        }
        return out;
    }
    if (spec.name == "cells") {
        require(M, {"torus2"}, spec);
        const int r = std::max(2, resolution / 4);
        for (int c = 0; c < count; ++c) {
            const double x0 = unit(rng), y0 = unit(rng), w = 0.1 + 0.6 * unit(rng), h = 0.1 + 0.6 * unit(rng);
            out.push_back(parameter_grid_mesh(
                m, [=](const Vector& ab) { return Point{{x0 + w * ab(0), y0 + h * ab(1)}}; }, {r, r}));
        }
        return out;
    }
    if (spec.name == "boxes") {
        require(M, {"sphere3"}, spec);
        const int r = std::max(2, resolution / 8);
        for (int c = 0; c < count; ++c) {
            const Point center = m.sample(rng);
            const Matrix E = m.tangent_frame(center);
            const double size = 0.3 + 0.6 * unit(rng);
            out.push_back(parameter_grid_mesh(
                m,
                [=, &m](const Vector& abc) -> Point {
                    return m.project(center + size * E * (abc - Vector::Constant(3, 0.5)));
                },
                {r, r, r}));
        }
        return out;
    }
    if (spec.name == "product_caps") {
        require(M, {"sphere2xsphere2"}, spec);
        const ManifoldPtr s2 = make_manifold("sphere2");
        const int segments = std::max(4, resolution / 2);
        for (int c = 0; c < count; ++c) {
            const double t1 = 0.3 + 0.7 * unit(rng), t2 = 0.3 + 0.7 * unit(rng);
            const Matrix Q1 = random_rotation(3, rng), Q2 = random_rotation(3, rng);
            SimplicialMesh a = cap_mesh(*s2, t1, std::max(1, segments / 4), segments);
            SimplicialMesh b = cap_mesh(*s2, t2, std::max(1, segments / 4), segments);
            a = a.with_vertices(Q1 * a.vertex_matrix());
            b = b.with_vertices(Q2 * b.vertex_matrix());
            out.push_back(product_mesh(
                a, b,
                [](const Point& x, const Point& y) {
                    Point p(6);
                    p << x, y;
                    return p;
                },
                6));
        }
        return out;
    }
    throw ConfigError("unknown chain family '" + spec.str() + "'");
}

FamilyPatch PatchFamily::sample(int intervals) const {
    return make_patch(
        [this](double s, double t) {
            Matrix V(combinatorics.ambient_dim(), combinatorics.num_vertices());
            for (int v = 0; v < V.cols(); ++v) V.col(v) = place(s, t, params.col(v));
            return combinatorics.with_vertices(V);
        },
        intervals, intervals, periodic_s, periodic_t, "circle");
}

PatchFamily make_patch_family(const ScenarioContext& ctx, const SpecString& spec) {
    const ManifoldPtr& M = ctx.manifold();
    require(M, {"sphere3"}, spec);
    Model model = circle_model(4, spec.integer_or("segments", 64));
    PatchFamily f;
    f.combinatorics = std::move(model.combinatorics);
    f.params = std::move(model.params);
    if (spec.name == "hopf") {
        // Hopf circles over a meridian-swept 2-sphere of the base.
        f.place = [](double s, double t, const Vector& u) {
            const double th = pi * s, ph = 2 * pi * t, ps = 2 * pi * u(0);
            return Point{{std::cos(th / 2) * std::cos(ps), std::cos(th / 2) * std::sin(ps),
                          std::sin(th / 2) * std::cos(ps + ph), std::sin(th / 2) * std::sin(ps + ph)}};
        };
        f.periodic_t = true;
        return f;
    }
    if (spec.name == "cap_family") {
        const double beta = spec.number_or("beta", 0.6), rho0 = spec.number_or("rho0", 0.3),
                     rho1 = spec.number_or("rho1", 0.8);
        f.place = [=](double s, double t, const Vector& u) {
            const double rho = rho0 + (rho1 - rho0) * s, a = beta * t, ps = 2 * pi * u(0);
            return Point{{std::cos(rho) * std::cos(a), std::sin(rho) * std::cos(ps), std::sin(rho) * std::sin(ps),
                          std::cos(rho) * std::sin(a)}};
        };
        return f;
    }
    if (spec.name == "null_torus") {
        const double rho = spec.number_or("rho", 0.5);
        f.place = [=](double s, double t, const Vector& u) {
            return rotate(rotate(circle_point(4, 0, 1, 2, rho, 2 * pi * u(0)), 2, 3, 2 * pi * t), 0, 1, 2 * pi * s);
        };
        f.periodic_s = true;
        f.periodic_t = true;
        return f;
    }
    throw ConfigError("unknown patch '" + spec.str() + "'");
}

CubeGenerator make_cube(const ScenarioContext& ctx, const SpecString& spec) {
    require(ctx.manifold(), {"sphere3"}, spec);
    if (spec.name != "circle_cube") throw ConfigError("unknown cube family '" + spec.str() + "'");
    const double rho = spec.number_or("rho", 0.5), spread = spec.number_or("spread", 0.2);
    auto model = std::make_shared<Model>(circle_model(4, spec.integer_or("segments", 32)));
    return [=](const Vector& abc) {
        Matrix V(4, model->combinatorics.num_vertices());
        for (int v = 0; v < V.cols(); ++v) {
            const Point p = circle_point(4, 0, 1, 2, rho + spread * (abc(0) - 0.5), 2 * pi * model->params(0, v));
            V.col(v) = rotate(rotate(p, 0, 2, 0.3 * abc(2)), 0, 3, 0.3 * abc(1));
        }
        return model->combinatorics.with_vertices(V);
    };
}

}  // namespace transgress
