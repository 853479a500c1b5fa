// Brute-force reference values by quadrature over analytic
// parametrizations. Nothing here goes through meshes, simplices or the
// transgression code; fields and forms are the only shared inputs.

#include "transgress/catalog.hpp"
#include "transgress/errors.hpp"
#include "transgress/scenario.hpp"

#include <json.hpp>

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

namespace transgress {

namespace {

constexpr double pi = std::numbers::pi;

using ParamN = std::function<Point(const Vector&)>;

struct Rule {
    std::vector<double> nodes, weights;
};

// Golub-Welsch on [a, b].
Rule gauss_legendre(int n, double a, double b) {
    Matrix J = Matrix::Zero(n, n);
    for (int k = 1; k < n; ++k) J(k, k - 1) = J(k - 1, k) = k / std::sqrt(4.0 * k * k - 1.0);
    Eigen::SelfAdjointEigenSolver<Matrix> es(J);
    Rule r;
    for (int k = 0; k < n; ++k) {
        const double x = es.eigenvalues()(k), w = 2.0 * es.eigenvectors()(0, k) * es.eigenvectors()(0, k);
        r.nodes.push_back(a + (b - a) * (x + 1) / 2);
        r.weights.push_back(w * (b - a) / 2);
    }
    return r;
}

Rule trapezoid(int n, double a, double b) {
    Rule r;
    for (int k = 0; k < n; ++k) {
        r.nodes.push_back(a + (b - a) * k / n);
        r.weights.push_back((b - a) / n);
    }
    return r;
}

// Fourth-order central difference of a parametrization along one axis.
Vector partial(const ParamN& F, const Vector& p, int axis) {
    const double h = 1e-3;
    auto at = [&](double d) {
        Vector q = p;
        q(axis) += d;
        return F(q);
    };
    return (8.0 * (at(h) - at(-h)) - (at(2 * h) - at(-2 * h))) / (12.0 * h);
}

// Integral of w(x, [Y_1 .. Y_m, d_1 F .. d_k F]) over the parameter box.
double integrate(const DifferentialForm& w, const std::vector<VectorField>& Ys, const ParamN& F,
                 const std::vector<Rule>& rules) {
    const int k = static_cast<int>(rules.size());
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    long double total = 0.0L;
    while (true) {
        Vector p(k);
        double weight = 1.0;
        for (int a = 0; a < k; ++a) {
            p(a) = rules[static_cast<std::size_t>(a)].nodes[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
            weight *= rules[static_cast<std::size_t>(a)].weights[static_cast<std::size_t>(idx[static_cast<std::size_t>(a)])];
        }
        const Point x = F(p);
        Matrix args(x.size(), static_cast<Eigen::Index>(Ys.size()) + k);
        for (std::size_t i = 0; i < Ys.size(); ++i) args.col(static_cast<Eigen::Index>(i)) = Ys[i](x);
        for (int a = 0; a < k; ++a) args.col(static_cast<Eigen::Index>(Ys.size()) + a) = partial(F, p, a);
        total += weight * w(x, args);
        int a = 0;
        while (a < k && ++idx[static_cast<std::size_t>(a)] == static_cast<int>(rules[static_cast<std::size_t>(a)].nodes.size()))
            idx[static_cast<std::size_t>(a++)] = 0;
        if (a == k) break;
    }
    return static_cast<double>(total);
}

Point circle_at(int D, int c, int a, int b, double rho, double psi) {
    Point p = Point::Zero(D);
    p(c) = std::cos(rho);
    p(a) = std::sin(rho) * std::cos(psi);
    p(b) = std::sin(rho) * std::sin(psi);
    return p;
}

Vector unit_sphere(double theta, double phi) {
    return Vector{{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}};
}

struct Parametrized {
    ParamN F;
    std::vector<Rule> rules;
};

// Submanifold N as an oriented parametrization matching the meshes built
// by the scenario catalog.
Parametrized submanifold(const SpecString& s, int D, int n) {
    if (s.name == "great_circle") {
        const int i = s.integer_or("i", 0), j = s.integer_or("j", 1);
        return {[=](const Vector& u) {
                    Point p = Point::Zero(D);
                    p(i) = std::cos(2 * pi * u(0));
                    p(j) = std::sin(2 * pi * u(0));
                    return p;
                },
                {trapezoid(n, 0, 1)}};
    }
    if (s.name == "small_circle") {
        const double rho = s.number("rho");
        const int c = s.integer_or("center", 0), a = s.integer_or("i", 1), b = s.integer_or("j", 2);
        return {[=](const Vector& u) { return circle_at(D, c, a, b, rho, 2 * pi * u(0)); }, {trapezoid(n, 0, 1)}};
    }
    if (s.name == "torus_knot") {
        const double p = s.integer_or("p", 2), q = s.integer_or("q", 3), a = s.number_or("a", pi / 4);
        return {[=](const Vector& u) {
                    const double psi = 2 * pi * u(0);
                    return Point{{std::cos(a) * std::cos(p * psi), std::cos(a) * std::sin(p * psi),
                                  std::sin(a) * std::cos(q * psi), std::sin(a) * std::sin(q * psi)}};
                },
                {trapezoid(n, 0, 1)}};
    }
    if (s.name == "diagonal") {
        return {[](const Vector& tp) {
                    const Vector w = unit_sphere(tp(0), tp(1));
                    Point x(6);
                    x << w, w;
                    return x;
                },
                {gauss_legendre(n, 0, pi), trapezoid(2 * n, 0, 2 * pi)}};
    }
    throw ConfigError("the oracle has no parametrization for '" + s.str() + "'");
}

std::vector<VectorField> fields_of(const ScenarioContext& ctx, const Params& p) {
    std::vector<VectorField> out;
    for (const std::string& name : p.texts("fields")) out.push_back(ctx.field(name));
    return out;
}

double oracle_value(const ScenarioContext& ctx, const CheckSpec& c, int n) {
    const int D = ctx.manifold()->ambient_dim();
    const VolumeForm& mu = ctx.volume();
    if (c.op == "tilde_value") {
        const Parametrized P = submanifold(parse_spec_string(c.params.text("submanifold")), D, n);
        return integrate(ctx.form(c.params.text_or("form", "volume")), fields_of(ctx, c.params), P.F, P.rules);
    }
    if (c.op == "lichnerowicz_value") {
        // psi(X, Y) integrates mu(Y, X, tangent).
        const Parametrized P = submanifold(parse_spec_string(c.params.text("submanifold")), D, n);
        const std::vector<VectorField> XY = fields_of(ctx, c.params);
        if (XY.size() != 2) throw ConfigError(c.name + ": 'fields' needs 2 entries");
        return integrate(mu, {XY[1], XY[0]}, P.F, P.rules);
    }
    if (c.op == "character_value") {
        const SpecString s = parse_spec_string(c.params.text("cycle"));
        if (s.name == "latitude") {
            // The latitude is the boundary of the cap {polar angle <= theta}.
            const double theta = s.number("theta");
            const double v = integrate(
                mu, {}, [](const Vector& tp) -> Point { return unit_sphere(tp(0), tp(1)); },
                {gauss_legendre(n, 0, theta), trapezoid(2 * n, 0, 2 * pi)});
            return v - std::floor(v);
        }
        if (s.name == "round_sphere") {
            // The cycle bounds the ball of radius r about e_0 with the
            // orientation opposite to the (rho, theta, phi) chart.
            const double r = s.number("r");
            const double v = -integrate(
                mu, {},
                [](const Vector& p) -> Point {
                    Point x(4);
                    x << std::cos(p(0)), std::sin(p(0)) * unit_sphere(p(1), p(2));
                    return x;
                },
                {gauss_legendre(n, 0, r), gauss_legendre(n, 0, pi), trapezoid(2 * n, 0, 2 * pi)});
            return v - std::floor(v);
        }
        throw ConfigError("the oracle has no filling for '" + s.str() + "'");
    }
    throw ConfigError("check '" + c.name + "': the oracle does not support op '" + c.op + "'");
}

}  // namespace

std::string run_oracle(const Scenario& scenario) {
    using nlohmann::ordered_json;
    const ScenarioContext ctx(scenario, scenario.seed);
    int finest = 0;
    for (int r : scenario.resolutions) finest = std::max(finest, r);
    ordered_json doc;
    doc["scenario"] = scenario.name;
    doc["method"] = "tensor Gauss-Legendre / periodic trapezoid over analytic parametrizations";
    const int nodes = std::clamp(2 * finest, 32, 64);
    doc["generated_with"] = {{"seed", scenario.seed}, {"nodes_per_axis", nodes}};
    ordered_json values = ordered_json::object();
    for (const CheckSpec& c : scenario.checks) {
        if (c.provenance != "oracle") continue;
        values[c.name] = oracle_value(ctx, c, nodes);
    }
    doc["values"] = std::move(values);
    return doc.dump(2) + "\n";
}

}  // namespace transgress
