#include "transgress/errors.hpp"
#include "transgress/fields.hpp"
#include "transgress/quadrature.hpp"

#include <cmath>
#include <random>

namespace transgress {

FlowMap::FlowMap(TimeDependentField field, int steps_per_unit) : field_(std::move(field)), steps_(steps_per_unit) {
    if (steps_ < 1) throw ConfigError("flow needs at least one step per unit time");
}

Point FlowMap::integrate(double t0, double t1, const Point& x) const {
    const double span = t1 - t0;
    if (span == 0.0) return x;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) * steps_ - 1e-9)));
    const double dt = span / n;
    const EmbeddedManifold& M = *field_.manifold();
    Point y = x;
    for (int i = 0; i < n; ++i) {
        const double t = t0 + i * dt;
        const Vector k1 = field_(t, y);
        const Vector k2 = field_(t + 0.5 * dt, M.project(y + 0.5 * dt * k1));
        const Vector k3 = field_(t + 0.5 * dt, M.project(y + 0.5 * dt * k2));
        const Vector k4 = field_(t + dt, M.project(y + dt * k3));
        y = M.project(y + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
    }
    return y;
}

Point FlowMap::operator()(double t, const Point& x) const { return integrate(0.0, t, x); }

Point FlowMap::inverse(double t, const Point& x) const { return integrate(t, 0.0, x); }

SmoothMap FlowMap::at(double t) const {
    const FlowMap self = *this;
    return SmoothMap(manifold(), manifold(), [self, t](const Point& x) { return self(t, x); });
}

Vector FlowMap::log_derivative(double t, const Point& x) const {
    if (field_.autonomous()) return (*field_.autonomous_field())(x);
    const double h = 1.0 / steps_;
    const Point ahead = inverse(t, integrate(0.0, t + h, x));
    const Point behind = inverse(t, integrate(0.0, t - h, x));
    const EmbeddedManifold& M = *manifold();
    return (M.lift_near(ahead, x) - M.lift_near(behind, x)) / (2.0 * h);
}

FlowMap flow(const TimeDependentField& field, int steps_per_unit) { return FlowMap(field, steps_per_unit); }

SimplicialMesh advect_mesh(const FlowMap& phi, double t, const SimplicialMesh& mesh) {
    Matrix V = mesh.vertex_matrix();
    parallel_for(static_cast<std::size_t>(V.cols()), [&](std::size_t i) {
        V.col(static_cast<Eigen::Index>(i)) = phi(t, V.col(static_cast<Eigen::Index>(i)));
    });
    return mesh.with_vertices(V);
}

SimplicialMesh map_mesh(const SmoothMap& phi, const SimplicialMesh& mesh) {
    Matrix V(phi.target()->ambient_dim(), mesh.num_vertices());
    parallel_for(static_cast<std::size_t>(V.cols()), [&](std::size_t i) {
        V.col(static_cast<Eigen::Index>(i)) = phi(mesh.vertex(static_cast<int>(i)));
    });
    SimplicialMesh out(mesh.dim(), phi.target()->ambient_dim());
    out.set_quadrature_degree(mesh.quadrature_degree());
    for (int i = 0; i < mesh.num_vertices(); ++i) out.add_vertex(V.col(i));
    for (int s = 0; s < mesh.num_simplices(); ++s) out.add_simplex(mesh.simplex(s), mesh.sign(s));
    return out;
}

double preservation_defect(const FlowMap& phi, const DifferentialForm& omega, std::uint64_t seed) {
    const ManifoldPtr& M = phi.manifold();
    const DifferentialForm pulled = pullback(phi.at(1.0), omega);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    double worst = 0.0;
    for (int p = 0; p < 16; ++p) {
        const Point x = M->sample(rng);
        Matrix v(M->ambient_dim(), omega.degree());
        for (int i = 0; i < v.size(); ++i) v.data()[i] = g(rng);
        v = M->tangent_projector(x) * v;
        worst = std::max(worst, std::abs(pulled(x, v) - omega(x, v)));
    }
    return worst;
}

}  // namespace transgress
