#include "transgress/characters.hpp"
#include "transgress/errors.hpp"
#include "transgress/mesh_families.hpp"

#include <cmath>

namespace transgress {

DifferentialCharacter::DifferentialCharacter(int degree, DifferentialForm curvature)
    : degree_(degree), curvature_(std::move(curvature)) {
    if (curvature_.degree() != degree_ + 1) throw DegreeMismatch("curvature of a degree-k character has degree k+1");
}

GlobalPrimitive::GlobalPrimitive(DifferentialForm alpha)
    : DifferentialCharacter(alpha.degree(), exterior_derivative(alpha)), alpha_(std::move(alpha)) {}

CircleValue GlobalPrimitive::evaluate_cycle(const SimplicialMesh& cycle) const {
    return CircleValue(integrate_form(alpha_, cycle));
}

FillingOracle::FillingOracle(int degree, DifferentialForm curvature, Filler fill)
    : DifferentialCharacter(degree, std::move(curvature)), fill_(std::move(fill)) {}

CircleValue FillingOracle::evaluate_cycle(const SimplicialMesh& cycle) const {
    if (cycle.empty()) return CircleValue(0.0);
    return CircleValue(integrate_form(curvature(), fill_(cycle)));
}

LatticeCochain::LatticeCochain(ManifoldPtr torus, int m, double scale)
    : DifferentialCharacter(1, scaled(torus_dxdy(torus), scale)), m_(m), scale_(scale) {
    if (m_ < 1) throw ConfigError("lattice size must be positive");
}

double LatticeCochain::edge_value(long long i, long long j, int axis) const {
    const long long m = m_;
    const long long im = ((i % m) + m) % m;
    const long long jm = ((j % m) + m) % m;
    if (axis == 1) return scale_ * static_cast<double>(im) / static_cast<double>(m * m);
    return im == m - 1 ? -scale_ * static_cast<double>(jm) / static_cast<double>(m) : 0.0;
}

double LatticeCochain::path_value(long long i0, long long j0, long long i1, long long j1) const {
    double acc = 0.0;
    for (long long i = i0; i < i1; ++i) acc += edge_value(i, j0, 0);
    for (long long i = i1; i < i0; ++i) acc -= edge_value(i, j0, 0);
    for (long long j = j0; j < j1; ++j) acc += edge_value(i1, j, 1);
    for (long long j = j1; j < j0; ++j) acc -= edge_value(i1, j, 1);
    return acc;
}

CircleValue LatticeCochain::evaluate_cycle(const SimplicialMesh& cycle) const {
    const EmbeddedManifold& T = *manifold();
    const double m = m_;
    double acc = 0.0;
    for (int s = 0; s < cycle.num_simplices(); ++s) {
        const auto idx = cycle.simplex(s);
        Point a = cycle.vertex(idx[0]);
        Point b = T.lift_near(cycle.vertex(idx[1]), a);
        if (cycle.sign(s) < 0) std::swap(a, b);
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a).norm() * m * (1.0 + 1e-12))));
        for (int p = 0; p < pieces; ++p) {
            const Point q0 = a + (b - a) * (static_cast<double>(p) / pieces);
            const Point q1 = a + (b - a) * (static_cast<double>(p + 1) / pieces);
            const long long i0 = std::llround(q0(0) * m), j0 = std::llround(q0(1) * m);
            const long long i1 = std::llround(q1(0) * m), j1 = std::llround(q1(1) * m);
            acc += path_value(i0, j0, i1, j1);
            // Region bounded by the piece, the connector to the lattice and
            // the reversed lattice path (shoelace area).
            const double poly[5][2] = {{q0(0), q0(1)},
                                       {q1(0), q1(1)},
                                       {i1 / m, j1 / m},
                                       {i1 / m, j0 / m},
                                       {i0 / m, j0 / m}};
            double area = 0.0;
            for (int v = 0; v < 5; ++v) {
                const int w = (v + 1) % 5;
                area += (poly[v][0] - q0(0)) * (poly[w][1] - q0(1)) - (poly[w][0] - q0(0)) * (poly[v][1] - q0(1));
            }
            acc += scale_ * 0.5 * area;
        }
    }
    return CircleValue(acc);
}

PulledBack::PulledBack(SmoothMap phi, CharacterPtr h, int refinement)
    : DifferentialCharacter(h->degree(), pullback(phi, h->curvature())), phi_(std::move(phi)), h_(std::move(h)),
      refinement_(refinement) {}

CircleValue PulledBack::evaluate_cycle(const SimplicialMesh& cycle) const {
    if (cycle.empty()) return CircleValue(0.0);
    const SimplicialMesh fine = refine(*phi_.source(), cycle, refinement_);
    return h_->evaluate_cycle(map_mesh(phi_, fine));
}

CircleValue evaluate(const DifferentialCharacter& h, const SimplicialMesh& cycle) {
    if (cycle.empty()) return CircleValue(0.0);
    if (cycle.dim() != h.degree())
        throw DegreeMismatch("character of degree " + std::to_string(h.degree()) + " on a " +
                             std::to_string(cycle.dim()) + "-cycle");
    if (boundary_residual(*h.manifold(), cycle) != 0) throw NotClosed("evaluation needs a closed cycle");
    return h.evaluate_cycle(cycle);
}

CircleValue evaluate(const DifferentialCharacter& h, const SmoothChain& cycle) { return evaluate(h, cycle.flatten()); }

double curvature_defect(const DifferentialCharacter& h, const SimplicialMesh& z) {
    if (z.empty()) return 0.0;
    if (z.dim() != h.degree() + 1) throw DegreeMismatch("curvature test chains have dimension k+1");
    const SimplicialMesh boundary = mesh_boundary(weld(*h.manifold(), z));
    const CircleValue lhs = boundary.empty() ? CircleValue(0.0) : h.evaluate_cycle(boundary);
    return circle_distance(lhs.value(), integrate_form(h.curvature(), z));
}

CharacterPtr pullback_character(const SmoothMap& phi, CharacterPtr h, int refinement) {
    return std::make_shared<PulledBack>(phi, std::move(h), refinement);
}

CharacterPtr make_h_mu(const VolumeForm& mu, ConeFillOptions opts) {
    const ManifoldPtr M = mu.manifold();
    if (!M->codim_one_homology_trivial())
        throw FillingUnavailable("h_mu needs vanishing (n-1)-homology; " + M->id() + " has none");
    return std::make_shared<FillingOracle>(M->intrinsic_dim() - 1, mu,
                                           [M, opts](const SimplicialMesh& c) { return cone_fill(*M, c, opts); });
}

}  // namespace transgress
