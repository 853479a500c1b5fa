#include "transgress/errors.hpp"
#include "transgress/quadrature.hpp"

#include <cmath>

namespace transgress {

namespace {

double gram_root(const Matrix& frame) {
    if (frame.cols() == 0) return 1.0;
    const double det = (frame.transpose() * frame).determinant();
    return det > 0 ? std::sqrt(det) : 0.0;
}

double edge_scale(const SimplexGeometry& g) {
    double scale = 0.0;
    const Matrix& v = g.lifted_vertices();
    for (int i = 0; i < v.cols(); ++i)
        for (int j = i + 1; j < v.cols(); ++j) scale = std::max(scale, (v.col(i) - v.col(j)).norm());
    return scale;
}

}  // namespace

double sum_over_simplices(const SimplicialMesh& mesh, const std::function<double(int)>& per_simplex) {
    std::vector<double> values(static_cast<std::size_t>(mesh.num_simplices()));
    parallel_for(values.size(), [&](std::size_t s) {
        values[s] = mesh.sign(static_cast<int>(s)) * per_simplex(static_cast<int>(s));
    });
    return pairwise_sum(values);
}

double simplex_volume(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int simplex) {
    const SimplexGeometry g(manifold, mesh, simplex);
    if (mesh.dim() == 0) return 1.0;
    const QuadratureRule& rule = simplex_rule(mesh.dim(), mesh.quadrature_degree());
    double vol = 0.0;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) vol += rule.weights[q] * gram_root(g.frame(rule.nodes[q]));
    return vol;
}

double integrate_scalar(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, const ScalarFunction& f) {
    const int k = mesh.dim();
    const QuadratureRule& rule = simplex_rule(k, mesh.quadrature_degree());
    std::vector<double> values(static_cast<std::size_t>(mesh.num_simplices()));
    parallel_for(values.size(), [&](std::size_t s) {
        const SimplexGeometry g(manifold, mesh, static_cast<int>(s));
        if (k == 0) {
            values[s] = f(g.point(rule.nodes[0]));
            return;
        }
        const double scale = edge_scale(g);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double jac = gram_root(g.frame(rule.nodes[q]));
            if (!(jac > 1e-12 * std::pow(scale, k)))
                throw DegenerateSimplex("simplex " + std::to_string(s) + " has zero " + std::to_string(k) + "-volume");
            acc += rule.weights[q] * f(g.point(rule.nodes[q])) * jac;
        }
        values[s] = acc;
    });
    return pairwise_sum(values);
}

}  // namespace transgress
