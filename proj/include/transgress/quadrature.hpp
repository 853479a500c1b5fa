#pragma once

#include "transgress/mesh.hpp"

#include <functional>
#include <span>
#include <vector>

namespace transgress {

/// Quadrature on the reference k-simplex {lambda_i >= 0, sum lambda_i = 1}.
/// Nodes are barycentric (k+1 entries); weights sum to 1/k!.
struct QuadratureRule {
    int dim = 0;
    int degree = 0;
    std::vector<Vector> nodes;
    std::vector<double> weights;
};

/// Grundmann-Moeller rule of degree 2s+1 on the k-simplex. Even requested
/// degrees are rounded up. Rules are cached.
const QuadratureRule& simplex_rule(int dim, int degree = 5);

/// Pairwise (tree) summation in index order; bitwise reproducible.
double pairwise_sum(std::span<const double> values);

/// Runs fn(i) for i in [0,n) over TRANSGRESS_THREADS worker threads
/// (default 1). Callers write into per-index slots only.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

/// Geometry of one mesh simplex: vertices lifted next to vertex 0 and the
/// projected parametrization x(lambda) = project(sum lambda_i v_i).
class SimplexGeometry {
public:
    SimplexGeometry(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int simplex);

    int dim() const { return static_cast<int>(lifted_.cols()) - 1; }
    const Matrix& lifted_vertices() const { return lifted_; }
    /// Ambient (pre-projection) point for barycentric lambda.
    Point ambient(const Vector& lambda) const { return lifted_ * lambda; }
    Point point(const Vector& lambda) const;
    /// Tangent frame d x / d lambda_i (i = 1..k), D x k.
    Matrix frame(const Vector& lambda) const;
    /// Velocity of x(lambda) when vertex j moves with velocity vel.col(j).
    Vector push_vertex_velocities(const Vector& lambda, const Matrix& velocities) const;

private:
    const EmbeddedManifold& manifold_;
    Matrix lifted_;
    Matrix edges_;
};

using ScalarFunction = std::function<double(const Point&)>;

/// Sum over simplices of the quadrature of f times the Riemannian k-volume
/// element (Gram determinant). Throws DegenerateSimplex for zero-volume
/// simplices.
double integrate_scalar(const EmbeddedManifold& manifold, const SimplicialMesh& mesh,
                        const ScalarFunction& f);

/// Riemannian k-volume of one simplex (used for degeneracy checks).
double simplex_volume(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int simplex);

/// Deterministic reduction over simplices: sums sign * per_simplex(s).
double sum_over_simplices(const SimplicialMesh& mesh, const std::function<double(int)>& per_simplex);

}  // namespace transgress
