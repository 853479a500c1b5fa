#pragma once

#include "transgress/manifold.hpp"

#include <iosfwd>
#include <span>
#include <vector>

namespace transgress {

/// Oriented simplicial k-mesh with vertices in R^D.
///
/// Simplices are ordered (k+1)-tuples of vertex indices plus an orientation
/// sign. The geometric simplex is the image of the affine ambient simplex
/// under the manifold's projection, so shared faces agree exactly.
class SimplicialMesh {
public:
    SimplicialMesh() = default;
    SimplicialMesh(int dim, int ambient_dim);

    int dim() const { return dim_; }
    int ambient_dim() const { return ambient_dim_; }
    int num_vertices() const { return static_cast<int>(coords_.size() / std::max(ambient_dim_, 1)); }
    int num_simplices() const { return static_cast<int>(signs_.size()); }
    bool empty() const { return signs_.empty(); }

    int add_vertex(const Point& x);
    void add_simplex(std::span<const int> vertices, int sign = 1);
    void add_simplex(std::initializer_list<int> vertices, int sign = 1);

    Eigen::Map<const Vector> vertex(int i) const;
    void set_vertex(int i, const Point& x);
    std::span<const int> simplex(int s) const;
    int sign(int s) const { return signs_[static_cast<std::size_t>(s)]; }
    void set_sign(int s, int sign) { signs_[static_cast<std::size_t>(s)] = sign; }

    int quadrature_degree() const { return quadrature_degree_; }
    void set_quadrature_degree(int degree) { quadrature_degree_ = degree; }

    /// Same combinatorics, every orientation sign negated.
    SimplicialMesh reversed() const;
    /// Same combinatorics with vertex positions replaced.
    SimplicialMesh with_vertices(const Matrix& vertices) const;
    /// Vertex positions as a D x nv matrix.
    Matrix vertex_matrix() const;

    /// Appends another mesh of the same dimension (vertices are not shared).
    void append(const SimplicialMesh& other, int coefficient = 1);

private:
    int dim_ = 0;
    int ambient_dim_ = 0;
    int quadrature_degree_ = 5;
    std::vector<double> coords_;
    std::vector<int> indices_;
    std::vector<int> signs_;
};

/// Alternating-sign face mesh, with cancellation of opposite faces and
/// removal of degenerate faces (repeated vertex index). Requires dim >= 1.
SimplicialMesh mesh_boundary(const SimplicialMesh& mesh);

/// Merges vertices that coincide on M (manifold-aware, within ~tol) and
/// drops simplices that become degenerate. Vertex order of first
/// occurrence is kept.
SimplicialMesh weld(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol = 1e-9);

/// Weld, then merge simplices on the same vertex set (opposite ones
/// cancel) and drop unused vertices.
SimplicialMesh reduce_chain(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol = 1e-9);

/// Number of boundary faces that survive geometric welding; 0 for a cycle
/// (every 0-chain is a cycle).
int boundary_residual(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol = 1e-9);

/// Largest |constraint| over the vertices.
double max_constraint_violation(const EmbeddedManifold& manifold, const SimplicialMesh& mesh);

/// True if the mesh is a single connected component through shared faces.
bool is_connected(const SimplicialMesh& mesh);

/// Line-based text format: `DIM k AMBIENT D`, `v x1 ... xD`, `s +-1 i0 ... ik`.
void write_mesh(std::ostream& os, const SimplicialMesh& mesh);
SimplicialMesh read_mesh(std::istream& is);

}  // namespace transgress
