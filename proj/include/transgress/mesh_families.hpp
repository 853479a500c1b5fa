#pragma once

#include "transgress/mesh.hpp"

#include <functional>
#include <vector>

namespace transgress {

using CurveMap = std::function<Point(double)>;
using ParameterMap = std::function<Point(const Vector&)>;

/// Closed polygonal 1-cycle through gamma(i/m), i = 0..m-1.
SimplicialMesh closed_curve_mesh(const EmbeddedManifold& manifold, const CurveMap& gamma, int segments);

/// Open 1-chain through gamma(i/m), i = 0..m.
SimplicialMesh open_curve_mesh(const EmbeddedManifold& manifold, const CurveMap& gamma, int segments);

/// Image of the Kuhn triangulation of [0,1]^k (res[i] cells along axis i)
/// under F. Simplices are positively oriented in parameter space. Vertices
/// that coincide on M are welded, collapsed simplices dropped.
SimplicialMesh parameter_grid_mesh(const EmbeddedManifold& manifold, const ParameterMap& F,
                                   const std::vector<int>& resolution);

/// Boundary of the cross-polytope in R^(n+1), each facet subdivided into
/// r^n simplices, projected onto the sphere; positively oriented.
SimplicialMesh sphere_mesh(const EmbeddedManifold& sphere, int resolution);

/// Great circle in the (e_i, e_j) plane of a sphere, oriented e_i -> e_j.
SimplicialMesh great_circle_mesh(const EmbeddedManifold& sphere, int i, int j, int segments);

/// Latitude circle at polar angle theta on S^2, oriented as the boundary of
/// the northern cap.
SimplicialMesh latitude_mesh(const EmbeddedManifold& sphere2, double theta, int segments);

/// Northern cap {polar angle <= theta} of S^2 with latitude_mesh as boundary.
SimplicialMesh cap_mesh(const EmbeddedManifold& sphere2, double theta, int radial, int segments);

/// Full flat torus as an m x m Kuhn grid welded modulo 1.
SimplicialMesh torus_mesh(const EmbeddedManifold& torus, int m);

/// Product of a p-mesh in the first block and a q-mesh in the second block
/// (shuffle triangulation); vertex (a, b) is placed at combine(a, b).
SimplicialMesh product_mesh(const SimplicialMesh& first, const SimplicialMesh& second,
                            const std::function<Point(const Point&, const Point&)>& combine,
                            int ambient_dim);

/// Edgewise (Freudenthal) subdivision of every simplex into r^k pieces;
/// new vertices lie on the curved simplices.
SimplicialMesh refine(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int r);

/// Positive orientation of every top-dimensional simplex w.r.t. M.
SimplicialMesh orient_positively(const EmbeddedManifold& manifold, SimplicialMesh mesh);

/// One shuffle of the product of a p-simplex and a q-simplex: the path of
/// (i, j) vertex pairs and its sign.
struct Shuffle {
    std::vector<std::pair<int, int>> path;
    int sign = 1;
};

/// Eilenberg-Zilber shuffle triangulation of Delta^p x Delta^q.
const std::vector<Shuffle>& shuffles(int p, int q);

/// Kuhn simplices of the unit k-cube: vertex offsets (as bit masks) and sign.
struct KuhnSimplex {
    std::vector<unsigned> corners;
    int sign = 1;
};
const std::vector<KuhnSimplex>& kuhn_simplices(int k);

}  // namespace transgress
