#include "transgress/mesh_families.hpp"

#include "transgress/errors.hpp"
#include "transgress/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <unordered_map>

namespace transgress {

namespace {

int permutation_sign(const std::vector<int>& p) {
    int inversions = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (p[i] > p[j]) ++inversions;
    return inversions % 2 == 0 ? 1 : -1;
}

// Sub-simplices of the r-fold edgewise subdivision of the k-simplex, as
// integer barycentric coordinates (entries sum to r).
struct SubSimplex {
    std::vector<std::vector<int>> corners;
    int sign = 1;
};

std::vector<SubSimplex> build_subdivision(int k, int r) {
    std::vector<SubSimplex> out;
    if (k == 0) {
        out.push_back({{{r}}, 1});
        return out;
    }
    const auto& kuhn = kuhn_simplices(k);
    std::vector<int> base(static_cast<std::size_t>(k), 0);
    // Enumerate cube base corners in [0, r)^k.
    while (true) {
        for (const KuhnSimplex& ks : kuhn) {
            SubSimplex sub;
            sub.sign = ks.sign;
            bool inside = true;
            for (unsigned mask : ks.corners) {
                std::vector<int> y(static_cast<std::size_t>(k));
                for (int j = 0; j < k; ++j) y[static_cast<std::size_t>(j)] = base[static_cast<std::size_t>(j)] + ((mask >> j) & 1u);
                for (int j = 0; j + 1 < k && inside; ++j)
                    if (y[static_cast<std::size_t>(j)] < y[static_cast<std::size_t>(j + 1)]) inside = false;
                if (!inside) break;
                std::vector<int> lambda(static_cast<std::size_t>(k + 1));
                lambda[0] = r - y[0];
                for (int j = 1; j < k; ++j) lambda[static_cast<std::size_t>(j)] = y[static_cast<std::size_t>(j - 1)] - y[static_cast<std::size_t>(j)];
                lambda[static_cast<std::size_t>(k)] = y[static_cast<std::size_t>(k - 1)];
                sub.corners.push_back(std::move(lambda));
            }
            if (inside) out.push_back(std::move(sub));
        }
        int axis = 0;
        while (axis < k && ++base[static_cast<std::size_t>(axis)] == r) base[static_cast<std::size_t>(axis++)] = 0;
        if (axis == k) break;
    }
    return out;
}

const std::vector<SubSimplex>& subdivision(int k, int r) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<SubSimplex>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({k, r});
    if (it == cache.end()) it = cache.emplace(std::make_pair(k, r), build_subdivision(k, r)).first;
    return it->second;
}

Point circle_point(int dim, int i, int j, double angle) {
    Point x = Point::Zero(dim);
    x(i) = std::cos(angle);
    x(j) = std::sin(angle);
    return x;
}

}  // namespace

const std::vector<KuhnSimplex>& kuhn_simplices(int k) {
    static std::mutex mutex;
    static std::map<int, std::vector<KuhnSimplex>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<KuhnSimplex> out;
    std::vector<int> perm(static_cast<std::size_t>(k));
    std::iota(perm.begin(), perm.end(), 0);
    do {
        KuhnSimplex ks;
        ks.sign = permutation_sign(perm);
        unsigned mask = 0;
        ks.corners.push_back(mask);
        for (int axis : perm) {
            mask |= 1u << axis;
            ks.corners.push_back(mask);
        }
        out.push_back(std::move(ks));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return cache.emplace(k, std::move(out)).first->second;
}

const std::vector<Shuffle>& shuffles(int p, int q) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, std::vector<Shuffle>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({p, q});
    if (it != cache.end()) return it->second;
    std::vector<Shuffle> out;
    // Step sequences: 0 = step in the first factor, 1 = second factor.
    std::vector<int> steps(static_cast<std::size_t>(p), 0);
    steps.resize(static_cast<std::size_t>(p + q), 1);
    do {
        Shuffle sh;
        int i = 0, j = 0, seen_b = 0, inversions = 0;
        sh.path.emplace_back(0, 0);
        for (int s : steps) {
            if (s == 0) {
                ++i;
                inversions += seen_b;
            } else {
                ++j;
                ++seen_b;
            }
            sh.path.emplace_back(i, j);
        }
        sh.sign = inversions % 2 == 0 ? 1 : -1;
        out.push_back(std::move(sh));
    } while (std::next_permutation(steps.begin(), steps.end()));
    return cache.emplace(std::make_pair(p, q), std::move(out)).first->second;
}

SimplicialMesh closed_curve_mesh(const EmbeddedManifold& manifold, const CurveMap& gamma, int segments) {
    if (segments < 2) throw MeshFormatError("a closed curve needs at least 2 segments");
    SimplicialMesh mesh(1, manifold.ambient_dim());
    for (int i = 0; i < segments; ++i) mesh.add_vertex(manifold.project(gamma(static_cast<double>(i) / segments)));
    for (int i = 0; i < segments; ++i) mesh.add_simplex({i, (i + 1) % segments});
    return mesh;
}

SimplicialMesh open_curve_mesh(const EmbeddedManifold& manifold, const CurveMap& gamma, int segments) {
    if (segments < 1) throw MeshFormatError("an open curve needs at least 1 segment");
    SimplicialMesh mesh(1, manifold.ambient_dim());
    for (int i = 0; i <= segments; ++i) mesh.add_vertex(manifold.project(gamma(static_cast<double>(i) / segments)));
    for (int i = 0; i < segments; ++i) mesh.add_simplex({i, i + 1});
    return mesh;
}

SimplicialMesh parameter_grid_mesh(const EmbeddedManifold& manifold, const ParameterMap& F,
                                   const std::vector<int>& resolution) {
    const int k = static_cast<int>(resolution.size());
    if (k == 0) throw MeshFormatError("parameter grid needs at least one axis");
    for (int r : resolution)
        if (r < 1) throw MeshFormatError("grid resolution must be positive");
    std::vector<int> stride(static_cast<std::size_t>(k));
    int total = 1;
    for (int a = 0; a < k; ++a) {
        stride[static_cast<std::size_t>(a)] = total;
        total *= resolution[static_cast<std::size_t>(a)] + 1;
    }
    SimplicialMesh mesh(k, manifold.ambient_dim());
    Vector u(k);
    for (int id = 0; id < total; ++id) {
        for (int a = 0; a < k; ++a)
            u(a) = static_cast<double>((id / stride[static_cast<std::size_t>(a)]) % (resolution[static_cast<std::size_t>(a)] + 1)) /
                   resolution[static_cast<std::size_t>(a)];
        mesh.add_vertex(manifold.project(F(u)));
    }
    std::vector<int> cell(static_cast<std::size_t>(k), 0);
    std::vector<int> simplex(static_cast<std::size_t>(k + 1));
    while (true) {
        int base = 0;
        for (int a = 0; a < k; ++a) base += cell[static_cast<std::size_t>(a)] * stride[static_cast<std::size_t>(a)];
        for (const KuhnSimplex& ks : kuhn_simplices(k)) {
            for (int c = 0; c <= k; ++c) {
                int id = base;
                for (int a = 0; a < k; ++a)
                    if ((ks.corners[static_cast<std::size_t>(c)] >> a) & 1u) id += stride[static_cast<std::size_t>(a)];
                simplex[static_cast<std::size_t>(c)] = id;
            }
            mesh.add_simplex(simplex, ks.sign);
        }
        int axis = 0;
        while (axis < k && ++cell[static_cast<std::size_t>(axis)] == resolution[static_cast<std::size_t>(axis)])
            cell[static_cast<std::size_t>(axis++)] = 0;
        if (axis == k) break;
    }
    return weld(manifold, mesh);
}

SimplicialMesh sphere_mesh(const EmbeddedManifold& sphere, int resolution) {
    const int D = sphere.ambient_dim();
    const int n = D - 1;
    if (resolution < 1) throw MeshFormatError("sphere resolution must be positive");
    SimplicialMesh raw(n, D);
    const auto& subs = subdivision(n, resolution);
    std::vector<int> simplex(static_cast<std::size_t>(n + 1));
    for (unsigned signs = 0; signs < (1u << D); ++signs) {
        for (const SubSimplex& sub : subs) {
            for (int c = 0; c <= n; ++c) {
                Point x = Point::Zero(D);
                for (int i = 0; i < D; ++i) {
                    const double lam = static_cast<double>(sub.corners[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]) / resolution;
                    x(i) = ((signs >> i) & 1u) ? -lam : lam;
                }
                simplex[static_cast<std::size_t>(c)] = raw.add_vertex(sphere.project(x));
            }
            raw.add_simplex(simplex, 1);
        }
    }
    return orient_positively(sphere, weld(sphere, raw));
}

SimplicialMesh great_circle_mesh(const EmbeddedManifold& sphere, int i, int j, int segments) {
    const int D = sphere.ambient_dim();
    return closed_curve_mesh(
        sphere, [=](double u) { return circle_point(D, i, j, 2.0 * std::numbers::pi * u); }, segments);
}

SimplicialMesh latitude_mesh(const EmbeddedManifold& sphere2, double theta, int segments) {
    return closed_curve_mesh(
        sphere2,
        [=](double u) {
            const double phi = 2.0 * std::numbers::pi * u;
            Point x(3);
            x << std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta);
            return x;
        },
        segments);
}

SimplicialMesh cap_mesh(const EmbeddedManifold& sphere2, double theta, int radial, int segments) {
    SimplicialMesh cap = parameter_grid_mesh(
        sphere2,
        [=](const Vector& u) {
            const double r = u(0) * theta;
            const double phi = 2.0 * std::numbers::pi * u(1);
            Point x(3);
            x << std::sin(r) * std::cos(phi), std::sin(r) * std::sin(phi), std::cos(r);
            return x;
        },
        {radial, segments});
    return orient_positively(sphere2, cap);
}

SimplicialMesh torus_mesh(const EmbeddedManifold& torus, int m) {
    return parameter_grid_mesh(torus, [](const Vector& u) { return Point(u); }, {m, m});
}

SimplicialMesh product_mesh(const SimplicialMesh& first, const SimplicialMesh& second,
                            const std::function<Point(const Point&, const Point&)>& combine, int ambient_dim) {
    const int p = first.dim();
    const int q = second.dim();
    SimplicialMesh out(p + q, ambient_dim);
    out.set_quadrature_degree(std::max(first.quadrature_degree(), second.quadrature_degree()));
    std::unordered_map<long long, int> index_of;
    const long long nb = second.num_vertices();
    auto vertex_id = [&](int a, int b) {
        const long long key = a * nb + b;
        auto it = index_of.find(key);
        if (it != index_of.end()) return it->second;
        const int id = out.add_vertex(combine(first.vertex(a), second.vertex(b)));
        index_of.emplace(key, id);
        return id;
    };
    const auto& shs = shuffles(p, q);
    std::vector<int> simplex(static_cast<std::size_t>(p + q + 1));
    for (int sa = 0; sa < first.num_simplices(); ++sa) {
        const auto A = first.simplex(sa);
        for (int sb = 0; sb < second.num_simplices(); ++sb) {
            const auto B = second.simplex(sb);
            for (const Shuffle& sh : shs) {
                for (std::size_t c = 0; c < sh.path.size(); ++c)
                    simplex[c] = vertex_id(A[static_cast<std::size_t>(sh.path[c].first)], B[static_cast<std::size_t>(sh.path[c].second)]);
                out.add_simplex(simplex, first.sign(sa) * second.sign(sb) * sh.sign);
            }
        }
    }
    return out;
}

SimplicialMesh refine(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int r) {
    if (r < 1) throw MeshFormatError("refinement factor must be positive");
    if (r == 1 || mesh.dim() == 0) return mesh;
    const int k = mesh.dim();
    const auto& subs = subdivision(k, r);
    SimplicialMesh raw(k, mesh.ambient_dim());
    raw.set_quadrature_degree(mesh.quadrature_degree());
    std::vector<int> simplex(static_cast<std::size_t>(k + 1));
    Vector lambda(k + 1);
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const SimplexGeometry g(manifold, mesh, s);
        for (const SubSimplex& sub : subs) {
            for (int c = 0; c <= k; ++c) {
                for (int i = 0; i <= k; ++i)
                    lambda(i) = static_cast<double>(sub.corners[static_cast<std::size_t>(c)][static_cast<std::size_t>(i)]) / r;
                simplex[static_cast<std::size_t>(c)] = raw.add_vertex(g.point(lambda));
            }
            raw.add_simplex(simplex, mesh.sign(s) * sub.sign);
        }
    }
    return weld(manifold, raw);
}

SimplicialMesh orient_positively(const EmbeddedManifold& manifold, SimplicialMesh mesh) {
    if (mesh.dim() != manifold.intrinsic_dim()) throw DegreeMismatch("orientation needs a top-dimensional mesh");
    Vector centroid = Vector::Constant(mesh.dim() + 1, 1.0 / (mesh.dim() + 1));
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const SimplexGeometry g(manifold, mesh, s);
        const int sign = manifold.orientation_sign(g.point(centroid), g.frame(centroid));
        if (sign == 0) throw DegenerateSimplex("cannot orient simplex " + std::to_string(s));
        mesh.set_sign(s, sign);
    }
    return mesh;
}

}  // namespace transgress
