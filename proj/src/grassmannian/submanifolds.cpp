#include "transgress/errors.hpp"
#include "transgress/grassmannian.hpp"
#include "transgress/mesh_families.hpp"

#include <algorithm>
#include <map>

namespace transgress {

NormalField NormalField::per_vertex(Matrix values) {
    NormalField n;
    n.values_ = std::move(values);
    return n;
}

NormalField NormalField::from_field(VectorField field) {
    NormalField n;
    n.field_ = std::move(field);
    return n;
}

NormalField NormalField::restrict(const VectorField& field, const SimplicialMesh& mesh) {
    Matrix values(mesh.ambient_dim(), mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) values.col(v) = field(mesh.vertex(v));
    return per_vertex(std::move(values));
}

NormalField NormalField::plus(const NormalField& other) const {
    if (is_per_vertex() && other.is_per_vertex()) {
        if (values_.cols() != other.values_.cols()) throw DegreeMismatch("normal fields live on different meshes");
        return per_vertex(values_ + other.values_);
    }
    if (!is_per_vertex() && !other.is_per_vertex()) return from_field(field_->plus(*other.field_));
    throw ConfigError("cannot add a sampled normal field to an ambient one");
}

double EmbeddingPoint::injectivity_radius() const {
    double best = std::numeric_limits<double>::infinity();
    for (int a = 0; a < image.cols(); ++a)
        for (int b = a + 1; b < image.cols(); ++b) best = std::min(best, (image.col(a) - image.col(b)).norm());
    return best;
}

LoopOfSubmanifolds LoopOfSubmanifolds::then(const LoopOfSubmanifolds& other) const {
    if (frames.empty()) return other;
    if (other.frames.empty()) return *this;
    const SimplicialMesh& a = frames.back();
    const SimplicialMesh& b = other.frames.front();
    if (a.num_vertices() != b.num_vertices() || (a.vertex_matrix() - b.vertex_matrix()).cwiseAbs().maxCoeff() > 1e-9)
        throw LoopNotClosed("concatenated paths do not meet");
    LoopOfSubmanifolds out = *this;
    out.closure = other.closure;
    const double shift = times.back() - other.times.front();
    for (std::size_t j = 1; j < other.frames.size(); ++j) {
        out.frames.push_back(other.frames[j]);
        out.times.push_back(other.times[j] + shift);
    }
    return out;
}

LoopOfSubmanifolds LoopOfSubmanifolds::mapped(const SmoothMap& phi) const {
    LoopOfSubmanifolds out = *this;
    for (SimplicialMesh& f : out.frames) f = map_mesh(phi, f);
    return out;
}

LoopOfSubmanifolds EmbeddingLoop::images_as_loop() const {
    LoopOfSubmanifolds out;
    out.times = times;
    for (const Matrix& img : images) out.frames.push_back(model.with_vertices(img));
    return out;
}

namespace {

using SimplexKey = std::vector<int>;

// Sorted vertex tuple and the orientation it carries.
std::pair<SimplexKey, int> oriented_key(std::span<const int> idx, int sign) {
    SimplexKey key(idx.begin(), idx.end());
    int parity = 1;
    for (std::size_t i = 0; i < key.size(); ++i)
        for (std::size_t j = i + 1; j < key.size(); ++j)
            if (key[i] > key[j]) parity = -parity;
    std::sort(key.begin(), key.end());
    return {key, sign * parity};
}

}  // namespace

void check_loop(const EmbeddedManifold& manifold, const LoopOfSubmanifolds& loop, double tol) {
    if (loop.frames.size() < 2) throw LoopNotClosed("a loop needs at least two frames");
    if (loop.times.size() != loop.frames.size()) throw LoopNotClosed("one time per frame");
    const SimplicialMesh& first = loop.frames.front();
    const SimplicialMesh& last = loop.frames.back();
    const int nv = first.num_vertices();
    for (const SimplicialMesh& f : loop.frames)
        if (f.num_vertices() != nv || f.num_simplices() != first.num_simplices())
            throw LoopNotClosed("frames must share their combinatorics");
    std::vector<int> perm(static_cast<std::size_t>(nv));
    for (int v = 0; v < nv; ++v) perm[static_cast<std::size_t>(v)] = v;
    if (loop.closure) {
        if (static_cast<int>(loop.closure->size()) != nv) throw LoopNotClosed("closure relabeling has the wrong size");
        perm = *loop.closure;
    }
    for (int v = 0; v < nv; ++v) {
        const int w = perm[static_cast<std::size_t>(v)];
        if (w < 0 || w >= nv) throw LoopNotClosed("closure relabeling out of range");
        const Point a = last.vertex(v);
        const Point b = manifold.lift_near(first.vertex(w), a);
        if ((a - b).norm() > tol)
            throw LoopNotClosed("vertex " + std::to_string(v) + " misses its start by " + std::to_string((a - b).norm()));
    }
    if (!loop.closure) return;
    std::map<SimplexKey, int> start;
    for (int s = 0; s < first.num_simplices(); ++s) {
        auto [key, o] = oriented_key(first.simplex(s), first.sign(s));
        start[key] += o;
    }
    for (int s = 0; s < last.num_simplices(); ++s) {
        std::vector<int> idx;
        for (int v : last.simplex(s)) idx.push_back(perm[static_cast<std::size_t>(v)]);
        auto [key, o] = oriented_key(idx, last.sign(s));
        start[key] -= o;
    }
    for (const auto& [key, count] : start)
        if (count != 0) throw LoopNotClosed("closure relabeling does not preserve the oriented simplices");
}

SimplicialMesh sweep_chain(const EmbeddedManifold& manifold, const LoopOfSubmanifolds& loop) {
    check_loop(manifold, loop);
    return sweep_sequence(manifold, loop.frames);
}

LoopOfSubmanifolds FamilyPatch::boundary_loop() const {
    const int S = s_intervals();
    const int T = t_intervals();
    LoopOfSubmanifolds loop;
    loop.type = type;
    double clock = 0.0;
    auto push = [&](const SimplicialMesh& m) {
        loop.frames.push_back(m);
        loop.times.push_back(clock);
        clock += 1.0;
    };
    push(grid[0][0]);
    for (int i = 1; i <= S; ++i) push(grid[static_cast<std::size_t>(i)][0]);
    for (int j = 1; j <= T; ++j) push(grid[static_cast<std::size_t>(S)][static_cast<std::size_t>(j)]);
    for (int i = S - 1; i >= 0; --i) push(grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(T)]);
    for (int j = T - 1; j >= 0; --j) push(grid[0][static_cast<std::size_t>(j)]);
    return loop;
}

SimplicialMesh FamilyPatch::boundary_cycle(const EmbeddedManifold& manifold) const {
    const int S = s_intervals();
    const int T = t_intervals();
    const SimplicialMesh& base = grid[0][0];
    if (!periodic_s && !periodic_t) return sweep_chain(manifold, boundary_loop());
    SimplicialMesh out(base.dim() + 1, base.ambient_dim());
    out.set_quadrature_degree(base.quadrature_degree());
    if (periodic_s && periodic_t) return out;
    auto edge = [&](bool along_t, int fixed) {
        std::vector<SimplicialMesh> frames;
        const int n = along_t ? T : S;
        for (int a = 0; a <= n; ++a)
            frames.push_back(along_t ? grid[static_cast<std::size_t>(fixed)][static_cast<std::size_t>(a)]
                                     : grid[static_cast<std::size_t>(a)][static_cast<std::size_t>(fixed)]);
        return sweep_sequence(manifold, frames);
    };
    if (periodic_t) {
        out.append(edge(true, S), 1);
        out.append(edge(true, 0), -1);
    } else {
        out.append(edge(false, 0), 1);
        out.append(edge(false, T), -1);
    }
    return out;
}

FamilyPatch make_patch(const PatchGenerator& F, int s_intervals, int t_intervals, bool periodic_s, bool periodic_t,
                       const std::string& type) {
    if (s_intervals < 1 || t_intervals < 1) throw ConfigError("patch grids need at least one interval");
    FamilyPatch p;
    p.periodic_s = periodic_s;
    p.periodic_t = periodic_t;
    p.type = type;
    p.grid.resize(static_cast<std::size_t>(s_intervals + 1));
    for (int i = 0; i <= s_intervals; ++i)
        for (int j = 0; j <= t_intervals; ++j)
            p.grid[static_cast<std::size_t>(i)].push_back(
                F(static_cast<double>(i) / s_intervals, static_cast<double>(j) / t_intervals));
    const SimplicialMesh& base = p.grid[0][0];
    for (const auto& row : p.grid)
        for (const SimplicialMesh& m : row)
            if (m.num_vertices() != base.num_vertices() || m.num_simplices() != base.num_simplices())
                throw ConfigError("patch meshes must share their combinatorics");
    return p;
}

namespace {

// Derivative along one grid direction from samples at offsets -2..2 (or a
// one-sided window near an open edge), step h.
Matrix grid_difference(const EmbeddedManifold& M, const std::function<const SimplicialMesh&(int)>& at, int i, int n,
                       bool periodic, double h) {
    const SimplicialMesh& center = at(i);
    auto node = [&](int k) -> int {
        if (periodic) return ((k % n) + n) % n;
        return k;
    };
    std::vector<std::pair<int, double>> stencil;
    if (periodic || (i >= 2 && i <= n - 2)) {
        stencil = {{-2, 1.0 / 12}, {-1, -8.0 / 12}, {1, 8.0 / 12}, {2, -1.0 / 12}};
    } else if (n < 4) {
        if (i == 0) stencil = {{0, -1.0}, {1, 1.0}};
        else if (i == n) stencil = {{-1, -1.0}, {0, 1.0}};
        else stencil = {{-1, -0.5}, {1, 0.5}};
    } else if (i == 0) {
        stencil = {{0, -25.0 / 12}, {1, 4.0}, {2, -3.0}, {3, 4.0 / 3}, {4, -1.0 / 4}};
    } else if (i == 1) {
        stencil = {{-1, -1.0 / 4}, {0, -5.0 / 6}, {1, 3.0 / 2}, {2, -1.0 / 2}, {3, 1.0 / 12}};
    } else if (i == n - 1) {
        stencil = {{1, 1.0 / 4}, {0, 5.0 / 6}, {-1, -3.0 / 2}, {-2, 1.0 / 2}, {-3, -1.0 / 12}};
    } else {
        stencil = {{0, 25.0 / 12}, {-1, -4.0}, {-2, 3.0}, {-3, -4.0 / 3}, {-4, 1.0 / 4}};
    }
    Matrix out = Matrix::Zero(center.ambient_dim(), center.num_vertices());
    for (const auto& [offset, w] : stencil) {
        const SimplicialMesh& m = at(node(i + offset));
        for (int v = 0; v < center.num_vertices(); ++v)
            out.col(v) += w * M.lift_near(m.vertex(v), center.vertex(v));
    }
    return out / h;
}

}  // namespace

std::pair<Matrix, Matrix> patch_derivatives(const EmbeddedManifold& manifold, const FamilyPatch& patch, int i, int j) {
    const int S = patch.s_intervals();
    const int T = patch.t_intervals();
    const auto& grid = patch.grid;
    const Matrix ds = grid_difference(
        manifold, [&](int k) -> const SimplicialMesh& { return grid[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]; },
        i, S, patch.periodic_s, 1.0 / S);
    const Matrix dt = grid_difference(
        manifold, [&](int k) -> const SimplicialMesh& { return grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]; },
        j, T, patch.periodic_t, 1.0 / T);
    return {ds, dt};
}

SimplicialMesh patch_sweep_chain(const EmbeddedManifold& manifold, const FamilyPatch& patch) {
    (void)manifold;
    const SimplicialMesh& base = patch.grid[0][0];
    const int k = base.dim();
    const int nv = base.num_vertices();
    const int S = patch.s_intervals();
    const int T = patch.t_intervals();
    SimplicialMesh out(k + 2, base.ambient_dim());
    out.set_quadrature_degree(base.quadrature_degree());
    for (int i = 0; i <= S; ++i)
        for (int j = 0; j <= T; ++j) {
            const SimplicialMesh& m = patch.grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            for (int v = 0; v < nv; ++v) out.add_vertex(m.vertex(v));
        }
    auto node = [&](int i, int j) { return i * (T + 1) + j; };
    const auto& squares = kuhn_simplices(2);
    const auto& shs = shuffles(2, k);
    std::vector<int> simplex(static_cast<std::size_t>(k + 3));
    for (int i = 0; i < S; ++i)
        for (int j = 0; j < T; ++j)
            for (const KuhnSimplex& tri : squares) {
                int nodes[3];
                for (int c = 0; c < 3; ++c) {
                    const unsigned bits = tri.corners[static_cast<std::size_t>(c)];
                    nodes[c] = node(i + static_cast<int>(bits & 1u), j + static_cast<int>((bits >> 1) & 1u));
                }
                for (int s = 0; s < base.num_simplices(); ++s) {
                    const auto idx = base.simplex(s);
                    for (const Shuffle& sh : shs) {
                        for (std::size_t c = 0; c < sh.path.size(); ++c)
                            simplex[c] = nodes[sh.path[c].first] * nv + idx[static_cast<std::size_t>(sh.path[c].second)];
                        out.add_simplex(simplex, tri.sign * base.sign(s) * sh.sign);
                    }
                }
            }
    return out;
}

Matrix curve_vertex_tangents(const EmbeddedManifold& manifold, const SimplicialMesh& mesh) {
    if (mesh.dim() != 1) throw DegreeMismatch("vertex tangents need a 1-mesh");
    Matrix out = Matrix::Zero(mesh.ambient_dim(), mesh.num_vertices());
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const auto idx = mesh.simplex(s);
        const Point a = mesh.vertex(idx[0]);
        const Vector e = mesh.sign(s) * (manifold.lift_near(mesh.vertex(idx[1]), a) - a);
        out.col(idx[0]) += 0.5 * e;
        out.col(idx[1]) += 0.5 * e;
    }
    for (int v = 0; v < mesh.num_vertices(); ++v) out.col(v) = manifold.tangent_projector(mesh.vertex(v)) * out.col(v);
    return out;
}

}  // namespace transgress
