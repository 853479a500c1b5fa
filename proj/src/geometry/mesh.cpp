#include "transgress/mesh.hpp"

#include "transgress/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

namespace transgress {

SimplicialMesh::SimplicialMesh(int dim, int ambient_dim) : dim_(dim), ambient_dim_(ambient_dim) {}

int SimplicialMesh::add_vertex(const Point& x) {
    if (x.size() != ambient_dim_) throw MeshFormatError("vertex dimension does not match the ambient dimension");
    const int index = num_vertices();
    coords_.insert(coords_.end(), x.data(), x.data() + x.size());
    return index;
}

void SimplicialMesh::add_simplex(std::span<const int> vertices, int sign) {
    if (static_cast<int>(vertices.size()) != dim_ + 1)
        throw MeshFormatError("simplex needs " + std::to_string(dim_ + 1) + " vertices");
    if (sign != 1 && sign != -1) throw MeshFormatError("orientation sign must be +1 or -1");
    indices_.insert(indices_.end(), vertices.begin(), vertices.end());
    signs_.push_back(sign);
}

void SimplicialMesh::add_simplex(std::initializer_list<int> vertices, int sign) {
    add_simplex(std::span<const int>(vertices.begin(), vertices.size()), sign);
}

Eigen::Map<const Vector> SimplicialMesh::vertex(int i) const {
    return Eigen::Map<const Vector>(coords_.data() + static_cast<std::size_t>(i) * ambient_dim_, ambient_dim_);
}

void SimplicialMesh::set_vertex(int i, const Point& x) {
    std::copy(x.data(), x.data() + ambient_dim_, coords_.begin() + static_cast<std::ptrdiff_t>(i) * ambient_dim_);
}

std::span<const int> SimplicialMesh::simplex(int s) const {
    return {indices_.data() + static_cast<std::size_t>(s) * (dim_ + 1), static_cast<std::size_t>(dim_ + 1)};
}

SimplicialMesh SimplicialMesh::reversed() const {
    SimplicialMesh out = *this;
    for (int& s : out.signs_) s = -s;
    return out;
}

SimplicialMesh SimplicialMesh::with_vertices(const Matrix& vertices) const {
    if (vertices.rows() != ambient_dim_ || vertices.cols() != num_vertices())
        throw MeshFormatError("replacement vertex matrix has the wrong shape");
    SimplicialMesh out = *this;
    for (int i = 0; i < num_vertices(); ++i) out.set_vertex(i, vertices.col(i));
    return out;
}

Matrix SimplicialMesh::vertex_matrix() const {
    return Eigen::Map<const Matrix>(coords_.data(), ambient_dim_, num_vertices());
}

void SimplicialMesh::append(const SimplicialMesh& other, int coefficient) {
    if (other.dim_ != dim_ || other.ambient_dim_ != ambient_dim_)
        throw MeshFormatError("cannot append meshes of different dimensions");
    const int offset = num_vertices();
    coords_.insert(coords_.end(), other.coords_.begin(), other.coords_.end());
    const int copies = std::abs(coefficient);
    const int sgn = coefficient < 0 ? -1 : 1;
    for (int c = 0; c < copies; ++c) {
        for (int s = 0; s < other.num_simplices(); ++s) {
            for (int v : other.simplex(s)) indices_.push_back(v + offset);
            signs_.push_back(sgn * other.sign(s));
        }
    }
}

namespace {

int sort_parity(std::vector<int>& v) {
    int swaps = 0;
    for (std::size_t i = 1; i < v.size(); ++i)
        for (std::size_t j = i; j > 0 && v[j - 1] > v[j]; --j) {
            std::swap(v[j - 1], v[j]);
            ++swaps;
        }
    return (swaps % 2 == 0) ? 1 : -1;
}

bool has_repeat(const std::vector<int>& sorted) {
    return std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end();
}

struct VectorHash {
    std::size_t operator()(const std::vector<long long>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (long long x : v) {
            h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        }
        return h;
    }
};

struct IndexHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (int x : v) h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace

SimplicialMesh mesh_boundary(const SimplicialMesh& mesh) {
    if (mesh.dim() < 1) throw MeshFormatError("boundary of a 0-mesh is undefined");
    std::unordered_map<std::vector<int>, int, IndexHash> slot;
    std::vector<std::vector<int>> faces;
    std::vector<int> coefficient;
    const int k = mesh.dim();
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const auto simplex = mesh.simplex(s);
        for (int i = 0; i <= k; ++i) {
            std::vector<int> face;
            face.reserve(static_cast<std::size_t>(k));
            for (int j = 0; j <= k; ++j)
                if (j != i) face.push_back(simplex[static_cast<std::size_t>(j)]);
            const int parity = sort_parity(face);
            if (has_repeat(face)) continue;
            const int c = mesh.sign(s) * ((i % 2 == 0) ? 1 : -1) * parity;
            auto [it, inserted] = slot.try_emplace(face, static_cast<int>(faces.size()));
            if (inserted) {
                faces.push_back(face);
                coefficient.push_back(0);
            }
            coefficient[static_cast<std::size_t>(it->second)] += c;
        }
    }
    SimplicialMesh out(k - 1, mesh.ambient_dim());
    for (int i = 0; i < mesh.num_vertices(); ++i) out.add_vertex(mesh.vertex(i));
    for (std::size_t f = 0; f < faces.size(); ++f) {
        const int c = coefficient[f];
        for (int r = 0; r < std::abs(c); ++r) out.add_simplex(faces[f], c > 0 ? 1 : -1);
    }
    out.set_quadrature_degree(mesh.quadrature_degree());
    return out;
}

SimplicialMesh weld(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol) {
    const double period = manifold.period();
    const long long cells = period > 0 ? std::llround(period / tol) : 0;
    std::unordered_map<std::vector<long long>, int, VectorHash> index_of;
    std::vector<int> remap(static_cast<std::size_t>(mesh.num_vertices()));
    SimplicialMesh out(mesh.dim(), mesh.ambient_dim());
    out.set_quadrature_degree(mesh.quadrature_degree());
    std::vector<long long> key(static_cast<std::size_t>(mesh.ambient_dim()));
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const Point x = mesh.vertex(i);
        const Point canon = period > 0 ? manifold.retract(x) : x;
        for (int d = 0; d < mesh.ambient_dim(); ++d) {
            long long q = std::llround(canon(d) / tol);
            if (cells > 0) q = ((q % cells) + cells) % cells;
            key[static_cast<std::size_t>(d)] = q;
        }
        auto [it, inserted] = index_of.try_emplace(key, out.num_vertices());
        if (inserted) out.add_vertex(x);
        remap[static_cast<std::size_t>(i)] = it->second;
    }
    std::vector<int> simplex(static_cast<std::size_t>(mesh.dim() + 1));
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const auto src = mesh.simplex(s);
        for (std::size_t j = 0; j < src.size(); ++j) simplex[j] = remap[static_cast<std::size_t>(src[j])];
        std::vector<int> sorted = simplex;
        std::sort(sorted.begin(), sorted.end());
        if (has_repeat(sorted)) continue;
        out.add_simplex(simplex, mesh.sign(s));
    }
    return out;
}

SimplicialMesh reduce_chain(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol) {
    const SimplicialMesh welded = weld(manifold, mesh, tol);
    std::unordered_map<std::vector<int>, int, IndexHash> slot;
    std::vector<std::vector<int>> keys;
    std::vector<int> coefficient;
    for (int s = 0; s < welded.num_simplices(); ++s) {
        const auto src = welded.simplex(s);
        std::vector<int> key(src.begin(), src.end());
        const int parity = sort_parity(key);
        auto [it, inserted] = slot.try_emplace(key, static_cast<int>(keys.size()));
        if (inserted) {
            keys.push_back(key);
            coefficient.push_back(0);
        }
        coefficient[static_cast<std::size_t>(it->second)] += welded.sign(s) * parity;
    }
    SimplicialMesh out(mesh.dim(), mesh.ambient_dim());
    out.set_quadrature_degree(mesh.quadrature_degree());
    std::vector<int> renumber(static_cast<std::size_t>(welded.num_vertices()), -1);
    std::vector<int> simplex;
    for (std::size_t f = 0; f < keys.size(); ++f) {
        const int c = coefficient[f];
        if (c == 0) continue;
        simplex.clear();
        for (int v : keys[f]) {
            int& r = renumber[static_cast<std::size_t>(v)];
            if (r < 0) r = out.add_vertex(welded.vertex(v));
            simplex.push_back(r);
        }
        for (int n = 0; n < std::abs(c); ++n) out.add_simplex(simplex, c > 0 ? 1 : -1);
    }
    return out;
}

int boundary_residual(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, double tol) {
    if (mesh.dim() == 0) return 0;
    return mesh_boundary(weld(manifold, mesh, tol)).num_simplices();
}

double max_constraint_violation(const EmbeddedManifold& manifold, const SimplicialMesh& mesh) {
    double worst = 0.0;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        const Vector c = manifold.constraint(mesh.vertex(i));
        if (c.size() > 0) worst = std::max(worst, c.cwiseAbs().maxCoeff());
    }
    return worst;
}

bool is_connected(const SimplicialMesh& mesh) {
    if (mesh.num_simplices() == 0) return false;
    std::vector<int> parent(static_cast<std::size_t>(mesh.num_vertices()));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    std::vector<char> used(static_cast<std::size_t>(mesh.num_vertices()), 0);
    for (int s = 0; s < mesh.num_simplices(); ++s) {
        const auto simplex = mesh.simplex(s);
        for (int v : simplex) used[static_cast<std::size_t>(v)] = 1;
        for (std::size_t j = 1; j < simplex.size(); ++j) parent[static_cast<std::size_t>(find(simplex[j]))] = find(simplex[0]);
    }
    int root = -1;
    for (int v = 0; v < mesh.num_vertices(); ++v) {
        if (!used[static_cast<std::size_t>(v)]) continue;
        if (root < 0) root = find(v);
        else if (find(v) != root) return false;
    }
    return true;
}

}  // namespace transgress
