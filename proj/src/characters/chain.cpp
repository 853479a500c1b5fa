#include "transgress/characters.hpp"
#include "transgress/errors.hpp"
#include "transgress/mesh_families.hpp"
#include "transgress/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

namespace transgress {

CircleValue::CircleValue(double x) {
    value_ = x - std::floor(x);
    if (value_ >= 1.0) value_ = 0.0;
}

double circle_distance(double a, double b) {
    const double d = std::abs(CircleValue(a - b).value());
    return std::min(d, 1.0 - d);
}

SmoothChain::SmoothChain(SimplicialMesh mesh, int coefficient) : dim_(mesh.dim()), ambient_dim_(mesh.ambient_dim()) {
    add(std::move(mesh), coefficient);
}

void SmoothChain::add(SimplicialMesh mesh, int coefficient) {
    if (terms_.empty() && dim_ == 0 && ambient_dim_ == 0) {
        dim_ = mesh.dim();
        ambient_dim_ = mesh.ambient_dim();
    }
    if (mesh.dim() != dim_ || mesh.ambient_dim() != ambient_dim_) throw DegreeMismatch("chain terms must share a dimension");
    terms_.push_back({coefficient, std::move(mesh)});
}

SimplicialMesh SmoothChain::flatten() const {
    SimplicialMesh out(dim_, ambient_dim_);
    for (const ChainTerm& t : terms_) {
        out.append(t.mesh, t.coefficient);
        out.set_quadrature_degree(std::max(out.quadrature_degree(), t.mesh.quadrature_degree()));
    }
    return out;
}

SmoothChain SmoothChain::boundary() const {
    if (dim_ < 1) throw MeshFormatError("boundary of a 0-chain is undefined");
    SmoothChain out(dim_ - 1, ambient_dim_);
    for (const ChainTerm& t : terms_) out.add(mesh_boundary(t.mesh), t.coefficient);
    return out;
}

bool SmoothChain::is_cycle(const EmbeddedManifold& manifold) const {
    return boundary_residual(manifold, flatten()) == 0;
}

void write_chain(std::ostream& os, const SmoothChain& chain) {
    for (const ChainTerm& t : chain.terms()) {
        os << "COEFF " << t.coefficient << '\n';
        write_mesh(os, t.mesh);
    }
}

SmoothChain read_chain(std::istream& is) {
    SmoothChain chain;
    std::string line;
    std::optional<int> coefficient;
    std::ostringstream body;
    int line_no = 0;
    auto flush = [&] {
        if (!coefficient) return;
        std::istringstream in(body.str());
        chain.add(read_mesh(in), *coefficient);
        body.str({});
        body.clear();
    };
    while (std::getline(is, line)) {
        ++line_no;
        std::istringstream in(line);
        std::string tag;
        if (!(in >> tag)) continue;
        if (tag == "COEFF") {
            flush();
            int z = 0;
            if (!(in >> z)) throw MeshFormatError("line " + std::to_string(line_no) + ": COEFF needs an integer");
            coefficient = z;
        } else {
            if (!coefficient) throw MeshFormatError("line " + std::to_string(line_no) + ": chain term without COEFF");
            body << line << '\n';
        }
    }
    flush();
    return chain;
}

SimplicialMesh sweep_sequence(const EmbeddedManifold& manifold, const std::vector<SimplicialMesh>& frames) {
    if (frames.size() < 2) throw LoopNotClosed("a sweep needs at least two frames");
    const SimplicialMesh& base = frames.front();
    const int k = base.dim();
    const int nv = base.num_vertices();
    for (const SimplicialMesh& f : frames)
        if (f.num_vertices() != nv || f.num_simplices() != base.num_simplices() || f.dim() != k)
            throw LoopNotClosed("frames must share their combinatorics");
    (void)manifold;
    SimplicialMesh out(k + 1, base.ambient_dim());
    out.set_quadrature_degree(base.quadrature_degree());
    for (const SimplicialMesh& f : frames)
        for (int v = 0; v < nv; ++v) out.add_vertex(f.vertex(v));
    const auto& shs = shuffles(1, k);
    std::vector<int> simplex(static_cast<std::size_t>(k + 2));
    for (std::size_t j = 0; j + 1 < frames.size(); ++j) {
        for (int s = 0; s < base.num_simplices(); ++s) {
            const auto idx = base.simplex(s);
            for (const Shuffle& sh : shs) {
                for (std::size_t c = 0; c < sh.path.size(); ++c)
                    simplex[c] = static_cast<int>((j + static_cast<std::size_t>(sh.path[c].first)) * static_cast<std::size_t>(nv)) +
                                 idx[static_cast<std::size_t>(sh.path[c].second)];
                out.add_simplex(simplex, base.sign(s) * sh.sign);
            }
        }
    }
    return out;
}

namespace {

std::vector<std::pair<int, int>> sphere_blocks(const EmbeddedManifold& M) {
    if (dynamic_cast<const SpherePair*>(&M)) return {{0, 3}, {3, 3}};
    if (dynamic_cast<const RoundSphere*>(&M)) return {{0, M.ambient_dim()}};
    return {};
}

}  // namespace

Point cone_apex(const EmbeddedManifold& M, const SimplicialMesh& cycle, double min_score) {
    const auto blocks = sphere_blocks(M);
    if (blocks.empty()) throw FillingUnavailable("no cone construction on " + M.id());
    Point apex(M.ambient_dim());
    for (const auto& [offset, size] : blocks) {
        std::vector<Vector> candidates;
        Vector centroid = Vector::Zero(size);
        for (int v = 0; v < cycle.num_vertices(); ++v) centroid += cycle.vertex(v).segment(offset, size);
        if (centroid.norm() > 1e-6 * std::max(1, cycle.num_vertices())) candidates.push_back(centroid.normalized());
        for (int i = 0; i < size; ++i)
            for (double sgn : {1.0, -1.0}) {
                Vector e = Vector::Zero(size);
                e(i) = sgn;
                candidates.push_back(e);
            }
        double best = -1.0;
        Vector chosen;
        for (const Vector& p : candidates) {
            double score = 1.0;
            for (int v = 0; v < cycle.num_vertices(); ++v)
                score = std::min(score, 0.5 * (1.0 + cycle.vertex(v).segment(offset, size).normalized().dot(p)));
            if (score > best + 1e-12) {
                best = score;
                chosen = p;
            }
        }
        if (best < min_score)
            throw FillingUnavailable("cycle is not contained in a hemisphere-like cone chart (score " +
                                     std::to_string(best) + ")");
        apex.segment(offset, size) = chosen;
    }
    return apex;
}

SimplicialMesh cone_fill(const EmbeddedManifold& M, const SimplicialMesh& input, const ConeFillOptions& opts) {
    const SimplicialMesh cycle = reduce_chain(M, input);
    if (cycle.empty()) return SimplicialMesh(input.dim() + 1, input.ambient_dim());
    const Point apex = opts.apex ? *opts.apex : cone_apex(M, cycle, opts.min_score);
    int layers = opts.layers;
    if (layers <= 0) {
        // Layers only refine the quadrature; the fill itself is exact.
        double reach = 0.0;
        for (int v = 0; v < cycle.num_vertices(); ++v) reach = std::max(reach, (cycle.vertex(v) - apex).norm());
        layers = std::clamp(static_cast<int>(std::ceil(8.0 * reach)), 4, 16);
    }
    std::vector<SimplicialMesh> frames;
    frames.reserve(static_cast<std::size_t>(layers + 1));
    const Matrix V = cycle.vertex_matrix();
    for (int l = 0; l <= layers; ++l) {
        const double t = static_cast<double>(l) / layers;
        Matrix W(V.rows(), V.cols());
        for (int v = 0; v < V.cols(); ++v)
            W.col(v) = l == layers ? apex : M.project((1.0 - t) * V.col(v) + t * apex);
        frames.push_back(cycle.with_vertices(W));
    }
    return weld(M, sweep_sequence(M, frames).reversed());
}

}  // namespace transgress
