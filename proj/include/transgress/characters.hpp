#pragma once

#include "transgress/fields.hpp"
#include "transgress/forms.hpp"
#include "transgress/mesh.hpp"

#include <functional>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace transgress {

/// Element of R/Z, canonical representative in [0, 1).
class CircleValue {
public:
    CircleValue() = default;
    explicit CircleValue(double x);

    double value() const { return value_; }
    CircleValue operator+(CircleValue o) const { return CircleValue(value_ + o.value_); }
    CircleValue operator-(CircleValue o) const { return CircleValue(value_ - o.value_); }
    CircleValue operator-() const { return CircleValue(-value_); }

private:
    double value_ = 0.0;
};

/// Distance on R/Z, in [0, 1/2].
double circle_distance(double a, double b);
inline double circle_distance(CircleValue a, CircleValue b) { return circle_distance(a.value(), b.value()); }

/// Integer combination of simplicial meshes of one dimension.
struct ChainTerm {
    int coefficient = 1;
    SimplicialMesh mesh;
};

class SmoothChain {
public:
    SmoothChain() = default;
    explicit SmoothChain(int dim, int ambient_dim) : dim_(dim), ambient_dim_(ambient_dim) {}
    SmoothChain(SimplicialMesh mesh, int coefficient = 1);

    int dim() const { return dim_; }
    const std::vector<ChainTerm>& terms() const { return terms_; }
    void add(SimplicialMesh mesh, int coefficient = 1);
    /// One mesh with coefficients folded into orientation signs.
    SimplicialMesh flatten() const;
    SmoothChain boundary() const;
    bool is_cycle(const EmbeddedManifold& manifold) const;

private:
    int dim_ = 0;
    int ambient_dim_ = 0;
    std::vector<ChainTerm> terms_;
};

/// Mesh text format with a `COEFF z` line before each term.
void write_chain(std::ostream& os, const SmoothChain& chain);
SmoothChain read_chain(std::istream& is);

/// Circle-valued homomorphism on k-cycles with curvature of degree k+1.
class DifferentialCharacter {
public:
    DifferentialCharacter(int degree, DifferentialForm curvature);
    virtual ~DifferentialCharacter() = default;

    int degree() const { return degree_; }
    const DifferentialForm& curvature() const { return curvature_; }
    const ManifoldPtr& manifold() const { return curvature_.manifold(); }
    virtual std::string representation() const = 0;

    /// Value on a cycle. Implementations may assume the cycle is closed.
    virtual CircleValue evaluate_cycle(const SimplicialMesh& cycle) const = 0;

private:
    int degree_;
    DifferentialForm curvature_;
};

using CharacterPtr = std::shared_ptr<const DifferentialCharacter>;

/// h(c) = integral of alpha over c, mod 1; curvature d alpha.
class GlobalPrimitive final : public DifferentialCharacter {
public:
    explicit GlobalPrimitive(DifferentialForm alpha);
    std::string representation() const override { return "global_primitive"; }
    CircleValue evaluate_cycle(const SimplicialMesh& cycle) const override;
    const DifferentialForm& primitive() const { return alpha_; }

private:
    DifferentialForm alpha_;
};

/// Bounding-chain oracle: fill(c) has boundary c.
using Filler = std::function<SimplicialMesh(const SimplicialMesh&)>;

/// h(c) = integral of the curvature over fill(c), mod 1.
class FillingOracle final : public DifferentialCharacter {
public:
    FillingOracle(int degree, DifferentialForm curvature, Filler fill);
    std::string representation() const override { return "filling_oracle"; }
    CircleValue evaluate_cycle(const SimplicialMesh& cycle) const override;
    SimplicialMesh fill(const SimplicialMesh& cycle) const { return fill_(cycle); }

private:
    Filler fill_;
};

/// Degree-1 character on the flat torus with curvature scale * dx^dy,
/// given by a real cochain on the edges of the m x m grid.
///
/// Vertical edge (i,j)->(i,j+1) carries scale*i/m^2 (i taken mod m);
/// horizontal edge (i,j)->(i+1,j) carries -scale*j/m on the seam column
/// i = m-1 and 0 elsewhere, so the coboundary is scale/m^2 on every cell.
/// Cycles are snapped to lattice paths; the region between a cycle piece
/// and its lattice path is integrated exactly, so evaluation does not
/// depend on the grid.
class LatticeCochain final : public DifferentialCharacter {
public:
    LatticeCochain(ManifoldPtr torus, int m, double scale = 1.0);
    std::string representation() const override { return "lattice_cochain"; }
    CircleValue evaluate_cycle(const SimplicialMesh& cycle) const override;

    int grid() const { return m_; }
    /// Cochain value on the unit lattice step from vertex (i, j) along +x
    /// (axis 0) or +y (axis 1).
    double edge_value(long long i, long long j, int axis) const;

private:
    double path_value(long long i0, long long j0, long long i1, long long j1) const;

    int m_;
    double scale_;
};

/// (phi^* h)(c) = h(phi(refine(c))); curvature phi^* curv(h).
class PulledBack final : public DifferentialCharacter {
public:
    PulledBack(SmoothMap phi, CharacterPtr h, int refinement = 1);
    std::string representation() const override { return "pullback(" + h_->representation() + ")"; }
    CircleValue evaluate_cycle(const SimplicialMesh& cycle) const override;

private:
    SmoothMap phi_;
    CharacterPtr h_;
    int refinement_;
};

/// Degree and closedness checks, then h(c). Throws NotClosed, DegreeMismatch.
CircleValue evaluate(const DifferentialCharacter& h, const SimplicialMesh& cycle);
CircleValue evaluate(const DifferentialCharacter& h, const SmoothChain& cycle);

/// Circle distance between h(boundary z) and the curvature integral over z.
double curvature_defect(const DifferentialCharacter& h, const SimplicialMesh& z);

CharacterPtr pullback_character(const SmoothMap& phi, CharacterPtr h, int refinement = 1);

struct ConeFillOptions {
    std::optional<Point> apex;
    int layers = 0;  // 0: chosen from the distance to the apex
    double min_score = 0.2;
};

/// Apex with the best worst-case score over the cycle's vertices; the score
/// of a vertex is min over sphere blocks of (1 + x.p)/2. Throws
/// FillingUnavailable when no candidate reaches opts.min_score.
Point cone_apex(const EmbeddedManifold& manifold, const SimplicialMesh& cycle, double min_score = 0.2);

/// Bounding chain of a cycle by sweeping it along the straight-line
/// homotopy x -> project((1-t)x + t p) to an apex p.
SimplicialMesh cone_fill(const EmbeddedManifold& manifold, const SimplicialMesh& cycle,
                         const ConeFillOptions& opts = {});

/// The canonical character with curvature mu on a manifold whose
/// (n-1)-homology vanishes, evaluated through cone fills.
CharacterPtr make_h_mu(const VolumeForm& mu, ConeFillOptions opts = {});

/// Chain swept by a sequence of meshes with identical combinatorics:
/// sum over time intervals of [t_j, t_j+1] x simplex, time first, so that
/// boundary = last - first - sweep(boundary).
SimplicialMesh sweep_sequence(const EmbeddedManifold& manifold, const std::vector<SimplicialMesh>& frames);

struct FluxEntry {
    std::string cycle;
    CircleValue value;
    double raw = 0.0;
};
using FluxResult = std::vector<FluxEntry>;

struct FluxOptions {
    int time_samples = 32;
    double preservation_tol = 1e-6;
};

/// Flux of the isotopy generated by phi over each basis cycle, realized
/// as the integral of omega over the swept chain, mod 1. Throws
/// NotPreserving when phi_1^* omega differs from omega at probe points.
FluxResult flux_omega(const DifferentialForm& omega, const FlowMap& phi, const std::vector<NamedCycle>& basis,
                      const FluxOptions& opts = {});

/// Max over basis cycles of the distance between the flux and
/// (phi_1^* h - h)(c).
double flux_vs_character_defect(const DifferentialCharacter& h, const FlowMap& phi,
                                const std::vector<NamedCycle>& basis, const FluxOptions& opts = {});

}  // namespace transgress
