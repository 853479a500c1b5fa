#pragma once

#include "transgress/characters.hpp"
#include "transgress/grassmannian.hpp"
#include "transgress/scenario.hpp"

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace transgress {

/// Objects shared by the checks of one scenario run.
class ScenarioContext {
public:
    explicit ScenarioContext(const Scenario& scenario, std::uint64_t seed);

    const ManifoldPtr& manifold() const { return M_; }
    const VolumeForm& volume() const { return mu_; }
    std::uint64_t seed() const { return seed_; }

    /// Named potential from the scenario table.
    const DifferentialForm& potential(const std::string& name) const;
    /// Field by table name, or an inline spec string.
    VectorField field(const std::string& name_or_spec) const;
    /// "volume", a potential name, `d(name)` or `wedge(a, b)`.
    DifferentialForm form(const std::string& spec) const;
    /// h_mu for spheres and products; the lattice cochain on the torus.
    const CharacterPtr& character() const { return h_; }

private:
    ManifoldPtr M_;
    VolumeForm mu_;
    std::uint64_t seed_;
    std::map<std::string, DifferentialForm> potentials_;
    std::map<std::string, std::string> field_specs_;
    CharacterPtr h_;
};

DifferentialForm make_potential(const ManifoldPtr& M, const VolumeForm& mu, const SpecString& spec);
VectorField make_field(const ScenarioContext& ctx, const SpecString& spec);
/// `rotation(i, j, angle)`, `antipodal()` or `flow(field, time)`.
SmoothMap make_map(const ScenarioContext& ctx, const SpecString& spec);

/// Family t -> N(t), t in [0, 1], of k-submanifolds over a parameter model:
/// vertex v of every frame sits at place(t, params.col(v)).
struct SubmanifoldFamily {
    SimplicialMesh combinatorics;
    Matrix params;
    std::string model;  // "point", "circle" or "sphere2"
    std::function<Point(double, const Vector&)> place;
    /// The number of time steps is rounded up to a multiple of this.
    int step_multiple = 1;

    SimplicialMesh frame(double t) const;
    /// Frame with the parameters moved by the model rotation of `turns`.
    SimplicialMesh reparametrized_frame(double t, double turns) const;
};

/// Model rotation: shift of the circle parameter or rotation of the model
/// sphere about its third axis, by `turns` full turns.
Vector rotate_model(const std::string& model, const Vector& p, double turns);

SubmanifoldFamily make_family(const ScenarioContext& ctx, const SpecString& spec, int resolution);
LoopOfSubmanifolds make_loop(const SubmanifoldFamily& family, int steps);
/// The same loop of images traversed by embeddings whose parametrization
/// rotates by `turns` model turns over the loop.
EmbeddingLoop make_embedding_loop(const SubmanifoldFamily& family, int steps, double turns);

/// Cycles and chains: `fundamental()`, `latitude(theta)`, `cap(theta)`,
/// `x_circle(y)`, `y_circle(x)`, `round_sphere(r)`, or any family spec
/// (its frame at t = 0).
SimplicialMesh make_cycle(const ScenarioContext& ctx, const SpecString& spec, int resolution);

/// Chains for curvature checks: `caps(count)`, `boxes(count)`,
/// `cells(count)`, `product_caps(count)`.
std::vector<SimplicialMesh> make_chains(const ScenarioContext& ctx, const SpecString& spec, int resolution);

struct PatchFamily {
    SimplicialMesh combinatorics;
    Matrix params;
    std::function<Point(double, double, const Vector&)> place;
    bool periodic_s = false;
    bool periodic_t = false;

    FamilyPatch sample(int intervals) const;
};

/// `hopf(segments)`, `cap_family(beta, segments)`, `null_torus(rho, segments)`.
PatchFamily make_patch_family(const ScenarioContext& ctx, const SpecString& spec);

/// `circle_cube(rho, spread, segments)`.
CubeGenerator make_cube(const ScenarioContext& ctx, const SpecString& spec);

}  // namespace transgress
