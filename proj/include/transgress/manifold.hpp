#pragma once

#include <Eigen/Dense>

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace transgress {

using Point = Eigen::VectorXd;
using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Constraint residual accepted for vertices of exact-model manifolds.
inline constexpr double tol_manifold = 1e-10;

class SimplicialMesh;

/// A closed cycle of the manifold carrying a name, used as a homology basis element.
struct NamedCycle {
    std::string name;
    std::shared_ptr<const SimplicialMesh> mesh;
};

/// An n-manifold realized extrinsically as a constraint surface in R^D.
///
/// Two projections are exposed. `project` maps a nearby ambient point onto the
/// model of M that meshes live in; `retract` returns the canonical
/// representative. They coincide for constraint surfaces. For the flat torus
/// the model is the covering plane, so `project` is the identity while
/// `retract` reduces modulo 1.
class EmbeddedManifold {
public:
    virtual ~EmbeddedManifold() = default;

    virtual std::string id() const = 0;
    virtual int ambient_dim() const = 0;
    virtual int intrinsic_dim() const = 0;

    /// Constraint map R^D -> R^(D-n); M is its zero set.
    virtual Vector constraint(const Point& x) const = 0;

    /// Canonical retraction onto M. Throws OutOfBasin beyond basin_radius().
    virtual Point retract(const Point& x) const = 0;
    virtual Point project(const Point& x) const = 0;
    /// Differential of project() at an ambient point (D x D).
    virtual Matrix project_differential(const Point& y) const = 0;

    /// Orthogonal projector onto T_x M.
    virtual Matrix tangent_projector(const Point& x) const = 0;
    /// Outward unit normals (D x (D-n)); the orientation convention is
    /// outward-normal-first.
    virtual Matrix normal_frame(const Point& x) const = 0;

    /// Returns the representative of x closest to ref in the covering model.
    virtual Point lift_near(const Point& x, const Point& ref) const;
    /// Lattice period of the covering model (0 when M is not a quotient).
    virtual double period() const { return 0.0; }

    /// Distance of an ambient point from the region where project() is
    /// well conditioned; negative outside the basin.
    virtual double basin_margin(const Point& y) const = 0;
    virtual double basin_radius() const { return basin_radius_; }
    void set_basin_radius(double r) { basin_radius_ = r; }

    /// Uniformly distributed point on M (w.r.t. a natural measure).
    virtual Point sample(std::mt19937_64& rng) const = 0;

    /// +1 / -1 / 0 for a frame of n tangent vectors (D x n).
    int orientation_sign(const Point& x, const Matrix& frame) const;

    /// Orthonormal tangent frame (D x n) from the projector columns,
    /// Gram-Schmidt in fixed column order.
    Matrix tangent_frame(const Point& x) const;

    /// True when H_(n-1)(M) vanishes, so closed (n-1)-cycles bound.
    virtual bool codim_one_homology_trivial() const = 0;

    const std::vector<NamedCycle>& homology_basis() const { return homology_basis_; }
    void set_homology_basis(std::vector<NamedCycle> basis) { homology_basis_ = std::move(basis); }

protected:
    double basin_radius_ = 0.9;
    std::vector<NamedCycle> homology_basis_;
};

using ManifoldPtr = std::shared_ptr<const EmbeddedManifold>;

/// Unit sphere S^n in R^(n+1) with retraction x -> x/|x|.
class RoundSphere final : public EmbeddedManifold {
public:
    explicit RoundSphere(int n);

    std::string id() const override;
    int ambient_dim() const override { return n_ + 1; }
    int intrinsic_dim() const override { return n_; }
    Vector constraint(const Point& x) const override;
    Point retract(const Point& x) const override { return project(x); }
    Point project(const Point& x) const override;
    Matrix project_differential(const Point& y) const override;
    Matrix tangent_projector(const Point& x) const override;
    Matrix normal_frame(const Point& x) const override;
    double basin_margin(const Point& y) const override;
    Point sample(std::mt19937_64& rng) const override;
    bool codim_one_homology_trivial() const override { return true; }

private:
    int n_;
};

/// Flat torus (R/Z)^2. Meshes live on the covering plane.
class FlatTorus final : public EmbeddedManifold {
public:
    FlatTorus();

    std::string id() const override { return "torus2"; }
    int ambient_dim() const override { return 2; }
    int intrinsic_dim() const override { return 2; }
    Vector constraint(const Point& x) const override;
    Point retract(const Point& x) const override;
    Point project(const Point& x) const override { return x; }
    Matrix project_differential(const Point& y) const override;
    Matrix tangent_projector(const Point& x) const override;
    Matrix normal_frame(const Point& x) const override;
    Point lift_near(const Point& x, const Point& ref) const override;
    double period() const override { return 1.0; }
    double basin_margin(const Point&) const override { return 1.0; }
    Point sample(std::mt19937_64& rng) const override;
    bool codim_one_homology_trivial() const override { return false; }
};

/// S^2 x S^2 in R^6, blockwise retraction.
class SpherePair final : public EmbeddedManifold {
public:
    SpherePair() = default;

    std::string id() const override { return "sphere2xsphere2"; }
    int ambient_dim() const override { return 6; }
    int intrinsic_dim() const override { return 4; }
    Vector constraint(const Point& x) const override;
    Point retract(const Point& x) const override { return project(x); }
    Point project(const Point& x) const override;
    Matrix project_differential(const Point& y) const override;
    Matrix tangent_projector(const Point& x) const override;
    Matrix normal_frame(const Point& x) const override;
    double basin_margin(const Point& y) const override;
    Point sample(std::mt19937_64& rng) const override;
    bool codim_one_homology_trivial() const override { return true; }
};

/// Builds one of "sphere2", "sphere3", "torus2", "sphere2xsphere2" (with
/// homology bases attached). Unknown ids throw ConfigError.
ManifoldPtr make_manifold(const std::string& id);

}  // namespace transgress
