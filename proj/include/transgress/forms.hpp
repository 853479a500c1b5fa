#pragma once

#include "transgress/mesh.hpp"
#include "transgress/vector_field.hpp"

#include <functional>
#include <memory>
#include <random>
#include <string>
#include <vector>

namespace transgress {

/// Degree-p alternating multilinear evaluator on tangent vectors of M.
///
/// Arguments are the columns of a D x p matrix. operator() projects them
/// onto T_x M before calling the evaluator, so the form only sees
/// tangential components.
class DifferentialForm {
public:
    using Evaluator = std::function<double(const Point&, const Matrix&)>;

    DifferentialForm() = default;
    DifferentialForm(ManifoldPtr manifold, int degree, Evaluator evaluator, std::string name = {});

    int degree() const { return degree_; }
    const ManifoldPtr& manifold() const { return manifold_; }
    const std::string& name() const { return name_; }

    double operator()(const Point& x, const Matrix& vectors) const;
    /// Evaluation without projecting the arguments (they must be tangent).
    double evaluate_tangent(const Point& x, const Matrix& vectors) const { return evaluator_(x, vectors); }

    /// Attaches a closed-form exterior derivative.
    DifferentialForm with_derivative(DifferentialForm d) const;
    /// Declares the form closed; exterior_derivative then returns zero.
    DifferentialForm declared_closed() const;
    bool is_closed_flag() const { return closed_; }
    bool has_closed_form_derivative() const { return static_cast<bool>(derivative_); }
    const std::shared_ptr<const DifferentialForm>& closed_form_derivative() const { return derivative_; }

    DifferentialForm renamed(std::string name) const;

private:
    ManifoldPtr manifold_;
    int degree_ = 0;
    Evaluator evaluator_;
    std::string name_;
    bool closed_ = false;
    std::shared_ptr<const DifferentialForm> derivative_;
};

/// Top-degree form with a nondegeneracy certificate.
class VolumeForm : public DifferentialForm {
public:
    VolumeForm() = default;
    explicit VolumeForm(DifferentialForm form);

    /// Smallest |mu(E)| over a seeded sample of 64 points, E an orthonormal
    /// oriented tangent frame. Zero means the form is degenerate somewhere.
    double nondegeneracy_certificate(std::uint64_t seed = 64) const;
    /// mu on the oriented orthonormal frame at x (the density).
    double density(const Point& x) const;
};

DifferentialForm zero_form(ManifoldPtr manifold, int degree);
DifferentialForm scaled(const DifferentialForm& a, double c);
DifferentialForm sum(const DifferentialForm& a, const DifferentialForm& b);

/// 0-form from a function on M.
DifferentialForm function_form(ManifoldPtr manifold, std::function<double(const Point&)> f,
                               std::function<Vector(const Point&)> gradient = nullptr);

/// 1-form v -> b(x).v from an ambient covector field b. When Db (the
/// Jacobian of b) is given, d is (u, v) -> (Db u).v - (Db v).u.
DifferentialForm covector_form(ManifoldPtr manifold, std::function<Vector(const Point&)> b,
                               std::function<Matrix(const Point&)> Db = nullptr);

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b);
DifferentialForm pullback(const SmoothMap& phi, const DifferentialForm& a);
DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a);
DifferentialForm exterior_derivative(const DifferentialForm& a);

/// Signed sum over simplices of the quadrature of a on the oriented
/// tangent frame. Degree 0 is the signed sum of point values.
double integrate_form(const DifferentialForm& a, const SimplicialMesh& mesh);

std::vector<double> periods(const DifferentialForm& a, const std::vector<NamedCycle>& cycles);

struct IntegralityReport {
    bool integral = false;
    std::vector<double> periods;
    std::vector<double> defects;
    double max_defect = 0.0;
};

IntegralityReport is_integral(const DifferentialForm& a, const std::vector<NamedCycle>& cycles, double tol);

/// Random probes of alternation and multilinearity.
struct FormProbeReport {
    double alternation_defect = 0.0;
    double multilinearity_defect = 0.0;
    double projection_defect = 0.0;
};
FormProbeReport probe_form(const DifferentialForm& a, std::uint64_t seed, int probes = 100);

// Named scenario forms.
VolumeForm sphere_area_normalized(ManifoldPtr sphere2);
VolumeForm su2_biinvariant(ManifoldPtr sphere3);
VolumeForm torus_dxdy(ManifoldPtr torus);
VolumeForm product_area(ManifoldPtr sphere2xsphere2);
/// Looks up one of the named forms above by id; throws ConfigError.
VolumeForm make_volume_form(const std::string& id, ManifoldPtr manifold);

/// Block projections S^2 x S^2 -> S^2.
SmoothMap factor_projection(ManifoldPtr product, ManifoldPtr sphere2, int factor);

}  // namespace transgress
