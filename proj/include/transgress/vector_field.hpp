#pragma once

#include "transgress/manifold.hpp"

#include <functional>
#include <optional>

namespace transgress {

/// Step for central differences: h_fd times max(1, |x|_inf).
inline constexpr double h_fd = 1e-5;

double fd_step(const Point& x);

/// Tangent vector field on M. Values are projected onto T_x M.
class VectorField {
public:
    using Evaluator = std::function<Vector(const Point&)>;
    /// Derivative of the field along M: returns the D x D matrix J with
    /// J v = d/dt X(c(t)) for curves c on M with c'(0) = v tangent.
    using Jacobian = std::function<Matrix(const Point&)>;

    VectorField() = default;
    VectorField(ManifoldPtr manifold, Evaluator evaluator, Jacobian jacobian = nullptr);

    static VectorField zero(ManifoldPtr manifold);

    const ManifoldPtr& manifold() const { return manifold_; }
    Vector operator()(const Point& x) const;
    /// Directional derivative of the field at x along tangent vector v.
    Vector derivative(const Point& x, const Vector& v) const;
    bool has_jacobian() const { return static_cast<bool>(jacobian_); }

    VectorField scaled(double c) const;
    VectorField plus(const VectorField& other) const;

private:
    ManifoldPtr manifold_;
    Evaluator evaluator_;
    Jacobian jacobian_;
};

/// X_t(x) for t in [0, 1]; values are projected onto T_x M.
class TimeDependentField {
public:
    using Evaluator = std::function<Vector(double, const Point&)>;

    TimeDependentField() = default;
    TimeDependentField(ManifoldPtr manifold, Evaluator evaluator);
    /// Autonomous field, t ignored.
    explicit TimeDependentField(const VectorField& field);

    const ManifoldPtr& manifold() const { return manifold_; }
    Vector operator()(double t, const Point& x) const;
    bool autonomous() const { return autonomous_.has_value(); }
    const std::optional<VectorField>& autonomous_field() const { return autonomous_; }

private:
    ManifoldPtr manifold_;
    Evaluator evaluator_;
    std::optional<VectorField> autonomous_;
};

/// Smooth map between embedded manifolds, with optional closed-form
/// differential (D_target x D_source acting on tangent vectors).
class SmoothMap {
public:
    using Map = std::function<Point(const Point&)>;
    using Differential = std::function<Matrix(const Point&)>;

    SmoothMap() = default;
    SmoothMap(ManifoldPtr source, ManifoldPtr target, Map map, Differential differential = nullptr);

    static SmoothMap identity(ManifoldPtr manifold);

    const ManifoldPtr& source() const { return source_; }
    const ManifoldPtr& target() const { return target_; }
    Point operator()(const Point& x) const { return map_(x); }
    /// Pushforward of the tangent vectors in the columns of v.
    Matrix push(const Point& x, const Matrix& v) const;
    bool has_differential() const { return static_cast<bool>(differential_); }

private:
    ManifoldPtr source_;
    ManifoldPtr target_;
    Map map_;
    Differential differential_;
};

}  // namespace transgress
