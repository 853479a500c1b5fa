#include "transgress/vector_field.hpp"

#include <algorithm>
#include <cmath>

namespace transgress {

double fd_step(const Point& x) { return h_fd * std::max(1.0, x.cwiseAbs().maxCoeff()); }

VectorField::VectorField(ManifoldPtr manifold, Evaluator evaluator, Jacobian jacobian)
    : manifold_(std::move(manifold)), evaluator_(std::move(evaluator)), jacobian_(std::move(jacobian)) {}

VectorField VectorField::zero(ManifoldPtr manifold) {
    const int D = manifold->ambient_dim();
    return VectorField(
        manifold, [D](const Point&) { return Vector(Vector::Zero(D)); },
        [D](const Point&) { return Matrix(Matrix::Zero(D, D)); });
}

Vector VectorField::operator()(const Point& x) const { return manifold_->tangent_projector(x) * evaluator_(x); }

Vector VectorField::derivative(const Point& x, const Vector& v) const {
    if (jacobian_) return jacobian_(x) * v;
    const double h = fd_step(x);
    const Point xp = manifold_->project(x + h * v);
    const Point xm = manifold_->project(x - h * v);
    return ((*this)(xp) - (*this)(xm)) / (2.0 * h);
}

VectorField VectorField::scaled(double c) const {
    const VectorField self = *this;
    Jacobian jac;
    if (jacobian_) jac = [self, c](const Point& x) { return Matrix(c * self.jacobian_(x)); };
    return VectorField(manifold_, [self, c](const Point& x) { return Vector(c * self(x)); }, jac);
}

VectorField VectorField::plus(const VectorField& other) const {
    const VectorField self = *this;
    Jacobian jac;
    if (jacobian_ && other.jacobian_)
        jac = [self, other](const Point& x) { return Matrix(self.jacobian_(x) + other.jacobian_(x)); };
    return VectorField(manifold_, [self, other](const Point& x) { return Vector(self(x) + other(x)); }, jac);
}

TimeDependentField::TimeDependentField(ManifoldPtr manifold, Evaluator evaluator)
    : manifold_(std::move(manifold)), evaluator_(std::move(evaluator)) {}

TimeDependentField::TimeDependentField(const VectorField& field)
    : manifold_(field.manifold()), evaluator_([field](double, const Point& x) { return field(x); }), autonomous_(field) {}

Vector TimeDependentField::operator()(double t, const Point& x) const {
    return manifold_->tangent_projector(x) * evaluator_(t, x);
}

SmoothMap::SmoothMap(ManifoldPtr source, ManifoldPtr target, Map map, Differential differential)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)), differential_(std::move(differential)) {}

SmoothMap SmoothMap::identity(ManifoldPtr manifold) {
    const int D = manifold->ambient_dim();
    return SmoothMap(
        manifold, manifold, [](const Point& x) { return x; }, [D](const Point&) { return Matrix(Matrix::Identity(D, D)); });
}

Matrix SmoothMap::push(const Point& x, const Matrix& v) const {
    if (differential_) return differential_(x) * v;
    const Point fx = map_(x);
    Matrix out(target_->ambient_dim(), v.cols());
    for (int c = 0; c < v.cols(); ++c) {
        const double h = fd_step(x);
        const Point fp = target_->lift_near(map_(source_->project(x + h * v.col(c))), fx);
        const Point fm = target_->lift_near(map_(source_->project(x - h * v.col(c))), fx);
        out.col(c) = (fp - fm) / (2.0 * h);
    }
    return out;
}

}  // namespace transgress
