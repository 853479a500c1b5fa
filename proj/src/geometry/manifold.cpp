#include "transgress/manifold.hpp"

#include "transgress/errors.hpp"
#include "transgress/mesh_families.hpp"

#include <cmath>

namespace transgress {

Point EmbeddedManifold::lift_near(const Point& x, const Point&) const { return x; }

int EmbeddedManifold::orientation_sign(const Point& x, const Matrix& frame) const {
    const Matrix normals = normal_frame(x);
    Matrix full(ambient_dim(), ambient_dim());
    full << normals, frame;
    const double det = full.determinant();
    double scale = 1.0;
    for (int c = 0; c < frame.cols(); ++c) scale *= std::max(frame.col(c).norm(), 1e-300);
    if (std::abs(det) <= 1e-14 * scale) return 0;
    return det > 0 ? 1 : -1;
}

Matrix EmbeddedManifold::tangent_frame(const Point& x) const {
    const Matrix P = tangent_projector(x);
    const int n = intrinsic_dim();
    Matrix frame(ambient_dim(), n);
    int found = 0;
    for (int c = 0; c < P.cols() && found < n; ++c) {
        Vector v = P.col(c);
        for (int j = 0; j < found; ++j) v -= frame.col(j).dot(v) * frame.col(j);
        const double norm = v.norm();
        if (norm > 1e-6) frame.col(found++) = v / norm;
    }
    if (found < n) throw SingularVolumeForm("tangent projector rank below intrinsic dimension");
    return frame;
}

// ---------------------------------------------------------------- RoundSphere

RoundSphere::RoundSphere(int n) : n_(n) {}

std::string RoundSphere::id() const { return "sphere" + std::to_string(n_); }

Vector RoundSphere::constraint(const Point& x) const {
    Vector c(1);
    c(0) = x.squaredNorm() - 1.0;
    return c;
}

Point RoundSphere::project(const Point& x) const {
    const double r = x.norm();
    if (!(std::abs(r - 1.0) < basin_radius_))
        throw OutOfBasin("point at radius " + std::to_string(r) + " outside the sphere's retraction basin");
    return x / r;
}

Matrix RoundSphere::project_differential(const Point& y) const {
    const double r = y.norm();
    const Vector u = y / r;
    return (Matrix::Identity(y.size(), y.size()) - u * u.transpose()) / r;
}

Matrix RoundSphere::tangent_projector(const Point& x) const {
    const Vector u = x.normalized();
    return Matrix::Identity(x.size(), x.size()) - u * u.transpose();
}

Matrix RoundSphere::normal_frame(const Point& x) const { return x.normalized(); }

double RoundSphere::basin_margin(const Point& y) const { return basin_radius_ - std::abs(y.norm() - 1.0); }

Point RoundSphere::sample(std::mt19937_64& rng) const {
    std::normal_distribution<double> g(0.0, 1.0);
    Point x(n_ + 1);
    do {
        for (int i = 0; i <= n_; ++i) x(i) = g(rng);
    } while (x.norm() < 1e-8);
    return x.normalized();
}

// ------------------------------------------------------------------ FlatTorus

FlatTorus::FlatTorus() { basin_radius_ = 1e300; }

Vector FlatTorus::constraint(const Point&) const { return Vector(0); }

Point FlatTorus::retract(const Point& x) const {
    Point r(2);
    for (int i = 0; i < 2; ++i) {
        r(i) = x(i) - std::floor(x(i));
        if (r(i) >= 1.0) r(i) = 0.0;
    }
    return r;
}

Matrix FlatTorus::project_differential(const Point&) const { return Matrix::Identity(2, 2); }
Matrix FlatTorus::tangent_projector(const Point&) const { return Matrix::Identity(2, 2); }
Matrix FlatTorus::normal_frame(const Point&) const { return Matrix(2, 0); }

Point FlatTorus::lift_near(const Point& x, const Point& ref) const {
    Point r = x;
    for (int i = 0; i < 2; ++i) r(i) -= std::round(x(i) - ref(i));
    return r;
}

Point FlatTorus::sample(std::mt19937_64& rng) const {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Point x(2);
    x(0) = u(rng);
    x(1) = u(rng);
    return x;
}

// ----------------------------------------------------------------- SpherePair

Vector SpherePair::constraint(const Point& x) const {
    Vector c(2);
    c(0) = x.head<3>().squaredNorm() - 1.0;
    c(1) = x.tail<3>().squaredNorm() - 1.0;
    return c;
}

Point SpherePair::project(const Point& x) const {
    const double r1 = x.head<3>().norm();
    const double r2 = x.tail<3>().norm();
    if (!(std::abs(r1 - 1.0) < basin_radius_ && std::abs(r2 - 1.0) < basin_radius_))
        throw OutOfBasin("point outside the product retraction basin");
    Point p(6);
    p.head<3>() = x.head<3>() / r1;
    p.tail<3>() = x.tail<3>() / r2;
    return p;
}

Matrix SpherePair::project_differential(const Point& y) const {
    Matrix D = Matrix::Zero(6, 6);
    for (int b = 0; b < 2; ++b) {
        const Eigen::Vector3d v = y.segment<3>(3 * b);
        const double r = v.norm();
        const Eigen::Vector3d u = v / r;
        D.block<3, 3>(3 * b, 3 * b) = (Eigen::Matrix3d::Identity() - u * u.transpose()) / r;
    }
    return D;
}

Matrix SpherePair::tangent_projector(const Point& x) const {
    Matrix P = Matrix::Zero(6, 6);
    for (int b = 0; b < 2; ++b) {
        const Eigen::Vector3d u = x.segment<3>(3 * b).normalized();
        P.block<3, 3>(3 * b, 3 * b) = Eigen::Matrix3d::Identity() - u * u.transpose();
    }
    return P;
}

Matrix SpherePair::normal_frame(const Point& x) const {
    Matrix N = Matrix::Zero(6, 2);
    N.block<3, 1>(0, 0) = x.head<3>().normalized();
    N.block<3, 1>(3, 1) = x.tail<3>().normalized();
    return N;
}

double SpherePair::basin_margin(const Point& y) const {
    return basin_radius_ - std::max(std::abs(y.head<3>().norm() - 1.0), std::abs(y.tail<3>().norm() - 1.0));
}

Point SpherePair::sample(std::mt19937_64& rng) const {
    RoundSphere s2(2);
    Point x(6);
    x.head<3>() = s2.sample(rng);
    x.tail<3>() = s2.sample(rng);
    return x;
}

// ------------------------------------------------------------------- factory

ManifoldPtr make_manifold(const std::string& id) {
    if (id == "sphere2") return std::make_shared<RoundSphere>(2);
    if (id == "sphere3") return std::make_shared<RoundSphere>(3);
    if (id == "sphere2xsphere2") return std::make_shared<SpherePair>();
    if (id == "torus2") {
        auto torus = std::make_shared<FlatTorus>();
        const int m = 64;
        auto x_circle = std::make_shared<SimplicialMesh>(closed_curve_mesh(
            *torus, [](double u) { return Point{{u, 0.0}}; }, m));
        auto y_circle = std::make_shared<SimplicialMesh>(closed_curve_mesh(
            *torus, [](double u) { return Point{{0.0, u}}; }, m));
        torus->set_homology_basis({{"x_circle", x_circle}, {"y_circle", y_circle}});
        return torus;
    }
    throw ConfigError("unknown manifold id '" + id + "'");
}

}  // namespace transgress
