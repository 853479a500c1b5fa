#include "transgress/errors.hpp"
#include "transgress/fields.hpp"
#include "transgress/mesh_families.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace transgress;

namespace {

constexpr double pi = std::numbers::pi;

// Infinitesimal rotation taking e_i towards e_j.
VectorField rotation(const ManifoldPtr& M, int i, int j) {
    const int D = M->ambient_dim();
    Matrix A = Matrix::Zero(D, D);
    A(j, i) = 1.0;
    A(i, j) = -1.0;
    return VectorField(M, [A](const Point& x) { return Vector(A * x); }, [A](const Point&) { return A; });
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("the field of a height potential solves i_X mu = dz") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    const DifferentialForm z = function_form(S2, [](const Point& x) { return x(2); },
                                             [](const Point&) { return Vector{{0.0, 0.0, 1.0}}; });
    const VectorField X = field_from_potential(z, nu);
    CHECK(potential_residual(X, z, nu) < 1e-10);
    // The Hamiltonian of the height is a rotation about the z axis.
    std::mt19937_64 rng(1);
    for (int k = 0; k < 5; ++k) {
        const Point x = S2->sample(rng);
        CHECK(std::abs(X(x)(2)) < 1e-12);
        CHECK(std::abs(X(x).dot(x)) < 1e-12);
    }
}

TEST_CASE("potentials of the wrong degree and degenerate forms are rejected") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    CHECK_THROWS_AS(field_from_potential(zero_form(S2, 1), nu), DegreeMismatch);
    const VolumeForm flat(DifferentialForm(S2, 2, [](const Point&, const Matrix&) { return 0.0; }));
    const DifferentialForm z = function_form(S2, [](const Point& x) { return x(2); });
    const VectorField X = field_from_potential(z, flat);
    CHECK_THROWS_AS(X(Point{{0.0, 0.0, 1.0}}), SingularVolumeForm);
}

TEST_CASE("brackets of rotations follow so(3)") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VectorField A = rotation(S2, 0, 1), B = rotation(S2, 1, 2), C = rotation(S2, 0, 2);
    const VectorField AB = lie_bracket(A, B), BA = lie_bracket(B, A);
    std::mt19937_64 rng(2);
    for (int k = 0; k < 5; ++k) {
        const Point x = S2->sample(rng);
        CHECK((AB(x) + BA(x)).norm() < 1e-12);
        // [A, B] is a rotation in the remaining plane.
        const Vector c = C(x);
        CHECK(std::abs(std::abs(AB(x).dot(c)) - c.squaredNorm()) < 1e-8);
    }
    CHECK(jacobi_defect(A, B, C, 3) < 1e-8);
}

TEST_CASE("a full rotation returns every point") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const FlowMap phi = flow(TimeDependentField(rotation(S3, 0, 2)));
    std::mt19937_64 rng(4);
    for (int k = 0; k < 5; ++k) {
        const Point x = S3->sample(rng);
        CHECK((phi(2 * pi, x) - x).norm() < 1e-9);
        CHECK((phi.inverse(0.8, phi(0.8, x)) - x).norm() < 1e-12);
        CHECK(S3->constraint(phi(0.8, x)).norm() < tol_manifold);
    }
}

TEST_CASE("the log derivative of an autonomous flow is the field") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VectorField X = rotation(S2, 0, 1);
    const FlowMap phi = flow(TimeDependentField(X));
    const Point x{{0.6, 0.0, 0.8}};
    CHECK((phi.log_derivative(0.4, x) - X(x)).norm() < 1e-12);
    const FlowMap timed = flow(TimeDependentField(S2, [X](double, const Point& y) { return X(y); }));
    CHECK((timed.log_derivative(0.4, x) - X(x)).norm() < 1e-5);
}

TEST_CASE("Hamiltonian flows preserve the area form, gradient flows do not") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    const DifferentialForm h = function_form(S2, [](const Point& x) { return 0.3 * x(0) * x(2); });
    CHECK(preservation_defect(flow(TimeDependentField(field_from_potential(h, nu))), nu) < 1e-6);
    const VectorField grad(S2, [](const Point&) { return Vector{{0.0, 0.0, 0.5}}; });
    CHECK(preservation_defect(flow(TimeDependentField(grad)), nu) > 1e-3);
}

TEST_CASE("advecting a mesh keeps its combinatorics") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const SimplicialMesh c = latitude_mesh(*S2, 1.0, 16);
    const SimplicialMesh moved = advect_mesh(flow(TimeDependentField(rotation(S2, 1, 2))), 0.5, c);
    CHECK(moved.num_simplices() == c.num_simplices());
    CHECK(boundary_residual(*S2, moved) == 0);
    CHECK(max_constraint_violation(*S2, moved) < tol_manifold);
}

TEST_CASE("flows need a positive step count") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    CHECK_THROWS_AS(FlowMap(TimeDependentField(VectorField::zero(S2)), 0), ConfigError);
}

}  // TEST_SUITE
