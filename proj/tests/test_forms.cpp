#include "transgress/errors.hpp"
#include "transgress/forms.hpp"
#include "transgress/mesh_families.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace transgress;

namespace {

constexpr double pi = std::numbers::pi;

// x dy - y dx on S^2 with d = 2 dx ^ dy.
DifferentialForm swirl(const ManifoldPtr& M, bool with_jacobian) {
    auto b = [](const Point& x) { return Vector{{-x(1), x(0), 0.0}}; };
    if (!with_jacobian) return covector_form(M, b);
    return covector_form(M, b, [](const Point&) {
        Matrix D = Matrix::Zero(3, 3);
        D(0, 1) = -1.0;
        D(1, 0) = 1.0;
        return D;
    });
}

}  // namespace

TEST_SUITE("forms") {

TEST_CASE("named volume forms have unit total volume") {
    struct Case {
        const char* manifold;
        const char* form;
        int resolution;
    };
    for (const Case& c : {Case{"sphere2", "sphere_area_normalized", 16}, Case{"sphere3", "su2_biinvariant", 8},
                          Case{"torus2", "torus_dxdy", 4}}) {
        const ManifoldPtr M = make_manifold(c.manifold);
        const VolumeForm mu = make_volume_form(c.form, M);
        const SimplicialMesh z = M->id() == "torus2" ? torus_mesh(*M, c.resolution) : sphere_mesh(*M, c.resolution);
        CHECK(integrate_form(mu, z) == doctest::Approx(1.0).epsilon(2e-4));
        CHECK(mu.nondegeneracy_certificate() > 0.0);
    }
}

TEST_CASE("volume form lookup rejects mismatches") {
    CHECK_THROWS_AS(make_volume_form("su2_biinvariant", make_manifold("sphere2")), ConfigError);
    CHECK_THROWS_AS(make_volume_form("nope", make_manifold("sphere2")), ConfigError);
}

TEST_CASE("forms are alternating, multilinear and blind to normal components") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const FormProbeReport r = probe_form(mu, 3);
    CHECK(r.alternation_defect < 1e-12);
    CHECK(r.multilinearity_defect < 1e-12);
    CHECK(r.projection_defect < 1e-12);
    const DifferentialForm w = wedge(swirl(make_manifold("sphere2"), true), function_form(make_manifold("sphere2"),
                                                                                          [](const Point& x) { return x(2); }));
    CHECK(probe_form(w, 5).alternation_defect < 1e-12);
}

TEST_CASE("wedge degree overflow and mismatched sums throw") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    CHECK_THROWS_AS(wedge(nu, swirl(S2, true)), DegreeOverflow);
    CHECK_THROWS_AS(sum(nu, swirl(S2, true)), DegreeMismatch);
    CHECK_THROWS_AS(VolumeForm(swirl(S2, true)), DegreeMismatch);
}

TEST_CASE("Stokes on a cap: the latitude integral of the swirl form") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const double theta = 0.9;
    const DifferentialForm a = swirl(S2, true);
    const double expected = 2 * pi * std::sin(theta) * std::sin(theta);
    const double boundary = integrate_form(a, latitude_mesh(*S2, theta, 256));
    const double interior = integrate_form(exterior_derivative(a), cap_mesh(*S2, theta, 64, 256));
    CHECK(boundary == doctest::Approx(expected).epsilon(1e-4));
    CHECK(interior == doctest::Approx(expected).epsilon(1e-4));
}

TEST_CASE("numerical and closed-form exterior derivatives agree") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const DifferentialForm exact = exterior_derivative(swirl(S2, true));
    const DifferentialForm numeric = exterior_derivative(swirl(S2, false));
    std::mt19937_64 rng(3);
    for (int i = 0; i < 10; ++i) {
        const Point x = S2->sample(rng);
        const Matrix E = S2->tangent_frame(x);
        CHECK(numeric(x, E) == doctest::Approx(exact(x, E)).epsilon(1e-6));
    }
}

TEST_CASE("d of d vanishes") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const DifferentialForm f = function_form(S3, [](const Point& x) { return x(0) * x(1) + std::sin(x(2)); });
    const DifferentialForm dd = exterior_derivative(exterior_derivative(f));
    std::mt19937_64 rng(5);
    for (int i = 0; i < 10; ++i) {
        const Point x = S3->sample(rng);
        CHECK(std::abs(dd(x, S3->tangent_frame(x).leftCols(2))) < 1e-5);
    }
}

TEST_CASE("pullback by a rotation preserves the area form") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    const double c = std::cos(0.7), s = std::sin(0.7);
    Matrix R = Matrix::Identity(3, 3);
    R(0, 0) = c;
    R(0, 1) = -s;
    R(1, 0) = s;
    R(1, 1) = c;
    const SmoothMap rot(S2, S2, [R](const Point& x) { return Point(R * x); }, [R](const Point&) { return R; });
    const DifferentialForm pulled = pullback(rot, nu);
    std::mt19937_64 rng(9);
    for (int i = 0; i < 10; ++i) {
        const Point x = S2->sample(rng);
        const Matrix E = S2->tangent_frame(x);
        CHECK(pulled(x, E) == doctest::Approx(nu(x, E)).epsilon(1e-12));
    }
}

TEST_CASE("interior product contracts the first slot") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    const VectorField X(S2, [](const Point& x) { return Vector{{-x(1), x(0), 0.0}}; });
    const DifferentialForm iX = interior_product(X, nu);
    std::mt19937_64 rng(13);
    const Point x = S2->sample(rng);
    const Matrix E = S2->tangent_frame(x);
    Matrix args(3, 2);
    args << X(x), E.col(1);
    CHECK(iX(x, E.col(1)) == doctest::Approx(nu(x, args)));
}

TEST_CASE("periods of a scaled volume form") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const VolumeForm nu = sphere_area_normalized(S2);
    const std::vector<NamedCycle> basis{{"sphere", std::make_shared<SimplicialMesh>(sphere_mesh(*S2, 16))}};
    const IntegralityReport integral = is_integral(scaled(nu, 3.0), basis, 1e-3);
    CHECK(integral.integral);
    const IntegralityReport half = is_integral(scaled(nu, 2.5), basis, 1e-3);
    CHECK_FALSE(half.integral);
    CHECK(half.max_defect == doctest::Approx(0.5).epsilon(1e-2));
}

TEST_CASE("integrating a form over a mesh of the wrong dimension throws") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    CHECK_THROWS_AS(integrate_form(sphere_area_normalized(S2), latitude_mesh(*S2, 1.0, 8)), DegreeMismatch);
}

}  // TEST_SUITE
