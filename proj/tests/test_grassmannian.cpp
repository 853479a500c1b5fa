#include "oracles.hpp"

#include "transgress/errors.hpp"
#include "transgress/grassmannian.hpp"
#include "transgress/mesh_families.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace transgress;

namespace {

constexpr double pi = std::numbers::pi;

VectorField rotation(const ManifoldPtr& M, int i, int j) {
    const int D = M->ambient_dim();
    Matrix A = Matrix::Zero(D, D);
    A(j, i) = 1.0;
    A(i, j) = -1.0;
    return VectorField(M, [A](const Point& x) { return Vector(A * x); }, [A](const Point&) { return A; });
}

// Rotation scaled by 1 + c x_axis; not Killing, so brackets are nontrivial.
VectorField bent_rotation(const ManifoldPtr& M, int i, int j, int axis, double c) {
    const VectorField R = rotation(M, i, j);
    return VectorField(M, [R, axis, c](const Point& x) { return Vector((1.0 + c * x(axis)) * R(x)); });
}

SimplicialMesh point_mesh(const Point& x) {
    SimplicialMesh m(0, static_cast<int>(x.size()));
    m.add_vertex(x);
    m.add_simplex({0});
    return m;
}

// Point moving once around the latitude at polar angle theta.
LoopOfSubmanifolds point_loop(double theta, int steps) {
    LoopOfSubmanifolds loop;
    loop.type = "point";
    for (int j = 0; j <= steps; ++j) {
        const double phi = 2 * pi * j / steps;
        loop.times.push_back(static_cast<double>(j) / steps);
        loop.frames.push_back(point_mesh(
            Point{{std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)}}));
    }
    return loop;
}

SimplicialMesh s3_circle(double rho, int segments) {
    const ManifoldPtr S3 = make_manifold("sphere3");
    return closed_curve_mesh(
        *S3,
        [rho](double u) {
            return Point{{std::cos(rho), std::sin(rho) * std::cos(2 * pi * u), std::sin(rho) * std::sin(2 * pi * u), 0.0}};
        },
        segments);
}

}  // namespace

TEST_SUITE("grassmannian") {

TEST_CASE("rotation fields pair to 1/(2 pi) along a great circle") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{great_circle_mesh(*S3, 0, 1, 256), "circle"};
    const double v = tilde_form(mu, N, {NormalField::from_field(rotation(S3, 0, 2)), NormalField::from_field(rotation(S3, 0, 3))});
    CHECK(v == doctest::Approx(oracles::great_circle_rotation_pairing()).epsilon(1e-6));
}

TEST_CASE("the transgressed form is alternating and ignores tangent shifts") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{s3_circle(0.7, 64), "circle"};
    const VectorField X = bent_rotation(S3, 0, 3, 2, 0.4), Y = rotation(S3, 0, 2);
    const NormalField x = NormalField::restrict(X, N.mesh), y = NormalField::restrict(Y, N.mesh);
    const double xy = tilde_form(mu, N, {x, y}), yx = tilde_form(mu, N, {y, x});
    CHECK(std::abs(xy) > 1e-3);
    CHECK(std::abs(xy + yx) < 1e-14);
    // Per-vertex tangent components are integrated away by the frame.
    Matrix T = curve_vertex_tangents(*S3, N.mesh);
    for (int v = 0; v < T.cols(); ++v) T.col(v) *= std::sin(0.3 * v);
    const double shifted = tilde_form(mu, N, {x.plus(NormalField::per_vertex(T)), y});
    CHECK(shifted == doctest::Approx(xy).epsilon(1e-3));
}

TEST_CASE("transgression requires the right number of normal fields") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{s3_circle(0.5, 16), "circle"};
    CHECK_THROWS_AS(tilde_form(mu, N, {NormalField::from_field(rotation(S3, 0, 2))}), DegreeMismatch);
    CHECK_THROWS_AS(tilde_form(mu, N, {NormalField::per_vertex(Matrix::Zero(4, 3)), NormalField::per_vertex(Matrix::Zero(4, 3))}),
                    DegreeMismatch);
}

TEST_CASE("embedding and image forms agree on the same parametrization") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const SimplicialMesh c = s3_circle(0.6, 64);
    const EmbeddingPoint f{c, c.vertex_matrix()};
    const VectorField X = bent_rotation(S3, 0, 3, 2, 0.5), Y = rotation(S3, 0, 2);
    const double hat = hat_form(mu, f, {NormalField::restrict(X, c), NormalField::restrict(Y, c)});
    const double tilde = tilde_form(mu, {c, "circle"}, {NormalField::restrict(X, c), NormalField::restrict(Y, c)});
    CHECK(hat == doctest::Approx(tilde).epsilon(1e-14));
    CHECK(f.injectivity_radius() > 0.0);
}

TEST_CASE("the Lichnerowicz cocycle: antisymmetry, cocycle identity, double contraction") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{great_circle_mesh(*S3, 0, 1, 128), "circle"};
    const VectorField X = bent_rotation(S3, 0, 2, 3, 0.3), Y = rotation(S3, 0, 3);
    CHECK(lichnerowicz(N, X, Y, mu) == -lichnerowicz(N, Y, X, mu));
    CHECK(ks_comparison_defect(N, X, Y, mu) < 1e-12);
    const VectorField A = rotation(S3, 0, 2), B = rotation(S3, 0, 3), C = rotation(S3, 1, 2);
    CHECK(cocycle_identity_defect(N, A, B, C, mu) < 1e-6);
    CHECK_THROWS_AS(lichnerowicz({sphere_mesh(*S3, 1), "sphere2"}, X, Y, mu), DegreeMismatch);
}

TEST_CASE("a point loop around a latitude has the cap area") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const CharacterPtr h = make_h_mu(sphere_area_normalized(S2));
    const LoopOfSubmanifolds loop = point_loop(1.0, 512);
    check_loop(*S2, loop);
    CHECK(circle_distance(tilde_character_evaluate(*h, loop).value(), oracles::cap_fraction(1.0)) < 1e-4);
}

TEST_CASE("concatenated loops add") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const CharacterPtr h = make_h_mu(sphere_area_normalized(S2));
    const LoopOfSubmanifolds a = point_loop(0.8, 64), b = point_loop(0.8, 128);
    const CircleValue joined = tilde_character_evaluate(*h, a.then(b));
    CHECK(circle_distance(joined, tilde_character_evaluate(*h, a) + tilde_character_evaluate(*h, b)) < 1e-10);
    CHECK_THROWS_AS(a.then(point_loop(1.2, 8)), LoopNotClosed);
}

TEST_CASE("open paths and bad relabelings are not loops") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    LoopOfSubmanifolds open = point_loop(1.0, 8);
    open.frames.pop_back();
    open.times.pop_back();
    CHECK_THROWS_AS(check_loop(*S2, open), LoopNotClosed);
    LoopOfSubmanifolds relabeled = point_loop(1.0, 8);
    relabeled.closure = std::vector<int>{3};
    CHECK_THROWS_AS(check_loop(*S2, relabeled), LoopNotClosed);
}

TEST_CASE("a pure reparametrization sweeps nothing") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const CharacterPtr h = make_h_mu(su2_biinvariant(S3));
    const int m = 16, steps = 32;
    const SimplicialMesh base = s3_circle(0.5, m);
    EmbeddingLoop loop;
    loop.model = base;
    for (int j = 0; j <= steps; ++j) {
        loop.times.push_back(static_cast<double>(j) / steps);
        const double shift = static_cast<double>(j) / steps;
        Matrix img(4, m);
        for (int v = 0; v < m; ++v) {
            const double u = 2 * pi * (static_cast<double>(v) / m + shift);
            img.col(v) << std::cos(0.5), std::sin(0.5) * std::cos(u), std::sin(0.5) * std::sin(u), 0.0;
        }
        loop.images.push_back(img);
    }
    CHECK(circle_distance(hat_character_evaluate(*h, loop).value(), 0.0) < 1e-10);
}

TEST_CASE("rotating the loop commutes with the character") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const CharacterPtr h = make_h_mu(sphere_area_normalized(S2));
    Matrix R = Matrix::Identity(3, 3);
    R(0, 0) = R(2, 2) = std::cos(0.4);
    R(2, 0) = std::sin(0.4);
    R(0, 2) = -R(2, 0);
    const SmoothMap rot(S2, S2, [R](const Point& x) { return Point(R * x); }, [R](const Point&) { return R; });
    CHECK(equivariance_defect(rot, h, point_loop(0.9, 64)) < 1e-8);
}

TEST_CASE("patches: boundary loop, compatibility and Fubini") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const CharacterPtr h = make_h_mu(mu);
    // Circles about a moving center with a varying radius.
    const FamilyPatch patch = make_patch(
        [](double s, double t) {
            const double rho = 0.2 + 0.3 * t, c = 0.4 * s;
            return closed_curve_mesh(*make_manifold("sphere3"), [=](double u) {
                const double a = 2 * pi * u;
                const Vector center{{std::cos(c), std::sin(c), 0.0, 0.0}};
                const Vector e1{{-std::sin(c), std::cos(c), 0.0, 0.0}};
                return Point(std::cos(rho) * center + std::sin(rho) * (std::cos(a) * e1 + std::sin(a) * Vector{{0.0, 0.0, 1.0, 0.0}}));
            }, 32);
        },
        16, 16);
    CHECK(patch.s_intervals() == 16);
    CHECK(patch.boundary_loop().frames.size() == 65);
    CHECK(curvature_compatibility_defect(*h, mu, patch) < 1e-4);
    const PatchIntegral r = tilde_mu_over_patch(mu, patch);
    CHECK(r.direct == doctest::Approx(r.swept).epsilon(1e-4));
    CHECK_THROWS_AS(make_patch([](double, double) { return SimplicialMesh(1, 4); }, 0, 4), ConfigError);
}

TEST_CASE("nondegeneracy probe finds a partner") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{great_circle_mesh(*S3, 0, 1, 64), "circle"};
    const NormalField Y = NormalField::restrict(rotation(S3, 0, 3), N.mesh);
    CHECK(nondegeneracy_probe(N, Y, {rotation(S3, 2, 3), rotation(S3, 0, 2)}, mu) > 0.1);
    CHECK(nondegeneracy_probe(N, Y, {rotation(S3, 2, 3)}, mu) < 1e-12);
}

TEST_CASE("functoriality of the transgressed form") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const VolumeForm mu = su2_biinvariant(S3);
    const GrassmannPoint N{s3_circle(0.6, 64), "circle"};
    const VectorField X = rotation(S3, 1, 3);
    const FlowMap F{TimeDependentField(bent_rotation(S3, 0, 2, 1, 0.3))};
    FunctorialityOptions opts;
    const FunctorialityReport r = functoriality_form_defects(
        F.at(0.3), X, mu, N, {NormalField::restrict(rotation(S3, 0, 2), N.mesh), NormalField::from_field(rotation(S3, 0, 3))},
        opts);
    CHECK(r.pullback < 1e-3);
    CHECK(r.lie_derivative < 1e-3);
    CHECK(r.interior < 1e-10);
    CHECK(r.exterior == 0.0);
}

}  // TEST_SUITE
