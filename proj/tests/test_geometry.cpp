#include "oracles.hpp"

#include "transgress/errors.hpp"
#include "transgress/mesh.hpp"
#include "transgress/mesh_families.hpp"
#include "transgress/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <sstream>

using namespace transgress;

namespace {

constexpr double pi = std::numbers::pi;

}  // namespace

TEST_SUITE("geometry") {

TEST_CASE("retraction lands on the manifold and is idempotent") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> g;
    for (const char* id : {"sphere2", "sphere3", "sphere2xsphere2", "torus2"}) {
        const ManifoldPtr M = make_manifold(id);
        for (int i = 0; i < 20; ++i) {
            Point x = M->sample(rng);
            Point y = x;
            for (int a = 0; a < y.size(); ++a) y(a) += 0.05 * g(rng);
            const Point r = M->retract(y);
            CHECK(M->constraint(r).norm() < tol_manifold);
            CHECK((M->retract(r) - r).norm() < 1e-12);
        }
    }
}

TEST_CASE("retraction outside the basin throws") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    CHECK_THROWS_AS(S2->retract(Point::Zero(3)), OutOfBasin);
    CHECK_THROWS_AS(S2->retract(Point{{0.0, 0.0, 5.0}}), OutOfBasin);
}

TEST_CASE("torus retraction reduces modulo one") {
    const ManifoldPtr T = make_manifold("torus2");
    const Point r = T->retract(Point{{1.25, -0.5}});
    CHECK(r(0) == doctest::Approx(0.25));
    CHECK(r(1) == doctest::Approx(0.5));
    const Point lifted = T->lift_near(Point{{0.05, 0.5}}, Point{{0.98, 0.5}});
    CHECK(lifted(0) == doctest::Approx(1.05));
}

TEST_CASE("tangent projector is an orthogonal projection of rank n") {
    std::mt19937_64 rng(11);
    for (const char* id : {"sphere2", "sphere3", "sphere2xsphere2"}) {
        const ManifoldPtr M = make_manifold(id);
        const Point x = M->sample(rng);
        const Matrix P = M->tangent_projector(x);
        CHECK((P * P - P).norm() < 1e-12);
        CHECK((P - P.transpose()).norm() < 1e-12);
        CHECK(P.trace() == doctest::Approx(M->intrinsic_dim()));
        CHECK((P * M->normal_frame(x)).norm() < 1e-12);
        const Matrix E = M->tangent_frame(x);
        Matrix swapped = E;
        swapped.col(0).swap(swapped.col(1));
        CHECK(M->orientation_sign(x, E) != 0);
        CHECK(M->orientation_sign(x, swapped) == -M->orientation_sign(x, E));
    }
}

TEST_CASE("unknown manifold id is a config error") { CHECK_THROWS_AS(make_manifold("klein_bottle"), ConfigError); }

TEST_CASE("Grundmann-Moeller rules integrate monomials exactly up to their degree") {
    for (int k = 1; k <= 5; ++k) {
        const QuadratureRule& rule = simplex_rule(k, 5);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(oracles::simplex_monomial(std::vector<int>(static_cast<std::size_t>(k + 1), 0))));
        // Every monomial of total degree <= 5 in the first two coordinates.
        for (int a = 0; a <= 5; ++a)
            for (int b = 0; a + b <= 5; ++b) {
                std::vector<int> e(static_cast<std::size_t>(k + 1), 0);
                e[0] = a;
                e[1] = b;
                double q = 0.0;
                for (std::size_t i = 0; i < rule.nodes.size(); ++i)
                    q += rule.weights[i] * std::pow(rule.nodes[i](0), a) * std::pow(rule.nodes[i](1), b);
                CHECK(q == doctest::Approx(oracles::simplex_monomial(e)).epsilon(1e-12));
            }
    }
}

TEST_CASE("even degrees are rounded up") { CHECK(simplex_rule(2, 4).degree == 5); }

TEST_CASE("pairwise sum is order-deterministic and accurate") {
    std::vector<double> v(1000, 0.1);
    CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
    CHECK(pairwise_sum({}) == 0.0);
}

TEST_CASE("boundary of a boundary is empty") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const SimplicialMesh cap = cap_mesh(*S2, 1.0, 3, 12);
    const SimplicialMesh b = mesh_boundary(cap);
    CHECK(b.num_simplices() == 12);
    CHECK(boundary_residual(*S2, b) == 0);
    CHECK(boundary_residual(*S2, cap) > 0);
}

TEST_CASE("sphere meshes are closed, connected and positively oriented") {
    for (const char* id : {"sphere2", "sphere3"}) {
        const ManifoldPtr M = make_manifold(id);
        const SimplicialMesh z = sphere_mesh(*M, 2);
        CHECK(boundary_residual(*M, z) == 0);
        CHECK(is_connected(z));
        CHECK(max_constraint_violation(*M, z) < tol_manifold);
    }
    const ManifoldPtr T = make_manifold("torus2");
    CHECK(boundary_residual(*T, torus_mesh(*T, 4)) == 0);
}

TEST_CASE("sphere area converges to 4 pi at second order") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    auto area_error = [&](int r) {
        return std::abs(integrate_scalar(*S2, sphere_mesh(*S2, r), [](const Point&) { return 1.0; }) - 4 * pi);
    };
    const double e4 = area_error(4), e8 = area_error(8);
    CHECK(e8 < e4);
    CHECK(e4 / e8 > 3.0);
}

TEST_CASE("cap area matches the closed form") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const double theta = 1.1;
    const double area = integrate_scalar(*S2, cap_mesh(*S2, theta, 64, 256), [](const Point&) { return 1.0; });
    CHECK(area / (4 * pi) == doctest::Approx(oracles::cap_fraction(theta)).epsilon(1e-4));
}

TEST_CASE("refinement keeps the boundary and the vertices on M") {
    const ManifoldPtr S3 = make_manifold("sphere3");
    const SimplicialMesh z = refine(*S3, sphere_mesh(*S3, 1), 2);
    CHECK(boundary_residual(*S3, z) == 0);
    CHECK(max_constraint_violation(*S3, z) < tol_manifold);
    CHECK(z.num_simplices() == sphere_mesh(*S3, 1).num_simplices() * 8);
}

TEST_CASE("shuffles of a product of simplices have the expected count") {
    CHECK(shuffles(1, 1).size() == 2);
    CHECK(shuffles(2, 1).size() == 3);
    CHECK(shuffles(2, 2).size() == 6);
    CHECK(kuhn_simplices(3).size() == 6);
}

TEST_CASE("reduce_chain cancels opposite copies") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    SimplicialMesh m = cap_mesh(*S2, 0.8, 2, 8);
    m.append(m.reversed());
    CHECK(reduce_chain(*S2, m).num_simplices() == 0);
}

TEST_CASE("mesh text format round-trips") {
    const ManifoldPtr S2 = make_manifold("sphere2");
    const SimplicialMesh m = cap_mesh(*S2, 0.7, 2, 6);
    std::stringstream ss;
    write_mesh(ss, m);
    const SimplicialMesh r = read_mesh(ss);
    CHECK(r.dim() == m.dim());
    CHECK(r.num_simplices() == m.num_simplices());
    CHECK((r.vertex_matrix() - m.vertex_matrix()).norm() == 0.0);
    for (int s = 0; s < m.num_simplices(); ++s) CHECK(r.sign(s) == m.sign(s));
}

TEST_CASE("malformed mesh text is rejected") {
    std::stringstream bad1("DIM 1 AMBIENT 2\nv 0 0\ns 1 0 3\n");
    CHECK_THROWS_AS(read_mesh(bad1), MeshFormatError);
    std::stringstream bad2("DIM 1 AMBIENT 2\nv 0\n");
    CHECK_THROWS_AS(read_mesh(bad2), MeshFormatError);
    std::stringstream bad3("hello\n");
    CHECK_THROWS_AS(read_mesh(bad3), MeshFormatError);
}

}  // TEST_SUITE
