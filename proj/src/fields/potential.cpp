#include "transgress/errors.hpp"
#include "transgress/fields.hpp"

#include <Eigen/LU>
#include <cmath>
#include <random>

namespace transgress {

namespace {

Matrix oriented_frame(const EmbeddedManifold& M, const Point& x) {
    Matrix E = M.tangent_frame(x);
    if (M.orientation_sign(x, E) < 0) E.col(E.cols() - 1) *= -1.0;
    return E;
}

Matrix without(const Matrix& E, int j) {
    Matrix out(E.rows(), E.cols() - 1);
    for (int c = 0, o = 0; c < E.cols(); ++c)
        if (c != j) out.col(o++) = E.col(c);
    return out;
}

}  // namespace

VectorField field_from_potential(const DifferentialForm& alpha, const VolumeForm& mu) {
    const ManifoldPtr M = mu.manifold();
    const int n = M->intrinsic_dim();
    if (alpha.degree() != n - 2) throw DegreeMismatch("potential must have degree n-2");
    const DifferentialForm dalpha = exterior_derivative(alpha);
    return VectorField(M, [M, mu, dalpha, n](const Point& x) {
        const Matrix E = oriented_frame(*M, x);
        Matrix A(n, n);
        Vector rhs(n);
        Matrix args(E.rows(), n);
        for (int j = 0; j < n; ++j) {
            const Matrix rest = without(E, j);
            rhs(j) = dalpha.evaluate_tangent(x, rest);
            args.rightCols(n - 1) = rest;
            for (int i = 0; i < n; ++i) {
                args.col(0) = E.col(i);
                A(j, i) = mu.evaluate_tangent(x, args);
            }
        }
        const Eigen::FullPivLU<Matrix> lu(A);
        const double scale = A.cwiseAbs().maxCoeff();
        if (!(scale > 0) || lu.rank() < n || std::abs(lu.determinant()) < 1e-12 * std::pow(scale, n))
            throw SingularVolumeForm("interior-product system is rank deficient");
        return Vector(E * lu.solve(rhs));
    });
}

double potential_residual(const VectorField& X, const DifferentialForm& alpha, const VolumeForm& mu,
                          std::uint64_t seed) {
    const ManifoldPtr& M = mu.manifold();
    const DifferentialForm dalpha = exterior_derivative(alpha);
    const DifferentialForm ix_mu = interior_product(X, mu);
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p < 64; ++p) {
        const Point x = M->sample(rng);
        const Matrix E = oriented_frame(*M, x);
        for (int j = 0; j < E.cols(); ++j) {
            const Matrix rest = without(E, j);
            worst = std::max(worst, std::abs(ix_mu(x, rest) - dalpha(x, rest)));
        }
    }
    return worst;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
    return VectorField(X.manifold(), [X, Y](const Point& x) {
        return Vector(Y.derivative(x, X(x)) - X.derivative(x, Y(x)));
    });
}

double jacobi_defect(const VectorField& X, const VectorField& Y, const VectorField& Z, std::uint64_t seed, int probes) {
    const VectorField a = lie_bracket(X, lie_bracket(Y, Z));
    const VectorField b = lie_bracket(Y, lie_bracket(Z, X));
    const VectorField c = lie_bracket(Z, lie_bracket(X, Y));
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int p = 0; p < probes; ++p) {
        const Point x = X.manifold()->sample(rng);
        worst = std::max(worst, (a(x) + b(x) + c(x)).norm());
    }
    return worst;
}

}  // namespace transgress
