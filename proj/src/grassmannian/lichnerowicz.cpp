#include "transgress/errors.hpp"
#include "transgress/grassmannian.hpp"

#include <cmath>

namespace transgress {

namespace {

// Integral over N of mu(A, B, frame).
double raw_pairing(const GrassmannPoint& N, const VectorField& A, const VectorField& B, const VolumeForm& mu) {
    return tilde_form(mu, N, {NormalField::from_field(A), NormalField::from_field(B)});
}

}  // namespace

double lichnerowicz(const GrassmannPoint& N, const VectorField& X, const VectorField& Y, const VolumeForm& mu) {
    if (N.mesh.dim() + 2 != mu.degree()) throw DegreeMismatch("the cocycle lives on codimension-2 submanifolds");
    // Antisymmetrized so that psi(X, Y) = -psi(Y, X) holds bit for bit.
    return 0.5 * (raw_pairing(N, Y, X, mu) - raw_pairing(N, X, Y, mu));
}

double cocycle_identity_defect(const GrassmannPoint& N, const VectorField& X, const VectorField& Y,
                               const VectorField& Z, const VolumeForm& mu) {
    return std::abs(lichnerowicz(N, lie_bracket(X, Y), Z, mu) + lichnerowicz(N, lie_bracket(Y, Z), X, mu) +
                    lichnerowicz(N, lie_bracket(Z, X), Y, mu));
}

double ks_comparison_defect(const GrassmannPoint& N, const VectorField& X, const VectorField& Y, const VolumeForm& mu) {
    const double transgressed = raw_pairing(N, X, Y, mu);
    const double contracted = integrate_form(interior_product(Y, interior_product(X, mu)), N.mesh);
    return std::abs(transgressed - contracted);
}

double nondegeneracy_probe(const GrassmannPoint& N, const NormalField& Y, const std::vector<VectorField>& dictionary,
                           const VolumeForm& mu) {
    double best = 0.0;
    for (const VectorField& X : dictionary)
        best = std::max(best, std::abs(tilde_form(mu, N, {NormalField::restrict(X, N.mesh), Y})));
    return best;
}

}  // namespace transgress
