#pragma once

// Reference values computed without the library's meshes or quadrature.

#include <vector>

namespace oracles {

/// Integral of prod lambda_i^a_i over the reference k-simplex (k = a.size() - 1).
double simplex_monomial(const std::vector<int>& exponents);

/// Normalized area of the cap {polar angle <= theta} on S^2.
double cap_fraction(double theta);

/// Normalized volume of the geodesic ball of radius r in S^3.
double s3_ball_fraction(double r);

/// Normalized length-weighted pairing of the rotations in the (0,2) and (0,3)
/// planes along the great circle in the (0,1) plane of S^3.
double great_circle_rotation_pairing();

/// Flux of the translation (a, b) of the flat torus over the x and y circles, in [0, 1).
struct TorusFlux {
    double x_circle;
    double y_circle;
};
TorusFlux torus_translation_flux(double a, double b);

/// Representative of x in [0, 1).
double frac(double x);

/// Gauss-Legendre rule on [a, b] by Newton iteration on P_n.
struct Rule {
    std::vector<double> nodes, weights;
};
Rule gauss_legendre(int n, double a, double b);

}  // namespace oracles
