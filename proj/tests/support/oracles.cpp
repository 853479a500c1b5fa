#include "oracles.hpp"

#include <cmath>
#include <numbers>

namespace oracles {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

}  // namespace

double simplex_monomial(const std::vector<int>& exponents) {
    const int k = static_cast<int>(exponents.size()) - 1;
    int total = 0;
    double num = 1.0;
    for (int a : exponents) {
        total += a;
        num *= factorial(a);
    }
    return num / factorial(k + total);
}

double cap_fraction(double theta) { return (1.0 - std::cos(theta)) / 2.0; }

double s3_ball_fraction(double r) { return (r - std::sin(r) * std::cos(r)) / std::numbers::pi; }

// mu = det / (2 pi^2); along (cos 2pi u, sin 2pi u, 0, 0) the integrand is
// cos^2(2 pi u) * 2 pi / (2 pi^2).
double great_circle_rotation_pairing() { return 1.0 / (2.0 * std::numbers::pi); }

double frac(double x) { return x - std::floor(x); }

// i_X (dx ^ dy) = a dy - b dx.
TorusFlux torus_translation_flux(double a, double b) { return {frac(-b), frac(a)}; }

Rule gauss_legendre(int n, double a, double b) {
    Rule r;
    for (int i = 1; i <= n; ++i) {
        double x = std::cos(std::numbers::pi * (i - 0.25) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        r.nodes.push_back(a + (b - a) * (x + 1.0) / 2.0);
        r.weights.push_back((b - a) / ((1.0 - x * x) * dp * dp));
    }
    return r;
}

}  // namespace oracles
