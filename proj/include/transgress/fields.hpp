#pragma once

#include "transgress/forms.hpp"
#include "transgress/mesh.hpp"
#include "transgress/vector_field.hpp"

#include <cstdint>

namespace transgress {

/// Solves i_X mu = d alpha pointwise on an oriented orthonormal tangent
/// frame. Throws SingularVolumeForm when the system is rank deficient.
VectorField field_from_potential(const DifferentialForm& alpha, const VolumeForm& mu);

/// Largest |i_X mu - d alpha| over 64 seeded probe points, evaluated on
/// the (n-1)-subframes of an orthonormal tangent frame.
double potential_residual(const VectorField& X, const DifferentialForm& alpha, const VolumeForm& mu,
                          std::uint64_t seed = 64);

/// [X, Y] = DY.X - DX.Y.
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// max |[X,[Y,Z]] + [Y,[Z,X]] + [Z,[X,Y]]| over seeded probe points.
double jacobi_defect(const VectorField& X, const VectorField& Y, const VectorField& Z, std::uint64_t seed,
                     int probes = 16);

inline constexpr int default_steps_per_unit = 200;

/// Flow of a time-dependent field by classical RK4 with projection back
/// onto M after every step. phi_t uses ceil(|t| * steps) uniform steps.
class FlowMap {
public:
    FlowMap() = default;
    FlowMap(TimeDependentField field, int steps_per_unit = default_steps_per_unit);

    const TimeDependentField& field() const { return field_; }
    const ManifoldPtr& manifold() const { return field_.manifold(); }
    int steps_per_unit() const { return steps_; }

    /// phi_t(x).
    Point operator()(double t, const Point& x) const;
    /// phi_t^{-1}(x), integrating the same field backwards from t to 0.
    Point inverse(double t, const Point& x) const;
    /// phi_t as a map M -> M (pushforward by central differences).
    SmoothMap at(double t) const;
    /// delta^l phi_t(x) = d/dtau|_t phi_t^{-1}(phi_tau(x)), by its
    /// difference quotient.
    Vector log_derivative(double t, const Point& x) const;

private:
    Point integrate(double t0, double t1, const Point& x) const;

    TimeDependentField field_;
    int steps_ = default_steps_per_unit;
};

FlowMap flow(const TimeDependentField& field, int steps_per_unit = default_steps_per_unit);

/// Vertexwise image phi_t(mesh); same combinatorics and signs.
SimplicialMesh advect_mesh(const FlowMap& phi, double t, const SimplicialMesh& mesh);

/// Image of a mesh under a smooth map, same combinatorics.
SimplicialMesh map_mesh(const SmoothMap& phi, const SimplicialMesh& mesh);

/// Max over probe points of the pointwise defect |phi_1^* omega - omega|
/// evaluated on orthonormal frames (16 seeded points).
double preservation_defect(const FlowMap& phi, const DifferentialForm& omega, std::uint64_t seed = 16);

}  // namespace transgress
