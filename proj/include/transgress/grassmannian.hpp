#pragma once

#include "transgress/characters.hpp"
#include "transgress/fields.hpp"
#include "transgress/forms.hpp"
#include "transgress/mesh.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace transgress {

/// Oriented closed k-submanifold of M given by a mesh.
struct GrassmannPoint {
    SimplicialMesh mesh;
    std::string type;  // model of S, e.g. "circle", "sphere2", "point"
};

/// Tangent vector at N, interpreted modulo TN. Either samples per mesh
/// vertex (interpolated as the velocity of the moving simplex) or an
/// ambient field evaluated at every quadrature point.
class NormalField {
public:
    NormalField() = default;
    static NormalField per_vertex(Matrix values);
    static NormalField from_field(VectorField field);
    /// Samples of a vector field at the vertices of a mesh.
    static NormalField restrict(const VectorField& field, const SimplicialMesh& mesh);

    bool is_per_vertex() const { return !field_.has_value(); }
    const Matrix& values() const { return values_; }
    const std::optional<VectorField>& field() const { return field_; }
    NormalField plus(const NormalField& other) const;

private:
    Matrix values_;
    std::optional<VectorField> field_;
};

/// Embedding f: S -> M given by image vertices over a model mesh of S.
struct EmbeddingPoint {
    SimplicialMesh model;
    Matrix image;

    SimplicialMesh image_mesh() const { return model.with_vertices(image); }
    /// Smallest distance between distinct image vertices.
    double injectivity_radius() const;
};

/// Integral over N of omega(Y_1, ..., Y_m, tangent frame), i.e. of
/// i_{Y_m} ... i_{Y_1} omega. Throws DegreeMismatch unless m = deg - k >= 1.
double tilde_form(const DifferentialForm& omega, const GrassmannPoint& N, const std::vector<NormalField>& Ys);

/// Same integrand over the image of the model mesh; Zs unquotiented.
double hat_form(const DifferentialForm& omega, const EmbeddingPoint& f, const std::vector<NormalField>& Zs);

/// Closed 1-parameter family of meshes with identical combinatorics.
/// Closure holds vertexwise, or after the vertex relabeling `closure`
/// (vertex v at t = 1 sits where vertex closure[v] sits at t = 0).
struct LoopOfSubmanifolds {
    std::vector<double> times;
    std::vector<SimplicialMesh> frames;
    std::optional<std::vector<int>> closure;
    std::string type;

    /// Concatenation (this, then other); requires matching end points.
    LoopOfSubmanifolds then(const LoopOfSubmanifolds& other) const;
    /// Image under a map applied to every frame.
    LoopOfSubmanifolds mapped(const SmoothMap& phi) const;
};

/// Loop of embeddings: frames are image vertex sets over a fixed model.
struct EmbeddingLoop {
    SimplicialMesh model;
    std::vector<double> times;
    std::vector<Matrix> images;

    /// The loop of image submanifolds with the same vertex correspondence.
    LoopOfSubmanifolds images_as_loop() const;
};

/// Raises LoopNotClosed if the loop does not close.
void check_loop(const EmbeddedManifold& manifold, const LoopOfSubmanifolds& loop, double tol = 1e-9);

/// (k+1)-chain swept by the loop (time first).
SimplicialMesh sweep_chain(const EmbeddedManifold& manifold, const LoopOfSubmanifolds& loop);

CircleValue tilde_character_evaluate(const DifferentialCharacter& h, const LoopOfSubmanifolds& loop);
CircleValue hat_character_evaluate(const DifferentialCharacter& h, const EmbeddingLoop& loop);

/// 2-parameter grid N(s_i, t_j), i = 0..S, j = 0..T, on [0,1]^2.
struct FamilyPatch {
    std::vector<std::vector<SimplicialMesh>> grid;  // grid[i][j]
    bool periodic_s = false;
    bool periodic_t = false;
    std::string type;

    int s_intervals() const { return static_cast<int>(grid.size()) - 1; }
    int t_intervals() const { return static_cast<int>(grid.front().size()) - 1; }
    /// Counterclockwise boundary loop of [0,1]^2.
    LoopOfSubmanifolds boundary_loop() const;
    /// Swept chain of the boundary. A periodic direction contributes no
    /// edges: the boundary is then the difference of the two end loops.
    SimplicialMesh boundary_cycle(const EmbeddedManifold& manifold) const;
};

using PatchGenerator = std::function<SimplicialMesh(double s, double t)>;
FamilyPatch make_patch(const PatchGenerator& F, int s_intervals, int t_intervals, bool periodic_s = false,
                       bool periodic_t = false, const std::string& type = {});

/// Per-vertex partial derivatives of the patch at grid node (i, j) by
/// fourth-order central grid differences (one-sided near open edges).
std::pair<Matrix, Matrix> patch_derivatives(const EmbeddedManifold& manifold, const FamilyPatch& patch, int i, int j);

struct PatchIntegral {
    double direct = 0.0;
    double swept = 0.0;
};

/// direct: grid quadrature of tilde(mu, N(s,t), (d_s N, d_t N)).
/// swept: integral of mu over the (k+2)-chain swept by the patch
/// (skipped when with_swept is false).
PatchIntegral tilde_mu_over_patch(const VolumeForm& mu, const FamilyPatch& patch, bool with_swept = true);

/// Chain swept by the patch, oriented (s, t, N).
SimplicialMesh patch_sweep_chain(const EmbeddedManifold& manifold, const FamilyPatch& patch);

double curvature_compatibility_defect(const DifferentialCharacter& h, const VolumeForm& mu, const FamilyPatch& patch);

/// psi_N(X, Y) = integral over N of i_X i_Y mu = mu(Y, X, frame).
double lichnerowicz(const GrassmannPoint& N, const VectorField& X, const VectorField& Y, const VolumeForm& mu);

double cocycle_identity_defect(const GrassmannPoint& N, const VectorField& X, const VectorField& Y,
                               const VectorField& Z, const VolumeForm& mu);

/// |tilde(mu, N, (X, Y)) - integral over N of i_Y i_X mu|.
double ks_comparison_defect(const GrassmannPoint& N, const VectorField& X, const VectorField& Y, const VolumeForm& mu);

/// Distance between (phi^* h)~(loop) and h~(phi o loop).
double equivariance_defect(const SmoothMap& phi, CharacterPtr h, const LoopOfSubmanifolds& loop, int refinement = 2);

struct FunctorialityReport {
    double pullback = 0.0;
    double lie_derivative = 0.0;
    double interior = 0.0;
    double exterior = 0.0;
};

using CubeGenerator = std::function<SimplicialMesh(const Vector& abc)>;

struct FunctorialityOptions {
    double lie_step = 1e-2;
    /// Three-parameter family for the d check; resolution per face.
    CubeGenerator cube;
    int cube_resolution = 8;
};

FunctorialityReport functoriality_form_defects(const SmoothMap& phi, const VectorField& X, const DifferentialForm& omega,
                                               const GrassmannPoint& N, const std::vector<NormalField>& Ys,
                                               const FunctorialityOptions& opts);

/// Max over the dictionary of |tilde(mu, N, (X restricted, Y))|.
double nondegeneracy_probe(const GrassmannPoint& N, const NormalField& Y, const std::vector<VectorField>& dictionary,
                           const VolumeForm& mu);

/// Per-vertex tangent vectors of a 1-mesh (central edge differences).
Matrix curve_vertex_tangents(const EmbeddedManifold& manifold, const SimplicialMesh& mesh);

}  // namespace transgress
