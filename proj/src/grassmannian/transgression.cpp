#include "transgress/errors.hpp"
#include "transgress/grassmannian.hpp"
#include "transgress/mesh_families.hpp"
#include "transgress/quadrature.hpp"

#include <array>
#include <cmath>

namespace transgress {

namespace {

// Integral over the mesh of omega(Y_1(x), ..., Y_m(x), frame).
double transgressed_integral(const DifferentialForm& omega, const SimplicialMesh& mesh,
                             const std::vector<NormalField>& Ys) {
    const int k = mesh.dim();
    const int m = static_cast<int>(Ys.size());
    if (m < 1 || omega.degree() != m + k)
        throw DegreeMismatch("transgression of a degree-" + std::to_string(omega.degree()) + " form over a " +
                             std::to_string(k) + "-mesh takes " + std::to_string(omega.degree() - k) +
                             " normal fields, got " + std::to_string(m));
    for (const NormalField& Y : Ys)
        if (Y.is_per_vertex() && Y.values().cols() != mesh.num_vertices())
            throw DegreeMismatch("sampled normal field does not match the mesh");
    if (mesh.empty()) return 0.0;
    const EmbeddedManifold& M = *omega.manifold();
    const QuadratureRule& rule = simplex_rule(k, mesh.quadrature_degree());
    const int D = mesh.ambient_dim();
    return sum_over_simplices(mesh, [&](int s) {
        const SimplexGeometry g(M, mesh, s);
        const auto idx = mesh.simplex(s);
        std::vector<Matrix> local(Ys.size());
        for (std::size_t i = 0; i < Ys.size(); ++i) {
            if (!Ys[i].is_per_vertex()) continue;
            local[i].resize(D, k + 1);
            for (int c = 0; c <= k; ++c) local[i].col(c) = Ys[i].values().col(idx[static_cast<std::size_t>(c)]);
        }
        Matrix args(D, m + k);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const Vector& lambda = rule.nodes[q];
            const Point x = g.point(lambda);
            for (int i = 0; i < m; ++i) {
                const NormalField& Y = Ys[static_cast<std::size_t>(i)];
                args.col(i) = Y.is_per_vertex() ? g.push_vertex_velocities(lambda, local[static_cast<std::size_t>(i)])
                                                : (*Y.field())(x);
            }
            if (k > 0) args.rightCols(k) = g.frame(lambda);
            acc += rule.weights[q] * omega(x, args);
        }
        return acc;
    });
}

// Composite Simpson weights on n intervals of [0,1] (3/8 rule on the last
// three intervals when n is odd), trapezoid when periodic or n < 2.
std::vector<double> grid_weights(int n, bool periodic) {
    std::vector<double> w(static_cast<std::size_t>(n + 1), 0.0);
    const double h = 1.0 / n;
    if (periodic || n < 2) {
        for (int i = 0; i <= n; ++i) w[static_cast<std::size_t>(i)] = (i == 0 || i == n) ? h / 2 : h;
        return w;
    }
    int simpson_end = n;
    if (n % 2 == 1) {
        simpson_end = n - 3;
        const std::array<double, 4> c = {1.0, 3.0, 3.0, 1.0};
        for (int a = 0; a < 4; ++a) w[static_cast<std::size_t>(simpson_end + a)] += 3.0 * h / 8.0 * c[static_cast<std::size_t>(a)];
    }
    for (int i = 0; i + 2 <= simpson_end; i += 2) {
        w[static_cast<std::size_t>(i)] += h / 3;
        w[static_cast<std::size_t>(i + 1)] += 4 * h / 3;
        w[static_cast<std::size_t>(i + 2)] += h / 3;
    }
    return w;
}

double patch_direct(const DifferentialForm& omega, const FamilyPatch& patch) {
    const EmbeddedManifold& M = *omega.manifold();
    const int S = patch.s_intervals();
    const int T = patch.t_intervals();
    const auto ws = grid_weights(S, patch.periodic_s);
    const auto wt = grid_weights(T, patch.periodic_t);
    const std::size_t count = static_cast<std::size_t>((S + 1) * (T + 1));
    std::vector<double> terms(count, 0.0);
    parallel_for(count, [&](std::size_t n) {
        const int i = static_cast<int>(n) / (T + 1);
        const int j = static_cast<int>(n) % (T + 1);
        const double w = ws[static_cast<std::size_t>(i)] * wt[static_cast<std::size_t>(j)];
        if (w == 0.0) return;
        auto [ds, dt] = patch_derivatives(M, patch, i, j);
        terms[n] = w * transgressed_integral(
                           omega, patch.grid[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                           {NormalField::per_vertex(std::move(ds)), NormalField::per_vertex(std::move(dt))});
    });
    return pairwise_sum(terms);
}

NormalField pushed(const SmoothMap& phi, const SimplicialMesh& mesh, const NormalField& Y) {
    const NormalField sampled = Y.is_per_vertex() ? Y : NormalField::restrict(*Y.field(), mesh);
    Matrix out(phi.target()->ambient_dim(), mesh.num_vertices());
    for (int v = 0; v < mesh.num_vertices(); ++v) out.col(v) = phi.push(mesh.vertex(v), sampled.values().col(v));
    return NormalField::per_vertex(std::move(out));
}

bool vanishing_derivative(const DifferentialForm& omega) {
    return omega.is_closed_flag() || omega.degree() >= omega.manifold()->intrinsic_dim();
}

}  // namespace

double tilde_form(const DifferentialForm& omega, const GrassmannPoint& N, const std::vector<NormalField>& Ys) {
    return transgressed_integral(omega, N.mesh, Ys);
}

double hat_form(const DifferentialForm& omega, const EmbeddingPoint& f, const std::vector<NormalField>& Zs) {
    return transgressed_integral(omega, f.image_mesh(), Zs);
}

CircleValue tilde_character_evaluate(const DifferentialCharacter& h, const LoopOfSubmanifolds& loop) {
    if (loop.frames.empty()) throw LoopNotClosed("empty loop");
    if (loop.frames.front().dim() + 1 != h.degree())
        throw DegreeMismatch("loops of " + std::to_string(loop.frames.front().dim()) +
                             "-submanifolds pair with degree-" + std::to_string(loop.frames.front().dim() + 1) +
                             " characters");
    return evaluate(h, sweep_chain(*h.manifold(), loop));
}

CircleValue hat_character_evaluate(const DifferentialCharacter& h, const EmbeddingLoop& loop) {
    return tilde_character_evaluate(h, loop.images_as_loop());
}

PatchIntegral tilde_mu_over_patch(const VolumeForm& mu, const FamilyPatch& patch, bool with_swept) {
    const int k = patch.grid[0][0].dim();
    if (mu.degree() != k + 2) throw DegreeMismatch("patch meshes must have codimension 2");
    PatchIntegral out;
    out.direct = patch_direct(mu, patch);
    if (with_swept) out.swept = integrate_form(mu, patch_sweep_chain(*mu.manifold(), patch));
    return out;
}

double curvature_compatibility_defect(const DifferentialCharacter& h, const VolumeForm& mu, const FamilyPatch& patch) {
    const CircleValue boundary = evaluate(h, patch.boundary_cycle(*h.manifold()));
    return circle_distance(boundary.value(), tilde_mu_over_patch(mu, patch, false).direct);
}

double equivariance_defect(const SmoothMap& phi, CharacterPtr h, const LoopOfSubmanifolds& loop, int refinement) {
    const PulledBack pulled(phi, h, refinement);
    const CircleValue lhs = tilde_character_evaluate(pulled, loop);
    const CircleValue rhs = tilde_character_evaluate(*h, loop.mapped(phi));
    return circle_distance(lhs, rhs);
}

FunctorialityReport functoriality_form_defects(const SmoothMap& phi, const VectorField& X, const DifferentialForm& omega,
                                               const GrassmannPoint& N, const std::vector<NormalField>& Ys,
                                               const FunctorialityOptions& opts) {
    FunctorialityReport r;
    const SimplicialMesh& mesh = N.mesh;

    std::vector<NormalField> moved_fields;
    for (const NormalField& Y : Ys) moved_fields.push_back(pushed(phi, mesh, Y));
    r.pullback = std::abs(transgressed_integral(omega, map_mesh(phi, mesh), moved_fields) -
                          transgressed_integral(pullback(phi, omega), mesh, Ys));

    // d/de of the pullback along the flow of X, Richardson-extrapolated.
    const FlowMap F{TimeDependentField(X)};
    auto along = [&](double e) {
        const SmoothMap fe = F.at(e);
        std::vector<NormalField> fields;
        for (const NormalField& Y : Ys) fields.push_back(pushed(fe, mesh, Y));
        return transgressed_integral(omega, map_mesh(fe, mesh), fields);
    };
    const double e = opts.lie_step;
    const double coarse = (along(e) - along(-e)) / (2 * e);
    const double fine = (along(e / 2) - along(-e / 2)) / e;
    const double lie_numeric = (4 * fine - coarse) / 3;
    DifferentialForm lie = exterior_derivative(interior_product(X, omega));
    if (!vanishing_derivative(omega)) lie = sum(lie, interior_product(X, exterior_derivative(omega)));
    r.lie_derivative = std::abs(lie_numeric - transgressed_integral(lie, mesh, Ys));

    if (!Ys.empty()) {
        std::vector<NormalField> with_x{NormalField::restrict(X, mesh)};
        std::vector<NormalField> rest(Ys.begin() + 1, Ys.end());
        with_x.insert(with_x.end(), rest.begin(), rest.end());
        const double lhs = transgressed_integral(omega, mesh, with_x);
        const DifferentialForm ix = interior_product(X, omega);
        const double rhs = rest.empty() ? integrate_form(ix, mesh) : transgressed_integral(ix, mesh, rest);
        r.interior = std::abs(lhs - rhs);
    }

    if (opts.cube) {
        if (omega.degree() != mesh.dim() + 2) throw DegreeMismatch("the d check needs a form of degree k+2");
        const int res = opts.cube_resolution;
        static constexpr int free_axes[3][2] = {{1, 2}, {0, 2}, {0, 1}};
        double boundary = 0.0;
        for (int axis = 0; axis < 3; ++axis)
            for (int end = 0; end <= 1; ++end) {
                const FamilyPatch face = make_patch(
                    [&](double s, double t) {
                        Vector abc(3);
                        abc(axis) = end;
                        abc(free_axes[axis][0]) = s;
                        abc(free_axes[axis][1]) = t;
                        return opts.cube(abc);
                    },
                    res, res);
                const double sign = ((axis + 1 + end) % 2 == 0) ? 1.0 : -1.0;
                boundary += sign * patch_direct(omega, face);
            }
        double interior = 0.0;
        if (!vanishing_derivative(omega)) {
            const DifferentialForm d_omega = exterior_derivative(omega);
            const auto w = grid_weights(res, false);
            const double delta = 1e-4;
            const EmbeddedManifold& M = *omega.manifold();
            std::vector<double> terms;
            for (int a = 0; a <= res; ++a)
                for (int b = 0; b <= res; ++b)
                    for (int c = 0; c <= res; ++c) {
                        Vector abc(3);
                        abc << static_cast<double>(a) / res, static_cast<double>(b) / res, static_cast<double>(c) / res;
                        const SimplicialMesh center = opts.cube(abc);
                        std::vector<NormalField> partials;
                        for (int axis = 0; axis < 3; ++axis) {
                            Vector up = abc, down = abc;
                            up(axis) += delta;
                            down(axis) -= delta;
                            const SimplicialMesh mu = opts.cube(up), md = opts.cube(down);
                            Matrix dv(center.ambient_dim(), center.num_vertices());
                            for (int v = 0; v < center.num_vertices(); ++v)
                                dv.col(v) = (M.lift_near(mu.vertex(v), center.vertex(v)) -
                                             M.lift_near(md.vertex(v), center.vertex(v))) /
                                            (2 * delta);
                            partials.push_back(NormalField::per_vertex(std::move(dv)));
                        }
                        terms.push_back(w[static_cast<std::size_t>(a)] * w[static_cast<std::size_t>(b)] *
                                        w[static_cast<std::size_t>(c)] *
                                        transgressed_integral(d_omega, center, partials));
                    }
            interior = pairwise_sum(terms);
        }
        r.exterior = std::abs(boundary - interior);
    }
    return r;
}

}  // namespace transgress
