#include "transgress/characters.hpp"
#include "transgress/errors.hpp"

#include <algorithm>

namespace transgress {

FluxResult flux_omega(const DifferentialForm& omega, const FlowMap& phi, const std::vector<NamedCycle>& basis,
                      const FluxOptions& opts) {
    if (opts.time_samples < 1) throw ConfigError("flux needs at least one time sample");
    const double defect = preservation_defect(phi, omega);
    if (defect > opts.preservation_tol)
        throw NotPreserving("flow changes the form by " + std::to_string(defect) + " at probe points");
    FluxResult out;
    for (const NamedCycle& c : basis) {
        if (c.mesh->dim() + 1 != omega.degree()) throw DegreeMismatch("basis cycles must have degree deg(omega)-1");
        std::vector<SimplicialMesh> frames;
        for (int j = 0; j <= opts.time_samples; ++j)
            frames.push_back(advect_mesh(phi, static_cast<double>(j) / opts.time_samples, *c.mesh));
        const double raw = integrate_form(omega, sweep_sequence(*omega.manifold(), frames));
        out.push_back({c.name, CircleValue(raw), raw});
    }
    return out;
}

double flux_vs_character_defect(const DifferentialCharacter& h, const FlowMap& phi,
                                const std::vector<NamedCycle>& basis, const FluxOptions& opts) {
    const FluxResult flux = flux_omega(h.curvature(), phi, basis, opts);
    const SmoothMap phi1 = phi.at(1.0);
    double worst = 0.0;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        const SimplicialMesh& c = *basis[i].mesh;
        const CircleValue moved = h.evaluate_cycle(map_mesh(phi1, c));
        const CircleValue still = h.evaluate_cycle(c);
        worst = std::max(worst, circle_distance(flux[i].value, moved - still));
    }
    return worst;
}

}  // namespace transgress
