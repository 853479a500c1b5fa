#include "transgress/forms.hpp"

#include "transgress/errors.hpp"
#include "transgress/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace transgress {

namespace {

// Splits of {0..n-1} into an increasing p-subset and its complement, with the
// sign of the concatenated permutation.
struct Split {
    std::vector<int> first;
    std::vector<int> second;
    int sign = 1;
};

std::vector<Split> splits(int p, int q) {
    std::vector<Split> out;
    const int n = p + q;
    std::vector<char> pick(static_cast<std::size_t>(n), 0);
    std::fill(pick.begin(), pick.begin() + p, 1);
    do {
        Split s;
        for (int i = 0; i < n; ++i) (pick[static_cast<std::size_t>(i)] ? s.first : s.second).push_back(i);
        int inversions = 0;
        for (int a : s.first)
            for (int b : s.second)
                if (a > b) ++inversions;
        s.sign = inversions % 2 == 0 ? 1 : -1;
        out.push_back(std::move(s));
    } while (std::prev_permutation(pick.begin(), pick.end()));
    return out;
}

Matrix columns(const Matrix& v, const std::vector<int>& idx) {
    Matrix out(v.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) out.col(static_cast<Eigen::Index>(i)) = v.col(idx[i]);
    return out;
}

Matrix drop_column(const Matrix& v, int skip) {
    Matrix out(v.rows(), v.cols() - 1);
    for (int c = 0, o = 0; c < v.cols(); ++c)
        if (c != skip) out.col(o++) = v.col(c);
    return out;
}

}  // namespace

DifferentialForm::DifferentialForm(ManifoldPtr manifold, int degree, Evaluator evaluator, std::string name)
    : manifold_(std::move(manifold)), degree_(degree), evaluator_(std::move(evaluator)), name_(std::move(name)) {
    if (degree_ < 0) throw DegreeMismatch("negative form degree");
}

double DifferentialForm::operator()(const Point& x, const Matrix& vectors) const {
    if (vectors.cols() != degree_)
        throw DegreeMismatch("form of degree " + std::to_string(degree_) + " given " + std::to_string(vectors.cols()) +
                             " vectors");
    if (degree_ == 0) return evaluator_(x, vectors);
    return evaluator_(x, manifold_->tangent_projector(x) * vectors);
}

DifferentialForm DifferentialForm::with_derivative(DifferentialForm d) const {
    if (d.degree() != degree_ + 1) throw DegreeMismatch("derivative must have degree p+1");
    DifferentialForm out = *this;
    out.derivative_ = std::make_shared<const DifferentialForm>(std::move(d));
    return out;
}

DifferentialForm DifferentialForm::declared_closed() const {
    DifferentialForm out = *this;
    out.closed_ = true;
    out.derivative_.reset();
    return out;
}

DifferentialForm DifferentialForm::renamed(std::string name) const {
    DifferentialForm out = *this;
    out.name_ = std::move(name);
    return out;
}

VolumeForm::VolumeForm(DifferentialForm form) : DifferentialForm(std::move(form)) {
    if (degree() != manifold()->intrinsic_dim()) throw DegreeMismatch("a volume form must have top degree");
}

double VolumeForm::density(const Point& x) const {
    Matrix E = manifold()->tangent_frame(x);
    if (manifold()->orientation_sign(x, E) < 0) E.col(E.cols() - 1) *= -1.0;
    return evaluate_tangent(x, E);
}

double VolumeForm::nondegeneracy_certificate(std::uint64_t seed) const {
    std::mt19937_64 rng(seed);
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < 64; ++i) worst = std::min(worst, std::abs(density(manifold()->sample(rng))));
    return worst;
}

DifferentialForm zero_form(ManifoldPtr manifold, int degree) {
    return DifferentialForm(std::move(manifold), degree, [](const Point&, const Matrix&) { return 0.0; }, "0")
        .declared_closed();
}

DifferentialForm scaled(const DifferentialForm& a, double c) {
    DifferentialForm out(a.manifold(), a.degree(), [a, c](const Point& x, const Matrix& v) {
        return c * a.evaluate_tangent(x, v);
    }, a.name().empty() ? std::string() : std::to_string(c) + "*" + a.name());
    if (a.is_closed_flag()) return out.declared_closed();
    if (a.has_closed_form_derivative()) return out.with_derivative(scaled(*a.closed_form_derivative(), c));
    return out;
}

DifferentialForm sum(const DifferentialForm& a, const DifferentialForm& b) {
    if (a.degree() != b.degree()) throw DegreeMismatch("cannot add forms of different degree");
    DifferentialForm out(a.manifold(), a.degree(), [a, b](const Point& x, const Matrix& v) {
        return a.evaluate_tangent(x, v) + b.evaluate_tangent(x, v);
    });
    if (a.is_closed_flag() && b.is_closed_flag()) return out.declared_closed();
    const bool da = a.is_closed_flag() || a.has_closed_form_derivative();
    const bool db = b.is_closed_flag() || b.has_closed_form_derivative();
    if (da && db) return out.with_derivative(sum(exterior_derivative(a), exterior_derivative(b)));
    return out;
}

DifferentialForm function_form(ManifoldPtr manifold, std::function<double(const Point&)> f,
                               std::function<Vector(const Point&)> gradient) {
    DifferentialForm out(manifold, 0, [f](const Point& x, const Matrix&) { return f(x); });
    if (!gradient) return out;
    DifferentialForm df(manifold, 1, [gradient](const Point& x, const Matrix& v) { return gradient(x).dot(v.col(0)); });
    return out.with_derivative(df.declared_closed());
}

DifferentialForm covector_form(ManifoldPtr manifold, std::function<Vector(const Point&)> b,
                               std::function<Matrix(const Point&)> Db) {
    DifferentialForm out(manifold, 1, [b](const Point& x, const Matrix& v) { return b(x).dot(v.col(0)); });
    if (!Db) return out;
    DifferentialForm d(manifold, 2, [Db](const Point& x, const Matrix& v) {
        const Matrix J = Db(x);
        return (J * v.col(0)).dot(v.col(1)) - (J * v.col(1)).dot(v.col(0));
    });
    return out.with_derivative(d.declared_closed());
}

DifferentialForm wedge(const DifferentialForm& a, const DifferentialForm& b) {
    const int p = a.degree();
    const int q = b.degree();
    if (p + q > a.manifold()->intrinsic_dim())
        throw DegreeOverflow("wedge of degrees " + std::to_string(p) + " and " + std::to_string(q) +
                             " exceeds the dimension");
    auto parts = std::make_shared<const std::vector<Split>>(splits(p, q));
    DifferentialForm out(a.manifold(), p + q, [a, b, parts](const Point& x, const Matrix& v) {
        double acc = 0.0;
        for (const Split& s : *parts)
            acc += s.sign * a.evaluate_tangent(x, columns(v, s.first)) * b.evaluate_tangent(x, columns(v, s.second));
        return acc;
    });
    if (a.is_closed_flag() && b.is_closed_flag()) return out.declared_closed();
    const bool da = a.is_closed_flag() || a.has_closed_form_derivative();
    const bool db = b.is_closed_flag() || b.has_closed_form_derivative();
    if (da && db && p + q + 1 <= a.manifold()->intrinsic_dim()) {
        DifferentialForm left = a.is_closed_flag() ? zero_form(a.manifold(), p + q + 1)
                                                   : wedge(exterior_derivative(a), b);
        DifferentialForm right = b.is_closed_flag() ? zero_form(a.manifold(), p + q + 1)
                                                    : scaled(wedge(a, exterior_derivative(b)), p % 2 == 0 ? 1.0 : -1.0);
        return out.with_derivative(sum(left, right));
    }
    if (p + q == a.manifold()->intrinsic_dim()) return out.declared_closed();
    return out;
}

DifferentialForm pullback(const SmoothMap& phi, const DifferentialForm& a) {
    DifferentialForm out(phi.source(), a.degree(), [phi, a](const Point& x, const Matrix& v) {
        return a.evaluate_tangent(phi(x), phi.push(x, v));
    });
    if (a.is_closed_flag()) return out.declared_closed();
    if (a.has_closed_form_derivative()) return out.with_derivative(pullback(phi, *a.closed_form_derivative()));
    return out;
}

DifferentialForm interior_product(const VectorField& X, const DifferentialForm& a) {
    if (a.degree() < 1) throw DegreeMismatch("interior product needs degree >= 1");
    return DifferentialForm(a.manifold(), a.degree() - 1, [X, a](const Point& x, const Matrix& v) {
        Matrix args(v.rows(), v.cols() + 1);
        args.col(0) = X(x);
        args.rightCols(v.cols()) = v;
        return a.evaluate_tangent(x, args);
    });
}

DifferentialForm exterior_derivative(const DifferentialForm& a) {
    if (a.is_closed_flag()) return zero_form(a.manifold(), a.degree() + 1);
    if (a.has_closed_form_derivative()) return *a.closed_form_derivative();
    const ManifoldPtr M = a.manifold();
    const int p = a.degree();
    return DifferentialForm(M, p + 1, [a, M, p](const Point& x, const Matrix& v) {
        const double h = fd_step(x);
        auto along = [&](int i, double t) { return M->project(x + t * v.col(i)); };
        double acc = 0.0;
        for (int i = 0; i <= p; ++i) {
            const Matrix rest = drop_column(v, i);
            const double dir = (a(along(i, h), rest) - a(along(i, -h), rest)) / (2.0 * h);
            acc += (i % 2 == 0 ? 1.0 : -1.0) * dir;
        }
        for (int i = 0; i <= p; ++i) {
            for (int j = i + 1; j <= p; ++j) {
                // [V_i, V_j] for the projected constant extensions V(y) = P(y) v.
                const Vector dVj = (M->tangent_projector(along(i, h)) - M->tangent_projector(along(i, -h))) *
                                   v.col(j) / (2.0 * h);
                const Vector dVi = (M->tangent_projector(along(j, h)) - M->tangent_projector(along(j, -h))) *
                                   v.col(i) / (2.0 * h);
                Matrix args(v.rows(), p);
                args.col(0) = dVj - dVi;
                for (int c = 0, o = 1; c <= p; ++c)
                    if (c != i && c != j) args.col(o++) = v.col(c);
                acc += ((i + j) % 2 == 0 ? 1.0 : -1.0) * a(x, args);
            }
        }
        return acc;
    });
}

double integrate_form(const DifferentialForm& a, const SimplicialMesh& mesh) {
    if (mesh.empty()) return 0.0;
    if (a.degree() != mesh.dim())
        throw DegreeMismatch("form of degree " + std::to_string(a.degree()) + " on a " + std::to_string(mesh.dim()) +
                             "-mesh");
    const EmbeddedManifold& M = *a.manifold();
    const QuadratureRule& rule = simplex_rule(mesh.dim(), mesh.quadrature_degree());
    return sum_over_simplices(mesh, [&](int s) {
        const SimplexGeometry g(M, mesh, s);
        double acc = 0.0;
        for (std::size_t q = 0; q < rule.nodes.size(); ++q)
            acc += rule.weights[q] * a(g.point(rule.nodes[q]), g.frame(rule.nodes[q]));
        return acc;
    });
}

std::vector<double> periods(const DifferentialForm& a, const std::vector<NamedCycle>& cycles) {
    std::vector<double> out;
    for (const NamedCycle& c : cycles) {
        if (boundary_residual(*a.manifold(), *c.mesh) != 0) throw NotClosed("cycle '" + c.name + "' has a boundary");
        out.push_back(integrate_form(a, *c.mesh));
    }
    return out;
}

IntegralityReport is_integral(const DifferentialForm& a, const std::vector<NamedCycle>& cycles, double tol) {
    IntegralityReport report;
    report.periods = periods(a, cycles);
    for (double p : report.periods) {
        const double d = std::abs(p - std::round(p));
        report.defects.push_back(d);
        report.max_defect = std::max(report.max_defect, d);
    }
    report.integral = report.max_defect < tol;
    return report;
}

FormProbeReport probe_form(const DifferentialForm& a, std::uint64_t seed, int probes) {
    const ManifoldPtr& M = a.manifold();
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    const int D = M->ambient_dim();
    const int p = a.degree();
    auto random_matrix = [&](int cols) {
        Matrix m(D, cols);
        for (int i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
        return m;
    };
    FormProbeReport r;
    for (int k = 0; k < probes; ++k) {
        const Point x = M->sample(rng);
        const Matrix v = M->tangent_projector(x) * random_matrix(p);
        const double value = a(x, v);
        const double scale = std::max(1.0, std::abs(value));
        if (p >= 2) {
            Matrix swapped = v;
            swapped.col(0).swap(swapped.col(1));
            r.alternation_defect = std::max(r.alternation_defect, std::abs(a(x, swapped) + value) / scale);
        }
        if (p >= 1) {
            const double alpha = g(rng), beta = g(rng);
            const Vector w = M->tangent_projector(x) * random_matrix(1);
            Matrix combo = v, with_w = v;
            combo.col(0) = alpha * v.col(0) + beta * w;
            with_w.col(0) = w;
            const double lhs = a(x, combo);
            const double rhs = alpha * value + beta * a(x, with_w);
            r.multilinearity_defect = std::max(r.multilinearity_defect, std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            const Matrix N = M->normal_frame(x);
            if (N.cols() > 0) {
                Matrix shifted = v;
                Vector c(N.cols());
                for (Eigen::Index i = 0; i < c.size(); ++i) c(i) = g(rng);
                shifted.col(0) += N * c;
                r.projection_defect = std::max(r.projection_defect, std::abs(a(x, shifted) - value) / scale);
            }
        }
    }
    return r;
}

}  // namespace transgress
