#include "transgress/quadrature.hpp"

#include "transgress/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <exception>
#include <map>
#include <mutex>
#include <thread>

namespace transgress {

namespace {

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// All multi-indices of length len summing to total, in lexicographic order.
void compositions(int total, int len, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (static_cast<int>(cur.size()) == len - 1) {
        cur.push_back(total);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (int a = total; a >= 0; --a) {
        cur.push_back(a);
        compositions(total - a, len, cur, out);
        cur.pop_back();
    }
}

QuadratureRule grundmann_moeller(int n, int s) {
    QuadratureRule rule;
    rule.dim = n;
    rule.degree = 2 * s + 1;
    if (n == 0) {
        rule.nodes.push_back(Vector::Ones(1));
        rule.weights.push_back(1.0);
        return rule;
    }
    const int d = 2 * s + 1;
    for (int i = 0; i <= s; ++i) {
        const double w = ((i % 2 == 0) ? 1.0 : -1.0) * std::pow(2.0, -2 * s) * std::pow(d + n - 2 * i, d) /
                         (factorial(i) * factorial(d + n - i));
        std::vector<std::vector<int>> betas;
        std::vector<int> cur;
        compositions(s - i, n + 1, cur, betas);
        for (const auto& beta : betas) {
            Vector lambda(n + 1);
            for (int j = 0; j <= n; ++j) lambda(j) = (2.0 * beta[static_cast<std::size_t>(j)] + 1.0) / (d + n - 2 * i);
            rule.nodes.push_back(lambda);
            rule.weights.push_back(w);
        }
    }
    return rule;
}

int thread_count() {
    static const int count = [] {
        const char* env = std::getenv("TRANSGRESS_THREADS");
        if (!env) return 1;
        const int n = std::atoi(env);
        return n >= 1 ? n : 1;
    }();
    return count;
}

}  // namespace

const QuadratureRule& simplex_rule(int dim, int degree) {
    static std::mutex mutex;
    static std::map<std::pair<int, int>, QuadratureRule> cache;
    if (dim < 0) throw DegreeMismatch("negative simplex dimension");
    const int s = std::max(0, degree / 2);
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find({dim, s});
    if (it == cache.end()) it = cache.emplace(std::make_pair(dim, s), grundmann_moeller(dim, s)).first;
    return it->second;
}

double pairwise_sum(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n == 0) return 0.0;
    if (n <= 8) {
        double acc = 0.0;
        for (double v : values) acc += v;
        return acc;
    }
    const std::size_t half = n / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const int threads = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(thread_count()), n));
    if (threads <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    for (int t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = static_cast<std::size_t>(t); i < n; i += static_cast<std::size_t>(threads)) fn(i);
            } catch (...) {
                errors[static_cast<std::size_t>(t)] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

SimplexGeometry::SimplexGeometry(const EmbeddedManifold& manifold, const SimplicialMesh& mesh, int simplex)
    : manifold_(manifold) {
    const auto idx = mesh.simplex(simplex);
    const int k = mesh.dim();
    lifted_.resize(mesh.ambient_dim(), k + 1);
    const Point v0 = mesh.vertex(idx[0]);
    lifted_.col(0) = v0;
    for (int j = 1; j <= k; ++j) lifted_.col(j) = manifold.lift_near(mesh.vertex(idx[static_cast<std::size_t>(j)]), v0);
    edges_.resize(mesh.ambient_dim(), k);
    for (int j = 1; j <= k; ++j) edges_.col(j - 1) = lifted_.col(j) - lifted_.col(0);
}

Point SimplexGeometry::point(const Vector& lambda) const { return manifold_.project(lifted_ * lambda); }

Matrix SimplexGeometry::frame(const Vector& lambda) const {
    return manifold_.project_differential(lifted_ * lambda) * edges_;
}

Vector SimplexGeometry::push_vertex_velocities(const Vector& lambda, const Matrix& velocities) const {
    return manifold_.project_differential(lifted_ * lambda) * (velocities * lambda);
}

}  // namespace transgress
