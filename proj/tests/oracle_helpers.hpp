#ifndef BTLRANK_TESTS_ORACLE_HELPERS_HPP
#define BTLRANK_TESTS_ORACLE_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "btlrank/graph.hpp"
#include "btlrank/rng.hpp"

namespace btlrank::testhelp {

// Union of edges over all simple i-j paths, by exhaustive DFS. Exponential;
// reference oracle for small n only.
inline EdgeSet brute_force_path_edges(const Graph& g, int i, int j) {
    EdgeSet result(g.edge_count());
    std::vector<char> visited(static_cast<std::size_t>(g.node_count()), 0);
    std::vector<int> path_edges;

    auto dfs = [&](auto&& self, int v) -> void {
        if (v == j) {
            for (int e : path_edges) result.set(e);
            return;
        }
        for (auto [u, e] : g.incident(v)) {
            if (visited[static_cast<std::size_t>(u)]) continue;
            visited[static_cast<std::size_t>(u)] = 1;
            path_edges.push_back(e);
            self(self, u);
            path_edges.pop_back();
            visited[static_cast<std::size_t>(u)] = 0;
        }
    };
    visited[static_cast<std::size_t>(i)] = 1;
    dfs(dfs, i);
    return result;
}

// Random spanning tree plus up to `extra` additional distinct edges.
inline Graph random_connected_graph(int n, int extra, SplitMix64& rng) {
    std::set<std::pair<int, int>> edges;
    for (int v = 1; v < n; ++v) {
        const int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
        edges.emplace(u, v);
    }
    for (int t = 0; t < extra; ++t) {
        int a = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        int b = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
        if (a == b) continue;
        if (a > b) std::swap(a, b);
        edges.emplace(a, b);
    }
    std::vector<std::pair<int, int>> list(edges.begin(), edges.end());
    return build_graph(n, list);
}

// Positive vector whose max/min ratio stays at or below `b`.
inline std::vector<double> random_skewed_vector(int n, double b, SplitMix64& rng) {
    std::vector<double> x(static_cast<std::size_t>(n));
    const double log_b = std::log(b);
    for (auto& v : x) v = std::exp(rng.uniform(0.0, log_b));
    return x;
}

// inf over u >= 0 of ||u x - y|| / ||y||, by golden-section search. The
// optimization definition of the sine error, independent of any closed form.
inline double golden_section_sin(std::span<const double> x, std::span<const double> y) {
    auto objective = [&](double u) {
        double s = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            const double d = u * x[i] - y[i];
            s += d * d;
        }
        return s;
    };
    double nx = 0.0, ny = 0.0;
    for (double v : x) nx += v * v;
    for (double v : y) ny += v * v;
    nx = std::sqrt(nx);
    ny = std::sqrt(ny);

    double lo = 0.0, hi = 2.0 * ny / nx + 1.0; // optimum is below ||y||/||x|| by Cauchy-Schwarz
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = hi - phi * (hi - lo);
    double b = lo + phi * (hi - lo);
    double fa = objective(a), fb = objective(b);
    for (int it = 0; it < 300; ++it) {
        if (fa < fb) {
            hi = b;
            b = a;
            fb = fa;
            a = hi - phi * (hi - lo);
            fa = objective(a);
        } else {
            lo = a;
            a = b;
            fa = fb;
            b = lo + phi * (hi - lo);
            fb = objective(b);
        }
    }
    return std::sqrt(std::min(fa, fb)) / ny;
}

} // namespace btlrank::testhelp

#endif // BTLRANK_TESTS_ORACLE_HELPERS_HPP
