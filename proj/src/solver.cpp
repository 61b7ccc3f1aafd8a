#include "btlrank/solver.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

#include "btlrank/oracle.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

void subtract_mean(std::span<double> v) {
    double s = 0.0;
    for (double x : v) s += x;
    const double mean = s / static_cast<double>(v.size());
    for (double& x : v) x -= mean;
}

// CG without the connectivity check; callers verify connectivity once.
SolveReport solve_unchecked(const Graph& g, std::span<const double> rhs,
                            const SolverOptions& opts) {
    const int n = g.node_count();
    if (static_cast<int>(rhs.size()) != n)
        fail(errc::dimension_mismatch, "rhs length != node count");

    std::vector<double> b(rhs.begin(), rhs.end());
    subtract_mean(b);
    const double b_norm = norm2(b);

    SolveReport report;
    report.solution.assign(static_cast<std::size_t>(n), 0.0);
    if (b_norm == 0.0) return report;

    std::vector<double> inv_diag(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) inv_diag[static_cast<std::size_t>(v)] = 1.0 / g.degree(v);

    auto& x = report.solution;
    std::vector<double> r = b;
    std::vector<double> z(static_cast<std::size_t>(n));
    std::vector<double> q(static_cast<std::size_t>(n));

    // The Jacobi step leaves the zero-sum subspace, so z is re-projected
    // every iteration.
    auto precondition = [&]() {
        for (int v = 0; v < n; ++v) z[static_cast<std::size_t>(v)] = inv_diag[static_cast<std::size_t>(v)] * r[static_cast<std::size_t>(v)];
        subtract_mean(z);
    };

    precondition();
    std::vector<double> p = z;
    double rz = dot(r, z);

    const int max_iter = opts.max_iter_factor * n;
    const double target = opts.tol * b_norm;
    for (int it = 1; it <= max_iter; ++it) {
        laplacian_apply(g, p, q, opts.parallel);
        const double pq = dot(p, q);
        if (pq <= 0.0) break; // curvature lost to rounding; treated as stagnation
        const double alpha = rz / pq;
        for (int v = 0; v < n; ++v) {
            x[static_cast<std::size_t>(v)] += alpha * p[static_cast<std::size_t>(v)];
            r[static_cast<std::size_t>(v)] -= alpha * q[static_cast<std::size_t>(v)];
        }
        subtract_mean(r);
        report.iterations = it;
        if (norm2(r) <= target) {
            // Accept only a recomputed residual; the recurrence drifts.
            laplacian_apply(g, x, q, opts.parallel);
            for (int v = 0; v < n; ++v) r[static_cast<std::size_t>(v)] = b[static_cast<std::size_t>(v)] - q[static_cast<std::size_t>(v)];
            subtract_mean(r);
            const double true_norm = norm2(r);
            if (true_norm <= target) {
                subtract_mean(x);
                report.residual_norm = true_norm / b_norm;
                return report;
            }
        }
        precondition();
        const double rz_next = dot(r, z);
        const double beta = rz_next / rz;
        for (int v = 0; v < n; ++v) p[static_cast<std::size_t>(v)] = z[static_cast<std::size_t>(v)] + beta * p[static_cast<std::size_t>(v)];
        rz = rz_next;
    }
    fail(errc::no_convergence, "conjugate gradient did not reach tolerance");
}

void require_connected(const Graph& g) {
    if (!is_connected(g)) fail(errc::disconnected, "graph is not connected");
}

void check_pair(const Graph& g, int i, int j) {
    if (i < 0 || i >= g.node_count() || j < 0 || j >= g.node_count())
        fail(errc::node_out_of_range, "query node out of range");
}

} // namespace

SolveReport solve_laplacian(const Graph& g, std::span<const double> rhs,
                            const SolverOptions& opts) {
    require_connected(g);
    return solve_unchecked(g, rhs, opts);
}

double effective_resistance(const Graph& g, int i, int j, double tol) {
    check_pair(g, i, j);
    if (i == j) return 0.0;
    require_connected(g);
    std::vector<double> rhs(static_cast<std::size_t>(g.node_count()), 0.0);
    rhs[static_cast<std::size_t>(i)] = 1.0;
    rhs[static_cast<std::size_t>(j)] = -1.0;
    SolverOptions opts;
    opts.tol = tol;
    auto report = solve_unchecked(g, rhs, opts);
    return report.solution[static_cast<std::size_t>(i)] - report.solution[static_cast<std::size_t>(j)];
}

std::vector<double> electrical_flow(const Graph& g, int i, int j, double tol) {
    check_pair(g, i, j);
    if (i == j) fail(errc::same_node, "flow endpoints coincide");
    require_connected(g);
    std::vector<double> rhs(static_cast<std::size_t>(g.node_count()), 0.0);
    rhs[static_cast<std::size_t>(i)] = 1.0;
    rhs[static_cast<std::size_t>(j)] = -1.0;
    SolverOptions opts;
    opts.tol = tol;
    auto report = solve_unchecked(g, rhs, opts);
    return incidence_apply_t(g, report.solution);
}

namespace {

// Pseudoinverse columns for the requested nodes; slot k receives L† e_{nodes[k]}.
std::vector<std::vector<double>> pinv_columns(const Graph& g, std::span<const int> nodes,
                                              double tol, bool parallel) {
    const int n = g.node_count();
    std::vector<std::vector<double>> cols(nodes.size());
    SolverOptions opts;
    opts.tol = tol;
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int k = 0; k < static_cast<int>(nodes.size()); ++k) {
        std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
        rhs[static_cast<std::size_t>(nodes[static_cast<std::size_t>(k)])] = 1.0;
        cols[static_cast<std::size_t>(k)] = solve_unchecked(g, rhs, opts).solution;
    }
    return cols;
}

} // namespace

ResistanceSummary resistance_summary(const Graph& g, const SummaryOptions& opts) {
    require_connected(g);
    const int n = g.node_count();

    ResistanceSummary out;
    double pair_sum = 0.0;
    double pair_max = 0.0;
    std::int64_t pair_count = 0;

    if (opts.mode == SummaryMode::exact) {
        out.pair_source = PairSource::exact_all_pairs;
        std::vector<int> nodes(static_cast<std::size_t>(n));
        for (int v = 0; v < n; ++v) nodes[static_cast<std::size_t>(v)] = v;
        auto cols = pinv_columns(g, nodes, opts.tol, opts.parallel);
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                // Symmetrized quadratic form over the two solved columns.
                const double omega = cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]
                                   + cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)]
                                   - cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]
                                   - cols[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
                pair_sum += omega;
                pair_max = std::max(pair_max, omega);
                ++pair_count;
            }
        }
    } else {
        out.pair_source = PairSource::sampled;
        if (opts.pair_budget < 1) fail(errc::bad_spec, "sampled summary needs pair_budget >= 1");
        const std::int64_t total = static_cast<std::int64_t>(n) * (n - 1) / 2;
        std::vector<std::pair<int, int>> pairs;
        if (opts.pair_budget >= total) {
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
        } else {
            SplitMix64 rng(opts.seed);
            std::unordered_set<std::int64_t> seen;
            while (static_cast<int>(pairs.size()) < opts.pair_budget) {
                int i = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
                if (i == j) continue;
                if (i > j) std::swap(i, j);
                if (seen.insert(static_cast<std::int64_t>(i) * n + j).second) pairs.emplace_back(i, j);
            }
        }
        std::vector<double> omegas(pairs.size());
        SolverOptions sopts;
        sopts.tol = opts.tol;
#pragma omp parallel for schedule(dynamic) if (opts.parallel)
        for (int k = 0; k < static_cast<int>(pairs.size()); ++k) {
            auto [i, j] = pairs[static_cast<std::size_t>(k)];
            std::vector<double> rhs(static_cast<std::size_t>(n), 0.0);
            rhs[static_cast<std::size_t>(i)] = 1.0;
            rhs[static_cast<std::size_t>(j)] = -1.0;
            auto sol = solve_unchecked(g, rhs, sopts).solution;
            omegas[static_cast<std::size_t>(k)] = sol[static_cast<std::size_t>(i)] - sol[static_cast<std::size_t>(j)];
        }
        for (double omega : omegas) {
            pair_sum += omega;
            pair_max = std::max(pair_max, omega);
        }
        pair_count = static_cast<std::int64_t>(pairs.size());
    }

    out.omega_avg = pair_sum / static_cast<double>(pair_count);
    out.omega_max = pair_max;
    if (n <= opts.dense_trace_threshold) {
        out.trace_pinv = laplacian_eigen_trace_pinv(g);
    } else {
        out.trace_pinv = 0.5 * (n - 1) * out.omega_avg;
    }
    return out;
}

} // namespace btlrank
