#ifndef BTLRANK_SOLVER_HPP
#define BTLRANK_SOLVER_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "btlrank/graph.hpp"

namespace btlrank {

struct SolverOptions {
    double tol = 1e-10;       // relative residual against the projected rhs
    int max_iter_factor = 20; // iteration cap = factor * n
    bool parallel = false;    // row-parallel Laplacian matvec
};

struct SolveReport {
    std::vector<double> solution;
    double residual_norm = 0.0; // relative to the projected rhs norm
    int iterations = 0;
};

/// Computes x = L† rhs by Jacobi-preconditioned conjugate gradient on the
/// zero-sum subspace. The component of rhs along the all-ones vector is
/// discarded; the returned solution sums to zero.
SolveReport solve_laplacian(const Graph& g, std::span<const double> rhs,
                            const SolverOptions& opts = {});

/// Ω_ij = (e_i − e_j)ᵀ L† (e_i − e_j); Ω_ii = 0.
double effective_resistance(const Graph& g, int i, int j, double tol = 1e-10);

/// Unit-current flow u = Bᵀ L† (e_i − e_j): satisfies B u = e_i − e_j,
/// ‖u‖₂² = Ω_ij, and vanishes off path_edge_set(g, i, j).
std::vector<double> electrical_flow(const Graph& g, int i, int j, double tol = 1e-10);

enum class SummaryMode { exact, sampled };
enum class PairSource { exact_all_pairs, sampled };

struct ResistanceSummary {
    double omega_max = 0.0;
    double omega_avg = 0.0; // mean over unordered pairs i < j
    double trace_pinv = 0.0;
    PairSource pair_source = PairSource::exact_all_pairs;
};

struct SummaryOptions {
    SummaryMode mode = SummaryMode::exact;
    int pair_budget = 0;      // sampled mode: number of distinct pairs
    std::uint64_t seed = 0;   // sampled mode: pair selection stream
    double tol = 1e-10;
    // trace_pinv comes from dense eigenvalues for n <= this, else from the
    // identity tr L† = (n−1)/2 · Ω_avg.
    int dense_trace_threshold = 512;
    bool parallel = false; // distribute column/pair solves across threads
};

/// Exact mode solves the n pseudoinverse columns and reduces all unordered
/// pairs; sampled mode estimates omega_avg/omega_max from seeded pairs
/// drawn without replacement.
ResistanceSummary resistance_summary(const Graph& g, const SummaryOptions& opts = {});

} // namespace btlrank

#endif // BTLRANK_SOLVER_HPP
