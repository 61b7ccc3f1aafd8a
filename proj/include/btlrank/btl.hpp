#ifndef BTLRANK_BTL_HPP
#define BTLRANK_BTL_HPP

#include <cstdint>
#include <vector>

#include "btlrank/graph.hpp"

namespace btlrank {

struct WeightVector {
    std::vector<double> w; // positive item qualities
    double b = 1.0;        // declared skewness bound, max_i,j w_i/w_j <= b
};

/// log w_i i.i.d. uniform on [0, log b]; realized skewness never exceeds b.
WeightVector sample_weights(int n, double b, std::uint64_t seed);

/// p_ij = w_i / (w_i + w_j).
double win_probability(const WeightVector& w, int i, int j);

/// v(ρ) = ρ + 2 + 1/ρ; the reciprocal of p(1−p) at p = ρ/(1+ρ).
double bernoulli_variance_scale(double rho);

struct ComparisonTally {
    int k = 0;             // comparisons per edge
    std::vector<int> wins; // per edge: wins of the lower-index endpoint
};

/// wins_e ~ Binomial(k, p_ij) on each edge, drawn from the per-edge stream
/// (seed, edge index). The parallel path writes disjoint slots in edge
/// order, so tallies match the serial path exactly.
ComparisonTally simulate_comparisons(const Graph& g, const WeightVector& w, int k,
                                     std::uint64_t seed, bool parallel = false);

struct FrequencyVector {
    std::vector<double> f;      // corrected win frequencies, interior to (0, 1)
    std::vector<double> wins;   // corrected win counts f * k (exact halves at extremes)
    int k = 0;
    EdgeSet corrected_edges;    // where the half-win rule fired
};

/// f_e = wins_e / k with the half-win correction: 0 -> 0.5/k and
/// k -> (k − 0.5)/k.
FrequencyVector empirical_frequencies(const ComparisonTally& t);

/// log R_e = log(f_e / (1 − f_e)) per edge, oriented lower-index over
/// higher-index. Evaluated on the corrected counts as
/// log(wins*) − log(k − wins*), which makes edge reversal an exact
/// sign flip.
std::vector<double> log_ratios(const FrequencyVector& f);

/// Diagnostic frequency-deviation threshold √(c1·log(n/δ)/(k·v)). The
/// multiplicative constant is a knob, not a certified value.
double chernoff_deviation_bound(int n, int k, double v, double delta, double c1 = 1.0);

} // namespace btlrank

#endif // BTLRANK_BTL_HPP
