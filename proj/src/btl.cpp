#include "btlrank/btl.hpp"

#include <cmath>

#include "btlrank/rng.hpp"

namespace btlrank {

WeightVector sample_weights(int n, double b, std::uint64_t seed) {
    if (!(b >= 1.0)) fail(errc::bad_skewness, "skewness bound must be >= 1");
    if (n < 1) fail(errc::bad_spec, "need at least one weight");
    WeightVector out;
    out.b = b;
    out.w.resize(static_cast<std::size_t>(n));
    SplitMix64 rng(seed);
    const double log_b = std::log(b);
    for (int i = 0; i < n; ++i) out.w[static_cast<std::size_t>(i)] = std::exp(rng.uniform(0.0, log_b));
    return out;
}

double win_probability(const WeightVector& w, int i, int j) {
    const int n = static_cast<int>(w.w.size());
    if (i < 0 || i >= n || j < 0 || j >= n) fail(errc::node_out_of_range, "item index out of range");
    const double wi = w.w[static_cast<std::size_t>(i)];
    const double wj = w.w[static_cast<std::size_t>(j)];
    return wi / (wi + wj);
}

double bernoulli_variance_scale(double rho) {
    if (!(rho > 0.0)) fail(errc::bad_spec, "quality ratio must be positive");
    return rho + 2.0 + 1.0 / rho;
}

ComparisonTally simulate_comparisons(const Graph& g, const WeightVector& w, int k,
                                     std::uint64_t seed, bool parallel) {
    if (static_cast<int>(w.w.size()) != g.node_count())
        fail(errc::dimension_mismatch, "weight vector length != node count");
    if (k < 1) fail(errc::bad_spec, "need at least one comparison per edge");

    const int m = g.edge_count();
    ComparisonTally tally;
    tally.k = k;
    tally.wins.assign(static_cast<std::size_t>(m), 0);
#pragma omp parallel for schedule(static) if (parallel)
    for (int e = 0; e < m; ++e) {
        auto [i, j] = g.edge(e);
        const double p = win_probability(w, i, j);
        SplitMix64 rng(stream_seed(seed, static_cast<std::uint64_t>(e)));
        int wins = 0;
        for (int c = 0; c < k; ++c) wins += rng.bernoulli(p) ? 1 : 0;
        tally.wins[static_cast<std::size_t>(e)] = wins;
    }
    return tally;
}

FrequencyVector empirical_frequencies(const ComparisonTally& t) {
    const int m = static_cast<int>(t.wins.size());
    if (t.k < 1) fail(errc::bad_spec, "tally needs k >= 1");
    FrequencyVector out;
    out.k = t.k;
    out.f.resize(static_cast<std::size_t>(m));
    out.wins.resize(static_cast<std::size_t>(m));
    out.corrected_edges = EdgeSet(m);
    const double k = static_cast<double>(t.k);
    for (int e = 0; e < m; ++e) {
        const int raw = t.wins[static_cast<std::size_t>(e)];
        if (raw < 0 || raw > t.k) fail(errc::bad_spec, "win count outside [0, k]");
        double wins = static_cast<double>(raw);
        if (raw == 0) {
            wins = 0.5;
            out.corrected_edges.set(e);
        } else if (raw == t.k) {
            wins = k - 0.5;
            out.corrected_edges.set(e);
        }
        out.wins[static_cast<std::size_t>(e)] = wins;
        out.f[static_cast<std::size_t>(e)] = wins / k;
    }
    return out;
}

std::vector<double> log_ratios(const FrequencyVector& f) {
    const double k = static_cast<double>(f.k);
    std::vector<double> out(f.wins.size());
    for (std::size_t e = 0; e < f.wins.size(); ++e) {
        // f/(1−f) = wins/(k − wins); both counts are exact, so reversing the
        // edge swaps the log arguments and negates the result bit for bit.
        out[e] = std::log(f.wins[e]) - std::log(k - f.wins[e]);
    }
    return out;
}

double chernoff_deviation_bound(int n, int k, double v, double delta, double c1) {
    if (!(delta > 0.0) || delta > std::exp(-1.0)) fail(errc::bad_delta, "delta must lie in (0, 1/e]");
    if (c1 <= 0.0) fail(errc::bad_spec, "c1 must be positive");
    if (n < 2 || k < 1 || !(v > 0.0)) fail(errc::bad_spec, "need n >= 2, k >= 1, v > 0");
    return std::sqrt(c1 * std::log(static_cast<double>(n) / delta) / (static_cast<double>(k) * v));
}

} // namespace btlrank
