#include "btlrank/estimator.hpp"

#include <algorithm>
#include <cmath>

namespace btlrank {

Estimate estimate_weights(const Graph& g, std::span<const double> log_r, double tol,
                          bool parallel) {
    if (static_cast<int>(log_r.size()) != g.edge_count())
        fail(errc::dimension_mismatch, "log-ratio vector length != edge count");
    for (double v : log_r)
        if (!std::isfinite(v)) fail(errc::non_finite_input, "log ratios must be finite");

    auto rhs = incidence_apply(g, log_r);
    SolverOptions opts;
    opts.tol = tol;
    opts.parallel = parallel;
    Estimate out;
    out.solver_report = solve_laplacian(g, rhs, opts);

    out.w_hat.resize(out.solver_report.solution.size());
    for (std::size_t i = 0; i < out.w_hat.size(); ++i)
        out.w_hat[i] = std::exp(out.solver_report.solution[i]);
    return out;
}

namespace {

void check_same_size(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.empty())
        fail(errc::dimension_mismatch, "vectors must share a nonzero length");
}

} // namespace

double sin_error(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    double xx = 0.0, yy = 0.0, xy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i]))
            fail(errc::non_finite_input, "vector entries must be finite");
        xx += x[i] * x[i];
        yy += y[i] * y[i];
        xy += x[i] * y[i];
    }
    if (xx == 0.0 || yy == 0.0) fail(errc::zero_vector, "sine error needs nonzero vectors");
    const double scale = xy / yy;
    double rr = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double r = x[i] - scale * y[i];
        rr += r * r;
    }
    return std::clamp(std::sqrt(rr / xx), 0.0, 1.0);
}

double d_error(std::span<const double> x, std::span<const double> y) {
    check_same_size(x, y);
    double sx = 0.0, sy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0) || !std::isfinite(x[i]) || !std::isfinite(y[i]))
            fail(errc::non_positive_entry, "entries must be positive");
        sx += x[i];
        sy += y[i];
    }
    double diff2 = 0.0, ref2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double xn = x[i] / sx;
        const double yn = y[i] / sy;
        diff2 += (xn - yn) * (xn - yn);
        ref2 += yn * yn;
    }
    return std::sqrt(diff2 / ref2);
}

BoundReport theorem1_bound(const ResistanceSummary& summary, double b, long long k,
                           double delta) {
    if (!(delta > 0.0) || delta > std::exp(-1.0)) fail(errc::bad_delta, "delta must lie in (0, 1/e]");
    if (!(b >= 1.0)) fail(errc::bad_skewness, "skewness bound must be >= 1");
    if (k < 1) fail(errc::bad_spec, "need k >= 1");

    const double confidence = 1.0 + std::log(1.0 / delta);
    const double kd = static_cast<double>(k);
    BoundReport out;
    out.term_max = std::sqrt(b * b * summary.omega_max * confidence / kd);
    out.term_avg = std::sqrt(b * b * b * b * summary.omega_avg * confidence / kd);
    out.leading = std::min(out.term_max, out.term_avg);
    out.k_in_regime = kd >= summary.omega_max * b * b * confidence;
    return out;
}

} // namespace btlrank
