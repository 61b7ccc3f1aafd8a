#ifndef BTLRANK_ESTIMATOR_HPP
#define BTLRANK_ESTIMATOR_HPP

#include <span>
#include <vector>

#include "btlrank/graph.hpp"
#include "btlrank/solver.hpp"

namespace btlrank {

struct Estimate {
    std::vector<double> w_hat; // positive, normalized so Σ log w_hat = 0
    SolveReport solver_report;
};

/// Least-squares quality estimate: log Ŵ = L† B log_r, the minimizer of
/// Σ_e (log(v_i/v_j) − log R_e)² over the zero-log-sum slice.
Estimate estimate_weights(const Graph& g, std::span<const double> log_r,
                          double tol = 1e-10, bool parallel = false);

/// Sine of the angle between x and y: the relative error under the best
/// rescaling, inf_α ‖x − αy‖/‖αy‖. Computed from the orthogonal rejection
/// of x onto y, which stays accurate down to ~1e−16 where the textbook
/// √(1 − cos²) form floors near √ε.
double sin_error(std::span<const double> x, std::span<const double> y);

/// ‖x/‖x‖₁ − y/‖y‖₁‖₂ / ‖y/‖y‖₁‖₂ with y as the reference vector.
double d_error(std::span<const double> x, std::span<const double> y);

struct BoundReport {
    double term_max = 0.0; // √(b²·Ω_max·(1 + ln(1/δ))/k)
    double term_avg = 0.0; // √(b⁴·Ω_avg·(1 + ln(1/δ))/k)
    double leading = 0.0;  // min of the two
    bool k_in_regime = false; // k ≥ Ω_max·b²·(1 + ln(1/δ))
    // All absolute constants are set to 1: the report is a scaling overlay,
    // not certified coverage.
    bool constants_suppressed = true;
};

BoundReport theorem1_bound(const ResistanceSummary& summary, double b, long long k,
                           double delta);

} // namespace btlrank

#endif // BTLRANK_ESTIMATOR_HPP
