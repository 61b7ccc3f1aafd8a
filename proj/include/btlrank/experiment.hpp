#ifndef BTLRANK_EXPERIMENT_HPP
#define BTLRANK_EXPERIMENT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "btlrank/generators.hpp"

namespace btlrank {

enum class SweepVariable { k, n, degree };
enum class ErrorMetric { sin, d };

SweepVariable sweep_variable_from_name(const std::string& name);
std::string sweep_variable_name(SweepVariable variable);
ErrorMetric metric_from_name(const std::string& name);
std::string metric_name(ErrorMetric metric);

struct ExperimentConfig {
    Family family = Family::erdos_renyi;
    int n = 2;                 // node count when not swept
    // Erdos-Renyi edge parameter: values below 1 are probabilities, values
    // of 1 or more are expected degrees d with p = d/(n-1).
    double p_or_degree = -1.0;
    double radius = -1.0;      // geometric only
    double b = 1.0;            // skewness of the sampled true weights
    long long k = 1;           // comparisons per edge when not swept
    SweepVariable variable = SweepVariable::k;
    std::vector<double> values;
    int trials = 1;
    std::uint64_t seed = 0;
    bool resample_graph = true; // fresh graph per trial for random families
    ErrorMetric metric = ErrorMetric::sin;
    double delta = 0.36787944117144233; // bound-overlay confidence, 1/e
};

/// Graph parameters in force at one sweep value.
FamilySpec resolve_family_spec(const ExperimentConfig& config, double sweep_value);

/// Comparisons per edge in force at one sweep value.
long long resolve_k(const ExperimentConfig& config, double sweep_value);

struct ExperimentRow {
    double value = 0.0;
    double mean_error = 0.0;
    double sample_std = 0.0;
    int trials = 0;
    double mean_omega_avg = 0.0;
    double mean_omega_max = 0.0;
    double bound = 0.0; // leading Theorem-style overlay term, constants 1
};

struct ExperimentResult {
    ExperimentConfig config;
    std::string version;
    std::vector<ExperimentRow> rows;
};

/// One Monte Carlo trial: child seeds derive from (master seed, sweep
/// value, trial index, purpose), so the same triple always reproduces the
/// same error, inside or outside run_experiment.
double run_trial(const ExperimentConfig& config, double sweep_value, int trial_index);

/// Runs trials per sweep value and aggregates by trial index, so results
/// do not depend on execution order. Trials run concurrently when
/// `parallel`.
ExperimentResult run_experiment(const ExperimentConfig& config, bool parallel = true);

/// OLS slope of log(mean_error) against log(sweep value).
double fit_loglog_slope(const ExperimentResult& result);

enum class Axes { linear, loglog };

std::string to_csv(const ExperimentResult& result);
void emit_csv(const ExperimentResult& result, const std::string& path);

std::string to_svg(const ExperimentResult& result, Axes axes,
                   std::optional<double> reference_slope = std::nullopt);
void emit_svg(const ExperimentResult& result, const std::string& path, Axes axes,
              std::optional<double> reference_slope = std::nullopt);

ExperimentConfig config_from_json(const std::string& text);
std::string config_to_json(const ExperimentConfig& config);

} // namespace btlrank

#endif // BTLRANK_EXPERIMENT_HPP
