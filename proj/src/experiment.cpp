#include "btlrank/experiment.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "btlrank/btl.hpp"
#include "btlrank/estimator.hpp"
#include "btlrank/rng.hpp"

namespace btlrank {

namespace {

// Child-stream purposes under the master seed.
constexpr std::uint64_t kGraphStream = 1;
constexpr std::uint64_t kWeightStream = 2;
constexpr std::uint64_t kComparisonStream = 3;

constexpr const char* kVersion = "btlrank 0.1.0";
constexpr int kGeneratorAttempts = 1000;

std::uint64_t value_bits(double v) { return std::bit_cast<std::uint64_t>(v); }

void validate_config(const ExperimentConfig& config) {
    if (config.values.empty()) fail(errc::bad_spec, "sweep needs at least one value");
    double prev = 0.0;
    for (double v : config.values) {
        if (!(v > 0.0)) fail(errc::bad_spec, "sweep values must be positive");
        if (v <= prev) fail(errc::bad_spec, "sweep values must be increasing");
        prev = v;
    }
    if (config.trials < 1) fail(errc::bad_spec, "need at least one trial");
    if (!(config.b >= 1.0)) fail(errc::bad_skewness, "skewness bound must be >= 1");
    if (config.variable != SweepVariable::k && config.k < 1)
        fail(errc::bad_spec, "need k >= 1");
    if (config.variable == SweepVariable::degree && config.family != Family::erdos_renyi)
        fail(errc::bad_spec, "degree sweeps apply to erdos_renyi only");
}

// Fresh-graph-per-trial applies to random families only; deterministic
// families are fixed by their spec.
bool graph_varies_by_trial(const ExperimentConfig& config) {
    return family_is_random(config.family) && config.resample_graph;
}

Graph trial_graph(const ExperimentConfig& config, double sweep_value, int trial_index) {
    FamilySpec spec = resolve_family_spec(config, sweep_value);
    if (!family_is_random(spec.family)) return generate(spec);
    const std::uint64_t trial_tag =
        graph_varies_by_trial(config) ? static_cast<std::uint64_t>(trial_index) : 0;
    spec.seed = stream_seed(config.seed, kGraphStream, value_bits(sweep_value), trial_tag);
    return generate_connected(spec, kGeneratorAttempts).graph;
}

double trial_error(const ExperimentConfig& config, double sweep_value, int trial_index,
                   const Graph& g) {
    const std::uint64_t vb = value_bits(sweep_value);
    const std::uint64_t trial_tag = static_cast<std::uint64_t>(trial_index);
    auto weights = sample_weights(g.node_count(), config.b,
                                  stream_seed(config.seed, kWeightStream, vb, trial_tag));
    const long long k = resolve_k(config, sweep_value);
    auto tally = simulate_comparisons(g, weights, static_cast<int>(k),
                                      stream_seed(config.seed, kComparisonStream, vb, trial_tag));
    auto ratios = log_ratios(empirical_frequencies(tally));
    auto est = estimate_weights(g, ratios);
    return config.metric == ErrorMetric::sin ? sin_error(est.w_hat, weights.w)
                                             : d_error(est.w_hat, weights.w);
}

ResistanceSummary trial_summary(const Graph& g) {
    SummaryOptions opts;
    // Trace via the pair identity: the harness only consumes omega
    // statistics, so the dense eigensolve is skipped.
    opts.dense_trace_threshold = 0;
    return resistance_summary(g, opts);
}

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace

SweepVariable sweep_variable_from_name(const std::string& name) {
    if (name == "k") return SweepVariable::k;
    if (name == "n") return SweepVariable::n;
    if (name == "degree") return SweepVariable::degree;
    fail(errc::bad_spec, "unknown sweep variable: " + name);
}

std::string sweep_variable_name(SweepVariable variable) {
    switch (variable) {
        case SweepVariable::k: return "k";
        case SweepVariable::n: return "n";
        case SweepVariable::degree: return "degree";
    }
    fail(errc::bad_spec, "unnamed sweep variable");
}

ErrorMetric metric_from_name(const std::string& name) {
    if (name == "sin") return ErrorMetric::sin;
    if (name == "d") return ErrorMetric::d;
    fail(errc::bad_spec, "unknown error metric: " + name);
}

std::string metric_name(ErrorMetric metric) {
    return metric == ErrorMetric::sin ? "sin" : "d";
}

FamilySpec resolve_family_spec(const ExperimentConfig& config, double sweep_value) {
    FamilySpec spec;
    spec.family = config.family;
    spec.n = config.variable == SweepVariable::n ? static_cast<int>(std::llround(sweep_value))
                                                 : config.n;
    if (spec.n < 2) fail(errc::bad_spec, "resolved node count must be >= 2");
    if (config.family == Family::geometric) spec.radius = config.radius;
    if (config.family == Family::erdos_renyi) {
        double degree_or_p = config.p_or_degree;
        if (config.variable == SweepVariable::degree) degree_or_p = sweep_value;
        if (degree_or_p < 0.0) fail(errc::bad_spec, "erdos_renyi needs p_or_degree");
        spec.p = degree_or_p < 1.0 ? degree_or_p : degree_or_p / (spec.n - 1);
        if (spec.p > 1.0) fail(errc::bad_spec, "expected degree exceeds n - 1");
    }
    return spec;
}

long long resolve_k(const ExperimentConfig& config, double sweep_value) {
    if (config.variable != SweepVariable::k) return config.k;
    const long long k = std::llround(sweep_value);
    if (k < 1) fail(errc::bad_spec, "swept k must be >= 1");
    return k;
}

double run_trial(const ExperimentConfig& config, double sweep_value, int trial_index) {
    validate_config(config);
    if (trial_index < 0 || trial_index >= config.trials)
        fail(errc::bad_spec, "trial index outside configured range");
    Graph g = trial_graph(config, sweep_value, trial_index);
    return trial_error(config, sweep_value, trial_index, g);
}

ExperimentResult run_experiment(const ExperimentConfig& config, bool parallel) {
    validate_config(config);
    ExperimentResult result;
    result.config = config;
    result.version = kVersion;
    result.rows.reserve(config.values.size());

    const int trials = config.trials;
    const bool per_trial_graph = graph_varies_by_trial(config);

    for (double value : config.values) {
        std::vector<double> errors(static_cast<std::size_t>(trials));
        ExperimentRow row;
        row.value = value;
        row.trials = trials;

        if (per_trial_graph) {
            std::vector<double> omega_avg(static_cast<std::size_t>(trials));
            std::vector<double> omega_max(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic) if (parallel)
            for (int t = 0; t < trials; ++t) {
                Graph g = trial_graph(config, value, t);
                errors[static_cast<std::size_t>(t)] = trial_error(config, value, t, g);
                auto summary = trial_summary(g);
                omega_avg[static_cast<std::size_t>(t)] = summary.omega_avg;
                omega_max[static_cast<std::size_t>(t)] = summary.omega_max;
            }
            double sum_oa = 0.0, sum_om = 0.0;
            for (int t = 0; t < trials; ++t) {
                sum_oa += omega_avg[static_cast<std::size_t>(t)];
                sum_om += omega_max[static_cast<std::size_t>(t)];
            }
            row.mean_omega_avg = sum_oa / trials;
            row.mean_omega_max = sum_om / trials;
        } else {
            // One graph serves every trial at this sweep value, so its
            // summary is the mean.
            const Graph g = trial_graph(config, value, 0);
            const auto summary = trial_summary(g);
#pragma omp parallel for schedule(dynamic) if (parallel)
            for (int t = 0; t < trials; ++t) {
                errors[static_cast<std::size_t>(t)] = trial_error(config, value, t, g);
            }
            row.mean_omega_avg = summary.omega_avg;
            row.mean_omega_max = summary.omega_max;
        }

        double sum = 0.0;
        for (int t = 0; t < trials; ++t) sum += errors[static_cast<std::size_t>(t)];
        row.mean_error = sum / trials;
        double ss = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = errors[static_cast<std::size_t>(t)] - row.mean_error;
            ss += d * d;
        }
        row.sample_std = trials > 1 ? std::sqrt(ss / (trials - 1)) : 0.0;

        ResistanceSummary mean_summary;
        mean_summary.omega_avg = row.mean_omega_avg;
        mean_summary.omega_max = row.mean_omega_max;
        row.bound = theorem1_bound(mean_summary, config.b, resolve_k(config, value),
                                   config.delta)
                        .leading;
        result.rows.push_back(row);
    }
    return result;
}

double fit_loglog_slope(const ExperimentResult& result) {
    if (result.rows.size() < 3) fail(errc::degenerate_fit, "need at least three rows");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double count = static_cast<double>(result.rows.size());
    for (const auto& row : result.rows) {
        if (!(row.value > 0.0) || !(row.mean_error > 0.0))
            fail(errc::degenerate_fit, "log-log fit needs positive values and errors");
        const double x = std::log(row.value);
        const double y = std::log(row.mean_error);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double denom = sxx - sx * sx / count;
    if (denom <= 0.0) fail(errc::degenerate_fit, "sweep values do not spread");
    return (sxy - sx * sy / count) / denom;
}

std::string to_csv(const ExperimentResult& result) {
    if (result.rows.empty()) fail(errc::bad_spec, "empty result");
    std::string out = "sweep_value,mean_error,std,trials,omega_avg,bound\n";
    for (const auto& row : result.rows) {
        out += format_double(row.value);
        out += ',';
        out += format_double(row.mean_error);
        out += ',';
        out += format_double(row.sample_std);
        out += ',';
        out += std::to_string(row.trials);
        out += ',';
        out += format_double(row.mean_omega_avg);
        out += ',';
        out += format_double(row.bound);
        out += '\n';
    }
    return out;
}

void emit_csv(const ExperimentResult& result, const std::string& path) {
    const std::string body = to_csv(result); // validates before touching the file
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    out << body;
    if (!out.flush()) fail(errc::io_error, "write failed: " + path);
}

namespace {

struct AxisTransform {
    bool logscale;
    double lo, hi; // transformed range, padded

    double place(double v, double pixel_lo, double pixel_hi) const {
        const double t = logscale ? std::log10(v) : v;
        return pixel_lo + (t - lo) / (hi - lo) * (pixel_hi - pixel_lo);
    }
};

AxisTransform make_axis(bool logscale, double vmin, double vmax) {
    double lo = logscale ? std::log10(vmin) : vmin;
    double hi = logscale ? std::log10(vmax) : vmax;
    if (hi - lo < 1e-12) {
        lo -= 0.5;
        hi += 0.5;
    }
    const double pad = 0.06 * (hi - lo);
    return {logscale, lo - pad, hi + pad};
}

std::string format_tick(double t, bool logscale) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", logscale ? std::pow(10.0, t) : t);
    return buf;
}

} // namespace

std::string to_svg(const ExperimentResult& result, Axes axes,
                   std::optional<double> reference_slope) {
    if (result.rows.empty()) fail(errc::bad_spec, "empty result");
    const bool logscale = axes == Axes::loglog;

    double xmin = result.rows.front().value, xmax = xmin;
    double ymin = result.rows.front().mean_error, ymax = ymin;
    for (const auto& row : result.rows) {
        if (logscale && (!(row.value > 0.0) || !(row.mean_error > 0.0)))
            fail(errc::bad_spec, "loglog axes need positive data");
        xmin = std::min(xmin, row.value);
        xmax = std::max(xmax, row.value);
        ymin = std::min(ymin, row.mean_error);
        ymax = std::max(ymax, row.mean_error);
        if (row.bound > 0.0) {
            ymin = std::min(ymin, row.bound);
            ymax = std::max(ymax, row.bound);
        }
    }
    const AxisTransform ax = make_axis(logscale, xmin, xmax);
    const AxisTransform ay = make_axis(logscale, ymin, ymax);

    const double width = 720, height = 540;
    const double left = 84, right = width - 30, top = 52, bottom = height - 64;
    auto px = [&](double v) { return ax.place(v, left, right); };
    auto py = [&](double v) { return ay.place(v, bottom, top); };

    std::ostringstream svg;
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << " " << height << "\">\n"
        << "<!-- " << kVersion << " | config " << config_to_json(result.config) << " -->\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    // Frame and ticks.
    svg << "<rect x=\"" << left << "\" y=\"" << top << "\" width=\"" << right - left
        << "\" height=\"" << bottom - top << "\" fill=\"none\" stroke=\"#444\"/>\n";
    const int ticks = 5;
    for (int t = 0; t <= ticks; ++t) {
        const double fx = ax.lo + (ax.hi - ax.lo) * t / ticks;
        const double fy = ay.lo + (ay.hi - ay.lo) * t / ticks;
        const double gx = left + (right - left) * t / ticks;
        const double gy = bottom + (top - bottom) * t / ticks;
        svg << "<line x1=\"" << gx << "\" y1=\"" << bottom << "\" x2=\"" << gx << "\" y2=\""
            << bottom + 6 << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << gx << "\" y=\"" << bottom + 22
            << "\" font-size=\"12\" text-anchor=\"middle\" font-family=\"sans-serif\">"
            << format_tick(fx, logscale) << "</text>\n"
            << "<line x1=\"" << left - 6 << "\" y1=\"" << gy << "\" x2=\"" << left << "\" y2=\""
            << gy << "\" stroke=\"#444\"/>\n"
            << "<text x=\"" << left - 10 << "\" y=\"" << gy + 4
            << "\" font-size=\"12\" text-anchor=\"end\" font-family=\"sans-serif\">"
            << format_tick(fy, logscale) << "</text>\n";
    }

    // Std whiskers, mean polyline, bound overlay, then the points on top.
    for (const auto& row : result.rows) {
        const double lo_err = row.mean_error - row.sample_std;
        const double hi_err = row.mean_error + row.sample_std;
        if (logscale && !(lo_err > 0.0)) continue;
        svg << "<line x1=\"" << px(row.value) << "\" y1=\"" << py(lo_err) << "\" x2=\""
            << px(row.value) << "\" y2=\"" << py(hi_err)
            << "\" stroke=\"#9bb7d4\" stroke-width=\"2\"/>\n";
    }

    svg << "<polyline fill=\"none\" stroke=\"#33659c\" stroke-width=\"2\" points=\"";
    for (const auto& row : result.rows) svg << px(row.value) << ',' << py(row.mean_error) << ' ';
    svg << "\"/>\n";

    bool any_bound = false;
    for (const auto& row : result.rows) any_bound = any_bound || row.bound > 0.0;
    if (any_bound && (!logscale || result.rows.front().bound > 0.0)) {
        svg << "<polyline fill=\"none\" stroke=\"#b05733\" stroke-width=\"1.5\" "
               "stroke-dasharray=\"2,3\" points=\"";
        for (const auto& row : result.rows)
            if (!logscale || row.bound > 0.0) svg << px(row.value) << ',' << py(row.bound) << ' ';
        svg << "\"/>\n";
    }

    for (const auto& row : result.rows) {
        svg << "<circle cx=\"" << px(row.value) << "\" cy=\"" << py(row.mean_error)
            << "\" r=\"4\" fill=\"#33659c\"/>\n";
    }

    // Dashed reference with the requested slope through the first point.
    if (reference_slope) {
        const double s = *reference_slope;
        const double x0 = result.rows.front().value;
        const double y0 = result.rows.front().mean_error;
        const double x1 = result.rows.back().value;
        const double y1 = logscale ? y0 * std::pow(x1 / x0, s) : y0 + s * (x1 - x0);
        svg << "<line x1=\"" << px(x0) << "\" y1=\"" << py(y0) << "\" x2=\"" << px(x1)
            << "\" y2=\"" << py(y1)
            << "\" stroke=\"#555\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";
    }

    const std::string xlabel = sweep_variable_name(result.config.variable);
    svg << "<text x=\"" << (left + right) / 2 << "\" y=\"" << height - 18
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\">" << xlabel
        << "</text>\n"
        << "<text x=\"20\" y=\"" << (top + bottom) / 2
        << "\" font-size=\"14\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "transform=\"rotate(-90 20 "
        << (top + bottom) / 2 << ")\">mean " << metric_name(result.config.metric)
        << " error</text>\n"
        << "<text x=\"" << (left + right) / 2 << "\" y=\"28\" font-size=\"15\" "
           "text-anchor=\"middle\" font-family=\"sans-serif\">"
        << family_name(result.config.family) << ", " << xlabel << " sweep, b="
        << result.config.b << "</text>\n"
        << "</svg>\n";
    return svg.str();
}

void emit_svg(const ExperimentResult& result, const std::string& path, Axes axes,
              std::optional<double> reference_slope) {
    const std::string body = to_svg(result, axes, reference_slope);
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    out << body;
    if (!out.flush()) fail(errc::io_error, "write failed: " + path);
}

ExperimentConfig config_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format_error, std::string("config is not valid JSON: ") + e.what());
    }
    ExperimentConfig config;
    try {
        config.family = family_from_name(j.at("family").get<std::string>());
        config.n = j.at("n").get<int>();
        config.b = j.at("b").get<double>();
        config.trials = j.at("trials").get<int>();
        config.seed = j.at("seed").get<std::uint64_t>();
        const auto& sweep = j.at("sweep");
        config.variable = sweep_variable_from_name(sweep.at("variable").get<std::string>());
        config.values = sweep.at("values").get<std::vector<double>>();
        if (j.contains("p_or_degree")) config.p_or_degree = j["p_or_degree"].get<double>();
        if (j.contains("radius")) config.radius = j["radius"].get<double>();
        if (j.contains("k")) config.k = j["k"].get<long long>();
        if (j.contains("metric")) config.metric = metric_from_name(j["metric"].get<std::string>());
        if (j.contains("resample_graph")) config.resample_graph = j["resample_graph"].get<bool>();
        if (j.contains("delta")) config.delta = j["delta"].get<double>();
    } catch (const nlohmann::json::exception& e) {
        fail(errc::format_error, std::string("bad config field: ") + e.what());
    }
    validate_config(config);
    return config;
}

std::string config_to_json(const ExperimentConfig& config) {
    nlohmann::json j;
    j["family"] = family_name(config.family);
    j["n"] = config.n;
    if (config.p_or_degree >= 0.0) j["p_or_degree"] = config.p_or_degree;
    if (config.radius > 0.0) j["radius"] = config.radius;
    j["b"] = config.b;
    j["k"] = config.k;
    j["sweep"] = {{"variable", sweep_variable_name(config.variable)},
                  {"values", config.values}};
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["metric"] = metric_name(config.metric);
    j["resample_graph"] = config.resample_graph;
    j["delta"] = config.delta;
    return j.dump();
}

} // namespace btlrank
