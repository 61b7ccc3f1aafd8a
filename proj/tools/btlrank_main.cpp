#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "btlrank/btl.hpp"
#include "btlrank/estimator.hpp"
#include "btlrank/experiment.hpp"
#include "btlrank/generators.hpp"
#include "btlrank/io.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/solver.hpp"

namespace {

using namespace btlrank;

// Scriptable stdout: full precision, one value per line.
void print_value(double v) { std::printf("%.15g\n", v); }
void print_field(const char* name, double v) { std::printf("%s %.15g\n", name, v); }

struct GenOptions {
    std::string family;
    int n = 0;
    double p = -1.0;
    double degree = -1.0;
    double radius = -1.0;
    std::uint64_t seed = 0;
    int attempts = 1000;
    std::string output;
};

void run_gen(const GenOptions& opt) {
    FamilySpec spec;
    spec.family = family_from_name(opt.family);
    spec.n = opt.n;
    spec.seed = opt.seed;
    if (opt.p >= 0.0) spec.p = opt.p;
    if (opt.degree >= 0.0) {
        if (opt.n < 2) fail(errc::bad_spec, "--degree needs n >= 2");
        spec.p = opt.degree / (opt.n - 1);
    }
    if (opt.radius >= 0.0) spec.radius = opt.radius;

    Graph g = [&] {
        if (!family_is_random(spec.family)) return generate(spec);
        auto result = generate_connected(spec, opt.attempts);
        if (result.attempts > 1)
            std::cerr << "note: connected on attempt " << result.attempts << "\n";
        return result.graph;
    }();
    if (g.node_count() != opt.n)
        std::cerr << "note: " << opt.family << " rounds n to " << g.node_count() << "\n";
    write_graph_file(opt.output, g);
}

struct ResistOptions {
    std::string graph;
    std::vector<int> pair;
    bool summary = false;
    double tol = 1e-10;
    int sample_pairs = 0;
    std::uint64_t sample_seed = 0;
};

void run_resist(const ResistOptions& opt) {
    Graph g = read_graph_file(opt.graph);
    if (!opt.pair.empty()) {
        print_value(effective_resistance(g, opt.pair[0], opt.pair[1], opt.tol));
        return;
    }
    SummaryOptions sopt;
    sopt.tol = opt.tol;
    if (opt.sample_pairs > 0) {
        sopt.mode = SummaryMode::sampled;
        sopt.pair_budget = opt.sample_pairs;
        sopt.seed = opt.sample_seed;
    }
    auto summary = resistance_summary(g, sopt);
    print_field("omega_max", summary.omega_max);
    print_field("omega_avg", summary.omega_avg);
    print_field("trace_pinv", summary.trace_pinv);
    if (summary.pair_source == PairSource::sampled)
        std::printf("pair_source sampled\n");
}

struct SimulateOptions {
    std::string graph;
    double b = 1.0;
    int k = 0;
    std::uint64_t seed = 0;
    std::string weights_out;
    std::string output;
};

void run_simulate(const SimulateOptions& opt) {
    Graph g = read_graph_file(opt.graph);
    // Weights and comparisons draw from distinct child streams of the one
    // master seed.
    auto w = sample_weights(g.node_count(), opt.b, stream_seed(opt.seed, 2));
    auto tally = simulate_comparisons(g, w, opt.k, stream_seed(opt.seed, 3));
    write_weights_file(opt.weights_out, w.w);
    write_tally_file(opt.output, g, tally);
}

struct EstimateOptions {
    std::string graph;
    std::string tally;
    std::string output;
    double tol = 1e-10;
};

void run_estimate(const EstimateOptions& opt) {
    Graph g = read_graph_file(opt.graph);
    auto tally = read_tally_file(opt.tally, g);
    auto ratios = log_ratios(empirical_frequencies(tally));
    auto est = estimate_weights(g, ratios, opt.tol);
    write_estimate_file(opt.output, est);
}

struct ErrorOptions {
    std::string reference;
    std::string estimate;
    std::string metric = "sin";
};

void run_error(const ErrorOptions& opt) {
    auto y = read_vector_file(opt.reference);
    auto x = read_vector_file(opt.estimate);
    const ErrorMetric metric = metric_from_name(opt.metric);
    print_value(metric == ErrorMetric::sin ? sin_error(x, y) : d_error(x, y));
}

struct BoundOptions {
    std::string graph;
    double b = 1.0;
    long long k = 0;
    double delta = 0.36787944117144233; // 1/e
};

void run_bound(const BoundOptions& opt) {
    Graph g = read_graph_file(opt.graph);
    SummaryOptions sopt;
    sopt.dense_trace_threshold = 0; // the bound reads omega statistics only
    auto summary = resistance_summary(g, sopt);
    auto bound = theorem1_bound(summary, opt.b, opt.k, opt.delta);
    print_field("omega_max", summary.omega_max);
    print_field("omega_avg", summary.omega_avg);
    print_field("term_max", bound.term_max);
    print_field("term_avg", bound.term_avg);
    print_field("leading", bound.leading);
    std::printf("k_in_regime %s\n", bound.k_in_regime ? "true" : "false");
}

struct ExperimentOptions {
    std::string config;
    std::string output;
    std::string svg;
    std::string axes = "loglog";
    double ref_slope = 0.0;
    bool ref_slope_set = false;
    bool serial = false;
};

void run_experiment_cmd(const ExperimentOptions& opt) {
    std::ifstream in(opt.config);
    if (!in) fail(errc::io_error, "cannot open " + opt.config);
    std::ostringstream text;
    text << in.rdbuf();

    ExperimentConfig config = config_from_json(text.str());
    ExperimentResult result = run_experiment(config, !opt.serial);
    emit_csv(result, opt.output);
    if (!opt.svg.empty()) {
        Axes axes;
        if (opt.axes == "loglog")
            axes = Axes::loglog;
        else if (opt.axes == "linear")
            axes = Axes::linear;
        else
            fail(errc::bad_spec, "axes must be linear or loglog");
        std::optional<double> ref;
        if (opt.ref_slope_set) ref = opt.ref_slope;
        emit_svg(result, opt.svg, axes, ref);
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quality estimation from noisy pairwise comparisons"};
    app.set_version_flag("--version", "btlrank 0.1.0");
    app.require_subcommand(1);

    GenOptions gen;
    auto* gen_cmd = app.add_subcommand("gen", "generate a comparison graph");
    gen_cmd->add_option("--family", gen.family, "graph family name")->required();
    gen_cmd->add_option("--n", gen.n, "target node count")->required();
    auto* gen_p = gen_cmd->add_option("--p", gen.p, "edge probability (erdos_renyi)");
    gen_cmd->add_option("--degree", gen.degree, "expected degree (erdos_renyi)")
        ->excludes(gen_p);
    gen_cmd->add_option("--radius", gen.radius, "connection radius (geometric)");
    gen_cmd->add_option("--seed", gen.seed, "generator seed");
    gen_cmd->add_option("--attempts", gen.attempts, "connectivity resampling budget");
    gen_cmd->add_option("-o,--output", gen.output, "edge-list file")->required();
    gen_cmd->callback([&] { run_gen(gen); });

    ResistOptions resist;
    auto* resist_cmd = app.add_subcommand("resist", "effective resistance queries");
    resist_cmd->add_option("graph", resist.graph, "edge-list file")->required();
    auto* query = resist_cmd->add_option_group("query", "what to compute");
    query->add_option("--pair", resist.pair, "node pair i j")->expected(2);
    query->add_flag("--summary", resist.summary, "omega_max, omega_avg, trace");
    query->require_option(1);
    resist_cmd->add_option("--tol", resist.tol, "solver tolerance");
    resist_cmd->add_option("--sample-pairs", resist.sample_pairs,
                           "sample this many pairs instead of enumerating");
    resist_cmd->add_option("--sample-seed", resist.sample_seed, "pair-sampling seed");
    resist_cmd->callback([&] { run_resist(resist); });

    SimulateOptions simulate;
    auto* sim_cmd = app.add_subcommand("simulate", "draw weights and comparison outcomes");
    sim_cmd->add_option("graph", simulate.graph, "edge-list file")->required();
    sim_cmd->add_option("--b", simulate.b, "skewness bound")->required();
    sim_cmd->add_option("--k", simulate.k, "comparisons per edge")->required();
    sim_cmd->add_option("--seed", simulate.seed, "master seed");
    sim_cmd->add_option("--weights-out", simulate.weights_out, "ground-truth weight file")
        ->required();
    sim_cmd->add_option("-o,--output", simulate.output, "tally CSV")->required();
    sim_cmd->callback([&] { run_simulate(simulate); });

    EstimateOptions estimate;
    auto* est_cmd = app.add_subcommand("estimate", "estimate weights from a tally");
    est_cmd->add_option("graph", estimate.graph, "edge-list file")->required();
    est_cmd->add_option("tally", estimate.tally, "tally CSV")->required();
    est_cmd->add_option("-o,--output", estimate.output, "estimate file")->required();
    est_cmd->add_option("--tol", estimate.tol, "solver tolerance");
    est_cmd->callback([&] { run_estimate(estimate); });

    ErrorOptions error_opt;
    auto* err_cmd = app.add_subcommand("error", "compare an estimate against a reference");
    err_cmd->add_option("reference", error_opt.reference, "reference weight file")->required();
    err_cmd->add_option("estimate", error_opt.estimate, "estimated weight file")->required();
    err_cmd->add_option("--metric", error_opt.metric, "sin or d");
    err_cmd->callback([&] { run_error(error_opt); });

    BoundOptions bound;
    auto* bound_cmd = app.add_subcommand("bound", "error-bound overlay for a graph");
    bound_cmd->add_option("graph", bound.graph, "edge-list file")->required();
    bound_cmd->add_option("--b", bound.b, "skewness bound")->required();
    bound_cmd->add_option("--k", bound.k, "comparisons per edge")->required();
    bound_cmd->add_option("--delta", bound.delta, "confidence parameter");
    bound_cmd->callback([&] { run_bound(bound); });

    ExperimentOptions experiment;
    auto* exp_cmd = app.add_subcommand("experiment", "run a sweep from a JSON config");
    exp_cmd->add_option("config", experiment.config, "config JSON file")->required();
    exp_cmd->add_option("-o,--output", experiment.output, "results CSV")->required();
    exp_cmd->add_option("--svg", experiment.svg, "also plot to this SVG file");
    exp_cmd->add_option("--axes", experiment.axes, "linear or loglog");
    exp_cmd->add_option("--ref-slope", experiment.ref_slope, "dashed reference slope")
        ->each([&](const std::string&) { experiment.ref_slope_set = true; });
    exp_cmd->add_flag("--serial", experiment.serial, "disable trial parallelism");
    exp_cmd->callback([&] { run_experiment_cmd(experiment); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const btlrank::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return btlrank::exit_class(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
