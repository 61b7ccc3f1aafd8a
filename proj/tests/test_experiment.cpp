#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "btlrank/experiment.hpp"

using namespace btlrank;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig cfg;
    cfg.family = Family::erdos_renyi;
    cfg.n = 20;
    cfg.p_or_degree = 6.0;
    cfg.b = 5.0;
    cfg.variable = SweepVariable::k;
    cfg.values = {50.0, 200.0};
    cfg.trials = 6;
    cfg.seed = 424242;
    cfg.metric = ErrorMetric::sin;
    return cfg;
}

ExperimentResult fabricated(std::vector<std::pair<double, double>> points) {
    ExperimentResult r;
    r.version = "test";
    for (auto [x, y] : points) {
        ExperimentRow row;
        row.value = x;
        row.mean_error = y;
        row.trials = 1;
        r.rows.push_back(row);
    }
    return r;
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_CASE("resolve_family_spec interprets p_or_degree") {
    ExperimentConfig cfg = small_config();
    auto spec = resolve_family_spec(cfg, 50.0);
    CHECK(spec.n == 20);
    CHECK(spec.p == doctest::Approx(6.0 / 19.0).epsilon(1e-15));

    cfg.p_or_degree = 0.3; // below 1: a raw probability
    CHECK(resolve_family_spec(cfg, 50.0).p == 0.3);

    cfg.p_or_degree = 6.0;
    cfg.variable = SweepVariable::degree;
    CHECK(resolve_family_spec(cfg, 8.0).p == doctest::Approx(8.0 / 19.0).epsilon(1e-15));

    cfg.variable = SweepVariable::n;
    CHECK(resolve_family_spec(cfg, 41.0).n == 41);
    CHECK(resolve_family_spec(cfg, 41.0).p == doctest::Approx(6.0 / 40.0).epsilon(1e-15));

    cfg.variable = SweepVariable::k;
    CHECK(resolve_k(cfg, 123.0) == 123);
    cfg.variable = SweepVariable::n;
    cfg.k = 77;
    CHECK(resolve_k(cfg, 41.0) == 77);
}

TEST_CASE("config validation") {
    ExperimentConfig cfg = small_config();
    cfg.values = {};
    CHECK_THROWS_AS(run_experiment(cfg, false), Error);
    cfg.values = {100.0, 50.0};
    CHECK_THROWS_AS(run_experiment(cfg, false), Error);
    cfg.values = {-1.0, 50.0};
    CHECK_THROWS_AS(run_experiment(cfg, false), Error);
    cfg = small_config();
    cfg.trials = 0;
    CHECK_THROWS_AS(run_experiment(cfg, false), Error);
    cfg = small_config();
    cfg.family = Family::line;
    cfg.variable = SweepVariable::degree;
    cfg.p_or_degree = -1.0;
    CHECK_THROWS_AS(run_experiment(cfg, false), Error);
}

TEST_CASE("run_trial is deterministic") {
    ExperimentConfig cfg = small_config();
    const double a = run_trial(cfg, 50.0, 3);
    const double b = run_trial(cfg, 50.0, 3);
    CHECK(a == b);
    CHECK(a >= 0.0);
    CHECK(a <= 1.0);
    CHECK(run_trial(cfg, 50.0, 4) != a);
    CHECK_THROWS_AS(run_trial(cfg, 50.0, 6), Error);
}

TEST_CASE("run_experiment mean reproduces run_trial results") {
    ExperimentConfig cfg = small_config();
    auto result = run_experiment(cfg, false);
    REQUIRE(result.rows.size() == 2);
    for (std::size_t r = 0; r < result.rows.size(); ++r) {
        double sum = 0.0;
        for (int t = 0; t < cfg.trials; ++t) sum += run_trial(cfg, cfg.values[r], t);
        CHECK(result.rows[r].mean_error == sum / cfg.trials);
        CHECK(result.rows[r].value == cfg.values[r]);
        CHECK(result.rows[r].trials == cfg.trials);
        CHECK(result.rows[r].mean_error >= 0.0);
        CHECK(result.rows[r].sample_std >= 0.0);
        CHECK(result.rows[r].mean_omega_avg > 0.0);
        CHECK(result.rows[r].mean_omega_max >= result.rows[r].mean_omega_avg);
        CHECK(result.rows[r].bound > 0.0);
    }
}

TEST_CASE("parallel and serial experiments agree bit for bit") {
    ExperimentConfig cfg = small_config();
    auto serial = run_experiment(cfg, false);
    auto parallel = run_experiment(cfg, true);
    REQUIRE(serial.rows.size() == parallel.rows.size());
    for (std::size_t r = 0; r < serial.rows.size(); ++r) {
        CHECK(serial.rows[r].mean_error == parallel.rows[r].mean_error);
        CHECK(serial.rows[r].sample_std == parallel.rows[r].sample_std);
        CHECK(serial.rows[r].mean_omega_avg == parallel.rows[r].mean_omega_avg);
        CHECK(serial.rows[r].mean_omega_max == parallel.rows[r].mean_omega_max);
        CHECK(serial.rows[r].bound == parallel.rows[r].bound);
    }
}

TEST_CASE("graph sharing follows the resample flag") {
    // One graph per sweep value: omega statistics do not depend on how many
    // trials ran against it.
    ExperimentConfig cfg = small_config();
    cfg.resample_graph = false;
    auto fixed_a = run_experiment(cfg, false);
    cfg.trials = 3;
    auto fixed_b = run_experiment(cfg, false);
    CHECK(fixed_a.rows[0].mean_omega_avg == fixed_b.rows[0].mean_omega_avg);
    CHECK(fixed_a.rows[0].mean_omega_max == fixed_b.rows[0].mean_omega_max);

    // Resampled: each trial draws its own graph, so the population mean
    // moves with the trial count.
    cfg = small_config();
    cfg.resample_graph = true;
    auto varied_a = run_experiment(cfg, false);
    cfg.trials = 3;
    auto varied_b = run_experiment(cfg, false);
    CHECK(varied_a.rows[0].mean_omega_avg != varied_b.rows[0].mean_omega_avg);
    CHECK(varied_a.rows[0].mean_omega_avg != varied_a.rows[1].mean_omega_avg);

    // Deterministic families are always shared.
    ExperimentConfig line = small_config();
    line.family = Family::line;
    line.n = 10;
    line.p_or_degree = -1.0;
    auto det = run_experiment(line, false);
    CHECK(det.rows[0].mean_omega_avg == det.rows[1].mean_omega_avg);
}

TEST_CASE("single seeded trials match the stated ceilings") {
    // No skew: only comparison noise remains.
    ExperimentConfig flat;
    flat.family = Family::erdos_renyi;
    flat.n = 50;
    flat.p_or_degree = 10.0;
    flat.b = 1.0;
    flat.variable = SweepVariable::k;
    flat.values = {10000.0};
    flat.trials = 1;
    flat.seed = 11;
    CHECK(run_trial(flat, 10000.0, 0) < 0.1);

    // Consistency: huge k on a small fixed graph.
    ExperimentConfig big_k;
    big_k.family = Family::line;
    big_k.n = 5;
    big_k.b = 2.0;
    big_k.variable = SweepVariable::k;
    big_k.values = {1000000.0};
    big_k.trials = 1;
    big_k.seed = 12;
    CHECK(run_trial(big_k, 1000000.0, 0) < 0.01);
}

TEST_CASE("fit_loglog_slope") {
    CHECK(fit_loglog_slope(fabricated({{1, 1}, {4, 0.5}, {16, 0.25}})) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit_loglog_slope(fabricated({{10, 2}, {100, 2}, {1000, 2}})) ==
          doctest::Approx(0.0).epsilon(1e-12));
    CHECK(fit_loglog_slope(fabricated({{2, 3.0 / std::sqrt(2)}, {8, 3.0 / std::sqrt(8)},
                                       {32, 3.0 / std::sqrt(32)}, {128, 3.0 / std::sqrt(128)}})) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    CHECK_THROWS_AS(fit_loglog_slope(fabricated({{1, 1}, {2, 0.5}})), Error);
    try {
        fit_loglog_slope(fabricated({{1, 1}, {2, 0.5}, {3, 0.0}}));
        FAIL("expected degenerate-fit rejection");
    } catch (const Error& e) {
        CHECK(e.code() == errc::degenerate_fit);
    }
}

TEST_CASE("csv output shape and end-to-end determinism") {
    ExperimentConfig cfg = small_config();
    const std::string csv_a = to_csv(run_experiment(cfg, true));
    const std::string csv_b = to_csv(run_experiment(cfg, false));
    CHECK(csv_a == csv_b); // byte-identical across runs and schedules

    std::istringstream lines(csv_a);
    std::string line;
    REQUIRE(std::getline(lines, line));
    CHECK(line == "sweep_value,mean_error,std,trials,omega_avg,bound");
    int rows = 0;
    while (std::getline(lines, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 5);
    }
    CHECK(rows == 2);

    ExperimentResult empty;
    CHECK_THROWS_AS(to_csv(empty), Error);
    const auto path = temp_file("btlrank_test_should_not_exist.csv");
    std::filesystem::remove(path);
    CHECK_THROWS_AS(emit_csv(empty, path.string()), Error);
    CHECK_FALSE(std::filesystem::exists(path));
}

TEST_CASE("svg output") {
    auto result = fabricated({{10, 1.0}, {100, 0.3}, {1000, 0.1}});
    result.config.variable = SweepVariable::k;
    result.config.metric = ErrorMetric::sin;
    result.config.family = Family::erdos_renyi;

    const std::string svg = to_svg(result, Axes::loglog, -0.5);
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("stroke-dasharray=\"6,4\"") != std::string::npos); // reference guide
    CHECK(svg.find("</svg>") != std::string::npos);

    const std::string no_ref = to_svg(result, Axes::linear);
    CHECK(no_ref.find("stroke-dasharray=\"6,4\"") == std::string::npos);

    const auto path = temp_file("btlrank_test_plot.svg");
    emit_svg(result, path.string(), Axes::loglog, -0.5);
    CHECK(std::filesystem::exists(path));
    std::filesystem::remove(path);

    auto with_zero = fabricated({{10, 1.0}, {100, 0.0}, {1000, 0.1}});
    CHECK_THROWS_AS(to_svg(with_zero, Axes::loglog), Error);
    CHECK_NOTHROW(to_svg(with_zero, Axes::linear));

    ExperimentResult empty;
    CHECK_THROWS_AS(to_svg(empty, Axes::linear), Error);
}

TEST_CASE("config JSON round trip") {
    const std::string text = R"({
        "family": "erdos_renyi", "n": 100, "p_or_degree": 10, "b": 10.0,
        "k": 100, "sweep": {"variable": "k", "values": [10, 100, 1000]},
        "trials": 100, "seed": 31415, "metric": "sin", "resample_graph": true
    })";
    ExperimentConfig cfg = config_from_json(text);
    CHECK(cfg.family == Family::erdos_renyi);
    CHECK(cfg.n == 100);
    CHECK(cfg.p_or_degree == 10.0);
    CHECK(cfg.b == 10.0);
    CHECK(cfg.variable == SweepVariable::k);
    CHECK(cfg.values == std::vector<double>{10, 100, 1000});
    CHECK(cfg.trials == 100);
    CHECK(cfg.seed == 31415);
    CHECK(cfg.metric == ErrorMetric::sin);
    CHECK(cfg.resample_graph);

    ExperimentConfig back = config_from_json(config_to_json(cfg));
    CHECK(back.family == cfg.family);
    CHECK(back.n == cfg.n);
    CHECK(back.p_or_degree == cfg.p_or_degree);
    CHECK(back.values == cfg.values);
    CHECK(back.seed == cfg.seed);
    CHECK(back.delta == cfg.delta);

    CHECK_THROWS_AS(config_from_json("not json"), Error);
    CHECK_THROWS_AS(config_from_json("{}"), Error);
    CHECK_THROWS_AS(config_from_json(R"({"family":"nope","n":4,"b":1,"trials":1,"seed":0,
        "sweep":{"variable":"k","values":[10]}})"),
                    Error);
    try {
        config_from_json(R"({"family":"line"})");
        FAIL("expected missing-field rejection");
    } catch (const Error& e) {
        CHECK(e.code() == errc::format_error);
    }
}

TEST_CASE("d metric runs end to end") {
    ExperimentConfig cfg = small_config();
    cfg.metric = ErrorMetric::d;
    auto result = run_experiment(cfg, false);
    for (const auto& row : result.rows) CHECK(row.mean_error > 0.0);
    // The D criterion dominates the sine criterion pointwise.
    ExperimentConfig sincfg = small_config();
    auto sinres = run_experiment(sincfg, false);
    for (std::size_t r = 0; r < result.rows.size(); ++r)
        CHECK(result.rows[r].mean_error >= sinres.rows[r].mean_error);
}
