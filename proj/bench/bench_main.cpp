// Serial vs. OpenMP timings for the parallel kernels, with a bit-exactness
// check between the two paths on every workload.
#include <chrono>
#include <cstdio>
#include <vector>

#include <omp.h>

#include "btlrank/btl.hpp"
#include "btlrank/experiment.hpp"
#include "btlrank/generators.hpp"
#include "btlrank/graph.hpp"
#include "btlrank/rng.hpp"
#include "btlrank/solver.hpp"

using namespace btlrank;

namespace {

double now() { return std::chrono::duration<double>(
    std::chrono::steady_clock::now().time_since_epoch()).count(); }

void print_row(const char* name, double serial_s, double parallel_s, bool identical) {
    std::printf("%-22s %10.3f s %10.3f s %8.2fx   %s\n", name, serial_s, parallel_s,
                serial_s / parallel_s, identical ? "bit-exact" : "MISMATCH");
}

Graph big_er(int n, double degree, std::uint64_t seed) {
    FamilySpec spec;
    spec.family = Family::erdos_renyi;
    spec.n = n;
    spec.p = degree / (n - 1);
    spec.seed = seed;
    return generate_connected(spec, 100).graph;
}

void bench_matvec() {
    Graph g = big_er(20000, 40.0, 1);
    SplitMix64 rng(2);
    std::vector<double> x(static_cast<std::size_t>(g.node_count()));
    for (auto& v : x) v = rng.next_double() - 0.5;
    std::vector<double> ys(x.size()), yp(x.size());

    const int reps = 200;
    const double t0 = now();
    for (int r = 0; r < reps; ++r) laplacian_apply(g, x, ys, false);
    const double t1 = now();
    for (int r = 0; r < reps; ++r) laplacian_apply(g, x, yp, true);
    const double t2 = now();
    print_row("laplacian_apply", t1 - t0, t2 - t1, ys == yp);
}

void bench_summary() {
    FamilySpec spec;
    spec.family = Family::grid2d;
    spec.n = 1024;
    Graph g = generate(spec);

    SummaryOptions serial, parallel;
    serial.dense_trace_threshold = 0;
    parallel.dense_trace_threshold = 0;
    parallel.parallel = true;

    const double t0 = now();
    auto rs = resistance_summary(g, serial);
    const double t1 = now();
    auto rp = resistance_summary(g, parallel);
    const double t2 = now();
    const bool same = rs.omega_avg == rp.omega_avg && rs.omega_max == rp.omega_max &&
                      rs.trace_pinv == rp.trace_pinv;
    print_row("resistance_summary", t1 - t0, t2 - t1, same);
}

void bench_simulation() {
    Graph g = big_er(2000, 30.0, 3);
    auto w = sample_weights(g.node_count(), 10.0, 4);

    const double t0 = now();
    auto ts = simulate_comparisons(g, w, 1000, 5, false);
    const double t1 = now();
    auto tp = simulate_comparisons(g, w, 1000, 5, true);
    const double t2 = now();
    print_row("simulate_comparisons", t1 - t0, t2 - t1, ts.wins == tp.wins);
}

void bench_experiment() {
    ExperimentConfig cfg;
    cfg.family = Family::erdos_renyi;
    cfg.n = 100;
    cfg.p_or_degree = 10.0;
    cfg.b = 10.0;
    cfg.variable = SweepVariable::k;
    cfg.values = {10.0, 100.0, 1000.0};
    cfg.trials = 40;
    cfg.seed = 6;

    const double t0 = now();
    auto rs = run_experiment(cfg, false);
    const double t1 = now();
    auto rp = run_experiment(cfg, true);
    const double t2 = now();
    bool same = rs.rows.size() == rp.rows.size();
    for (std::size_t r = 0; same && r < rs.rows.size(); ++r)
        same = rs.rows[r].mean_error == rp.rows[r].mean_error &&
               rs.rows[r].sample_std == rp.rows[r].sample_std;
    print_row("run_experiment", t1 - t0, t2 - t1, same);
}

} // namespace

int main() {
    std::printf("threads: %d\n", omp_get_max_threads());
    std::printf("%-22s %12s %12s %9s   %s\n", "workload", "serial", "parallel", "speedup",
                "results");
    bench_matvec();
    bench_summary();
    bench_simulation();
    bench_experiment();
    return 0;
}
