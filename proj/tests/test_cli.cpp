#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "btlrank/generators.hpp"
#include "btlrank/io.hpp"

// BTLRANK_CLI_PATH is injected by the build.

namespace {

namespace fs = std::filesystem;

const fs::path& work_dir() {
    static const fs::path dir = [] {
        std::string tmpl = (fs::temp_directory_path() / "btlrank_cli_XXXXXX").string();
        REQUIRE(mkdtemp(tmpl.data()) != nullptr);
        return fs::path(tmpl);
    }();
    return dir;
}

struct RunResult {
    int status = -1;
    std::string out;
    std::string err;
};

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream text;
    text << in.rdbuf();
    return text.str();
}

RunResult run_cli(const std::string& args) {
    const fs::path out_path = work_dir() / "stdout.txt";
    const fs::path err_path = work_dir() / "stderr.txt";
    const std::string cmd = std::string(BTLRANK_CLI_PATH) + " " + args + " >" +
                            out_path.string() + " 2>" + err_path.string();
    const int raw = std::system(cmd.c_str());
    RunResult result;
    REQUIRE(raw != -1);
    REQUIRE(WIFEXITED(raw));
    result.status = WEXITSTATUS(raw);
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
}

std::string path_of(const std::string& name) { return (work_dir() / name).string(); }

double first_number(const std::string& text) {
    std::istringstream in(text);
    double v = 0.0;
    REQUIRE(static_cast<bool>(in >> v));
    return v;
}

// "name value" lines from resist/bound output.
double field(const std::string& text, const std::string& name) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream fields(line);
        std::string key;
        fields >> key;
        if (key == name) {
            double v = 0.0;
            REQUIRE(static_cast<bool>(fields >> v));
            return v;
        }
    }
    FAIL("field not found: ", name);
    return 0.0;
}

} // namespace

TEST_CASE("gen round trip and determinism") {
    auto gen = run_cli("gen --family line --n 4 -o " + path_of("path4.txt"));
    REQUIRE(gen.status == 0);

    btlrank::FamilySpec spec;
    spec.family = btlrank::Family::line;
    spec.n = 4;
    CHECK(btlrank::read_graph_file(path_of("path4.txt")) == btlrank::generate(spec));

    auto again = run_cli("gen --family erdos_renyi --n 30 --degree 6 --seed 5 -o " +
                         path_of("er_a.txt"));
    REQUIRE(again.status == 0);
    REQUIRE(run_cli("gen --family erdos_renyi --n 30 --degree 6 --seed 5 -o " +
                    path_of("er_b.txt"))
                .status == 0);
    CHECK(slurp(path_of("er_a.txt")) == slurp(path_of("er_b.txt")));
    CHECK_FALSE(slurp(path_of("er_a.txt")).empty());
}

TEST_CASE("resist pair and summary") {
    REQUIRE(run_cli("gen --family line --n 4 -o " + path_of("p4.txt")).status == 0);

    auto pair = run_cli("resist " + path_of("p4.txt") + " --pair 0 3");
    REQUIRE(pair.status == 0);
    CHECK(first_number(pair.out) == doctest::Approx(3.0).epsilon(1e-9));

    auto summary = run_cli("resist " + path_of("p4.txt") + " --summary");
    REQUIRE(summary.status == 0);
    CHECK(field(summary.out, "omega_max") == doctest::Approx(3.0).epsilon(1e-9));
    CHECK(field(summary.out, "omega_avg") == doctest::Approx(5.0 / 3.0).epsilon(1e-9));
    CHECK(field(summary.out, "trace_pinv") == doctest::Approx(2.5).epsilon(1e-9));

    // Exactly one query form.
    CHECK(run_cli("resist " + path_of("p4.txt")).status == 1);
    CHECK(run_cli("resist " + path_of("p4.txt") + " --pair 0 3 --summary").status == 1);
}

TEST_CASE("pipeline reaches the consistency ceiling") {
    REQUIRE(run_cli("gen --family erdos_renyi --n 50 --degree 10 --seed 11 -o " +
                    path_of("er.txt"))
                .status == 0);
    REQUIRE(run_cli("simulate " + path_of("er.txt") + " --b 5 --k 100000 --seed 21 " +
                    "--weights-out " + path_of("w.txt") + " -o " + path_of("tally.csv"))
                .status == 0);
    REQUIRE(run_cli("estimate " + path_of("er.txt") + " " + path_of("tally.csv") + " -o " +
                    path_of("west.txt"))
                .status == 0);

    auto err = run_cli("error " + path_of("w.txt") + " " + path_of("west.txt") +
                       " --metric sin");
    REQUIRE(err.status == 0);
    CHECK(first_number(err.out) < 0.05);
    CHECK(first_number(err.out) > 0.0);

    auto derr = run_cli("error " + path_of("w.txt") + " " + path_of("west.txt") +
                        " --metric d");
    REQUIRE(derr.status == 0);
    CHECK(derr.out != err.out);

    auto self = run_cli("error " + path_of("w.txt") + " " + path_of("w.txt") +
                        " --metric sin");
    REQUIRE(self.status == 0);
    CHECK(first_number(self.out) == 0.0);

    // The estimate file carries the solve diagnostics.
    const std::string estimate_text = slurp(path_of("west.txt"));
    CHECK(estimate_text.find("relative_residual") != std::string::npos);

    // stdout carries full precision: at least 12 significant digits.
    const auto dot = err.out.find('.');
    REQUIRE(dot != std::string::npos);
    int digits = 0;
    for (char c : err.out) digits += (c >= '0' && c <= '9') ? 1 : 0;
    CHECK(digits >= 12);
}

TEST_CASE("bound fields") {
    REQUIRE(run_cli("gen --family line --n 4 -o " + path_of("pb.txt")).status == 0);
    auto bound = run_cli("bound " + path_of("pb.txt") + " --b 2 --k 100");
    REQUIRE(bound.status == 0);
    CHECK(field(bound.out, "term_max") == doctest::Approx(std::sqrt(0.24)).epsilon(1e-9));
    CHECK(field(bound.out, "term_avg") ==
          doctest::Approx(std::sqrt(16.0 * (5.0 / 3.0) * 2.0 / 100.0)).epsilon(1e-9));
    CHECK(field(bound.out, "leading") == doctest::Approx(std::sqrt(0.24)).epsilon(1e-9));
    CHECK(bound.out.find("k_in_regime true") != std::string::npos);
}

TEST_CASE("experiment artifacts") {
    {
        std::ofstream cfg(path_of("cfg.json"));
        cfg << R"({"family":"erdos_renyi","n":20,"p_or_degree":6,"b":5,
                   "sweep":{"variable":"k","values":[10,100]},
                   "trials":4,"seed":99,"metric":"sin","resample_graph":true})";
    }
    auto run = run_cli("experiment " + path_of("cfg.json") + " -o " + path_of("out.csv") +
                       " --svg " + path_of("out.svg") + " --ref-slope -0.5");
    REQUIRE(run.status == 0);

    const std::string csv = slurp(path_of("out.csv"));
    CHECK(csv.rfind("sweep_value,mean_error,std,trials,omega_avg,bound\n", 0) == 0);
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);

    const std::string svg = slurp(path_of("out.svg"));
    CHECK(svg.rfind("<?xml", 0) == 0);
    CHECK(svg.find("<svg") != std::string::npos);

    REQUIRE(run_cli("experiment " + path_of("cfg.json") + " -o " + path_of("out2.csv") +
                    " --serial")
                .status == 0);
    CHECK(slurp(path_of("out2.csv")) == csv);

    CHECK(run_cli("experiment " + path_of("nosuch.json") + " -o " + path_of("x.csv"))
              .status == 2);
    {
        std::ofstream bad(path_of("bad.json"));
        bad << "{broken";
    }
    CHECK(run_cli("experiment " + path_of("bad.json") + " -o " + path_of("x.csv"))
              .status == 2);
}

TEST_CASE("exit code taxonomy") {
    CHECK(run_cli("").status == 1);
    CHECK(run_cli("frobnicate").status == 1);
    CHECK(run_cli("gen --family line -o x.txt").status == 1); // missing --n
    CHECK(run_cli("resist " + path_of("definitely_missing.txt") + " --summary").status == 2);
    CHECK(run_cli("gen --family nope --n 4 -o " + path_of("x.txt")).status == 2);

    {
        std::ofstream disc(path_of("disc.txt"));
        disc << "4 2\n0 1\n2 3\n";
    }
    CHECK(run_cli("resist " + path_of("disc.txt") + " --pair 0 3").status == 3);

    auto version = run_cli("--version");
    CHECK(version.status == 0);
    CHECK(version.out.find("btlrank") != std::string::npos);
}
