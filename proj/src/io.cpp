#include "btlrank/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace btlrank {

namespace {

// Data lines, with comments and blanks stripped.
std::vector<std::string> data_lines(std::istream& in) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        const auto start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        lines.push_back(line.substr(start));
    }
    return lines;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) fail(errc::io_error, "cannot open " + path + " for writing");
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(errc::io_error, "cannot open " + path);
    return in;
}

void finish(std::ostream& out, const std::string& what) {
    if (!out.flush()) fail(errc::io_error, "write failed: " + what);
}

std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

long long parse_int(const std::string& token, const std::string& context) {
    std::size_t used = 0;
    long long value = 0;
    try {
        value = std::stoll(token, &used);
    } catch (const std::exception&) {
        fail(errc::format_error, context + ": expected an integer, got '" + token + "'");
    }
    if (used != token.size())
        fail(errc::format_error, context + ": trailing characters in '" + token + "'");
    return value;
}

double parse_double(const std::string& token, const std::string& context) {
    std::size_t used = 0;
    double value = 0;
    try {
        value = std::stod(token, &used);
    } catch (const std::exception&) {
        fail(errc::format_error, context + ": expected a number, got '" + token + "'");
    }
    if (used != token.size())
        fail(errc::format_error, context + ": trailing characters in '" + token + "'");
    return value;
}

std::vector<std::string> split_fields(const std::string& line, char sep) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream stream(line);
    while (std::getline(stream, field, sep)) {
        const auto a = field.find_first_not_of(" \t\r");
        const auto b = field.find_last_not_of(" \t\r");
        fields.push_back(a == std::string::npos ? "" : field.substr(a, b - a + 1));
    }
    return fields;
}

} // namespace

Graph read_graph(std::istream& in) {
    const auto lines = data_lines(in);
    if (lines.empty()) fail(errc::format_error, "graph file is empty");

    std::istringstream header(lines[0]);
    long long n = 0, m = 0;
    std::string extra;
    if (!(header >> n >> m) || (header >> extra))
        fail(errc::format_error, "graph header must be 'n m'");
    if (n < 2 || m < 1) fail(errc::format_error, "graph header needs n >= 2 and m >= 1");
    if (static_cast<long long>(lines.size()) - 1 != m)
        fail(errc::format_error, "edge count does not match header");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(static_cast<std::size_t>(m));
    for (long long e = 0; e < m; ++e) {
        std::istringstream row(lines[static_cast<std::size_t>(e) + 1]);
        long long i = 0, j = 0;
        if (!(row >> i >> j) || (row >> extra))
            fail(errc::format_error, "edge line must be 'i j'");
        edges.emplace_back(static_cast<int>(i), static_cast<int>(j));
    }
    return build_graph(static_cast<int>(n), edges);
}

Graph read_graph_file(const std::string& path) {
    auto in = open_in(path);
    return read_graph(in);
}

void write_graph(std::ostream& out, const Graph& g) {
    out << g.node_count() << ' ' << g.edge_count() << '\n';
    for (auto [i, j] : g.edges()) out << i << ' ' << j << '\n';
    finish(out, "graph");
}

void write_graph_file(const std::string& path, const Graph& g) {
    auto out = open_out(path);
    write_graph(out, g);
}

std::vector<double> read_vector(std::istream& in) {
    const auto lines = data_lines(in);
    if (lines.empty()) fail(errc::format_error, "vector file is empty");
    std::vector<double> values;
    values.reserve(lines.size());
    for (const auto& line : lines) values.push_back(parse_double(line, "vector entry"));
    return values;
}

std::vector<double> read_vector_file(const std::string& path) {
    auto in = open_in(path);
    return read_vector(in);
}

void write_weights(std::ostream& out, std::span<const double> w) {
    for (double v : w) out << format_full(v) << '\n';
    finish(out, "weights");
}

void write_weights_file(const std::string& path, std::span<const double> w) {
    auto out = open_out(path);
    write_weights(out, w);
}

void write_estimate(std::ostream& out, const Estimate& est) {
    out << "# normalization: sum of log-weights = 0\n";
    out << "# relative_residual: " << format_full(est.solver_report.residual_norm) << '\n';
    out << "# iterations: " << est.solver_report.iterations << '\n';
    write_weights(out, est.w_hat);
}

void write_estimate_file(const std::string& path, const Estimate& est) {
    auto out = open_out(path);
    write_estimate(out, est);
}

ComparisonTally read_tally(std::istream& in, const Graph& g) {
    const auto lines = data_lines(in);
    if (lines.empty()) fail(errc::format_error, "tally file is empty");
    if (split_fields(lines[0], ',') != std::vector<std::string>{"i", "j", "k", "wins"})
        fail(errc::format_error, "tally header must be 'i,j,k,wins'");
    if (static_cast<int>(lines.size()) - 1 != g.edge_count())
        fail(errc::dimension_mismatch, "tally row count does not match the graph");

    ComparisonTally tally;
    tally.wins.reserve(static_cast<std::size_t>(g.edge_count()));
    for (int e = 0; e < g.edge_count(); ++e) {
        const auto fields = split_fields(lines[static_cast<std::size_t>(e) + 1], ',');
        if (fields.size() != 4) fail(errc::format_error, "tally rows need 4 fields");
        const int i = static_cast<int>(parse_int(fields[0], "tally i"));
        const int j = static_cast<int>(parse_int(fields[1], "tally j"));
        const long long k = parse_int(fields[2], "tally k");
        const long long wins = parse_int(fields[3], "tally wins");
        if (std::pair{i, j} != g.edge(e))
            fail(errc::format_error, "tally rows must follow the graph's canonical edge order");
        if (k < 1) fail(errc::format_error, "tally needs k >= 1");
        if (e == 0) {
            tally.k = static_cast<int>(k);
        } else if (k != tally.k) {
            fail(errc::format_error, "the estimator requires a uniform k across edges");
        }
        if (wins < 0 || wins > k) fail(errc::format_error, "wins outside [0, k]");
        tally.wins.push_back(static_cast<int>(wins));
    }
    return tally;
}

ComparisonTally read_tally_file(const std::string& path, const Graph& g) {
    auto in = open_in(path);
    return read_tally(in, g);
}

void write_tally(std::ostream& out, const Graph& g, const ComparisonTally& t) {
    if (static_cast<int>(t.wins.size()) != g.edge_count())
        fail(errc::dimension_mismatch, "tally length != edge count");
    out << "i,j,k,wins\n";
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.edge(e);
        out << i << ',' << j << ',' << t.k << ',' << t.wins[static_cast<std::size_t>(e)] << '\n';
    }
    finish(out, "tally");
}

void write_tally_file(const std::string& path, const Graph& g, const ComparisonTally& t) {
    auto out = open_out(path);
    write_tally(out, g, t);
}

} // namespace btlrank
