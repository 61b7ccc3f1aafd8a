#ifndef BTLRANK_IO_HPP
#define BTLRANK_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "btlrank/btl.hpp"
#include "btlrank/estimator.hpp"
#include "btlrank/graph.hpp"

namespace btlrank {

// Edge-list format: a "n m" line, then m lines "i j". Lines starting with
// '#' and blank lines are skipped everywhere below.
Graph read_graph(std::istream& in);
Graph read_graph_file(const std::string& path);
void write_graph(std::ostream& out, const Graph& g);
void write_graph_file(const std::string& path, const Graph& g);

// Weight/estimate format: one positive decimal per line.
std::vector<double> read_vector(std::istream& in);
std::vector<double> read_vector_file(const std::string& path);
void write_weights(std::ostream& out, std::span<const double> w);
void write_weights_file(const std::string& path, std::span<const double> w);

/// Weight file plus a comment header recording the normalization and the
/// solver residual.
void write_estimate(std::ostream& out, const Estimate& est);
void write_estimate_file(const std::string& path, const Estimate& est);

// Tally format: CSV with header "i,j,k,wins", one row per edge in the
// graph's canonical order, uniform k.
ComparisonTally read_tally(std::istream& in, const Graph& g);
ComparisonTally read_tally_file(const std::string& path, const Graph& g);
void write_tally(std::ostream& out, const Graph& g, const ComparisonTally& t);
void write_tally_file(const std::string& path, const Graph& g, const ComparisonTally& t);

} // namespace btlrank

#endif // BTLRANK_IO_HPP
