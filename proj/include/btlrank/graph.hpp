#ifndef BTLRANK_GRAPH_HPP
#define BTLRANK_GRAPH_HPP

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "btlrank/error.hpp"

namespace btlrank {

/// Set of edge positions 0..m-1, bitmask-backed.
class EdgeSet {
public:
    EdgeSet() = default;
    explicit EdgeSet(int universe)
        : m_(universe), bits_((static_cast<std::size_t>(universe) + 63) / 64, 0) {}

    int universe() const { return m_; }

    bool test(int e) const {
        check(e);
        return (bits_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1u;
    }

    void set(int e) {
        check(e);
        bits_[static_cast<std::size_t>(e) >> 6] |= std::uint64_t{1} << (e & 63);
    }

    int count() const;
    std::vector<int> indices() const;

    bool operator==(const EdgeSet&) const = default;

private:
    void check(int e) const {
        if (e < 0 || e >= m_) fail(errc::node_out_of_range, "edge index out of range");
    }

    int m_ = 0;
    std::vector<std::uint64_t> bits_;
};

/// Immutable undirected graph. Nodes are 0..n-1; edges are stored as (i, j)
/// with i < j, sorted lexicographically, and the edge position doubles as
/// the incidence-matrix column index.
class Graph {
public:
    struct Incident {
        int neighbor;
        int edge;
    };

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    std::pair<int, int> edge(int e) const { return edges_[static_cast<std::size_t>(e)]; }

    int degree(int v) const { return offset_[static_cast<std::size_t>(v) + 1] - offset_[static_cast<std::size_t>(v)]; }

    std::span<const Incident> incident(int v) const {
        return {incident_.data() + offset_[static_cast<std::size_t>(v)],
                incident_.data() + offset_[static_cast<std::size_t>(v) + 1]};
    }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && edges_ == other.edges_;
    }

    friend Graph build_graph(int n, std::span<const std::pair<int, int>> edge_list);

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<int> offset_;
    std::vector<Incident> incident_;
};

/// Canonicalizes and validates an edge list: pairs are reordered to i < j,
/// sorted lexicographically, and rejected on self-loops, duplicates, or
/// out-of-range endpoints. Requires n >= 2 and at least one edge.
Graph build_graph(int n, std::span<const std::pair<int, int>> edge_list);

bool is_connected(const Graph& g);

/// Triplet-form sparse matrix, entries in column-major order.
struct Triplet {
    int row;
    int col;
    double value;

    bool operator==(const Triplet&) const = default;
};

struct SparseMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<Triplet> entries;

    std::vector<double> apply(std::span<const double> x) const;   // A x
    std::vector<double> apply_t(std::span<const double> x) const; // A^T x
};

/// Incidence matrix B: column e for edge (i, j) with i < j carries +1 at
/// row i and -1 at row j.
SparseMatrix incidence_matrix(const Graph& g);

/// Graph Laplacian L = B B^T: degrees on the diagonal, -1 per edge.
SparseMatrix laplacian(const Graph& g);

// y = B x for an edge vector x.
std::vector<double> incidence_apply(const Graph& g, std::span<const double> edge_vals);
// y = B^T x for a node vector x.
std::vector<double> incidence_apply_t(const Graph& g, std::span<const double> node_vals);

// y = L x. The row loop is OpenMP-parallel when `parallel`; rows are
// independent, so results are bit-identical to the serial loop.
void laplacian_apply(const Graph& g, std::span<const double> x, std::span<double> y,
                     bool parallel = false);

/// Edges lying on at least one simple path from i to j, found through the
/// biconnected components on the block-cut-tree path between i and j.
EdgeSet path_edge_set(const Graph& g, int i, int j);

} // namespace btlrank

#endif // BTLRANK_GRAPH_HPP
