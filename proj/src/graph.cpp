#include "btlrank/graph.hpp"

#include <algorithm>
#include <bit>
#include <sstream>
#include <stack>

namespace btlrank {

int EdgeSet::count() const {
    int c = 0;
    for (std::uint64_t word : bits_) c += std::popcount(word);
    return c;
}

std::vector<int> EdgeSet::indices() const {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(count()));
    for (int e = 0; e < m_; ++e) {
        if ((bits_[static_cast<std::size_t>(e) >> 6] >> (e & 63)) & 1u) out.push_back(e);
    }
    return out;
}

Graph build_graph(int n, std::span<const std::pair<int, int>> edge_list) {
    if (n < 2) fail(errc::bad_graph, "graph needs at least two nodes");
    if (edge_list.empty()) fail(errc::bad_graph, "graph needs at least one edge");

    std::vector<std::pair<int, int>> edges;
    edges.reserve(edge_list.size());
    for (auto [a, b] : edge_list) {
        if (a < 0 || a >= n || b < 0 || b >= n) {
            std::ostringstream msg;
            msg << "edge (" << a << ", " << b << ") out of range for n = " << n;
            fail(errc::node_out_of_range, msg.str());
        }
        if (a == b) {
            std::ostringstream msg;
            msg << "self-loop at node " << a;
            fail(errc::self_loop, msg.str());
        }
        edges.emplace_back(std::min(a, b), std::max(a, b));
    }
    std::sort(edges.begin(), edges.end());
    auto dup = std::adjacent_find(edges.begin(), edges.end());
    if (dup != edges.end()) {
        std::ostringstream msg;
        msg << "duplicate edge (" << dup->first << ", " << dup->second << ")";
        fail(errc::duplicate_edge, msg.str());
    }

    Graph g;
    g.n_ = n;
    g.edges_ = std::move(edges);
    g.offset_.assign(static_cast<std::size_t>(n) + 1, 0);
    for (auto [i, j] : g.edges_) {
        ++g.offset_[static_cast<std::size_t>(i) + 1];
        ++g.offset_[static_cast<std::size_t>(j) + 1];
    }
    for (int v = 0; v < n; ++v) g.offset_[static_cast<std::size_t>(v) + 1] += g.offset_[static_cast<std::size_t>(v)];
    g.incident_.resize(static_cast<std::size_t>(2) * g.edges_.size());
    std::vector<int> cursor(g.offset_.begin(), g.offset_.end() - 1);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.edges_[static_cast<std::size_t>(e)];
        g.incident_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(i)]++)] = {j, e};
        g.incident_[static_cast<std::size_t>(cursor[static_cast<std::size_t>(j)]++)] = {i, e};
    }
    return g;
}

bool is_connected(const Graph& g) {
    const int n = g.node_count();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<int> queue{0};
    seen[0] = 1;
    int reached = 1;
    while (!queue.empty()) {
        int v = queue.back();
        queue.pop_back();
        for (auto [u, e] : g.incident(v)) {
            (void)e;
            if (!seen[static_cast<std::size_t>(u)]) {
                seen[static_cast<std::size_t>(u)] = 1;
                ++reached;
                queue.push_back(u);
            }
        }
    }
    return reached == n;
}

std::vector<double> SparseMatrix::apply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != cols) fail(errc::dimension_mismatch, "matrix-vector size mismatch");
    std::vector<double> y(static_cast<std::size_t>(rows), 0.0);
    for (const auto& t : entries) y[static_cast<std::size_t>(t.row)] += t.value * x[static_cast<std::size_t>(t.col)];
    return y;
}

std::vector<double> SparseMatrix::apply_t(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != rows) fail(errc::dimension_mismatch, "matrix-vector size mismatch");
    std::vector<double> y(static_cast<std::size_t>(cols), 0.0);
    for (const auto& t : entries) y[static_cast<std::size_t>(t.col)] += t.value * x[static_cast<std::size_t>(t.row)];
    return y;
}

SparseMatrix incidence_matrix(const Graph& g) {
    SparseMatrix b;
    b.rows = g.node_count();
    b.cols = g.edge_count();
    b.entries.reserve(static_cast<std::size_t>(2) * g.edges().size());
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.edge(e);
        b.entries.push_back({i, e, 1.0});
        b.entries.push_back({j, e, -1.0});
    }
    return b;
}

SparseMatrix laplacian(const Graph& g) {
    SparseMatrix l;
    l.rows = g.node_count();
    l.cols = g.node_count();
    l.entries.reserve(static_cast<std::size_t>(g.node_count()) + 2 * g.edges().size());
    for (int v = 0; v < g.node_count(); ++v) {
        for (auto [u, e] : g.incident(v)) {
            (void)e;
            l.entries.push_back({u, v, -1.0});
        }
        l.entries.push_back({v, v, static_cast<double>(g.degree(v))});
    }
    return l;
}

std::vector<double> incidence_apply(const Graph& g, std::span<const double> edge_vals) {
    if (static_cast<int>(edge_vals.size()) != g.edge_count())
        fail(errc::dimension_mismatch, "edge vector length != edge count");
    std::vector<double> y(static_cast<std::size_t>(g.node_count()), 0.0);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.edge(e);
        y[static_cast<std::size_t>(i)] += edge_vals[static_cast<std::size_t>(e)];
        y[static_cast<std::size_t>(j)] -= edge_vals[static_cast<std::size_t>(e)];
    }
    return y;
}

std::vector<double> incidence_apply_t(const Graph& g, std::span<const double> node_vals) {
    if (static_cast<int>(node_vals.size()) != g.node_count())
        fail(errc::dimension_mismatch, "node vector length != node count");
    std::vector<double> y(static_cast<std::size_t>(g.edge_count()), 0.0);
    for (int e = 0; e < g.edge_count(); ++e) {
        auto [i, j] = g.edge(e);
        y[static_cast<std::size_t>(e)] = node_vals[static_cast<std::size_t>(i)] - node_vals[static_cast<std::size_t>(j)];
    }
    return y;
}

void laplacian_apply(const Graph& g, std::span<const double> x, std::span<double> y, bool parallel) {
    const int n = g.node_count();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        fail(errc::dimension_mismatch, "node vector length != node count");
    // Per-row accumulation in incident-list order; the parallel loop writes
    // disjoint rows, so it matches the serial loop bit for bit.
#pragma omp parallel for schedule(static) if (parallel)
    for (int v = 0; v < n; ++v) {
        double acc = g.degree(v) * x[static_cast<std::size_t>(v)];
        for (auto [u, e] : g.incident(v)) {
            (void)e;
            acc -= x[static_cast<std::size_t>(u)];
        }
        y[static_cast<std::size_t>(v)] = acc;
    }
}

namespace {

// Hopcroft-Tarjan biconnected components, iterative. Returns one component
// id per edge and flags articulation points.
struct BiconnectedDecomposition {
    std::vector<int> edge_component; // edge position -> component id
    std::vector<char> is_cut;        // node -> articulation point?
    int component_count = 0;
};

BiconnectedDecomposition biconnected_components(const Graph& g) {
    const int n = g.node_count();
    const int m = g.edge_count();
    BiconnectedDecomposition out;
    out.edge_component.assign(static_cast<std::size_t>(m), -1);
    out.is_cut.assign(static_cast<std::size_t>(n), 0);

    std::vector<int> disc(static_cast<std::size_t>(n), -1);
    std::vector<int> low(static_cast<std::size_t>(n), 0);
    std::vector<int> parent_edge(static_cast<std::size_t>(n), -1);
    std::vector<int> root_children(static_cast<std::size_t>(n), 0);
    std::vector<std::size_t> iter(static_cast<std::size_t>(n), 0);
    std::vector<int> edge_stack;
    int timer = 0;

    for (int root = 0; root < n; ++root) {
        if (disc[static_cast<std::size_t>(root)] != -1) continue;
        std::vector<int> stack{root};
        disc[static_cast<std::size_t>(root)] = low[static_cast<std::size_t>(root)] = timer++;
        while (!stack.empty()) {
            int v = stack.back();
            auto inc = g.incident(v);
            if (iter[static_cast<std::size_t>(v)] < inc.size()) {
                auto [u, e] = inc[iter[static_cast<std::size_t>(v)]++];
                if (e == parent_edge[static_cast<std::size_t>(v)]) continue;
                if (disc[static_cast<std::size_t>(u)] == -1) {
                    edge_stack.push_back(e);
                    parent_edge[static_cast<std::size_t>(u)] = e;
                    if (v == root) ++root_children[static_cast<std::size_t>(root)];
                    disc[static_cast<std::size_t>(u)] = low[static_cast<std::size_t>(u)] = timer++;
                    stack.push_back(u);
                } else if (disc[static_cast<std::size_t>(u)] < disc[static_cast<std::size_t>(v)]) {
                    edge_stack.push_back(e);
                    low[static_cast<std::size_t>(v)] = std::min(low[static_cast<std::size_t>(v)], disc[static_cast<std::size_t>(u)]);
                }
            } else {
                stack.pop_back();
                if (stack.empty()) break;
                int p = stack.back();
                low[static_cast<std::size_t>(p)] = std::min(low[static_cast<std::size_t>(p)], low[static_cast<std::size_t>(v)]);
                if (low[static_cast<std::size_t>(v)] >= disc[static_cast<std::size_t>(p)]) {
                    if (p != root) out.is_cut[static_cast<std::size_t>(p)] = 1;
                    int pe = parent_edge[static_cast<std::size_t>(v)];
                    int comp = out.component_count++;
                    while (true) {
                        int e = edge_stack.back();
                        edge_stack.pop_back();
                        out.edge_component[static_cast<std::size_t>(e)] = comp;
                        if (e == pe) break;
                    }
                }
            }
        }
        if (root_children[static_cast<std::size_t>(root)] >= 2) out.is_cut[static_cast<std::size_t>(root)] = 1;
    }
    return out;
}

} // namespace

EdgeSet path_edge_set(const Graph& g, int i, int j) {
    const int n = g.node_count();
    if (i < 0 || i >= n || j < 0 || j >= n) fail(errc::node_out_of_range, "query node out of range");
    if (i == j) fail(errc::same_node, "path endpoints coincide");
    if (!is_connected(g)) fail(errc::disconnected, "graph is not connected");

    auto decomp = biconnected_components(g);
    const int m = g.edge_count();

    // Block-cut tree: one node per component, one per articulation point.
    // A component links to every articulation point it touches; non-cut
    // vertices live in exactly one component.
    const int comp_count = decomp.component_count;
    auto cut_tree_node = [&](int v) { return comp_count + v; }; // sparse ids for cut vertices
    const int tree_size = comp_count + n;
    std::vector<std::vector<int>> tree_adj(static_cast<std::size_t>(tree_size));
    std::vector<int> vertex_home(static_cast<std::size_t>(n), -1); // non-cut vertex -> its component
    std::vector<std::vector<int>> comp_cuts(static_cast<std::size_t>(comp_count));
    for (int e = 0; e < m; ++e) {
        int c = decomp.edge_component[static_cast<std::size_t>(e)];
        auto [a, b] = g.edge(e);
        for (int v : {a, b}) {
            if (decomp.is_cut[static_cast<std::size_t>(v)]) {
                auto& cuts = comp_cuts[static_cast<std::size_t>(c)];
                if (std::find(cuts.begin(), cuts.end(), v) == cuts.end()) {
                    cuts.push_back(v);
                    tree_adj[static_cast<std::size_t>(c)].push_back(cut_tree_node(v));
                    tree_adj[static_cast<std::size_t>(cut_tree_node(v))].push_back(c);
                }
            } else {
                vertex_home[static_cast<std::size_t>(v)] = c;
            }
        }
    }

    auto anchor = [&](int v) {
        return decomp.is_cut[static_cast<std::size_t>(v)] ? cut_tree_node(v)
                                                          : vertex_home[static_cast<std::size_t>(v)];
    };
    const int src = anchor(i);
    const int dst = anchor(j);

    // BFS in the tree from src, then walk parents back from dst and collect
    // the component nodes on the path.
    std::vector<int> parent(static_cast<std::size_t>(tree_size), -2);
    std::vector<int> queue{src};
    parent[static_cast<std::size_t>(src)] = -1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        int v = queue[head];
        if (v == dst) break;
        for (int u : tree_adj[static_cast<std::size_t>(v)]) {
            if (parent[static_cast<std::size_t>(u)] == -2) {
                parent[static_cast<std::size_t>(u)] = v;
                queue.push_back(u);
            }
        }
    }

    std::vector<char> on_path(static_cast<std::size_t>(comp_count), 0);
    for (int v = dst; v != -1; v = parent[static_cast<std::size_t>(v)]) {
        if (v < comp_count) on_path[static_cast<std::size_t>(v)] = 1;
    }

    EdgeSet result(m);
    for (int e = 0; e < m; ++e) {
        if (on_path[static_cast<std::size_t>(decomp.edge_component[static_cast<std::size_t>(e)])]) result.set(e);
    }
    return result;
}

} // namespace btlrank
