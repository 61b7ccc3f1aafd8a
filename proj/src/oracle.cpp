#include "btlrank/oracle.hpp"

#include <Eigen/Dense>

namespace btlrank {

namespace {

Eigen::MatrixXd eigen_laplacian(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd l = Eigen::MatrixXd::Zero(n, n);
    for (auto [i, j] : g.edges()) {
        l(i, i) += 1.0;
        l(j, j) += 1.0;
        l(i, j) -= 1.0;
        l(j, i) -= 1.0;
    }
    return l;
}

} // namespace

std::vector<double> dense_pinv_oracle(const Graph& g) {
    const int n = g.node_count();
    if (n > 200) fail(errc::too_large, "dense oracle is capped at 200 nodes");
    if (!is_connected(g)) fail(errc::disconnected, "graph is not connected");

    const double inv_n = 1.0 / n;
    Eigen::MatrixXd shifted = eigen_laplacian(g);
    shifted.array() += inv_n;
    Eigen::MatrixXd pinv = shifted.partialPivLu().inverse();
    pinv.array() -= inv_n;

    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = pinv(i, j);
    return out;
}

std::vector<double> dense_laplacian(const Graph& g) {
    const int n = g.node_count();
    Eigen::MatrixXd l = eigen_laplacian(g);
    std::vector<double> out(static_cast<std::size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) out[static_cast<std::size_t>(i) * n + j] = l(i, j);
    return out;
}

double laplacian_eigen_trace_pinv(const Graph& g) {
    if (!is_connected(g)) fail(errc::disconnected, "graph is not connected");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(eigen_laplacian(g),
                                                          Eigen::EigenvaluesOnly);
    const auto& lambda = solver.eigenvalues();
    // Connected graph: exactly one zero eigenvalue, sorted first.
    double trace = 0.0;
    for (int k = 1; k < lambda.size(); ++k) trace += 1.0 / lambda(k);
    return trace;
}

} // namespace btlrank
