#ifndef BTLRANK_ORACLE_HPP
#define BTLRANK_ORACLE_HPP

#include <vector>

#include "btlrank/graph.hpp"

namespace btlrank {

/// Dense L† as a row-major n×n matrix, computed as
/// (L + (1/n)11ᵀ)⁻¹ − (1/n)11ᵀ. Reference implementation for tests;
/// capped at n = 200.
std::vector<double> dense_pinv_oracle(const Graph& g);

/// Dense row-major Laplacian.
std::vector<double> dense_laplacian(const Graph& g);

/// tr L† as the sum of reciprocal nonzero Laplacian eigenvalues.
double laplacian_eigen_trace_pinv(const Graph& g);

} // namespace btlrank

#endif // BTLRANK_ORACLE_HPP
