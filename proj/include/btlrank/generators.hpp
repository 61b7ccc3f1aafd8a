#ifndef BTLRANK_GENERATORS_HPP
#define BTLRANK_GENERATORS_HPP

#include <cstdint>
#include <string>

#include "btlrank/graph.hpp"

namespace btlrank {

enum class Family {
    line,
    circle,
    grid2d,
    grid3d,
    star,
    two_stars,
    barbell,
    erdos_renyi,
    geometric,
};

Family family_from_name(const std::string& name);
std::string family_name(Family family);
bool family_is_random(Family family);

struct FamilySpec {
    Family family = Family::line;
    int n = 2;
    double p = -1.0;      // erdos_renyi only; must be in [0, 1]
    double radius = -1.0; // geometric only; unset selects 1.5 * sqrt(ln n / n)
    std::uint64_t seed = 0;
};

/// Builds the requested family. Deterministic families ignore the seed;
/// random families are seeded-deterministic. grid2d/grid3d/barbell with an
/// inexact n round down (to the largest square/cube/multiple of three), so
/// the returned node count may be smaller than requested.
Graph generate(const FamilySpec& spec);

/// Actual node count generate(spec) will produce after rounding.
int effective_node_count(const FamilySpec& spec);

struct ConnectedResult {
    Graph graph;
    int attempts = 0;
};

/// Resamples a random family with seed, seed+1, ... until the sample is
/// connected, as the experiments condition on connectivity.
ConnectedResult generate_connected(const FamilySpec& spec, int max_attempts = 1000);

} // namespace btlrank

#endif // BTLRANK_GENERATORS_HPP
