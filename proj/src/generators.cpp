#include "btlrank/generators.hpp"

#include <cmath>
#include <utility>
#include <vector>

#include "btlrank/rng.hpp"

namespace btlrank {

namespace {

struct FamilyName {
    Family family;
    const char* name;
};

constexpr FamilyName kFamilyNames[] = {
    {Family::line, "line"},
    {Family::circle, "circle"},
    {Family::grid2d, "grid2d"},
    {Family::grid3d, "grid3d"},
    {Family::star, "star"},
    {Family::two_stars, "two_stars"},
    {Family::barbell, "barbell"},
    {Family::erdos_renyi, "erdos_renyi"},
    {Family::geometric, "geometric"},
};

int side_length(int n, int dim) {
    // Largest s with s^dim <= n, guarded against cbrt/sqrt rounding.
    int s = static_cast<int>(std::floor(std::pow(static_cast<double>(n), 1.0 / dim)));
    auto power = [&](int v) {
        long long acc = 1;
        for (int d = 0; d < dim; ++d) acc *= v;
        return acc;
    };
    while (power(s + 1) <= n) ++s;
    while (s > 1 && power(s) > n) --s;
    return s;
}

void validate(const FamilySpec& spec) {
    if (spec.n < 2) fail(errc::bad_spec, "family needs n >= 2");
    const bool wants_p = spec.family == Family::erdos_renyi;
    const bool wants_radius = spec.family == Family::geometric;
    if (wants_p) {
        if (spec.p < 0.0 || spec.p > 1.0) fail(errc::bad_spec, "erdos_renyi needs p in [0, 1]");
    } else if (spec.p >= 0.0) {
        fail(errc::bad_spec, "p is only meaningful for erdos_renyi");
    }
    if (wants_radius) {
        if (spec.radius != -1.0 && spec.radius <= 0.0)
            fail(errc::bad_spec, "geometric needs radius > 0");
    } else if (spec.radius != -1.0) {
        fail(errc::bad_spec, "radius is only meaningful for geometric");
    }
    switch (spec.family) {
        case Family::circle:
            if (spec.n < 3) fail(errc::bad_spec, "circle needs n >= 3");
            break;
        case Family::grid2d:
            if (spec.n < 4) fail(errc::bad_spec, "grid2d needs n >= 4");
            break;
        case Family::grid3d:
            if (spec.n < 8) fail(errc::bad_spec, "grid3d needs n >= 8");
            break;
        case Family::barbell:
            if (spec.n < 3) fail(errc::bad_spec, "barbell needs n >= 3");
            break;
        default:
            break;
    }
}

std::vector<std::pair<int, int>> edge_list_for(const FamilySpec& spec, int* n_out) {
    std::vector<std::pair<int, int>> edges;
    int n = spec.n;
    switch (spec.family) {
        case Family::line: {
            for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
            break;
        }
        case Family::circle: {
            for (int v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
            edges.emplace_back(0, n - 1);
            break;
        }
        case Family::grid2d: {
            const int s = side_length(n, 2);
            n = s * s;
            for (int r = 0; r < s; ++r) {
                for (int c = 0; c < s; ++c) {
                    const int v = r * s + c;
                    if (c + 1 < s) edges.emplace_back(v, v + 1);
                    if (r + 1 < s) edges.emplace_back(v, v + s);
                }
            }
            break;
        }
        case Family::grid3d: {
            const int s = side_length(n, 3);
            n = s * s * s;
            for (int x = 0; x < s; ++x) {
                for (int y = 0; y < s; ++y) {
                    for (int z = 0; z < s; ++z) {
                        const int v = (x * s + y) * s + z;
                        if (z + 1 < s) edges.emplace_back(v, v + 1);
                        if (y + 1 < s) edges.emplace_back(v, v + s);
                        if (x + 1 < s) edges.emplace_back(v, v + s * s);
                    }
                }
            }
            break;
        }
        case Family::star: {
            for (int v = 1; v < n; ++v) edges.emplace_back(0, v);
            break;
        }
        case Family::two_stars: {
            // First star keeps the extra node when n is odd; centers are the
            // first node of each star.
            const int first = (n + 1) / 2;
            for (int v = 1; v < first; ++v) edges.emplace_back(0, v);
            for (int v = first + 1; v < n; ++v) edges.emplace_back(first, v);
            edges.emplace_back(0, first);
            break;
        }
        case Family::barbell: {
            const int q = n / 3;
            n = 3 * q;
            // Left clique 0..q-1, path q..2q-1, right clique 2q..3q-1. The
            // path attaches to the last clique vertex on each side.
            for (int i = 0; i < q; ++i)
                for (int j = i + 1; j < q; ++j) edges.emplace_back(i, j);
            for (int i = 2 * q; i < 3 * q; ++i)
                for (int j = i + 1; j < 3 * q; ++j) edges.emplace_back(i, j);
            for (int v = q; v + 1 < 2 * q; ++v) edges.emplace_back(v, v + 1);
            edges.emplace_back(q - 1, q);
            edges.emplace_back(2 * q - 1, 2 * q);
            break;
        }
        case Family::erdos_renyi: {
            SplitMix64 rng(spec.seed);
            for (int i = 0; i < n; ++i)
                for (int j = i + 1; j < n; ++j)
                    if (rng.bernoulli(spec.p)) edges.emplace_back(i, j);
            break;
        }
        case Family::geometric: {
            const double radius = spec.radius > 0.0
                ? spec.radius
                : 1.5 * std::sqrt(std::log(static_cast<double>(n)) / n);
            SplitMix64 rng(spec.seed);
            std::vector<double> px(static_cast<std::size_t>(n)), py(static_cast<std::size_t>(n));
            for (int v = 0; v < n; ++v) {
                px[static_cast<std::size_t>(v)] = rng.next_double();
                py[static_cast<std::size_t>(v)] = rng.next_double();
            }
            const double r2 = radius * radius;
            for (int i = 0; i < n; ++i) {
                for (int j = i + 1; j < n; ++j) {
                    const double dx = px[static_cast<std::size_t>(i)] - px[static_cast<std::size_t>(j)];
                    const double dy = py[static_cast<std::size_t>(i)] - py[static_cast<std::size_t>(j)];
                    if (dx * dx + dy * dy <= r2) edges.emplace_back(i, j);
                }
            }
            break;
        }
    }
    *n_out = n;
    return edges;
}

} // namespace

Family family_from_name(const std::string& name) {
    for (const auto& item : kFamilyNames)
        if (name == item.name) return item.family;
    fail(errc::bad_spec, "unknown graph family: " + name);
}

std::string family_name(Family family) {
    for (const auto& item : kFamilyNames)
        if (family == item.family) return item.name;
    fail(errc::bad_spec, "unnamed graph family");
}

bool family_is_random(Family family) {
    return family == Family::erdos_renyi || family == Family::geometric;
}

int effective_node_count(const FamilySpec& spec) {
    validate(spec);
    switch (spec.family) {
        case Family::grid2d: {
            const int s = side_length(spec.n, 2);
            return s * s;
        }
        case Family::grid3d: {
            const int s = side_length(spec.n, 3);
            return s * s * s;
        }
        case Family::barbell:
            return 3 * (spec.n / 3);
        default:
            return spec.n;
    }
}

Graph generate(const FamilySpec& spec) {
    validate(spec);
    int n = spec.n;
    auto edges = edge_list_for(spec, &n);
    if (edges.empty()) fail(errc::disconnected, "sampled graph has no edges");
    return build_graph(n, edges);
}

ConnectedResult generate_connected(const FamilySpec& spec, int max_attempts) {
    if (!family_is_random(spec.family))
        fail(errc::bad_spec, "generate_connected expects a random family");
    validate(spec);
    if (max_attempts < 1) fail(errc::bad_spec, "max_attempts must be >= 1");
    FamilySpec attempt = spec;
    for (int a = 0; a < max_attempts; ++a) {
        attempt.seed = spec.seed + static_cast<std::uint64_t>(a);
        int n = attempt.n;
        auto edges = edge_list_for(attempt, &n);
        if (edges.empty()) continue;
        Graph g = build_graph(n, edges);
        if (is_connected(g)) return {std::move(g), a + 1};
    }
    fail(errc::exhausted_attempts, "no connected sample within attempt budget");
}

} // namespace btlrank
