#pragma once

// Fixture graphs and small statistical helpers shared by the suites. ER
// instances are built right here (the library itself has no generators).

#include <cmath>
#include <cstdint>
#include <numeric>
#include <utility>
#include <vector>

#include "laprox/graph.hpp"
#include "laprox/rng.hpp"

namespace testutil {

using laprox::Graph;
using laprox::ParsedGraph;
using laprox::node_t;

using EdgeList = std::vector<std::pair<std::uint64_t, std::uint64_t>>;

inline ParsedGraph parsed(EdgeList edges) { return laprox::build_from_edges(std::move(edges)); }

inline Graph from_edges(EdgeList edges) { return parsed(std::move(edges)).graph; }

inline Graph k2() { return from_edges({{0, 1}}); }

inline Graph path_graph(node_t n) {
    EdgeList e;
    for (node_t u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
    return from_edges(std::move(e));
}

inline Graph cycle_graph(node_t n) {
    EdgeList e;
    for (node_t u = 0; u + 1 < n; ++u) e.push_back({u, u + 1});
    e.push_back({n - 1, 0});
    return from_edges(std::move(e));
}

inline Graph complete_graph(node_t n) {
    EdgeList e;
    for (node_t u = 0; u < n; ++u)
        for (node_t w = u + 1; w < n; ++w) e.push_back({u, w});
    return from_edges(std::move(e));
}

// 4-cycle 0-1-2-3 with chord (1,3): degrees (2,3,2,3), 8 spanning trees.
inline Graph diamond() { return from_edges({{0, 1}, {1, 2}, {2, 3}, {3, 0}, {1, 3}}); }

// Star with center 0 and `leaves` leaves.
inline Graph star_graph(node_t leaves) {
    EdgeList e;
    for (node_t u = 1; u <= leaves; ++u) e.push_back({0, u});
    return from_edges(std::move(e));
}

// Connected Erdos-Renyi instance: edges drawn per (seed, attempt) stream,
// first attempt whose largest component is the whole node set wins.
inline Graph er_connected(node_t n, double p, std::uint64_t seed) {
    const auto threshold = static_cast<std::uint64_t>(p * 18446744073709551616.0);
    for (std::uint64_t attempt = 0;; ++attempt) {
        laprox::RngStream rng = laprox::make_stream(seed, attempt);
        EdgeList e;
        for (node_t u = 0; u < n; ++u)
            for (node_t w = u + 1; w < n; ++w)
                if (rng.next_u64() < threshold) e.push_back({u, w});
        if (e.empty()) continue;
        ParsedGraph pg = laprox::build_from_edges(std::move(e));
        if (pg.graph.num_nodes() == n) return std::move(pg.graph);
    }
}

// Random recursive tree: node u attaches to a uniform earlier node.
inline Graph random_tree(node_t n, std::uint64_t seed) {
    laprox::RngStream rng = laprox::make_stream(seed, 0);
    EdgeList e;
    for (node_t u = 1; u < n; ++u) e.push_back({u, rng.bounded(u)});
    return from_edges(std::move(e));
}

struct Moments {
    double mean = 0.0;
    double stddev = 0.0;
};

inline Moments moments(const std::vector<double>& xs) {
    Moments m;
    m.mean = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
    double ss = 0.0;
    for (double x : xs) ss += (x - m.mean) * (x - m.mean);
    if (xs.size() > 1) m.stddev = std::sqrt(ss / (static_cast<double>(xs.size()) - 1.0));
    return m;
}

// Pearson statistic of observed counts against a uniform expectation.
inline double chi_square_uniform(const std::vector<std::uint64_t>& counts, std::uint64_t total) {
    const double expected = static_cast<double>(total) / static_cast<double>(counts.size());
    double stat = 0.0;
    for (auto c : counts) {
        const double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

// Two-sample Pearson statistic against the pooled distribution.
inline double chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                    const std::vector<std::uint64_t>& b) {
    double total_a = 0.0, total_b = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        total_a += static_cast<double>(a[i]);
        total_b += static_cast<double>(b[i]);
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double pooled = (static_cast<double>(a[i]) + static_cast<double>(b[i])) /
                              (total_a + total_b);
        const double ea = total_a * pooled;
        const double eb = total_b * pooled;
        if (pooled == 0.0) continue;
        stat += (a[i] - ea) * (a[i] - ea) / ea + (b[i] - eb) * (b[i] - eb) / eb;
    }
    return stat;
}

inline constexpr double kChiSq999Df3 = 16.2662;
inline constexpr double kChiSq999Df7 = 24.3219;

// All-pairs hop distances by repeated BFS; oracle for tree-depth checks.
inline std::vector<std::vector<std::uint32_t>> all_pairs_hops(const Graph& g) {
    const node_t n = g.num_nodes();
    std::vector<std::vector<std::uint32_t>> dist(n, std::vector<std::uint32_t>(n, UINT32_MAX));
    for (node_t s = 0; s < n; ++s) {
        std::vector<node_t> frontier{s};
        dist[s][s] = 0;
        while (!frontier.empty()) {
            std::vector<node_t> next;
            for (node_t u : frontier)
                for (node_t w : g.neighbors(u))
                    if (dist[s][w] == UINT32_MAX) {
                        dist[s][w] = dist[s][u] + 1;
                        next.push_back(w);
                    }
            frontier = std::move(next);
        }
    }
    return dist;
}

inline std::uint32_t hop_diameter(const Graph& g) {
    const auto d = all_pairs_hops(g);
    std::uint32_t best = 0;
    for (const auto& row : d)
        for (auto v : row) best = std::max(best, v);
    return best;
}

inline std::uint32_t tree_depth(const laprox::RootedTree& t, node_t u) {
    std::uint32_t d = 0;
    while (t.parent[u] != laprox::kNoParent) {
        u = t.parent[u];
        ++d;
    }
    return d;
}

} // namespace testutil
