#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <limits>
#include <ostream>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "laprox/errors.hpp"

namespace laprox {

using node_t = std::uint32_t;

inline constexpr node_t kNoParent = std::numeric_limits<node_t>::max();

// Per-node nonnegative injection weights (flow demands, sums to 1 for the
// current-flow use cases).
using NodeWeights = std::vector<double>;

// Immutable undirected simple connected graph in compressed-adjacency form.
// Neighbor lists are sorted ascending, which makes traversals deterministic
// and edge tests binary-searchable. Safe for unlimited concurrent readers.
class Graph {
public:
    Graph() = default;

    node_t num_nodes() const noexcept { return n_; }
    std::uint64_t num_edges() const noexcept { return m_; }

    std::uint32_t degree(node_t u) const { return degrees_[u]; }

    std::span<const node_t> neighbors(node_t u) const {
        return {neighbors_.data() + offsets_[u], degrees_[u]};
    }

    bool has_edge(node_t a, node_t b) const {
        if (degree(a) > degree(b)) std::swap(a, b);
        const auto nb = neighbors(a);
        return std::binary_search(nb.begin(), nb.end(), b);
    }

    const std::vector<std::uint64_t>& offsets() const noexcept { return offsets_; }
    const std::vector<node_t>& adjacency() const noexcept { return neighbors_; }

    bool operator==(const Graph& other) const {
        return n_ == other.n_ && m_ == other.m_ && offsets_ == other.offsets_ &&
               neighbors_ == other.neighbors_;
    }

private:
    Graph(node_t n, std::uint64_t m, std::vector<std::uint64_t> offsets,
          std::vector<node_t> neighbors, std::vector<std::uint32_t> degrees)
        : n_(n), m_(m), offsets_(std::move(offsets)), neighbors_(std::move(neighbors)),
          degrees_(std::move(degrees)) {}

    friend struct GraphBuilder;

    node_t n_ = 0;
    std::uint64_t m_ = 0;
    std::vector<std::uint64_t> offsets_;  // length n+1
    std::vector<node_t> neighbors_;       // length 2m
    std::vector<std::uint32_t> degrees_;  // length n
};

// Spanning (or BFS) tree as parent links toward the root; parent[root] is
// kNoParent and every (u, parent[u]) is an edge of the originating graph.
struct RootedTree {
    node_t root = 0;
    std::vector<node_t> parent;

    node_t size() const noexcept { return static_cast<node_t>(parent.size()); }
};

// Result of graph ingestion: the largest connected component relabeled to
// dense ids 0..n-1 (order-preserving on original ids), with both directions
// of the relabeling and the counts dropped on the way.
struct ParsedGraph {
    Graph graph;
    std::vector<std::uint64_t> original_ids;              // internal -> original
    std::unordered_map<std::uint64_t, node_t> relabel;    // original -> internal
    std::uint64_t dropped_nodes = 0;                      // outside the kept component
    std::uint64_t dropped_edges = 0;
};

struct GraphBuilder {
    static Graph csr(node_t n, std::uint64_t m, std::vector<std::uint64_t> offsets,
                     std::vector<node_t> neighbors, std::vector<std::uint32_t> degrees) {
        return Graph(n, m, std::move(offsets), std::move(neighbors), std::move(degrees));
    }
};

namespace detail {

// Union-find over dense indices, no rank tricks (inputs here are small or
// shallow enough that path halving alone is fine).
struct DisjointSet {
    explicit DisjointSet(std::size_t n) : parent(n) {
        for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<std::uint32_t>(i);
    }
    std::uint32_t find(std::uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    bool unite(std::uint32_t a, std::uint32_t b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b); // keep the smaller index as representative
        parent[b] = a;
        return true;
    }
    std::vector<std::uint32_t> parent;
};

} // namespace detail

// Shared ingestion pipeline: drops self-loops, collapses duplicate and
// reverse-duplicate edges, keeps the largest connected component (ties go to
// the component holding the smallest original id), relabels survivors to
// 0..n-1 preserving original-id order.
inline ParsedGraph build_from_edges(std::vector<std::pair<std::uint64_t, std::uint64_t>> edges) {
    // normalize and dedup
    std::erase_if(edges, [](const auto& e) { return e.first == e.second; });
    for (auto& e : edges)
        if (e.first > e.second) std::swap(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());

    std::vector<std::uint64_t> ids;
    ids.reserve(edges.size() * 2);
    for (const auto& [a, b] : edges) {
        ids.push_back(a);
        ids.push_back(b);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    if (ids.size() >= std::numeric_limits<node_t>::max())
        throw input_error("graph too large: more than 2^32-1 distinct node ids");

    std::unordered_map<std::uint64_t, std::uint32_t> dense;
    dense.reserve(ids.size() * 2);
    for (std::uint32_t i = 0; i < ids.size(); ++i) dense.emplace(ids[i], i);

    detail::DisjointSet dsu(ids.size());
    for (const auto& [a, b] : edges) dsu.unite(dense[a], dense[b]);

    // component sizes; representative of the winner is the smallest dense
    // index in it, and dense indices follow original-id order, so the size
    // tie-break below lands on the component with the smallest original id.
    std::vector<std::uint32_t> comp_size(ids.size(), 0);
    for (std::uint32_t i = 0; i < ids.size(); ++i) ++comp_size[dsu.find(i)];
    std::uint32_t best = 0;
    bool found = false;
    for (std::uint32_t i = 0; i < ids.size(); ++i) {
        if (comp_size[i] == 0) continue;
        if (!found || comp_size[i] > comp_size[best]) {
            best = i;
            found = true;
        }
    }

    ParsedGraph out;
    if (!found || comp_size[best] < 2) throw input_error("graph too small: fewer than 2 connected nodes");

    const std::uint32_t n = comp_size[best];
    out.original_ids.reserve(n);
    out.relabel.reserve(n * 2);
    for (std::uint32_t i = 0; i < ids.size(); ++i) {
        if (dsu.find(i) != best) continue;
        const node_t internal = static_cast<node_t>(out.original_ids.size());
        out.original_ids.push_back(ids[i]);
        out.relabel.emplace(ids[i], internal);
    }
    out.dropped_nodes = ids.size() - n;

    std::vector<std::uint32_t> degrees(n, 0);
    std::vector<std::pair<node_t, node_t>> kept;
    kept.reserve(edges.size());
    for (const auto& [a, b] : edges) {
        if (dsu.find(dense[a]) != best) continue;
        const node_t ia = out.relabel[a];
        const node_t ib = out.relabel[b];
        kept.emplace_back(ia, ib);
        ++degrees[ia];
        ++degrees[ib];
    }
    out.dropped_edges = edges.size() - kept.size();

    std::vector<std::uint64_t> offsets(n + 1, 0);
    for (node_t u = 0; u < n; ++u) offsets[u + 1] = offsets[u] + degrees[u];
    std::vector<node_t> adj(offsets[n]);
    std::vector<std::uint64_t> cursor(offsets.begin(), offsets.end() - 1);
    for (const auto& [a, b] : kept) {
        adj[cursor[a]++] = b;
        adj[cursor[b]++] = a;
    }
    for (node_t u = 0; u < n; ++u)
        std::sort(adj.begin() + static_cast<std::ptrdiff_t>(offsets[u]),
                  adj.begin() + static_cast<std::ptrdiff_t>(offsets[u + 1]));

    out.graph = GraphBuilder::csr(n, kept.size(), std::move(offsets), std::move(adj),
                                  std::move(degrees));
    return out;
}

namespace detail {

inline std::uint64_t parse_node_id(const std::string& token, std::size_t line) {
    if (token.empty()) throw parse_error("empty node id", line);
    for (char c : token)
        if (c < '0' || c > '9')
            throw parse_error("malformed node id '" + token + "'", line);
    std::uint64_t value = 0;
    const auto res = std::from_chars(token.data(), token.data() + token.size(), value);
    if (res.ec != std::errc{} || res.ptr != token.data() + token.size())
        throw parse_error("node id '" + token + "' out of range", line);
    return value;
}

} // namespace detail

// Reads a SNAP-style edge list: '#'-prefixed comment lines, otherwise two
// whitespace-separated nonnegative integer ids per line. Blank lines are
// ignored. Returns the largest connected component; see build_from_edges.
inline ParsedGraph parse_edge_list(std::istream& in) {
    std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;

        std::string a, b, extra;
        std::istringstream fields(line);
        fields >> a >> b;
        if (b.empty()) throw parse_error("expected two node ids", lineno);
        if (fields >> extra) throw parse_error("unexpected token '" + extra + "'", lineno);
        edges.emplace_back(detail::parse_node_id(a, lineno), detail::parse_node_id(b, lineno));
    }
    return build_from_edges(std::move(edges));
}

// Canonical serialization: one "u v" per line with u < v, rows in numeric
// order. Re-parsing this text reproduces the graph exactly.
inline void write_canonical_edge_list(const Graph& g, std::ostream& os) {
    for (node_t u = 0; u < g.num_nodes(); ++u)
        for (node_t w : g.neighbors(u))
            if (u < w) os << u << ' ' << w << '\n';
}

// Highest-degree landmark; ties broken by smallest node id.
inline node_t select_landmark(const Graph& g) {
    node_t best = 0;
    for (node_t u = 1; u < g.num_nodes(); ++u)
        if (g.degree(u) > g.degree(best)) best = u;
    return best;
}

inline node_t select_landmark(const Graph& g, node_t explicit_node) {
    if (explicit_node >= g.num_nodes())
        throw usage_error("landmark node " + std::to_string(explicit_node) + " out of range");
    return explicit_node;
}

// Shortest hop-count tree from root; FIFO frontier with ascending-id
// neighbor visits, so the output is deterministic.
inline RootedTree bfs_tree(const Graph& g, node_t root) {
    if (root >= g.num_nodes()) throw usage_error("BFS root out of range");
    RootedTree t{root, std::vector<node_t>(g.num_nodes(), kNoParent)};
    std::vector<char> seen(g.num_nodes(), 0);
    std::queue<node_t> frontier;
    seen[root] = 1;
    frontier.push(root);
    while (!frontier.empty()) {
        const node_t u = frontier.front();
        frontier.pop();
        for (node_t w : g.neighbors(u)) {
            if (seen[w]) continue;
            seen[w] = 1;
            t.parent[w] = u;
            frontier.push(w);
        }
    }
    return t;
}

// pi(u) = d_u / 2m.
inline std::vector<double> stationary_distribution(const Graph& g) {
    const double total = 2.0 * static_cast<double>(g.num_edges());
    std::vector<double> pi(g.num_nodes());
    for (node_t u = 0; u < g.num_nodes(); ++u) pi[u] = g.degree(u) / total;
    return pi;
}

// Full RootedTree invariant check: single root, edges exist in g, every
// parent chain reaches the root in < n steps.
inline bool validate_rooted_tree(const Graph& g, const RootedTree& t) {
    const node_t n = g.num_nodes();
    if (t.size() != n || t.root >= n || t.parent[t.root] != kNoParent) return false;
    std::vector<std::uint32_t> depth(n, 0);
    std::vector<char> done(n, 0);
    done[t.root] = 1;
    for (node_t u = 0; u < n; ++u) {
        std::vector<node_t> chain;
        node_t x = u;
        while (!done[x]) {
            if (t.parent[x] == kNoParent || chain.size() >= n) return false;
            if (!g.has_edge(x, t.parent[x])) return false;
            chain.push_back(x);
            x = t.parent[x];
        }
        std::uint32_t d = depth[x];
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            depth[*it] = ++d;
            done[*it] = 1;
        }
        if (d >= n) return false;
    }
    return true;
}

} // namespace laprox
