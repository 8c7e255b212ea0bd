#pragma once

#include <cassert>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "laprox/graph.hpp"

namespace laprox {

// Entry/exit timestamps of a DFS over a rooted tree, one shared 0-based
// counter for both events. a is an ancestor-or-self of b iff
// vis[a] <= vis[b] and fin[b] <= fin[a]; intervals of any two nodes are
// nested or disjoint.
struct DfsIndex {
    std::vector<std::uint32_t> vis, fin;
};

// ps[u] is the total injected flow crossing tree edge (u, parent[u]);
// ps[root] = 0 by convention. Equals the subtree injection sum.
using PathSupport = std::vector<double>;

namespace detail {

// Child adjacency in CSR form; children come out in ascending id order
// because nodes are scanned ascending when filling.
struct ChildLists {
    std::vector<std::uint32_t> offset; // n+1
    std::vector<node_t> child;         // n-1

    explicit ChildLists(std::span<const node_t> parent) {
        const auto n = static_cast<node_t>(parent.size());
        offset.assign(n + 1, 0);
        for (node_t u = 0; u < n; ++u)
            if (parent[u] != kNoParent) ++offset[parent[u] + 1];
        for (node_t u = 0; u < n; ++u) offset[u + 1] += offset[u];
        child.resize(n > 0 ? n - 1 : 0);
        std::vector<std::uint32_t> cursor(offset.begin(), offset.end() - 1);
        for (node_t u = 0; u < n; ++u)
            if (parent[u] != kNoParent) child[cursor[parent[u]]++] = u;
    }
};

inline DfsIndex dfs_index(node_t root, std::span<const node_t> parent) {
    const auto n = static_cast<node_t>(parent.size());
    const ChildLists kids(parent);
    DfsIndex idx{std::vector<std::uint32_t>(n, 0), std::vector<std::uint32_t>(n, 0)};

    struct Frame {
        node_t node;
        std::uint32_t next_child;
    };
    std::vector<Frame> stack;
    stack.reserve(n);
    std::uint32_t clock = 0;
    idx.vis[root] = clock++;
    stack.push_back({root, kids.offset[root]});
    while (!stack.empty()) {
        Frame& top = stack.back();
        if (top.next_child < kids.offset[top.node + 1]) {
            const node_t c = kids.child[top.next_child++];
            idx.vis[c] = clock++;
            stack.push_back({c, kids.offset[c]});
        } else {
            idx.fin[top.node] = clock++;
            stack.pop_back();
        }
    }
    return idx;
}

// Preorder over the tree (parents before children, children ascending).
inline std::vector<node_t> preorder(node_t root, std::span<const node_t> parent) {
    const auto n = static_cast<node_t>(parent.size());
    const ChildLists kids(parent);
    std::vector<node_t> order;
    order.reserve(n);
    std::vector<node_t> stack;
    stack.reserve(n);
    stack.push_back(root);
    while (!stack.empty()) {
        const node_t u = stack.back();
        stack.pop_back();
        order.push_back(u);
        // push descending so ascending children pop first
        for (std::uint32_t i = kids.offset[u + 1]; i > kids.offset[u]; --i)
            stack.push_back(kids.child[i - 1]);
    }
    return order;
}

inline PathSupport path_support(node_t root, std::span<const node_t> parent,
                                const NodeWeights& inj) {
    assert(inj.size() == parent.size());
    const auto order = preorder(root, parent);
    std::vector<double> acc(inj);
    // children precede parents in reverse preorder, so each acc[u] is the
    // complete subtree sum when it is folded upward
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const node_t u = *it;
        if (parent[u] != kNoParent) acc[parent[u]] += acc[u];
    }
    acc[root] = 0.0;
    return acc;
}

} // namespace detail

// Iterative DFS from the root, children visited in ascending id order.
inline DfsIndex dfs_index(const RootedTree& t) {
    return detail::dfs_index(t.root, t.parent);
}

// True iff e1 is an ancestor-or-self of u, i.e. e1 lies on u's root path.
inline bool on_root_path(const DfsIndex& idx, node_t e1, node_t u) {
    return idx.vis[e1] <= idx.vis[u] && idx.fin[u] <= idx.fin[e1];
}

// O(n) subtree aggregation; matches the naive per-path accumulation exactly
// (each injected unit is counted once per crossed edge).
inline PathSupport path_support(const RootedTree& t, const NodeWeights& inj) {
    return detail::path_support(t.root, t.parent, inj);
}

// Edges (u,parent(u)), (parent(u),parent^2(u)), ... ending at the root;
// empty for u = root.
inline std::vector<std::pair<node_t, node_t>> root_path_edges(const RootedTree& t, node_t u) {
    std::vector<std::pair<node_t, node_t>> edges;
    while (t.parent[u] != kNoParent) {
        edges.emplace_back(u, t.parent[u]);
        u = t.parent[u];
    }
    return edges;
}

} // namespace laprox
