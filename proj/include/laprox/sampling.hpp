#pragma once

#include <cassert>
#include <cstdint>
#include <utility>
#include <vector>

#include "laprox/errors.hpp"
#include "laprox/graph.hpp"
#include "laprox/rng.hpp"

namespace laprox {

// Safety valve against corrupted (disconnected) inputs; absorption is a.s.
// finite on connected graphs and never gets anywhere near this.
inline constexpr std::uint64_t kWalkStepCap = std::uint64_t{1} << 40;

enum class ScanOrder { ascending, descending };

// Per-node pass accumulators of one walk process. Counts are kept as raw
// integers and divided by d_u only on read, so tallies stay exact.
// total_steps == sum of all passes, and passes[v] stays 0 for the
// absorbing/root node v.
struct WalkTally {
    std::vector<std::uint64_t> passes;
    std::uint64_t total_steps = 0;

    explicit WalkTally(node_t n = 0) : passes(n, 0) {}

    double normalized(const Graph& g, node_t u) const {
        return static_cast<double>(passes[u]) / g.degree(u);
    }

    std::vector<double> normalized_passes(const Graph& g) const {
        std::vector<double> out(passes.size());
        for (node_t u = 0; u < passes.size(); ++u) out[u] = normalized(g, u);
        return out;
    }
};

// Uniform draw from u's neighbor list.
inline node_t random_neighbor(const Graph& g, node_t u, RngStream& rng) {
    const auto nb = g.neighbors(u);
    return nb[static_cast<std::size_t>(rng.bounded(nb.size()))];
}

// Node u with probability d_u / 2m: a uniform slot in the neighbors array,
// resolved to the owning endpoint (u owns d_u slots).
inline node_t sample_stationary_node(const Graph& g, RngStream& rng) {
    const std::uint64_t slot = rng.bounded(2 * g.num_edges());
    const auto& off = g.offsets();
    const auto it = std::upper_bound(off.begin(), off.end(), slot);
    return static_cast<node_t>(it - off.begin() - 1);
}

namespace detail {

// Reusable buffers for repeated Wilson runs. Membership is tracked with
// epoch stamps so a new run needs no O(n) clear.
struct WilsonScratch {
    std::vector<node_t> parent;
    std::vector<std::uint32_t> stamp;
    std::uint32_t epoch = 0;

    void begin_run(node_t n) {
        if (parent.size() != n) {
            parent.assign(n, kNoParent);
            stamp.assign(n, 0);
            epoch = 0;
        }
        if (++epoch == 0) {
            std::fill(stamp.begin(), stamp.end(), 0);
            epoch = 1;
        }
    }

    bool in_tree(node_t u) const { return stamp[u] == epoch; }
    void add(node_t u) { stamp[u] = epoch; }
};

// One full Wilson run rooted at v: random walks from every start node in
// scan order, loop-erased by next-pointer overwriting, committed by
// retracing. On return scratch.parent holds the sampled tree. Every visit
// to a not-yet-in-tree node counts as one step (and one pass of that node,
// recorded into `passes` when non-null) -- including visits that a later
// loop erasure removes.
inline std::uint64_t wilson_run(const Graph& g, node_t v, RngStream& rng, ScanOrder order,
                                WilsonScratch& scratch, std::uint64_t* passes) {
    const node_t n = g.num_nodes();
    scratch.begin_run(n);
    scratch.add(v);
    scratch.parent[v] = kNoParent;

    std::uint64_t steps = 0;
    for (node_t k = 0; k < n; ++k) {
        const node_t start = order == ScanOrder::ascending ? k : n - 1 - k;
        if (scratch.in_tree(start)) continue;
        node_t x = start;
        while (!scratch.in_tree(x)) {
            if (passes) ++passes[x];
            if (++steps > kWalkStepCap)
                throw numeric_error("random walk exceeded the step cap; input may be corrupted");
            const node_t next = random_neighbor(g, x, rng);
            scratch.parent[x] = next;
            x = next;
        }
        x = start;
        while (!scratch.in_tree(x)) {
            scratch.add(x);
            x = scratch.parent[x];
        }
    }
    return steps;
}

inline std::uint64_t absorbed_walk_steps(const Graph& g, node_t v, node_t s, RngStream& rng,
                                         std::uint64_t* passes) {
    std::uint64_t steps = 0;
    node_t x = s;
    while (x != v) {
        if (passes) ++passes[x];
        if (++steps > kWalkStepCap)
            throw numeric_error("absorbed walk exceeded the step cap; input may be corrupted");
        x = random_neighbor(g, x, rng);
    }
    return steps;
}

} // namespace detail

// Uniformly distributed spanning tree rooted at v (Wilson's algorithm). The
// tree distribution is independent of the scan order; the order knob exists
// so that invariance is testable.
inline RootedTree wilson_tree(const Graph& g, node_t v, RngStream& rng,
                              ScanOrder order = ScanOrder::ascending) {
    detail::WilsonScratch scratch;
    detail::wilson_run(g, v, rng, order, scratch, nullptr);
    RootedTree t{v, std::move(scratch.parent)};
    assert(validate_rooted_tree(g, t));
    return t;
}

// Wilson run that also tallies every random-walk pass. E[passes[u]/d_u] is
// the u-th diagonal entry of the grounded inverse, E[total_steps] is
// Tr((I - P_v)^{-1}).
inline std::pair<RootedTree, WalkTally> wilson_with_tallies(const Graph& g, node_t v,
                                                            RngStream& rng,
                                                            ScanOrder order = ScanOrder::ascending) {
    detail::WilsonScratch scratch;
    WalkTally tally(g.num_nodes());
    tally.total_steps = detail::wilson_run(g, v, rng, order, scratch, tally.passes.data());
    RootedTree t{v, std::move(scratch.parent)};
    assert(validate_rooted_tree(g, t));
    return {std::move(t), std::move(tally)};
}

// Simple random walk from s absorbed at v; tallies every visited node
// except v. E[passes[u]/d_u] is the (s,u) entry of the grounded inverse,
// E[total_steps] the hitting time h(s, v). s == v yields an empty walk.
inline WalkTally absorbed_walk(const Graph& g, node_t v, node_t s, RngStream& rng) {
    WalkTally tally(g.num_nodes());
    tally.total_steps = detail::absorbed_walk_steps(g, v, s, rng, tally.passes.data());
    return tally;
}

// Mean and sample standard deviation of Wilson run lengths; mean/n estimates
// Tr((I - P_v)^{-1})/n, the per-sample walk cost statistic.
struct WilsonRunStats {
    double mean_steps = 0.0;
    double stddev_steps = 0.0;
    std::uint64_t samples = 0;
};

} // namespace laprox
