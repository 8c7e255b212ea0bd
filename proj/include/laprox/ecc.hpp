#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "laprox/errors.hpp"
#include "laprox/graph.hpp"
#include "laprox/parallel.hpp"
#include "laprox/rng.hpp"
#include "laprox/sampling.hpp"
#include "laprox/tree_ops.hpp"

namespace laprox {

// Phase-2 sample streams are tagged with the top index bit so the two phases
// of the loop-erased-walk estimator never share randomness.
inline constexpr std::uint64_t kPhase2StreamTag = std::uint64_t{1} << 63;

// Per-node estimator state: x1[u] (or y1[u]) targets the u-th diagonal of
// the grounded inverse, x2[u] (or y2[u]) targets (1/n) e_u^T L_v^{-1} 1.
// Entries at the landmark are identically zero.
struct EccAccumulator {
    std::vector<double> x1, x2;
};

// diag[u] = x1[u] - 2 x2[u] + (1/n) sum_w x2[w]; the landmark's own entry is
// therefore (1/n) sum x2 by construction.
inline std::vector<double> recombine_diag(const EccAccumulator& acc) {
    const std::size_t n = acc.x1.size();
    double mean_x2 = 0.0;
    for (double v : acc.x2) mean_x2 += v;
    mean_x2 /= static_cast<double>(n);
    std::vector<double> diag(n);
    for (std::size_t u = 0; u < n; ++u) diag[u] = acc.x1[u] - 2.0 * acc.x2[u] + mean_x2;
    return diag;
}

// Estimated diagonal of the combinatorial Laplacian pseudo-inverse.
struct DiagEstimate {
    std::vector<double> diag;
    EccAccumulator parts;      // normalized per-phase accumulators
    node_t landmark = 0;
    std::uint64_t samples = 0;
    double trace = 0.0;        // cached sum of diag
    std::uint64_t seed = 0;
    double wall_time_s = 0.0;
};

namespace detail {

inline double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

inline DiagEstimate finalize_diag(EccAccumulator parts, node_t v, std::uint64_t samples,
                                  std::uint64_t seed,
                                  std::chrono::steady_clock::time_point started) {
    DiagEstimate est;
    est.diag = recombine_diag(parts);
    est.parts = std::move(parts);
    est.landmark = v;
    est.samples = samples;
    est.trace = sum(est.diag);
    est.seed = seed;
    est.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return est;
}

} // namespace detail

// Spanning-tree Monte Carlo estimator of diag(L^dagger).
//
// Each sample draws one uniform spanning tree rooted at v (stream index =
// sample id), computes the tree's path support under uniform 1/n injections,
// and walks every node's precomputed BFS path toward v: a BFS edge that the
// tree contains in matching orientation and that lies on the node's tree
// root path contributes +-1 to x1 and +-ps to x2.
inline DiagEstimate estimate_spantree(const Graph& g, node_t v, std::uint64_t samples,
                                      std::uint64_t seed, unsigned threads = 1) {
    if (samples == 0) throw usage_error("sample count must be at least 1");
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");
    const auto started = std::chrono::steady_clock::now();
    const node_t n = g.num_nodes();
    const RootedTree bfs = bfs_tree(g, v);
    const NodeWeights uniform_inj(n, 1.0 / n);

    EccAccumulator total{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    run_sample_blocks(
        samples, threads,
        [n] { return EccAccumulator{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}; },
        [] { return detail::WilsonScratch{}; },
        [&](std::uint64_t i, EccAccumulator& acc, detail::WilsonScratch& ws) {
            RngStream rng = make_stream(seed, i);
            detail::wilson_run(g, v, rng, ScanOrder::ascending, ws, nullptr);
            const auto idx = detail::dfs_index(v, ws.parent);
            const auto ps = detail::path_support(v, ws.parent, uniform_inj);
            for (node_t u = 0; u < n; ++u) {
                node_t e1 = u;
                while (e1 != v) {
                    const node_t e2 = bfs.parent[e1];
                    if (ws.parent[e1] == e2 && on_root_path(idx, e1, u)) {
                        acc.x1[u] += 1.0;
                        acc.x2[u] += ps[e1];
                    } else if (ws.parent[e2] == e1 && on_root_path(idx, e2, u)) {
                        acc.x1[u] -= 1.0;
                        acc.x2[u] -= ps[e2];
                    }
                    e1 = e2;
                }
            }
        },
        [&](const EccAccumulator& acc) {
            for (node_t u = 0; u < n; ++u) {
                total.x1[u] += acc.x1[u];
                total.x2[u] += acc.x2[u];
            }
        });

    const double scale = 1.0 / static_cast<double>(samples);
    for (node_t u = 0; u < n; ++u) {
        total.x1[u] *= scale;
        total.x2[u] *= scale;
    }
    return detail::finalize_diag(std::move(total), v, samples, seed, started);
}

// Optional uneven budget split between the two phases of the loop-erased
// walk estimator.
struct LewalkBudget {
    std::uint64_t tree_samples = 0;
    std::uint64_t walk_samples = 0;
};

// Loop-erased-walk estimator of diag(L^dagger).
//
// Phase 1 runs Wilson processes rooted at v and tallies every random-walk
// pass (including later-erased loops): y1[u] estimates the grounded-inverse
// diagonal. Phase 2 runs v-absorbed walks from uniformly random sources:
// y2[u] estimates (1/n) e_u^T L_v^{-1} 1. Tallies are raw integer counts,
// so results are exact given the streams regardless of merge order.
inline DiagEstimate estimate_lewalk(const Graph& g, node_t v, std::uint64_t samples,
                                    std::uint64_t seed, unsigned threads = 1,
                                    std::optional<LewalkBudget> budget = std::nullopt) {
    if (samples == 0) throw usage_error("sample count must be at least 1");
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");
    const std::uint64_t tree_samples = budget ? budget->tree_samples : samples;
    const std::uint64_t walk_samples = budget ? budget->walk_samples : samples;
    if (tree_samples == 0 || walk_samples == 0)
        throw usage_error("both phase budgets must be at least 1");
    const auto started = std::chrono::steady_clock::now();
    const node_t n = g.num_nodes();

    std::vector<std::uint64_t> tree_passes(n, 0), walk_passes(n, 0);
    const auto merge_into = [n](std::vector<std::uint64_t>& dst) {
        return [&dst, n](const std::vector<std::uint64_t>& src) {
            for (node_t u = 0; u < n; ++u) dst[u] += src[u];
        };
    };

    run_sample_blocks(
        tree_samples, threads, [n] { return std::vector<std::uint64_t>(n, 0); },
        [] { return detail::WilsonScratch{}; },
        [&](std::uint64_t i, std::vector<std::uint64_t>& acc, detail::WilsonScratch& ws) {
            RngStream rng = make_stream(seed, i);
            detail::wilson_run(g, v, rng, ScanOrder::ascending, ws, acc.data());
        },
        merge_into(tree_passes));

    run_sample_blocks(
        walk_samples, threads, [n] { return std::vector<std::uint64_t>(n, 0); }, [] { return 0; },
        [&](std::uint64_t i, std::vector<std::uint64_t>& acc, int&) {
            RngStream rng = make_stream(seed, kPhase2StreamTag | i);
            const node_t s = static_cast<node_t>(rng.bounded(n));
            detail::absorbed_walk_steps(g, v, s, rng, acc.data());
        },
        merge_into(walk_passes));

    EccAccumulator acc{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
    for (node_t u = 0; u < n; ++u) {
        const double d = g.degree(u);
        acc.x1[u] = static_cast<double>(tree_passes[u]) / (static_cast<double>(tree_samples) * d);
        acc.x2[u] = static_cast<double>(walk_passes[u]) / (static_cast<double>(walk_samples) * d);
    }
    return detail::finalize_diag(std::move(acc), v, samples, seed, started);
}

// c(u) = (n-1) / (Tr + n diag(u)). Sampling noise can push a denominator
// nonpositive; such nodes get a NaN sentinel and are reported, not fatal.
struct EccScores {
    std::vector<double> values;
    std::vector<node_t> flagged;
};

inline EccScores ecc_scores(const DiagEstimate& d) {
    const std::size_t n = d.diag.size();
    EccScores out;
    out.values.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const double denom = d.trace + static_cast<double>(n) * d.diag[u];
        if (denom <= 0.0) {
            out.values[u] = std::numeric_limits<double>::quiet_NaN();
            out.flagged.push_back(static_cast<node_t>(u));
        } else {
            out.values[u] = (static_cast<double>(n) - 1.0) / denom;
        }
    }
    return out;
}

// Kirchhoff index Tr(L^dagger) and random-walk betweenness
// c_b(u) = 1/n + Tr / ((n-1)(Tr + n diag(u))).
struct DerivedMetrics {
    double kirchhoff = 0.0;
    std::vector<double> rw_betweenness;
    std::vector<node_t> flagged;
};

inline DerivedMetrics derived_metrics(const DiagEstimate& d) {
    const std::size_t n = d.diag.size();
    DerivedMetrics out;
    out.kirchhoff = d.trace;
    out.rw_betweenness.resize(n);
    for (std::size_t u = 0; u < n; ++u) {
        const double denom = d.trace + static_cast<double>(n) * d.diag[u];
        if (denom <= 0.0) {
            out.rw_betweenness[u] = std::numeric_limits<double>::quiet_NaN();
            out.flagged.push_back(static_cast<node_t>(u));
        } else {
            out.rw_betweenness[u] =
                1.0 / static_cast<double>(n) +
                d.trace / ((static_cast<double>(n) - 1.0) * denom);
        }
    }
    return out;
}

// Sample size for the Hoeffding guarantee |diag error| <= eps on every node
// simultaneously with probability >= 1 - p_fail.
inline std::uint64_t hoeffding_sample_size_ecc(double diameter, double eps, double p_fail,
                                               std::uint64_t n) {
    if (!(diameter >= 1.0)) throw usage_error("diameter must be at least 1");
    if (!(eps > 0.0)) throw usage_error("epsilon must be positive");
    if (!(p_fail > 0.0 && p_fail < 1.0)) throw usage_error("failure probability must be in (0,1)");
    if (n == 0) throw usage_error("node count must be positive");
    const double w = std::ceil(32.0 * diameter * diameter *
                               std::log(2.0 * static_cast<double>(n) / p_fail) / (eps * eps));
    if (!(w >= 1.0) || w >= 9.0e18) throw usage_error("sample size out of range");
    return static_cast<std::uint64_t>(w);
}

} // namespace laprox
