#pragma once

#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "laprox/errors.hpp"
#include "laprox/graph.hpp"
#include "laprox/parallel.hpp"
#include "laprox/rng.hpp"
#include "laprox/sampling.hpp"
#include "laprox/tree_ops.hpp"

namespace laprox {

// Kemeny's constant estimate around the decomposition
// kappa = Tr((I - P_v)^{-1}) - (1/2m) d_v^T L_v^{-1} d_v.
// Both parts are exposed because they have independent ground truths;
// kappa is their difference by construction.
struct KcEstimate {
    double kappa = 0.0;
    double part_trace = 0.0;
    double part_weighted = 0.0;
    node_t landmark = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    double sample_variance = std::numeric_limits<double>::quiet_NaN();
    double wall_time_s = 0.0;
};

namespace detail {

inline double variance_from_moments(double sum, double sum_sq, std::uint64_t count) {
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    const double n = static_cast<double>(count);
    const double var = (sum_sq - sum * sum / n) / (n - 1.0);
    return var > 0.0 ? var : 0.0;
}

} // namespace detail

// Spanning-tree estimator of Kemeny's constant. Same alignment machinery as
// the spanning-tree diagonal estimator, with per-node weights d_u on x1 and
// stationary injections d_u/2m behind the path support feeding x2.
inline KcEstimate estimate_kc_spantree(const Graph& g, node_t v, std::uint64_t samples,
                                       std::uint64_t seed, unsigned threads = 1) {
    if (samples == 0) throw usage_error("sample count must be at least 1");
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");
    const auto started = std::chrono::steady_clock::now();
    const node_t n = g.num_nodes();
    const RootedTree bfs = bfs_tree(g, v);
    const NodeWeights stationary_inj = stationary_distribution(g);

    struct Acc {
        double sum_x1 = 0.0, sum_x2 = 0.0, sum_sq = 0.0;
    };
    Acc total;
    run_sample_blocks(
        samples, threads, [] { return Acc{}; }, [] { return detail::WilsonScratch{}; },
        [&](std::uint64_t i, Acc& acc, detail::WilsonScratch& ws) {
            RngStream rng = make_stream(seed, i);
            detail::wilson_run(g, v, rng, ScanOrder::ascending, ws, nullptr);
            const auto idx = detail::dfs_index(v, ws.parent);
            const auto ps = detail::path_support(v, ws.parent, stationary_inj);
            double x1 = 0.0, x2 = 0.0;
            for (node_t u = 0; u < n; ++u) {
                const double du = g.degree(u);
                node_t e1 = u;
                while (e1 != v) {
                    const node_t e2 = bfs.parent[e1];
                    if (ws.parent[e1] == e2 && on_root_path(idx, e1, u)) {
                        x1 += du;
                        x2 += ps[e1] * du;
                    } else if (ws.parent[e2] == e1 && on_root_path(idx, e2, u)) {
                        x1 -= du;
                        x2 -= ps[e2] * du;
                    }
                    e1 = e2;
                }
            }
            acc.sum_x1 += x1;
            acc.sum_x2 += x2;
            const double k = x1 - x2;
            acc.sum_sq += k * k;
        },
        [&](const Acc& acc) {
            total.sum_x1 += acc.sum_x1;
            total.sum_x2 += acc.sum_x2;
            total.sum_sq += acc.sum_sq;
        });

    KcEstimate est;
    est.part_trace = total.sum_x1 / static_cast<double>(samples);
    est.part_weighted = total.sum_x2 / static_cast<double>(samples);
    est.kappa = est.part_trace - est.part_weighted;
    est.landmark = v;
    est.samples = samples;
    est.seed = seed;
    est.sample_variance =
        detail::variance_from_moments(total.sum_x1 - total.sum_x2, total.sum_sq, samples);
    est.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return est;
}

// Loop-erased-walk estimator of Kemeny's constant. Per sample: y1 is the
// total step count of one Wilson run rooted at v, y2 the length of one
// v-absorbed walk from a stationary-distributed source; kappa averages
// y1 - y2.
inline KcEstimate estimate_kc_lewalk(const Graph& g, node_t v, std::uint64_t samples,
                                     std::uint64_t seed, unsigned threads = 1) {
    if (samples == 0) throw usage_error("sample count must be at least 1");
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");
    const auto started = std::chrono::steady_clock::now();

    struct Acc {
        std::uint64_t sum_y1 = 0, sum_y2 = 0;
        double sum_sq = 0.0;
    };
    Acc total;
    run_sample_blocks(
        samples, threads, [] { return Acc{}; }, [] { return detail::WilsonScratch{}; },
        [&](std::uint64_t i, Acc& acc, detail::WilsonScratch& ws) {
            RngStream rng = make_stream(seed, i);
            const std::uint64_t y1 = detail::wilson_run(g, v, rng, ScanOrder::ascending, ws, nullptr);
            const node_t s = sample_stationary_node(g, rng);
            const std::uint64_t y2 = detail::absorbed_walk_steps(g, v, s, rng, nullptr);
            acc.sum_y1 += y1;
            acc.sum_y2 += y2;
            const double k = static_cast<double>(y1) - static_cast<double>(y2);
            acc.sum_sq += k * k;
        },
        [&](const Acc& acc) {
            total.sum_y1 += acc.sum_y1;
            total.sum_y2 += acc.sum_y2;
            total.sum_sq += acc.sum_sq;
        });

    KcEstimate est;
    est.part_trace = static_cast<double>(total.sum_y1) / static_cast<double>(samples);
    est.part_weighted = static_cast<double>(total.sum_y2) / static_cast<double>(samples);
    est.kappa = est.part_trace - est.part_weighted;
    est.landmark = v;
    est.samples = samples;
    est.seed = seed;
    est.sample_variance = detail::variance_from_moments(
        static_cast<double>(total.sum_y1) - static_cast<double>(total.sum_y2), total.sum_sq,
        samples);
    est.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return est;
}

// Mean and spread of Wilson run lengths, the sampling cost statistic
// Tr((I - P_v)^{-1}) when divided by nothing and /n when reported per node.
inline WilsonRunStats wilson_step_stats(const Graph& g, node_t v, std::uint64_t samples,
                                        std::uint64_t seed, unsigned threads = 1) {
    if (samples == 0) throw usage_error("sample count must be at least 1");
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");

    struct Acc {
        std::uint64_t sum = 0;
        double sum_sq = 0.0;
    };
    Acc total;
    run_sample_blocks(
        samples, threads, [] { return Acc{}; }, [] { return detail::WilsonScratch{}; },
        [&](std::uint64_t i, Acc& acc, detail::WilsonScratch& ws) {
            RngStream rng = make_stream(seed, i);
            const std::uint64_t steps =
                detail::wilson_run(g, v, rng, ScanOrder::ascending, ws, nullptr);
            acc.sum += steps;
            acc.sum_sq += static_cast<double>(steps) * static_cast<double>(steps);
        },
        [&](const Acc& acc) {
            total.sum += acc.sum;
            total.sum_sq += acc.sum_sq;
        });

    WilsonRunStats stats;
    stats.samples = samples;
    stats.mean_steps = static_cast<double>(total.sum) / static_cast<double>(samples);
    const double var =
        detail::variance_from_moments(static_cast<double>(total.sum), total.sum_sq, samples);
    stats.stddev_steps = std::isnan(var) ? 0.0 : std::sqrt(var);
    return stats;
}

// Sample size for the Hoeffding guarantee |kappa error| <= eps with
// probability >= 1 - p_fail.
inline std::uint64_t hoeffding_sample_size_kc(std::uint64_t m, double diameter, double eps,
                                              double p_fail) {
    if (m == 0) throw usage_error("edge count must be positive");
    if (!(diameter >= 1.0)) throw usage_error("diameter must be at least 1");
    if (!(eps > 0.0)) throw usage_error("epsilon must be positive");
    if (!(p_fail > 0.0 && p_fail < 1.0)) throw usage_error("failure probability must be in (0,1)");
    const double w = std::ceil(8.0 * static_cast<double>(m) * static_cast<double>(m) * diameter *
                               diameter * std::log(2.0 / p_fail) / (eps * eps));
    if (!(w >= 1.0) || w >= 9.0e18) throw usage_error("sample size out of range");
    return static_cast<std::uint64_t>(w);
}

} // namespace laprox
