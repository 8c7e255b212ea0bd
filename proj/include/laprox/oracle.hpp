#pragma once

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "laprox/errors.hpp"
#include "laprox/graph.hpp"
#include "laprox/tree_ops.hpp"

namespace laprox::oracle {

using DenseMatrix = Eigen::MatrixXd;

// Dense-oracle node limit; LAPROX_ORACLE_CAP overrides. Read per call so the
// override is honored whenever it changes.
inline std::size_t dense_cap() {
    if (const char* env = std::getenv("LAPROX_ORACLE_CAP")) {
        char* end = nullptr;
        const unsigned long long v = std::strtoull(env, &end, 10);
        if (end != env && *end == '\0' && v >= 2) return static_cast<std::size_t>(v);
    }
    return 2048;
}

namespace detail {

inline void check_cap(const Graph& g) {
    if (g.num_nodes() > dense_cap())
        throw cap_error("oracle refuses n=" + std::to_string(g.num_nodes()) +
                        " above the dense cap " + std::to_string(dense_cap()));
}

// Row index of node u in a matrix with node v removed.
inline Eigen::Index grounded_index(node_t u, node_t v) {
    return static_cast<Eigen::Index>(u < v ? u : u - 1);
}

} // namespace detail

inline DenseMatrix laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    DenseMatrix L = DenseMatrix::Zero(n, n);
    for (node_t u = 0; u < g.num_nodes(); ++u) {
        L(u, u) = g.degree(u);
        for (node_t w : g.neighbors(u)) L(u, w) = -1.0;
    }
    return L;
}

inline DenseMatrix normalized_laplacian(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    DenseMatrix Ln = DenseMatrix::Identity(n, n);
    for (node_t u = 0; u < g.num_nodes(); ++u)
        for (node_t w : g.neighbors(u))
            Ln(u, w) = -1.0 / std::sqrt(static_cast<double>(g.degree(u)) * g.degree(w));
    return Ln;
}

// Exact inverse of the grounded Laplacian L_v ((n-1)x(n-1), rows/columns are
// the nodes != v in ascending order). SPD factorization with a residual
// check at 1e-8.
inline DenseMatrix dense_grounded_inverse(const Graph& g, node_t v) {
    detail::check_cap(g);
    if (v >= g.num_nodes()) throw usage_error("landmark out of range");
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    DenseMatrix Lv(n - 1, n - 1);
    {
        const DenseMatrix L = laplacian(g);
        Eigen::Index r = 0;
        for (Eigen::Index i = 0; i < n; ++i) {
            if (i == v) continue;
            Eigen::Index c = 0;
            for (Eigen::Index j = 0; j < n; ++j) {
                if (j == v) continue;
                Lv(r, c++) = L(i, j);
            }
            ++r;
        }
    }
    Eigen::LLT<DenseMatrix> llt(Lv);
    if (llt.info() != Eigen::Success)
        throw numeric_error("grounded Laplacian factorization failed (disconnected input?)");
    DenseMatrix inv = llt.solve(DenseMatrix::Identity(n - 1, n - 1));
    const double residual = (Lv * inv - DenseMatrix::Identity(n - 1, n - 1)).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
        throw numeric_error("grounded inverse residual " + std::to_string(residual) +
                            " exceeds 1e-8");
    return inv;
}

// L^dagger = C L_v^{-1} C^T with the bordering matrix C = [I - J/n; -1^T/n].
inline DenseMatrix pinv_bordered(const Graph& g, node_t v) {
    detail::check_cap(g);
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    const DenseMatrix inv = dense_grounded_inverse(g, v);
    DenseMatrix C(n, n - 1);
    C.setConstant(-1.0 / static_cast<double>(n));
    for (node_t u = 0; u < g.num_nodes(); ++u)
        if (u != v) C(u, detail::grounded_index(u, v)) += 1.0;
    return C * inv * C.transpose();
}

// L^dagger = (L + J/n)^{-1} - J/n.
inline DenseMatrix pinv_shifted(const Graph& g) {
    detail::check_cap(g);
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    const DenseMatrix J = DenseMatrix::Constant(n, n, 1.0 / static_cast<double>(n));
    Eigen::LLT<DenseMatrix> llt(laplacian(g) + J);
    if (llt.info() != Eigen::Success)
        throw numeric_error("shifted Laplacian factorization failed");
    return llt.solve(DenseMatrix::Identity(n, n)) - J;
}

// Moore-Penrose pseudo-inverse of the combinatorial Laplacian. Both
// constructions are evaluated and must agree entrywise to 1e-8; the
// bordered construction is returned.
inline DenseMatrix dense_pinv(const Graph& g) {
    const DenseMatrix a = pinv_bordered(g, select_landmark(g));
    const DenseMatrix b = pinv_shifted(g);
    const double diff = (a - b).cwiseAbs().maxCoeff();
    if (diff > 1e-8)
        throw numeric_error("pseudo-inverse constructions disagree by " + std::to_string(diff));
    return a;
}

// diag(L^dagger) rebuilt from L_v^{-1} alone:
// diag_u = (L_v^{-1})_{uu} - (2/n) rowsum_u + total/n^2, diag_v = total/n^2.
inline std::vector<double> pinv_diag_from_grounded(const Graph& g, node_t v) {
    const node_t n = g.num_nodes();
    const DenseMatrix inv = dense_grounded_inverse(g, v);
    const Eigen::VectorXd rowsum = inv.rowwise().sum();
    const double total = rowsum.sum();
    const double nn = static_cast<double>(n);
    std::vector<double> diag(n);
    for (node_t u = 0; u < n; ++u) {
        if (u == v) {
            diag[u] = total / (nn * nn);
        } else {
            const auto k = detail::grounded_index(u, v);
            diag[u] = inv(k, k) - 2.0 / nn * rowsum(k) + total / (nn * nn);
        }
    }
    return diag;
}

// Pseudo-inverse of the normalized Laplacian from its eigendecomposition,
// dropping the zero eigenvalue of the connected graph.
inline DenseMatrix normalized_pinv_eigen(const Graph& g) {
    detail::check_cap(g);
    const auto n = static_cast<Eigen::Index>(g.num_nodes());
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(normalized_laplacian(g));
    if (es.info() != Eigen::Success) throw numeric_error("eigendecomposition failed");
    const auto& sigma = es.eigenvalues();
    if (sigma(1) <= 1e-10)
        throw numeric_error("normalized Laplacian has a repeated zero eigenvalue "
                            "(disconnected input?)");
    Eigen::VectorXd inv_sigma = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 1; i < n; ++i) inv_sigma(i) = 1.0 / sigma(i);
    return es.eigenvectors() * inv_sigma.asDiagonal() * es.eigenvectors().transpose();
}

// Pseudo-inverse of the normalized Laplacian rebuilt entrywise from
// L_v^{-1} with stationary-distribution weights.
inline DenseMatrix normalized_pinv_from_grounded(const Graph& g, node_t v) {
    const node_t n = g.num_nodes();
    const DenseMatrix inv = dense_grounded_inverse(g, v);
    const double two_m = 2.0 * static_cast<double>(g.num_edges());

    Eigen::VectorXd deg(n - 1);
    for (node_t u = 0; u < n; ++u)
        if (u != v) deg(detail::grounded_index(u, v)) = g.degree(u);
    const Eigen::VectorXd w = inv * deg;           // e_s^T L_v^{-1} d_v
    const double weighted_total = deg.dot(w) / two_m;

    const auto pi = [&](node_t u) { return g.degree(u) / two_m; };
    DenseMatrix out(n, n);
    for (node_t s = 0; s < n; ++s) {
        for (node_t t = 0; t < n; ++t) {
            if (s == v && t == v) {
                out(s, t) = pi(v) * weighted_total;
            } else if (t == v) {
                const auto i = detail::grounded_index(s, v);
                out(s, t) = std::sqrt(pi(s) * pi(v)) * (-w(i) + weighted_total);
            } else if (s == v) {
                const auto j = detail::grounded_index(t, v);
                out(s, t) = std::sqrt(pi(t) * pi(v)) * (-w(j) + weighted_total);
            } else {
                const auto i = detail::grounded_index(s, v);
                const auto j = detail::grounded_index(t, v);
                out(s, t) = std::sqrt(pi(s) * pi(t)) *
                            (two_m * inv(i, j) - w(i) - w(j) + weighted_total);
            }
        }
    }
    return out;
}

// The two halves of the Kemeny decomposition at landmark v:
// Tr((I-P_v)^{-1}) and (1/2m) d_v^T L_v^{-1} d_v.
struct KcParts {
    double trace_part = 0.0;
    double weighted_part = 0.0;
};

inline KcParts exact_kc_parts(const Graph& g, node_t v) {
    const node_t n = g.num_nodes();
    const DenseMatrix inv = dense_grounded_inverse(g, v);
    Eigen::VectorXd deg(n - 1);
    for (node_t u = 0; u < n; ++u)
        if (u != v) deg(detail::grounded_index(u, v)) = g.degree(u);
    KcParts parts;
    for (node_t u = 0; u < n; ++u) {
        if (u == v) continue;
        const auto k = detail::grounded_index(u, v);
        parts.trace_part += inv(k, k) * g.degree(u);
    }
    parts.weighted_part = deg.dot(inv * deg) / (2.0 * static_cast<double>(g.num_edges()));
    return parts;
}

inline double grounded_trace(const Graph& g, node_t v) {
    return exact_kc_parts(g, v).trace_part;
}

inline std::vector<double> kc_eigenvalue_terms(const Graph& g) {
    detail::check_cap(g);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(normalized_laplacian(g));
    if (es.info() != Eigen::Success) throw numeric_error("eigendecomposition failed");
    std::vector<double> sigma(es.eigenvalues().data(),
                              es.eigenvalues().data() + es.eigenvalues().size());
    return sigma;
}

// Kemeny's constant computed two independent ways -- the decomposition at
// the default landmark and the eigenvalue sum of the normalized Laplacian --
// which must agree to 1e-6. Returns the decomposition value.
inline double exact_kc(const Graph& g) {
    const KcParts parts = exact_kc_parts(g, select_landmark(g));
    const double decomposed = parts.trace_part - parts.weighted_part;
    const auto sigma = kc_eigenvalue_terms(g);
    double eigen_sum = 0.0;
    for (std::size_t i = 1; i < sigma.size(); ++i) eigen_sum += 1.0 / sigma[i];
    if (std::abs(decomposed - eigen_sum) > 1e-6)
        throw numeric_error("Kemeny routes disagree: decomposition " + std::to_string(decomposed) +
                            " vs eigenvalue sum " + std::to_string(eigen_sum));
    return decomposed;
}

inline std::vector<double> exact_pinv_diag(const Graph& g) {
    const DenseMatrix p = dense_pinv(g);
    std::vector<double> diag(g.num_nodes());
    for (node_t u = 0; u < g.num_nodes(); ++u) diag[u] = p(u, u);
    return diag;
}

inline std::vector<double> exact_ecc(const Graph& g) {
    const auto diag = exact_pinv_diag(g);
    double trace = 0.0;
    for (double d : diag) trace += d;
    const double n = static_cast<double>(g.num_nodes());
    std::vector<double> scores(diag.size());
    for (std::size_t u = 0; u < diag.size(); ++u) scores[u] = (n - 1.0) / (trace + n * diag[u]);
    return scores;
}

// ---- exact spanning-tree machinery ------------------------------------

// Number of spanning trees by the matrix-tree theorem, evaluated exactly
// with fraction-free (Bareiss) elimination over 128-bit integers. The n-cap
// keeps every intermediate minor far below the 128-bit range.
inline std::uint64_t spanning_tree_count(const Graph& g) {
    const node_t n = g.num_nodes();
    if (n - 1 > 16) throw cap_error("exact tree count limited to n <= 17");
    const Eigen::Index dim = n - 1;
    std::vector<__int128> m(static_cast<std::size_t>(dim) * dim, 0);
    const auto at = [&](Eigen::Index i, Eigen::Index j) -> __int128& {
        return m[static_cast<std::size_t>(i) * dim + j];
    };
    for (node_t u = 1; u < n; ++u) {
        at(u - 1, u - 1) = g.degree(u);
        for (node_t w : g.neighbors(u))
            if (w != 0) at(u - 1, w - 1) = -1;
    }
    __int128 prev = 1;
    int sign = 1;
    for (Eigen::Index k = 0; k < dim; ++k) {
        if (at(k, k) == 0) {
            Eigen::Index pivot = -1;
            for (Eigen::Index i = k + 1; i < dim; ++i)
                if (at(i, k) != 0) {
                    pivot = i;
                    break;
                }
            if (pivot < 0) return 0;
            for (Eigen::Index j = 0; j < dim; ++j) std::swap(at(k, j), at(pivot, j));
            sign = -sign;
        }
        for (Eigen::Index i = k + 1; i < dim; ++i)
            for (Eigen::Index j = k + 1; j < dim; ++j)
                at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
        prev = at(k, k);
    }
    const __int128 det = sign * at(dim - 1, dim - 1);
    return det > 0 ? static_cast<std::uint64_t>(det) : 0;
}

// All spanning trees over a fixed root, each stored as a parent-link array.
struct TreeSet {
    node_t root = 0;
    std::vector<RootedTree> trees;

    std::uint64_t count() const noexcept { return trees.size(); }
};

inline constexpr node_t kEnumerationNodeCap = 12;
inline constexpr std::uint64_t kEnumerationCountCap = 1'000'000;

// Enumerates every spanning tree by include/exclude recursion over the edge
// list, pruning branches that can no longer connect the graph. The result
// size is cross-checked against the matrix-tree determinant.
inline TreeSet enumerate_spanning_trees(const Graph& g, node_t root) {
    const node_t n = g.num_nodes();
    if (root >= n) throw usage_error("root out of range");
    if (n > kEnumerationNodeCap)
        throw cap_error("tree enumeration refuses n > " + std::to_string(kEnumerationNodeCap));
    const std::uint64_t expected = spanning_tree_count(g);
    if (expected > kEnumerationCountCap)
        throw cap_error("tree enumeration refuses " + std::to_string(expected) + " trees");

    std::vector<std::pair<node_t, node_t>> edges;
    for (node_t u = 0; u < n; ++u)
        for (node_t w : g.neighbors(u))
            if (u < w) edges.emplace_back(u, w);
    const std::size_t m = edges.size();

    using Comp = std::vector<std::uint8_t>;
    const auto find = [](const Comp& c, std::uint8_t x) {
        while (c[x] != x) x = c[x];
        return x;
    };
    const auto connectable = [&](const Comp& c, std::size_t from) {
        Comp t = c;
        for (std::size_t i = from; i < m; ++i) {
            auto a = find(t, static_cast<std::uint8_t>(edges[i].first));
            auto b = find(t, static_cast<std::uint8_t>(edges[i].second));
            if (a != b) t[std::max(a, b)] = std::min(a, b);
        }
        const auto r0 = find(t, 0);
        for (node_t u = 1; u < n; ++u)
            if (find(t, static_cast<std::uint8_t>(u)) != r0) return false;
        return true;
    };

    TreeSet out;
    out.root = root;
    std::vector<std::pair<node_t, node_t>> chosen;
    chosen.reserve(n - 1);

    const auto record = [&] {
        std::vector<std::vector<node_t>> adj(n);
        for (const auto& [a, b] : chosen) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        RootedTree t{root, std::vector<node_t>(n, kNoParent)};
        std::vector<char> seen(n, 0);
        std::vector<node_t> stack{root};
        seen[root] = 1;
        while (!stack.empty()) {
            const node_t u = stack.back();
            stack.pop_back();
            for (node_t w : adj[u])
                if (!seen[w]) {
                    seen[w] = 1;
                    t.parent[w] = u;
                    stack.push_back(w);
                }
        }
        out.trees.push_back(std::move(t));
    };

    const auto recurse = [&](auto&& self, std::size_t i, const Comp& comp) -> void {
        if (chosen.size() == n - 1) {
            record();
            return;
        }
        if (i == m || chosen.size() + (m - i) < n - 1) return;
        const auto& [a, b] = edges[i];
        const auto ra = find(comp, static_cast<std::uint8_t>(a));
        const auto rb = find(comp, static_cast<std::uint8_t>(b));
        if (ra != rb) {
            Comp with = comp;
            with[std::max(ra, rb)] = std::min(ra, rb);
            chosen.push_back(edges[i]);
            self(self, i + 1, with);
            chosen.pop_back();
        }
        if (connectable(comp, i + 1)) self(self, i + 1, comp);
    };

    Comp comp(n);
    for (node_t u = 0; u < n; ++u) comp[u] = static_cast<std::uint8_t>(u);
    recurse(recurse, 0, comp);

    if (out.count() != expected)
        throw numeric_error("tree enumeration found " + std::to_string(out.count()) +
                            " trees, determinant says " + std::to_string(expected));
    return out;
}

// Signed tree-count identity for one grounded-inverse entry:
// (L_v^{-1})_{su} = sum over the edges of any u->v reference path of
// (#trees whose s->v path crosses the edge forward minus backward) / #trees.
// Integer counts throughout, one final division.
inline double tree_count_element(const Graph& g, const TreeSet& ts, node_t s, node_t u,
                                 const std::vector<std::pair<node_t, node_t>>& ref_path) {
    const node_t v = ts.root;
    const node_t n = g.num_nodes();
    if (s >= n || u >= n) throw usage_error("node out of range");
    if (u == v) {
        if (!ref_path.empty()) throw usage_error("reference path must be empty for u = root");
        return 0.0;
    }
    if (s == v) throw usage_error("source must differ from the root");

    // validate the reference path: u -> ... -> v over graph edges
    node_t at = u;
    for (const auto& [e1, e2] : ref_path) {
        if (e1 != at || !g.has_edge(e1, e2)) throw usage_error("invalid reference path");
        at = e2;
    }
    if (at != v) throw usage_error("reference path must end at the root");

    long long signed_count = 0;
    std::vector<char> on_chain(n, 0);
    for (const RootedTree& t : ts.trees) {
        node_t x = s;
        while (x != kNoParent) {
            on_chain[x] = 1;
            x = t.parent[x];
        }
        for (const auto& [e1, e2] : ref_path) {
            if (on_chain[e1] && t.parent[e1] == e2) ++signed_count;
            if (on_chain[e2] && t.parent[e2] == e1) --signed_count;
        }
        x = s;
        while (x != kNoParent) {
            on_chain[x] = 0;
            x = t.parent[x];
        }
    }
    return static_cast<double>(signed_count) / static_cast<double>(ts.count());
}

inline double tree_count_element(const Graph& g, const TreeSet& ts, node_t s, node_t u) {
    const auto path =
        u == ts.root ? std::vector<std::pair<node_t, node_t>>{}
                     : root_path_edges(bfs_tree(g, ts.root), u);
    return tree_count_element(g, ts, s, u, path);
}

inline double tree_count_element(const Graph& g, node_t v, node_t s, node_t u) {
    return tree_count_element(g, enumerate_spanning_trees(g, v), s, u);
}

inline double tree_count_element(const Graph& g, node_t v, node_t s, node_t u,
                                 const std::vector<std::pair<node_t, node_t>>& ref_path) {
    return tree_count_element(g, enumerate_spanning_trees(g, v), s, u, ref_path);
}

} // namespace laprox::oracle
