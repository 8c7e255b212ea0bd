#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "laprox/graph.hpp"
#include "test_graphs.hpp"

using namespace laprox;
using testutil::all_pairs_hops;
using testutil::er_connected;
using testutil::tree_depth;

TEST_CASE("edge list parsing keeps a clean path graph", "[graph]") {
    std::istringstream in("0 1\n1 2\n");
    const ParsedGraph pg = parse_edge_list(in);
    REQUIRE(pg.graph.num_nodes() == 3);
    REQUIRE(pg.graph.num_edges() == 2);
    REQUIRE(pg.dropped_nodes == 0);
    REQUIRE(pg.graph.degree(1) == 2);
}

TEST_CASE("comments, self-loops and duplicates are dropped", "[graph]") {
    std::istringstream in("# c\n0 1\n1 0\n0 0\n");
    const ParsedGraph pg = parse_edge_list(in);
    REQUIRE(pg.graph.num_nodes() == 2);
    REQUIRE(pg.graph.num_edges() == 1);
}

TEST_CASE("largest connected component wins and is relabeled densely", "[graph]") {
    std::istringstream in("0 1\n2 3\n3 4\n4 2\n");
    const ParsedGraph pg = parse_edge_list(in);
    REQUIRE(pg.graph.num_nodes() == 3);
    REQUIRE(pg.graph.num_edges() == 3);
    REQUIRE(pg.dropped_nodes == 2);
    REQUIRE(pg.dropped_edges == 1);
    REQUIRE(pg.original_ids == std::vector<std::uint64_t>{2, 3, 4});
    REQUIRE(pg.relabel.at(2) == 0);
    REQUIRE(pg.relabel.at(4) == 2);
}

TEST_CASE("component size ties keep the smallest original id", "[graph]") {
    std::istringstream in("4 5\n0 1\n");
    const ParsedGraph pg = parse_edge_list(in);
    REQUIRE(pg.graph.num_nodes() == 2);
    REQUIRE(pg.original_ids == std::vector<std::uint64_t>{0, 1});
}

TEST_CASE("malformed lines report their line number", "[graph]") {
    std::istringstream bad_token("0 1\n2 x\n");
    try {
        parse_edge_list(bad_token);
        FAIL("expected parse_error");
    } catch (const parse_error& e) {
        REQUIRE(e.line() == 2);
    }

    std::istringstream extra("0 1 2\n");
    REQUIRE_THROWS_AS(parse_edge_list(extra), parse_error);

    std::istringstream negative("0 -1\n");
    REQUIRE_THROWS_AS(parse_edge_list(negative), parse_error);

    std::istringstream one_token("0\n");
    REQUIRE_THROWS_AS(parse_edge_list(one_token), parse_error);
}

TEST_CASE("graphs with fewer than two surviving nodes are rejected", "[graph]") {
    std::istringstream loops("3 3\n");
    REQUIRE_THROWS_AS(parse_edge_list(loops), input_error);

    std::istringstream empty("# nothing\n");
    REQUIRE_THROWS_AS(parse_edge_list(empty), input_error);
}

TEST_CASE("canonical serialization round-trips", "[graph]") {
    const auto check = [](const Graph& g) {
        std::ostringstream os;
        write_canonical_edge_list(g, os);
        std::istringstream in(os.str());
        const ParsedGraph again = parse_edge_list(in);
        REQUIRE(again.graph == g);
    };
    check(testutil::diamond());
    check(testutil::star_graph(5));
    for (std::uint64_t seed = 0; seed < 5; ++seed) check(er_connected(24, 0.15, seed));
}

TEST_CASE("landmark selection", "[graph]") {
    const Graph star = testutil::from_edges({{2, 0}, {2, 1}, {2, 3}});
    REQUIRE(select_landmark(star) == 2);
    REQUIRE(select_landmark(testutil::path_graph(3)) == 1);
    REQUIRE(select_landmark(testutil::complete_graph(3)) == 0); // tie -> lowest id
    REQUIRE(select_landmark(star, 3) == 3);
    REQUIRE_THROWS_AS(select_landmark(star, 4), usage_error);
}

TEST_CASE("bfs tree structure", "[graph]") {
    const RootedTree tri = bfs_tree(testutil::complete_graph(3), 0);
    REQUIRE(tri.parent == std::vector<node_t>{kNoParent, 0, 0});

    const RootedTree chain = bfs_tree(testutil::path_graph(3), 2);
    REQUIRE(chain.parent == std::vector<node_t>{1, 2, kNoParent});

    const RootedTree dia = bfs_tree(testutil::diamond(), 1);
    REQUIRE(dia.parent == std::vector<node_t>{1, kNoParent, 1, 1});
}

TEST_CASE("bfs reaches every node and realizes hop distances", "[graph]") {
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Graph g = er_connected(48, 0.12, seed);
        const auto hops = all_pairs_hops(g);
        for (node_t root : {node_t{0}, select_landmark(g)}) {
            const RootedTree t = bfs_tree(g, root);
            for (node_t u = 0; u < g.num_nodes(); ++u) {
                if (u != root) REQUIRE(t.parent[u] != kNoParent);
                REQUIRE(tree_depth(t, u) == hops[root][u]);
            }
        }
    }
}

TEST_CASE("stationary distribution values and invariants", "[graph]") {
    REQUIRE(stationary_distribution(testutil::k2()) == std::vector<double>{0.5, 0.5});
    REQUIRE(stationary_distribution(testutil::path_graph(3)) ==
            std::vector<double>{0.25, 0.5, 0.25});
    REQUIRE(stationary_distribution(testutil::diamond()) ==
            std::vector<double>{0.2, 0.3, 0.2, 0.3});

    for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const Graph g = er_connected(40, 0.15, seed);
        const auto pi = stationary_distribution(g);
        double sum = 0.0;
        for (double p : pi) sum += p;
        REQUIRE_THAT(sum, Catch::Matchers::WithinAbs(1.0, 1e-12));
        // pi^T P == pi^T, checked densely
        for (node_t u = 0; u < g.num_nodes(); ++u) {
            double acc = 0.0;
            for (node_t w : g.neighbors(u)) acc += pi[w] / g.degree(w);
            REQUIRE_THAT(acc, Catch::Matchers::WithinAbs(pi[u], 1e-12));
        }
    }
}

TEST_CASE("rooted tree validation catches broken trees", "[graph]") {
    const Graph g = testutil::diamond();
    RootedTree t = bfs_tree(g, 1);
    REQUIRE(validate_rooted_tree(g, t));

    RootedTree cycle = t;
    cycle.parent[1] = 0; // two-node cycle, no root marker
    REQUIRE_FALSE(validate_rooted_tree(g, cycle));

    RootedTree non_edge = t;
    non_edge.parent[2] = 0; // (2,0) is not an edge of the diamond
    REQUIRE_FALSE(validate_rooted_tree(g, non_edge));
}
