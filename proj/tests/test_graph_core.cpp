#include <doctest.h>

#include "madst/graph.hpp"
#include "madst/graph_io.hpp"
#include "madst/instance_gen.hpp"
#include "madst/spanning_tree.hpp"
#include "madst/wiener.hpp"

#include <sstream>

#include "test_util.hpp"

using namespace madst;
using namespace testutil;

TEST_CASE("bfs distances") {
    CHECK(bfs_distances(path(4), 0).dist == std::vector<int>{0, 1, 2, 3});
    CHECK(bfs_distances(cycle(4), 0).dist == std::vector<int>{0, 1, 2, 1});
    Graph g(2); // edgeless
    auto p = bfs_distances(g, 0);
    CHECK(p.dist[0] == 0);
    CHECK(p.dist[1] == kUnreachable);
    CHECK_FALSE(p.all_reachable());
}

TEST_CASE("graph stays simple") {
    Graph g(3);
    CHECK(g.add_edge(0, 1));
    CHECK_FALSE(g.add_edge(1, 0)); // duplicate
    CHECK(g.edge_count() == 1);
    CHECK_THROWS_AS(g.add_edge(1, 1), Error);
    CHECK_THROWS_AS(g.add_edge(0, 7), Error);
}

TEST_CASE("wiener_graph on small graphs") {
    CHECK(wiener_graph(complete(4)) == 6);
    CHECK(wiener_graph(cycle(4)) == 8);
    CHECK(wiener_graph(path(4)) == 10);
    Graph disconnected(3);
    disconnected.add_edge(0, 1);
    CHECK_THROWS_AS(wiener_graph(disconnected), DisconnectedGraph);
}

TEST_CASE("wiener_tree equals the all-pairs BFS route") {
    SpanningTree p4(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(wiener_tree(p4) == 10);
    SpanningTree k13(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(wiener_tree(k13) == 9);
    CHECK(wiener_tree(SpanningTree(1, {})) == 0);
    CHECK(wiener_tree(p4) == wiener_allpairs(p4));
    CHECK(wiener_tree(k13) == wiener_allpairs(k13));
}

TEST_CASE("wiener_tree matches all-pairs BFS on random trees up to n=10") {
    for (int n = 2; n <= 10; ++n) {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = gen_random_connected(n, 0.0, seed); // spanning-tree augmentation only
            REQUIRE(g.edge_count() == n - 1);
            SpanningTree t(n, g.edges());
            CHECK(wiener_tree(t) == wiener_allpairs(t));
        }
    }
}

TEST_CASE("edge contributions") {
    SpanningTree p4(4, {{0, 1}, {1, 2}, {2, 3}});
    CHECK(edge_contribution(p4, {1, 2}) == 4);
    SpanningTree k13(4, {{0, 1}, {0, 2}, {0, 3}});
    CHECK(edge_contribution(k13, {0, 2}) == 3);
    SpanningTree p5(5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}});
    CHECK(edge_contribution(p5, {1, 2}) == 6);
    CHECK_THROWS_AS(edge_contribution(p4, {0, 2}), EdgeNotInTree);

    SUBCASE("contributions sum to the Wiener index") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Graph g = gen_random_connected(9, 0.0, seed + 100);
            SpanningTree t(9, g.edges());
            std::uint64_t sum = 0;
            for (auto e : t.edges()) sum += edge_contribution(t, e);
            CHECK(sum == wiener_tree(t));
        }
    }
}

TEST_CASE("tree wiener dominates graph wiener") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        Graph g = gen_random_connected(8, 0.4, seed);
        SpanningTree t = bfs_spanning_tree(g, 0);
        CHECK(wiener_tree(t) >= wiener_graph(g));
    }
}

TEST_CASE("median vertices") {
    CHECK(median_vertices(path(3)) == std::vector<int>{1});
    CHECK(median_vertices(star(3)) == std::vector<int>{0});
    CHECK(median_vertices(complete(4)) == std::vector<int>{0, 1, 2, 3});

    SUBCASE("invariant under relabeling") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Graph g = gen_random_connected(7, 0.4, seed + 7);
            auto perm = random_permutation(7, seed);
            Graph h = relabel(g, perm);
            auto mg = median_vertices(g);
            auto mh = median_vertices(h);
            std::vector<int> mapped;
            for (int v : mg) mapped.push_back(perm[static_cast<std::size_t>(v)]);
            std::sort(mapped.begin(), mapped.end());
            CHECK(mapped == mh);
        }
    }
}

TEST_CASE("induced paths") {
    CHECK(is_induced_path(path(4), {0, 1, 2, 3}));
    CHECK_FALSE(is_induced_path(complete(3), {0, 1, 2}));
    CHECK_FALSE(is_induced_path(cycle(4), {0, 1, 2, 3}));
    CHECK_THROWS_AS(is_induced_path(path(4), {0, 2}), NotAPath);
    CHECK_THROWS_AS(is_induced_path(path(4), {0, 1, 0}), NotAPath);
}

TEST_CASE("shortest cycle") {
    CHECK_FALSE(shortest_cycle(path(5)).has_value());
    CHECK(shortest_cycle(cycle(5))->length() == 5);
    CHECK(shortest_cycle(complete(4))->length() == 3);

    SUBCASE("the reported vertices form a cycle of the reported length") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = gen_random_connected(8, 0.3, seed + 77);
            auto c = shortest_cycle(g);
            if (g.edge_count() == g.vertex_count() - 1) {
                CHECK_FALSE(c.has_value());
                continue;
            }
            REQUIRE(c.has_value());
            const auto& vs = c->vertices;
            REQUIRE(static_cast<int>(vs.size()) == c->length());
            for (std::size_t i = 0; i < vs.size(); ++i)
                CHECK(g.has_edge(vs[i], vs[(i + 1) % vs.size()]));
            std::vector<int> sorted = vs;
            std::sort(sorted.begin(), sorted.end());
            CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
        }
    }

    SUBCASE("none exactly when the connected graph is a tree") {
        for (std::uint64_t seed = 0; seed < 20; ++seed) {
            Graph g = gen_random_connected(7, 0.15, seed);
            CHECK(shortest_cycle(g).has_value() == (g.edge_count() > g.vertex_count() - 1));
        }
    }
}

TEST_CASE("spanning tree validation") {
    CHECK_THROWS_AS(SpanningTree(4, {{0, 1}, {1, 2}}), InvalidTree);                  // too few
    CHECK_THROWS_AS(SpanningTree(4, {{0, 1}, {1, 2}, {0, 2}}), InvalidTree);          // cycle
    CHECK_THROWS_AS(SpanningTree(4, {{0, 1}, {0, 1}, {2, 3}}), InvalidTree);          // duplicate
    SpanningTree t(4, {{2, 3}, {0, 1}, {1, 2}});
    CHECK(t.edges() == std::vector<Edge>{{0, 1}, {1, 2}, {2, 3}}); // normalized + sorted
    CHECK(spans(path(4), t));
    CHECK_FALSE(spans(star(3), t));
    CHECK(t.path(0, 3) == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("graph file round trip") {
    Graph g = cycle(4);
    std::ostringstream out;
    write_graph(out, g);
    CHECK(out.str() == "p edge 4 4\ne 1 2\ne 1 4\ne 2 3\ne 3 4\n");
    std::istringstream in(out.str());
    auto gf = read_graph(in);
    CHECK(gf.graph == g);
    CHECK_FALSE(gf.budget.has_value());

    SUBCASE("budget comments survive") {
        std::ostringstream out2;
        write_graph(out2, g, 42);
        std::istringstream in2(out2.str());
        CHECK(read_graph(in2).budget == 42);
    }
    SUBCASE("tree files carry their wiener index") {
        std::ostringstream out3;
        write_tree(out3, SpanningTree(4, {{0, 1}, {1, 2}, {2, 3}}));
        CHECK(out3.str().find("c wiener 10") != std::string::npos);
    }
    SUBCASE("parse errors carry diagnostics") {
        std::istringstream bad("p edge 2 1\ne 1 3\n");
        CHECK_THROWS_AS(read_graph(bad), ParseError);
        std::istringstream short_file("p edge 3 2\ne 1 2\n");
        CHECK_THROWS_AS(read_graph(short_file), ParseError);
        std::istringstream no_header("e 1 2\n");
        CHECK_THROWS_AS(read_graph(no_header), ParseError);
    }
}

TEST_CASE("dot emitter") {
    std::ostringstream out;
    write_dot(out, path(3));
    CHECK(out.str() == "graph {\n  0 -- 1;\n  1 -- 2;\n}\n");
}

TEST_CASE("checked arithmetic overflows loudly") {
    CHECK_THROWS_AS(checked_mul(UINT64_MAX, 2), Overflow);
    CHECK_THROWS_AS(checked_add(UINT64_MAX, 1), Overflow);
    CHECK(checked_mul(3, 4) == 12);
}
