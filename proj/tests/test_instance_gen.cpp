#include <doctest.h>

#include "madst/instance_gen.hpp"
#include "madst/oracle.hpp"
#include "madst/wiener.hpp"

#include <set>
#include <sstream>

#include "test_util.hpp"

using namespace madst;
using namespace testutil;

TEST_CASE("x3c reduction budgets") {
    SUBCASE("q=1 s=1 gives the claw with budget 9") {
        X3CInstance x{1, {{{1, 2, 3}}}};
        auto r = reduce_x3c(x);
        CHECK(r.graph.vertex_count() == 4);
        CHECK(r.d_cc == 0);
        CHECK(r.d_cx == 3);
        CHECK(r.d_xx == 6);
        CHECK(r.budget == 9);
        // K_{1,3}: its unique spanning tree is itself, W = 9 -> yes-instance.
        auto opt = mad_tree_bruteforce(r.graph);
        CHECK(opt.wiener == 9);
        CHECK(opt.wiener <= r.budget);
    }
    SUBCASE("q=1 s=2 duplicated triple") {
        X3CInstance x{1, {{{1, 2, 3}}, {{1, 2, 3}}}};
        auto r = reduce_x3c(x);
        CHECK(r.budget == 1 + 9 + 6); // (s-1)^2 + 3(1+2(s-1)) + 6
        CHECK(mad_tree_bruteforce(r.graph).wiener <= r.budget);
    }
    SUBCASE("q=2 s=2 disjoint triples: optimum hits the budget exactly") {
        X3CInstance x{2, {{{1, 2, 3}}, {{4, 5, 6}}}};
        auto r = reduce_x3c(x);
        CHECK(mad_tree_bruteforce(r.graph).wiener == r.budget);
    }
    SUBCASE("uncovered element is rejected") {
        X3CInstance x{2, {{{1, 2, 3}}}}; // elements 4..6 uncovered
        CHECK_THROWS_AS(reduce_x3c(x), InvalidX3C);
    }
}

TEST_CASE("reduced graphs are split graphs") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto x = gen_x3c(2, 4, seed, true);
        auto r = reduce_x3c(x);
        // set-side clique
        for (int j = 1; j <= r.s; ++j)
            for (int j2 = j + 1; j2 <= r.s; ++j2) CHECK(r.graph.has_edge(r.set_vertex(j), r.set_vertex(j2)));
        // element side independent
        for (int i = 1; i <= 3 * r.q; ++i)
            for (int i2 = i + 1; i2 <= 3 * r.q; ++i2)
                CHECK_FALSE(r.graph.has_edge(r.element_vertex(i), r.element_vertex(i2)));
        // membership edges only
        for (int i = 1; i <= 3 * r.q; ++i)
            for (int j = 1; j <= r.s; ++j) {
                bool member = false;
                for (int e : x.sets[static_cast<std::size_t>(j - 1)]) member = member || (e == i);
                CHECK(r.graph.has_edge(r.element_vertex(i), r.set_vertex(j)) == member);
            }
    }
}

TEST_CASE("x3c brute force") {
    CHECK(x3c_decide_bruteforce({1, {{{1, 2, 3}}}}));
    CHECK(x3c_decide_bruteforce({2, {{{1, 2, 3}}, {{4, 5, 6}}}}));
    CHECK_FALSE(x3c_decide_bruteforce({2, {{{1, 2, 3}}, {{3, 4, 5}}}})); // 6 never covered exactly
    CHECK(x3c_decide_bruteforce({2, {{{1, 2, 3}}, {{3, 4, 5}}, {{4, 5, 6}}}}));
}

TEST_CASE("x3c generator") {
    SUBCASE("planted instances contain a disjoint cover") {
        for (std::uint64_t seed = 0; seed < 12; ++seed) {
            auto x = gen_x3c(2, 3, seed, true);
            CHECK(x.set_count() == 3);
            CHECK(x3c_decide_bruteforce(x));
        }
    }
    SUBCASE("q=1 s=1 covers the universe") {
        auto x = gen_x3c(1, 1, 5, true);
        CHECK(x.sets[0] == std::array<int, 3>{1, 2, 3});
    }
    SUBCASE("same seed, same instance") {
        auto a = gen_x3c(3, 5, 99, true);
        auto b = gen_x3c(3, 5, 99, true);
        CHECK(a.sets == b.sets);
        auto c = gen_x3c(3, 5, 100, true);
        CHECK(a.sets != c.sets); // overwhelmingly likely
    }
    SUBCASE("occurrence cap is honored") {
        auto x = gen_x3c(3, 6, 3, true, 3);
        std::vector<int> occ(10, 0);
        for (const auto& set : x.sets)
            for (int e : set) ++occ[static_cast<std::size_t>(e)];
        for (int e = 1; e <= 9; ++e) CHECK(occ[static_cast<std::size_t>(e)] <= 3);
    }
    SUBCASE("file format round trip") {
        auto x = gen_x3c(2, 4, 7, true);
        std::ostringstream out;
        write_x3c(out, x);
        std::istringstream in(out.str());
        auto y = read_x3c(in);
        CHECK(x.q == y.q);
        CHECK(x.sets == y.sets);
    }
}

TEST_CASE("reduction equivalence on small instances") {
    // Oracle decision on (G, b) must match the X3C brute force.
    int checked = 0;
    const std::vector<std::pair<int, int>> shapes{{2, 2}, {2, 3}, {2, 4}, {3, 3}};
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        auto [q, s] = shapes[static_cast<std::size_t>(seed) % shapes.size()];
        auto x = gen_x3c(q, s, seed, seed % 2 == 0);
        auto r = reduce_x3c(x);
        bool graph_yes = mad_tree_bruteforce(r.graph).wiener <= r.budget;
        CHECK(graph_yes == x3c_decide_bruteforce(x));
        ++checked;
    }
    CHECK(checked >= 10);
}

TEST_CASE("random graph generators") {
    CHECK(gen_random_connected(5, 1.0, 1) == complete(5));
    CHECK(gen_cograph(1, 3).graph.vertex_count() == 1);
    Graph t = gen_partial_ktree(9, 1, 0, 4);
    CHECK(t.edge_count() == 8); // 1-trees are trees
    CHECK(is_connected(t));

    SUBCASE("all families are connected and reproducible") {
        for (std::uint64_t seed = 0; seed < 8; ++seed) {
            auto a = gen_random_connected(9, 0.2, seed);
            CHECK(is_connected(a));
            CHECK(a == gen_random_connected(9, 0.2, seed));
            auto c = gen_cograph(12, seed);
            CHECK(is_connected(c.graph));
            CHECK(c.graph == gen_cograph(12, seed).graph);
            CHECK_FALSE(c.cotree.empty());
            auto k = gen_partial_ktree(12, 3, 4, seed);
            CHECK(is_connected(k));
            CHECK(k == gen_partial_ktree(12, 3, 4, seed));
            auto sp = gen_split(4, 5, 0.3, seed);
            CHECK(is_connected(sp));
        }
    }
    SUBCASE("split generator builds a clique plus an independent set") {
        auto sp = gen_split(4, 5, 0.5, 9);
        for (int i = 0; i < 4; ++i)
            for (int j = i + 1; j < 4; ++j) CHECK(sp.has_edge(i, j));
        for (int i = 4; i < 9; ++i)
            for (int j = i + 1; j < 9; ++j) CHECK_FALSE(sp.has_edge(i, j));
    }
    SUBCASE("bad parameters are rejected") {
        CHECK_THROWS_AS(gen_random_connected(0, 0.5, 1), InfeasibleParameters);
        CHECK_THROWS_AS(gen_random_connected(5, 1.5, 1), InfeasibleParameters);
        CHECK_THROWS_AS(gen_x3c(2, 1, 1, true), InfeasibleParameters); // planted needs s >= q
        CHECK_THROWS_AS(gen_partial_ktree(5, 0, 0, 1), InfeasibleParameters);
    }
}
