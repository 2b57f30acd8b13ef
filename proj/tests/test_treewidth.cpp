#include <doctest.h>

#include "madst/instance_gen.hpp"
#include "madst/oracle.hpp"
#include "madst/tree_decomposition.hpp"
#include "madst/treewidth_dp.hpp"
#include "madst/wiener.hpp"

#include <sstream>

#include "test_util.hpp"

using namespace madst;
using namespace testutil;

namespace {

DpIndex make_index(int bag_size, std::vector<std::pair<int, int>> forest_edges,
                   std::vector<std::uint8_t> conns, std::vector<int> above, std::vector<int> below) {
    DpIndex idx;
    idx.bag_size = static_cast<std::uint8_t>(bag_size);
    for (auto [i, j] : forest_edges) idx.forest |= 1u << pair_bit(std::min(i, j), std::max(i, j));
    idx.connection_count = static_cast<std::uint8_t>(conns.size());
    std::sort(conns.begin(), conns.end());
    for (std::size_t i = 0; i < conns.size(); ++i) idx.connections[i] = conns[i];
    for (std::size_t i = 0; i < above.size(); ++i) idx.above[i] = static_cast<std::uint16_t>(above[i]);
    for (std::size_t i = 0; i < below.size(); ++i) idx.below[i] = static_cast<std::uint16_t>(below[i]);
    return idx;
}

} // namespace

TEST_CASE("heuristic decompositions") {
    SUBCASE("tree input gives width 1") {
        Graph t = gen_partial_ktree(9, 1, 0, 2);
        auto td = heuristic_tree_decomposition(t);
        CHECK(td.width() == 1);
        CHECK(decomposition_violations(t, td).empty());
    }
    SUBCASE("cycles give width 2") {
        for (int n = 4; n <= 9; ++n) {
            auto td = heuristic_tree_decomposition(cycle(n));
            CHECK(td.width() == 2);
            CHECK(decomposition_violations(cycle(n), td).empty());
        }
    }
    SUBCASE("K5 gives width 4") {
        auto td = heuristic_tree_decomposition(complete(5));
        CHECK(td.width() == 4);
        CHECK(decomposition_violations(complete(5), td).empty());
    }
    SUBCASE("both elimination rules yield valid decompositions") {
        for (std::uint64_t seed = 0; seed < 15; ++seed) {
            Graph g = gen_random_connected(9, 0.35, seed);
            for (auto rule : {EliminationRule::MinFill, EliminationRule::MinDegree})
                CHECK(decomposition_violations(g, heuristic_tree_decomposition(g, rule)).empty());
        }
    }
}

TEST_CASE("violation reporting") {
    TreeDecomposition td;
    td.n = 3;
    td.bags = {{0, 1}};
    CHECK_FALSE(decomposition_violations(path(3), td).empty()); // vertex 2 uncovered, edge 1-2 uncovered
    TreeDecomposition broken;
    broken.n = 3;
    broken.bags = {{0, 1}, {2}};
    broken.tree_edges = {{0, 1}};
    auto v = decomposition_violations(path(3), broken);
    CHECK_FALSE(v.empty()); // edge 1-2 in no bag
}

TEST_CASE("nice decomposition expansion") {
    SUBCASE("single bag becomes a leaf root") {
        Graph g(1);
        TreeDecomposition td;
        td.n = 1;
        td.bags = {{0}};
        auto nice = to_nice(g, td);
        CHECK(nice.nodes.size() == 1);
        CHECK(nice.nodes[0].kind == NodeKind::Leaf);
    }
    SUBCASE("single edge expands to leaf/introduce/forget") {
        Graph g = path(2);
        TreeDecomposition td;
        td.n = 2;
        td.bags = {{0, 1}};
        auto nice = to_nice(g, td);
        REQUIRE(nice.nodes.size() == 3);
        CHECK(nice.nodes[0].kind == NodeKind::Leaf);
        CHECK(nice.nodes[1].kind == NodeKind::Introduce);
        CHECK(nice.nodes[2].kind == NodeKind::Forget);
        CHECK(nice.nodes[2].bag.size() == 1);
    }
    SUBCASE("bag paths interleave forgets and introduces without joins") {
        Graph g = path(4);
        TreeDecomposition td;
        td.n = 4;
        td.bags = {{0, 1}, {1, 2}, {2, 3}};
        td.tree_edges = {{0, 1}, {1, 2}};
        auto nice = to_nice(g, td);
        for (const auto& node : nice.nodes) CHECK(node.kind != NodeKind::Join);
        CHECK(nice.nodes.back().bag.size() == 1);
    }
    SUBCASE("structural rules hold on heuristic decompositions") {
        for (std::uint64_t seed = 0; seed < 10; ++seed) {
            Graph g = gen_random_connected(9, 0.3, seed + 1);
            auto nice = to_nice(g, heuristic_tree_decomposition(g));
            CHECK(nice.nodes.back().bag.size() == 1);
            for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
                const auto& node = nice.nodes[i];
                switch (node.kind) {
                    case NodeKind::Leaf:
                        CHECK(node.bag.size() == 1);
                        break;
                    case NodeKind::Introduce:
                        CHECK(node.bag.size() == nice.nodes[node.child].bag.size() + 1);
                        break;
                    case NodeKind::Forget:
                        CHECK(node.bag.size() == nice.nodes[node.child].bag.size() - 1);
                        break;
                    case NodeKind::Join:
                        CHECK(nice.nodes[node.child].bag == node.bag);
                        CHECK(nice.nodes[node.child2].bag == node.bag);
                        break;
                }
                CHECK((node.child == -1 || node.child < static_cast<int>(i)));
            }
        }
    }
}

TEST_CASE("star conditions on indices") {
    // forest must be acyclic
    DpIndex cyclic = make_index(3, {{0, 1}, {1, 2}, {0, 2}}, {}, {0, 0, 0}, {0, 0, 0});
    CHECK_FALSE(dp_index_feasible(cyclic, 3));
    // component masses must hit n
    DpIndex good = make_index(2, {{0, 1}}, {}, {1, 0}, {0, 1});
    CHECK(dp_index_feasible(good, 4));
    DpIndex bad_mass = make_index(2, {{0, 1}}, {}, {1, 0}, {0, 0});
    CHECK_FALSE(dp_index_feasible(bad_mass, 4));
    // a connection may touch each forest component only once
    DpIndex conn_twice = make_index(3, {{0, 1}}, {0b011}, {1, 0, 2}, {0, 1, 0});
    CHECK_FALSE(dp_index_feasible(conn_twice, 4));
    // two connections through the same pair of components cycle
    DpIndex conn_cycle = make_index(2, {}, {0b11, 0b11}, {3, 3}, {0, 0});
    CHECK_FALSE(dp_index_feasible(conn_cycle, 4));
}

TEST_CASE("leaf tables") {
    NiceNode leaf{NodeKind::Leaf, {0}, -1, -1, 0};
    SUBCASE("n=1") {
        auto t = process_leaf(leaf, 1);
        DpIndex want = make_index(1, {}, {}, {0}, {0});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 0);
        CHECK(t.entries.size() == 1);
    }
    SUBCASE("n=4 pins abov to n-1") {
        auto t = process_leaf(leaf, 4);
        DpIndex want = make_index(1, {}, {}, {3}, {0});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.size() == 1); // every other index stays infinite
    }
}

TEST_CASE("introduce tables") {
    const int n = 16;
    Graph g(n);
    g.add_edge(0, 1); // the only edge that matters for the bag {0,1}
    NodeTable child;
    child.bag = {1};
    NiceNode node{NodeKind::Introduce, {0, 1}, 0, -1, 0};

    SUBCASE("isolated introduce copies the entry") {
        child.entries.emplace(make_index(1, {}, {}, {15}, {0}), 7);
        auto t = process_introduce(g, node, child, n);
        DpIndex isolated = make_index(2, {}, {}, {15, 15}, {0, 0});
        REQUIRE(t.entries.count(isolated) == 1);
        CHECK(t.entries.at(isolated) == 7);
    }
    SUBCASE("attaching shifts the mass of u's side off abov(v)") {
        // Child sees 14 vertices above v; in the parent 13 of them sit above u
        // and the edge uv enters the forest, leaving abov(v)=0.
        child.entries.emplace(make_index(1, {}, {}, {14}, {1}), 3);
        auto t = process_introduce(g, node, child, n);
        DpIndex attached = make_index(2, {{0, 1}}, {}, {13, 0}, {0, 1});
        REQUIRE(t.entries.count(attached) == 1);
        CHECK(t.entries.at(attached) == 3);
        // below(u) != 0 never appears
        for (const auto& [idx, cost] : t.entries) CHECK(idx.below[0] == 0);
    }
}

TEST_CASE("join tables") {
    NiceNode node{NodeKind::Join, {0}, 0, 1, -1};
    SUBCASE("identity join against the leaf-like configuration") {
        const int n = 5;
        NodeTable left, right;
        left.bag = right.bag = {0};
        left.entries.emplace(make_index(1, {}, {}, {2}, {2}), 9);
        right.entries.emplace(make_index(1, {}, {}, {4}, {0}), 0); // nothing below on the right
        auto t = process_join(node, left, right);
        DpIndex want = make_index(1, {}, {}, {2}, {2});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 9);
        CHECK(n == 5);
    }
    SUBCASE("below counts add across the children") {
        const int n = 10;
        NodeTable left, right;
        left.bag = right.bag = {0};
        left.entries.emplace(make_index(1, {}, {}, {7, 0}, {2, 0}), 4);
        right.entries.emplace(make_index(1, {}, {}, {8, 0}, {1, 0}), 5);
        auto t = process_join(node, left, right);
        DpIndex want = make_index(1, {}, {}, {6}, {3});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 9);
        CHECK(n == 10);
    }
    SUBCASE("below connections split disjointly") {
        NiceNode node2{NodeKind::Join, {0, 1}, 0, 1, -1};
        NodeTable left, right;
        left.bag = right.bag = {0, 1};
        // n = 6; both vertices isolated in F, masses 6 each.
        left.entries.emplace(make_index(2, {}, {0b11}, {2, 1}, {3, 4}), 2);
        right.entries.emplace(make_index(2, {}, {}, {5, 5}, {0, 0}), 1);
        auto t = process_join(node2, left, right);
        DpIndex want = make_index(2, {}, {0b11}, {2, 1}, {3, 4});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 3);
        // identical connections on both sides must not pair up
        NodeTable right2;
        right2.bag = {0, 1};
        right2.entries.emplace(make_index(2, {}, {0b11}, {2, 1}, {3, 4}), 1);
        auto t2 = process_join(node2, left, right2);
        CHECK(t2.entries.empty());
    }
}

TEST_CASE("forget tables") {
    SUBCASE("P2: forgetting a degree-1 vertex pays (i+1)(n-i-1) with i=0") {
        const int n = 2;
        Graph g = path(2);
        NodeTable child;
        child.bag = {0, 1};
        child.entries.emplace(make_index(2, {{0, 1}}, {}, {0, 0}, {0, 0}), 0);
        NiceNode node{NodeKind::Forget, {1}, 0, -1, 0};
        auto t = process_forget(g, node, child, n);
        DpIndex want = make_index(1, {}, {}, {0}, {1});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 1); // 1 * (2-1)
    }
    SUBCASE("two vertices below u make the edge cost 3(n-3)") {
        const int n = 10;
        Graph g(n);
        g.add_edge(0, 1);
        NodeTable child;
        child.bag = {0, 1};
        // comp {u,v}: (1+0+2) + (1+a_v+b_v) = 10 -> a_v + b_v = 6
        child.entries.emplace(make_index(2, {{0, 1}}, {}, {0, 4}, {2, 2}), 11);
        NiceNode node{NodeKind::Forget, {1}, 0, -1, 0};
        auto t = process_forget(g, node, child, n);
        DpIndex want = make_index(1, {}, {}, {4}, {5}); // below(v) grows by i+1 = 3
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 11 + 3 * (n - 3));
    }
    SUBCASE("a single size-2 connection dissolves for free") {
        const int n = 4;
        Graph g(n);
        NodeTable child;
        child.bag = {0, 1};
        child.entries.emplace(make_index(2, {}, {0b11}, {0, 1}, {3, 2}), 6);
        NiceNode node{NodeKind::Forget, {1}, 0, -1, 0};
        auto t = process_forget(g, node, child, n);
        DpIndex want = make_index(1, {}, {}, {1}, {2});
        REQUIRE(t.entries.count(want) == 1);
        CHECK(t.entries.at(want) == 6);
    }
    SUBCASE("edges and connections fuse into one below connection") {
        // Bag {u,v,w,x,y,z} as positions {0..5}; F = {u-y, u-z};
        // connections {v,w,u} and {x,u}. Forgetting u leaves {v,w,x,y,z}.
        const int n = 12;
        Graph g(n);
        g.add_edge(0, 4);
        g.add_edge(0, 5);
        NodeTable child;
        child.bag = {0, 1, 2, 3, 4, 5};
        DpIndex cidx = make_index(6, {{0, 4}, {0, 5}}, {0b000111, 0b001001},
                                  {0, 8, 9, 10, 4, 4}, {0, 3, 2, 1, 0, 1});
        REQUIRE(dp_index_feasible(cidx, n));
        child.entries.emplace(cidx, 100);
        NiceNode node{NodeKind::Forget, {1, 2, 3, 4, 5}, 0, -1, 0};
        auto t = process_forget(g, node, child, n);
        // Parent positions shift down by one; the fused connection covers all.
        DpIndex want = make_index(5, {}, {0b11111}, {8, 9, 10, 4, 4}, {3, 2, 1, 7, 7});
        REQUIRE(t.entries.count(want) == 1);
        // M_y = 1+4+0 = 5 and M_z = 1+4+1 = 6: cost 5*7 + 6*6 = 71.
        CHECK(t.entries.at(want) == 171);
    }
}

TEST_CASE("treewidth solve examples") {
    CHECK(solve_treewidth(cycle(4), 10).wiener == 10);
    CHECK(solve_treewidth(cycle(4), 10).yes);
    CHECK(solve_treewidth(path(5), UINT64_MAX).wiener == 20);
    CHECK(solve_treewidth(complete(4), 8).wiener == 9);
    CHECK_FALSE(solve_treewidth(complete(4), 8).yes);
    CHECK(solve_treewidth(Graph(1), 0).wiener == 0);
    Graph disconnected(3);
    disconnected.add_edge(0, 1);
    CHECK_THROWS_AS(solve_treewidth(disconnected, 10), DisconnectedGraph);
}

TEST_CASE("treewidth agrees with the oracle") {
    SUBCASE("random connected graphs up to n=7") {
        for (std::uint64_t seed = 0; seed < 30; ++seed) {
            int n = 4 + static_cast<int>(seed % 4);
            Graph g = gen_random_connected(n, 0.45, seed + 13);
            auto oracle = mad_tree_bruteforce(g);
            CHECK(solve_treewidth(g, oracle.wiener).wiener == oracle.wiener);
        }
    }
    SUBCASE("partial 2- and 3-trees up to n=10") {
        for (std::uint64_t seed = 0; seed < 16; ++seed) {
            int k = 2 + static_cast<int>(seed % 2);
            Graph g = gen_partial_ktree(8 + static_cast<int>(seed % 3), k, 2, seed + 21);
            auto oracle = mad_tree_bruteforce(g);
            CHECK(solve_treewidth(g, UINT64_MAX).wiener == oracle.wiener);
        }
    }
}

TEST_CASE("decomposition independence") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gen_random_connected(8, 0.35, seed + 31);
        auto a = heuristic_tree_decomposition(g, EliminationRule::MinFill);
        auto b = heuristic_tree_decomposition(g, EliminationRule::MinDegree);
        CHECK(solve_treewidth(g, UINT64_MAX, a).wiener == solve_treewidth(g, UINT64_MAX, b).wiener);
    }
}

TEST_CASE("supplied decompositions take precedence") {
    Graph g = cycle(4);
    TreeDecomposition td;
    td.n = 4;
    td.bags = {{0, 1, 2}, {0, 2, 3}};
    td.tree_edges = {{0, 1}};
    CHECK(decomposition_violations(g, td).empty());
    CHECK(solve_treewidth(g, UINT64_MAX, td).wiener == 10);
    TreeDecomposition bad;
    bad.n = 4;
    bad.bags = {{0, 1}, {2, 3}};
    bad.tree_edges = {{0, 1}};
    CHECK_THROWS_AS(solve_treewidth(g, UINT64_MAX, bad), InvalidDecomposition);
}

TEST_CASE("every stored index satisfies the star conditions and stays below the optimum") {
    Graph g = gen_partial_ktree(7, 2, 1, 5);
    const int n = g.vertex_count();
    auto oracle = mad_tree_bruteforce(g);
    auto nice = to_nice(g, heuristic_tree_decomposition(g));
    std::vector<NodeTable> tables(nice.nodes.size());
    for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
        const auto& node = nice.nodes[i];
        switch (node.kind) {
            case NodeKind::Leaf: tables[i] = process_leaf(node, n); break;
            case NodeKind::Introduce: tables[i] = process_introduce(g, node, tables[node.child], n); break;
            case NodeKind::Forget: tables[i] = process_forget(g, node, tables[node.child], n); break;
            case NodeKind::Join: tables[i] = process_join(node, tables[node.child], tables[node.child2]); break;
        }
        REQUIRE_FALSE(tables[i].entries.empty());
        std::uint64_t least = UINT64_MAX;
        for (const auto& [idx, cost] : tables[i].entries) {
            CHECK(dp_index_feasible(idx, n));
            least = std::min(least, cost);
        }
        CHECK(least <= oracle.wiener); // the optimal tree's entry survives everywhere
    }
    DpIndex root = make_index(1, {}, {}, {0}, {n - 1});
    CHECK(tables.back().entries.at(root) == oracle.wiener);
}

TEST_CASE("pace format round trip") {
    Graph g = gen_random_connected(7, 0.4, 3);
    auto td = heuristic_tree_decomposition(g);
    std::ostringstream out;
    write_tree_decomposition(out, td);
    std::istringstream in(out.str());
    auto back = read_tree_decomposition(in);
    CHECK(back.n == td.n);
    CHECK(back.bags == td.bags);
    CHECK(back.tree_edges == td.tree_edges);
    std::istringstream bad("s td 1 2\n");
    CHECK_THROWS_AS(read_tree_decomposition(bad), ParseError);
}
