#include <benchmark/benchmark.h>

#include "madst/above_guarantee.hpp"
#include "madst/instance_gen.hpp"
#include "madst/modular.hpp"
#include "madst/oracle.hpp"
#include "madst/treewidth_dp.hpp"
#include "madst/vertex_integrity.hpp"
#include "madst/wiener.hpp"

using namespace madst;

static void BM_WienerTree(benchmark::State& state) {
    Graph g = gen_partial_ktree(static_cast<int>(state.range(0)), 1, 0, 5);
    SpanningTree t(g.vertex_count(), g.edges());
    for (auto _ : state) benchmark::DoNotOptimize(wiener_tree(t));
}
BENCHMARK(BM_WienerTree)->Arg(100)->Arg(1000)->Arg(10000);

static void BM_OracleComplete(benchmark::State& state) {
    Graph g(static_cast<int>(state.range(0)));
    for (int i = 0; i < g.vertex_count(); ++i)
        for (int j = i + 1; j < g.vertex_count(); ++j) g.add_edge(i, j);
    for (auto _ : state) benchmark::DoNotOptimize(mad_tree_bruteforce(g).wiener);
}
BENCHMARK(BM_OracleComplete)->Arg(5)->Arg(6)->Arg(7);

static void BM_ModularCograph(benchmark::State& state) {
    auto cg = gen_cograph(static_cast<int>(state.range(0)), 99);
    for (auto _ : state) benchmark::DoNotOptimize(solve_modular(cg.graph, UINT64_MAX).wiener);
}
BENCHMARK(BM_ModularCograph)->Arg(50)->Arg(100)->Arg(200);

static void BM_TreewidthPartial2Tree(benchmark::State& state) {
    Graph g = gen_partial_ktree(static_cast<int>(state.range(0)), 2, 3, 7);
    for (auto _ : state) benchmark::DoNotOptimize(solve_treewidth(g, UINT64_MAX).wiener);
}
BENCHMARK(BM_TreewidthPartial2Tree)->Arg(12)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

static void BM_VertexIntegrityStarOfCliques(benchmark::State& state) {
    const int cliques = static_cast<int>(state.range(0));
    Graph g(1 + cliques * 3);
    for (int c = 0; c < cliques; ++c) {
        int base = 1 + 3 * c;
        g.add_edge(base, base + 1);
        g.add_edge(base, base + 2);
        g.add_edge(base + 1, base + 2);
        g.add_edge(0, base);
    }
    for (auto _ : state) benchmark::DoNotOptimize(solve_vertex_integrity(g, UINT64_MAX).wiener);
}
BENCHMARK(BM_VertexIntegrityStarOfCliques)->Arg(3)->Arg(5)->Unit(benchmark::kMillisecond);

static void BM_AboveGuarantee(benchmark::State& state) {
    Graph g = gen_partial_ktree(static_cast<int>(state.range(0)), 2, 0, 11);
    std::uint64_t w = wiener_graph(g);
    for (auto _ : state) benchmark::DoNotOptimize(solve_above(g, w + 4).yes);
}
BENCHMARK(BM_AboveGuarantee)->Arg(10)->Arg(14)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
