// Scratch probe (not part of the suite): timing/robustness sweeps beyond the
// acceptance sizes.
#include <chrono>
#include <iostream>

#include "madst/instance_gen.hpp"
#include "madst/modular.hpp"
#include "madst/oracle.hpp"
#include "madst/treewidth_dp.hpp"
#include "madst/vertex_integrity.hpp"
#include "madst/wiener.hpp"

using namespace madst;
using Clock = std::chrono::steady_clock;

int main() {
    for (int n : {40, 60, 80}) {
        auto t0 = Clock::now();
        Graph g = gen_partial_ktree(n, 2, 6, 999 + static_cast<std::uint64_t>(n));
        auto r = solve_treewidth(g, UINT64_MAX);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << "tw partial-2-tree n=" << n << " W=" << r.wiener << " in " << secs << " s\n";
    }
    for (int n : {30, 40}) {
        auto t0 = Clock::now();
        Graph g = gen_partial_ktree(n, 3, 4, 555 + static_cast<std::uint64_t>(n));
        auto r = solve_treewidth(g, UINT64_MAX);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << "tw partial-3-tree n=" << n << " W=" << r.wiener << " in " << secs << " s\n";
    }
    {
        auto t0 = Clock::now();
        auto cg = gen_cograph(400, 31);
        auto r = solve_modular(cg.graph, UINT64_MAX);
        double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        std::cout << "modular cograph n=400 W=" << r.wiener << " in " << secs << " s\n";
    }
    // dense n=8: treewidth with full-size bags
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gen_random_connected(8, 0.8, seed);
        auto oracle = mad_tree_bruteforce(g);
        auto tw = solve_treewidth(g, UINT64_MAX);
        if (tw.wiener != oracle.wiener) {
            std::cout << "MISMATCH dense n=8 seed " << seed << ": " << tw.wiener << " vs " << oracle.wiener
                      << "\n";
            return 1;
        }
    }
    std::cout << "dense n=8 treewidth sweep ok\n";
    // modular on dense n=8
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        Graph g = gen_random_connected(8, 0.75, seed + 20);
        auto oracle = mad_tree_bruteforce(g);
        auto m = solve_modular(g, UINT64_MAX);
        if (m.wiener != oracle.wiener) {
            std::cout << "MISMATCH modular dense n=8 seed " << seed << "\n";
            return 1;
        }
    }
    std::cout << "dense n=8 modular sweep ok\n";
    return 0;
}
