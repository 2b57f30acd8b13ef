#ifndef MADST_INSTANCE_GEN_HPP
#define MADST_INSTANCE_GEN_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "madst/graph.hpp"

namespace madst {

/// Exact Cover by 3-Sets: universe {1..3q}, collection of size-three subsets.
struct X3CInstance {
    int q = 0;                                // universe size is 3q
    std::vector<std::array<int, 3>> sets;     // 1-based element ids, each sorted

    int universe_size() const { return 3 * q; }
    int set_count() const { return static_cast<int>(sets.size()); }
};

/// Split-graph instance produced by the X3C reduction, with its exact budget.
/// Vertex layout: elements x_1..x_3q are ids 0..3q-1, sets C_1..C_s follow.
struct ReducedInstance {
    Graph graph;
    std::uint64_t budget = 0;
    int q = 0;
    int s = 0;
    std::uint64_t d_cc = 0, d_cx = 0, d_xx = 0;

    int element_vertex(int i) const { return i - 1; }          // 1-based element
    int set_vertex(int j) const { return 3 * q + (j - 1); }    // 1-based set
};

/// Builds the split graph (set side a clique, element side independent,
/// membership edges across) and the budget b = D_CC + D_CX + D_XX.
/// Throws InvalidX3C when some element appears in no set (G would be
/// disconnected) or the instance is malformed.
ReducedInstance reduce_x3c(const X3CInstance& x);

/// Decision by exhaustive search over q-subsets of the collection.
/// Intended for validation at 3q+s <= 12; guarded by universe size.
bool x3c_decide_bruteforce(const X3CInstance& x);

/// Reproducible X3C generator. Planted instances embed a disjoint exact cover
/// (always yes); unconstrained ones only guarantee coverage of the universe.
/// max_occurrences, when positive, caps how often an element may appear.
X3CInstance gen_x3c(int q, int s, std::uint64_t seed, bool planted = true,
                    int max_occurrences = 0);

// X3C file format: line 1 `x3c <3q> <s>`, then s lines of three 1-based ids.
X3CInstance read_x3c(std::istream& in);
void write_x3c(std::ostream& out, const X3CInstance& x);

// Random families matched to the solvers' parameters. All are seed-deterministic
// and guaranteed connected.

Graph gen_random_connected(int n, double p, std::uint64_t seed);

struct CographResult {
    Graph graph;
    std::string cotree; // nested (u ...)/(j ...) term over leaf ids
};

/// Random cograph; the cotree root is a join so the result is connected.
CographResult gen_cograph(int n, std::uint64_t seed);

/// Random k-tree on n vertices with `extra_removals` non-bridge edges removed.
Graph gen_partial_ktree(int n, int k, int extra_removals, std::uint64_t seed);

/// Random split graph: clique + independent set, cross edges with probability p,
/// each independent vertex forced at least one neighbor.
Graph gen_split(int n_clique, int n_ind, double p, std::uint64_t seed);

} // namespace madst

#endif
