#ifndef MADST_MODULAR_HPP
#define MADST_MODULAR_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

/// Partition of V into k >= 2 modules: every member of a module sees the same
/// neighborhood outside it.
struct ModularPartition {
    std::vector<std::vector<int>> modules; // sorted members, sorted by first member
    std::vector<int> module_of;            // vertex -> module index

    int module_count() const { return static_cast<int>(modules.size()); }
};

/// Quotient graph over module indices: q_i ~ q_j iff the modules are adjacent.
struct QuotientGraph {
    Graph graph; // on module_count() vertices
    int module_count() const { return graph.vertex_count(); }
};

/// A modular partition with the minimum number of modules, via partition
/// refinement on strong-module closures (polynomial, not the linear-time
/// decomposition). Requires g connected and n >= 2.
ModularPartition modular_partition(const Graph& g);

/// Validates p against g and builds the quotient. Throws InvalidPartition.
QuotientGraph quotient(const Graph& g, const ModularPartition& p);

/// Every spanning tree of q that contains all edges incident to module i,
/// each exactly once. Implemented by force-including the star and enumerating
/// spanning trees of the contracted multigraph.
void quotient_trees_with_root_star(const QuotientGraph& q, int i,
                                   const std::function<bool(const std::vector<Edge>&)>& visit);

enum class DesignatedRule { SmallestId, MaxDegree };

/// Assembles the poly-star for one (root module, root vertex, quotient tree)
/// choice: quotient-tree edges realized on designated vertices, non-root
/// leaves attached toward the root module, the root keeping its whole
/// G-neighborhood, and the remaining root-module vertices attached to the
/// closest designated neighbor of the root. Throws InvalidPlan when the
/// preconditions fail (root not max-degree in its module, or the quotient tree
/// missing part of the root star).
SpanningTree build_poly_star(const Graph& g, const ModularPartition& p, const QuotientGraph& q,
                             const std::vector<Edge>& quotient_tree, int root_module, int root_vertex,
                             DesignatedRule rule = DesignatedRule::SmallestId);

struct ModularResult {
    bool yes = false;
    std::uint64_t wiener = 0;
    std::optional<SpanningTree> tree;
};

struct ModularOptions {
    DesignatedRule rule = DesignatedRule::SmallestId;
    int threads = 1;
};

/// Exact optimum over all root modules, max-degree roots and admissible
/// quotient trees; answer = (W <= budget). Deterministic tie-break on
/// (W, sorted edge list) regardless of thread count.
ModularResult solve_modular(const Graph& g, std::uint64_t budget, ModularOptions options = {});

/// Both rewirings of the subtree-repositioning lemma: all of V_b moved to a
/// (T_1) and all of V_a moved to b (T_2). Hypotheses: a,b adjacent to every
/// vertex of V_a and V_b in g, V_a in N_T(a), V_b in N_T(b), and the a-b tree
/// path avoiding V_a and V_b. Throws HypothesisViolated otherwise. For an
/// optimal T the lemma guarantees min(W(T_1), W(T_2)) < W(T) is impossible,
/// which is what the property tests check.
std::pair<SpanningTree, SpanningTree> reposition_subtrees(const SpanningTree& t, int a, int b,
                                                          const std::vector<int>& v_a,
                                                          const std::vector<int>& v_b,
                                                          const Graph& g);

} // namespace madst

#endif
