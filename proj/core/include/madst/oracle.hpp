#ifndef MADST_ORACLE_HPP
#define MADST_ORACLE_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

/// Default guard for the exhaustive oracle; spanning-tree counts explode, so
/// callers must override deliberately (CLI: MADST_MAX_ORACLE_N).
inline constexpr int kDefaultOracleVertexLimit = 16;

/// Enumerates every spanning edge subset of a multigraph given as an explicit
/// edge list (parallel edges are distinct by index). Deletion/contraction
/// recursion with bridge shortcutting; each spanning tree is visited exactly
/// once, as the list of chosen edge indices. Return false from the callback to
/// stop early. Vertices that are isolated in the edge list must not exist
/// (the caller passes a connected multigraph).
void enumerate_spanning_edge_subsets(int n, const std::vector<Edge>& medges,
                                     const std::function<bool(const std::vector<int>&)>& visit);

/// Yields every spanning tree of g exactly once. Throws DisconnectedGraph, and
/// TooLarge when g has more than vertex_limit vertices.
void enumerate_spanning_trees(const Graph& g,
                              const std::function<bool(const SpanningTree&)>& visit,
                              int vertex_limit = kDefaultOracleVertexLimit);

/// Kirchhoff count: exact integer fraction-free (Bareiss) elimination of a
/// Laplacian cofactor. Cross-checks the enumeration.
std::uint64_t count_spanning_trees(const Graph& g, int vertex_limit = kDefaultOracleVertexLimit);

struct OracleResult {
    SpanningTree tree;
    std::uint64_t wiener;
};

/// Exhaustive ground truth: a spanning tree of minimum Wiener index. Ties are
/// broken by the lexicographically smallest sorted edge list.
OracleResult mad_tree_bruteforce(const Graph& g, int vertex_limit = kDefaultOracleVertexLimit);

} // namespace madst

#endif
