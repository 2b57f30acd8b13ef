#ifndef MADST_ABOVE_GUARANTEE_HPP
#define MADST_ABOVE_GUARANTEE_HPP

#include <cstdint>
#include <optional>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

struct AboveResult {
    bool yes = false;
    std::optional<SpanningTree> witness; // present on yes, with W(witness) <= budget
    int max_depth = 0;                   // instrumentation: deepest branching level
};

/// Branching on shortest cycles with slack k = budget - W(current graph):
/// a tree answers directly, a cycle longer than k+2 refutes, otherwise branch
/// on deleting each cycle edge. Visited edge subsets are memoized. The
/// branching depth never exceeds the root slack (checked internally).
AboveResult solve_above(const Graph& g, std::uint64_t budget);

} // namespace madst

#endif
