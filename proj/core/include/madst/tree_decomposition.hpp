#ifndef MADST_TREE_DECOMPOSITION_HPP
#define MADST_TREE_DECOMPOSITION_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "madst/graph.hpp"

namespace madst {

struct TreeDecomposition {
    int n = 0;                                  // vertex count of the decomposed graph
    std::vector<std::vector<int>> bags;         // sorted vertex lists
    std::vector<std::pair<int, int>> tree_edges; // over bag indices

    int width() const {
        int w = 0;
        for (const auto& b : bags) w = std::max(w, static_cast<int>(b.size()));
        return w - 1;
    }
};

/// Violations of the decomposition axioms, empty when valid.
std::vector<std::string> decomposition_violations(const Graph& g, const TreeDecomposition& td);

enum class EliminationRule { MinFill, MinDegree };

/// Valid decomposition from an elimination ordering; the width is heuristic.
TreeDecomposition heuristic_tree_decomposition(const Graph& g,
                                               EliminationRule rule = EliminationRule::MinFill);

enum class NodeKind { Leaf, Introduce, Forget, Join };

struct NiceNode {
    NodeKind kind;
    std::vector<int> bag;    // sorted
    int child = -1;          // first child (all but Leaf)
    int child2 = -1;         // second child (Join only)
    int vertex = -1;         // introduced/forgotten vertex
};

/// Rooted nice decomposition: children precede parents in `nodes`, the last
/// node is the root. Root and leaf bags have size 1; introduce/forget change
/// the bag by exactly one vertex; join children repeat the parent bag.
struct NiceTreeDecomposition {
    std::vector<NiceNode> nodes;
    int root() const { return static_cast<int>(nodes.size()) - 1; }
    int width() const {
        int w = 0;
        for (const auto& nd : nodes) w = std::max(w, static_cast<int>(nd.bag.size()));
        return w - 1;
    }
};

/// Expands td into a nice decomposition of the same width.
/// Throws InvalidDecomposition if td is not valid for g.
NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td);

// PACE-style format: `s td <#bags> <width+1> <n>`, bag lines
// `b <bag-id> <v1> <v2> ...` (1-based), then decomposition-tree edges `<i> <j>`.
TreeDecomposition read_tree_decomposition(std::istream& in);
TreeDecomposition read_tree_decomposition_file(const std::string& path);
void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td);

} // namespace madst

#endif
