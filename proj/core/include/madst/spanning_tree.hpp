#ifndef MADST_SPANNING_TREE_HPP
#define MADST_SPANNING_TREE_HPP

#include <vector>

#include "madst/graph.hpp"

namespace madst {

/// A tree on vertices 0..n-1, stored as a normalized sorted edge list plus
/// adjacency. Construction validates the tree invariants (n-1 edges, acyclic,
/// connected) and throws InvalidTree otherwise. Whether the tree spans a given
/// host graph is a separate check (spans()).
class SpanningTree {
public:
    SpanningTree(int n, std::vector<Edge> edges);

    int vertex_count() const { return n_; }
    const std::vector<Edge>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const;
    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }
    bool has_edge(int u, int v) const;

    /// The tree viewed as a Graph.
    Graph as_graph() const { return Graph::from_edges(n_, edges_); }

    /// Unique u-v path, endpoints included.
    std::vector<int> path(int u, int v) const;

    /// Lexicographic comparison on (vertex count, sorted edge list); used for
    /// deterministic tie-breaking among co-optimal trees.
    bool operator<(const SpanningTree& other) const {
        if (n_ != other.n_) return n_ < other.n_;
        return edges_ < other.edges_;
    }
    bool operator==(const SpanningTree& other) const = default;

private:
    int n_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::vector<int>> adj_;
};

/// True iff every edge of t is an edge of g (t spans g when vertex counts match).
bool spans(const Graph& g, const SpanningTree& t);

/// BFS tree from root; a cheap spanning tree for upper bounds.
SpanningTree bfs_spanning_tree(const Graph& g, int root);

} // namespace madst

#endif
