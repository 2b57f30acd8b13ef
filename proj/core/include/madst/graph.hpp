#ifndef MADST_GRAPH_HPP
#define MADST_GRAPH_HPP

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "madst/errors.hpp"

namespace madst {

using Vertex = int;
using Edge = std::pair<int, int>; // normalized: first < second

inline Edge make_edge(int u, int v) { return u < v ? Edge{u, v} : Edge{v, u}; }

/// Marker for unreachable vertices in a DistanceProfile.
inline constexpr int kUnreachable = -1;

/// Simple undirected graph on dense vertex ids 0..n-1 with sorted adjacency lists.
class Graph {
public:
    Graph() = default;
    explicit Graph(int n) : adj_(static_cast<std::size_t>(n)) {
        if (n < 0) throw Error("negative vertex count");
    }

    static Graph from_edges(int n, const std::vector<Edge>& edges) {
        Graph g(n);
        for (auto [u, v] : edges) g.add_edge(u, v);
        return g;
    }

    int vertex_count() const { return static_cast<int>(adj_.size()); }
    int edge_count() const { return m_; }

    /// Inserts the edge uv. Returns false if it was already present.
    /// Throws on self-loops and out-of-range ids (the graph stays simple).
    bool add_edge(int u, int v);

    bool has_edge(int u, int v) const;

    const std::vector<int>& neighbors(int v) const {
        check_vertex(v);
        return adj_[static_cast<std::size_t>(v)];
    }

    int degree(int v) const { return static_cast<int>(neighbors(v).size()); }

    /// All edges, normalized and sorted lexicographically.
    std::vector<Edge> edges() const;

    bool operator==(const Graph& other) const { return adj_ == other.adj_; }

private:
    void check_vertex(int v) const {
        if (v < 0 || v >= vertex_count()) throw Error("vertex id out of range");
    }

    std::vector<std::vector<int>> adj_;
    int m_ = 0;
};

/// BFS distances from a single source. dist[source] = 0, unreachable = kUnreachable.
struct DistanceProfile {
    int source = 0;
    std::vector<int> dist;

    bool all_reachable() const {
        for (int d : dist)
            if (d == kUnreachable) return false;
        return true;
    }
};

DistanceProfile bfs_distances(const Graph& g, int v);

bool is_connected(const Graph& g);

/// Sum of distances from v to all vertices. Throws DisconnectedGraph.
std::uint64_t distance_sum(const Graph& g, int v);

/// All vertices minimizing the sum of distances to the others.
std::vector<int> median_vertices(const Graph& g);

/// True iff the given path (consecutive vertices adjacent, all distinct) has no
/// chord between non-consecutive vertices. Throws NotAPath on invalid input.
bool is_induced_path(const Graph& g, const std::vector<int>& path);

struct Cycle {
    std::vector<int> vertices; // in cycle order; length == vertices.size()
    int length() const { return static_cast<int>(vertices.size()); }
};

/// A shortest cycle (girth witness), or nullopt when the graph is acyclic.
/// Deterministic: BFS from every vertex in increasing id order, first strict
/// improvement wins.
std::optional<Cycle> shortest_cycle(const Graph& g);

} // namespace madst

#endif
