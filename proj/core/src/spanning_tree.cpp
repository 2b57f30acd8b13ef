#include "madst/spanning_tree.hpp"

#include <algorithm>

namespace madst {

namespace {

// Minimal union-find for tree validation.
struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

} // namespace

SpanningTree::SpanningTree(int n, std::vector<Edge> edges) : n_(n) {
    if (n <= 0) throw InvalidTree("tree needs at least one vertex");
    if (static_cast<int>(edges.size()) != n - 1) throw InvalidTree("tree must have exactly n-1 edges");
    for (auto& e : edges) e = make_edge(e.first, e.second);
    std::sort(edges.begin(), edges.end());
    Dsu dsu(n);
    adj_.assign(static_cast<std::size_t>(n), {});
    for (auto [u, v] : edges) {
        if (u < 0 || v >= n) throw InvalidTree("vertex id out of range");
        if (u == v) throw InvalidTree("self-loop");
        if (!dsu.unite(u, v)) throw InvalidTree("edges contain a cycle or duplicate");
        adj_[static_cast<std::size_t>(u)].push_back(v);
        adj_[static_cast<std::size_t>(v)].push_back(u);
    }
    // n-1 successful unions on n vertices imply connectivity.
    for (auto& a : adj_) std::sort(a.begin(), a.end());
    edges_ = std::move(edges);
}

const std::vector<int>& SpanningTree::neighbors(int v) const {
    if (v < 0 || v >= n_) throw Error("vertex id out of range");
    return adj_[static_cast<std::size_t>(v)];
}

bool SpanningTree::has_edge(int u, int v) const {
    const auto& a = neighbors(u);
    if (v < 0 || v >= n_) throw Error("vertex id out of range");
    return std::binary_search(a.begin(), a.end(), v);
}

std::vector<int> SpanningTree::path(int u, int v) const {
    // DFS from u with parent pointers; n is small everywhere this is used.
    std::vector<int> parent(static_cast<std::size_t>(n_), -2);
    parent[static_cast<std::size_t>(u)] = -1;
    std::vector<int> stack{u};
    while (!stack.empty()) {
        int x = stack.back();
        stack.pop_back();
        if (x == v) break;
        for (int w : adj_[static_cast<std::size_t>(x)])
            if (parent[static_cast<std::size_t>(w)] == -2) {
                parent[static_cast<std::size_t>(w)] = x;
                stack.push_back(w);
            }
    }
    std::vector<int> out;
    for (int x = v; x != -1; x = parent[static_cast<std::size_t>(x)]) out.push_back(x);
    std::reverse(out.begin(), out.end());
    return out;
}

bool spans(const Graph& g, const SpanningTree& t) {
    if (g.vertex_count() != t.vertex_count()) return false;
    for (auto [u, v] : t.edges())
        if (!g.has_edge(u, v)) return false;
    return true;
}

SpanningTree bfs_spanning_tree(const Graph& g, int root) {
    auto profile = bfs_distances(g, root);
    if (!profile.all_reachable()) throw DisconnectedGraph();
    std::vector<Edge> edges;
    std::vector<int> order{root};
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    seen[static_cast<std::size_t>(root)] = 1;
    for (std::size_t i = 0; i < order.size(); ++i) {
        int v = order[i];
        for (int w : g.neighbors(v))
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                edges.push_back(make_edge(v, w));
                order.push_back(w);
            }
    }
    return SpanningTree(g.vertex_count(), std::move(edges));
}

} // namespace madst
