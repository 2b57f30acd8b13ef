#include "madst/graph.hpp"

#include <algorithm>
#include <queue>

namespace madst {

bool Graph::add_edge(int u, int v) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw Error("self-loops are not allowed");
    auto& au = adj_[static_cast<std::size_t>(u)];
    auto it = std::lower_bound(au.begin(), au.end(), v);
    if (it != au.end() && *it == v) return false;
    au.insert(it, v);
    auto& av = adj_[static_cast<std::size_t>(v)];
    av.insert(std::lower_bound(av.begin(), av.end(), u), u);
    ++m_;
    return true;
}

bool Graph::has_edge(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    const auto& au = adj_[static_cast<std::size_t>(u)];
    return std::binary_search(au.begin(), au.end(), v);
}

std::vector<Edge> Graph::edges() const {
    std::vector<Edge> out;
    out.reserve(static_cast<std::size_t>(m_));
    for (int u = 0; u < vertex_count(); ++u)
        for (int v : adj_[static_cast<std::size_t>(u)])
            if (u < v) out.emplace_back(u, v);
    return out;
}

DistanceProfile bfs_distances(const Graph& g, int v) {
    DistanceProfile p;
    p.source = v;
    p.dist.assign(static_cast<std::size_t>(g.vertex_count()), kUnreachable);
    p.dist[static_cast<std::size_t>(v)] = 0;
    std::queue<int> q;
    q.push(v);
    while (!q.empty()) {
        int u = q.front();
        q.pop();
        for (int w : g.neighbors(u)) {
            if (p.dist[static_cast<std::size_t>(w)] == kUnreachable) {
                p.dist[static_cast<std::size_t>(w)] = p.dist[static_cast<std::size_t>(u)] + 1;
                q.push(w);
            }
        }
    }
    return p;
}

bool is_connected(const Graph& g) {
    if (g.vertex_count() == 0) return true;
    return bfs_distances(g, 0).all_reachable();
}

std::uint64_t distance_sum(const Graph& g, int v) {
    auto p = bfs_distances(g, v);
    std::uint64_t s = 0;
    for (int d : p.dist) {
        if (d == kUnreachable) throw DisconnectedGraph();
        s += static_cast<std::uint64_t>(d);
    }
    return s;
}

std::vector<int> median_vertices(const Graph& g) {
    if (g.vertex_count() == 0) throw DisconnectedGraph("empty graph has no median");
    std::uint64_t best = 0;
    std::vector<int> out;
    for (int v = 0; v < g.vertex_count(); ++v) {
        std::uint64_t s = distance_sum(g, v);
        if (out.empty() || s < best) {
            best = s;
            out.assign(1, v);
        } else if (s == best) {
            out.push_back(v);
        }
    }
    return out;
}

bool is_induced_path(const Graph& g, const std::vector<int>& path) {
    if (path.empty()) throw NotAPath("empty vertex sequence");
    std::vector<char> seen(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : path) {
        if (v < 0 || v >= g.vertex_count()) throw NotAPath("vertex id out of range");
        if (seen[static_cast<std::size_t>(v)]) throw NotAPath("repeated vertex");
        seen[static_cast<std::size_t>(v)] = 1;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        if (!g.has_edge(path[i], path[i + 1])) throw NotAPath("consecutive vertices not adjacent");
    for (std::size_t i = 0; i < path.size(); ++i)
        for (std::size_t j = i + 2; j < path.size(); ++j)
            if (g.has_edge(path[i], path[j])) return false;
    return true;
}

std::optional<Cycle> shortest_cycle(const Graph& g) {
    const int n = g.vertex_count();
    int best_len = -1;
    Cycle best;
    std::vector<int> dist(static_cast<std::size_t>(n)), parent(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        std::fill(dist.begin(), dist.end(), kUnreachable);
        std::fill(parent.begin(), parent.end(), -1);
        dist[static_cast<std::size_t>(s)] = 0;
        std::queue<int> q;
        q.push(s);
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            // Any closure at u has length >= 2*dist(u); stop once that cannot improve.
            if (best_len != -1 && 2 * dist[static_cast<std::size_t>(u)] >= best_len) continue;
            for (int w : g.neighbors(u)) {
                if (dist[static_cast<std::size_t>(w)] == kUnreachable) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    parent[static_cast<std::size_t>(w)] = u;
                    q.push(w);
                } else if (w != parent[static_cast<std::size_t>(u)]) {
                    int len = dist[static_cast<std::size_t>(u)] + dist[static_cast<std::size_t>(w)] + 1;
                    if (best_len == -1 || len < best_len) {
                        // Reconstruct the two root paths; at a strict improvement they
                        // are internally disjoint, which makes the walk a simple cycle.
                        std::vector<int> pu, pw;
                        for (int x = u; x != -1; x = parent[static_cast<std::size_t>(x)]) pu.push_back(x);
                        for (int x = w; x != -1; x = parent[static_cast<std::size_t>(x)]) pw.push_back(x);
                        std::vector<char> on_pu(static_cast<std::size_t>(n), 0);
                        for (int x : pu) on_pu[static_cast<std::size_t>(x)] = 1;
                        bool disjoint = true;
                        for (int x : pw)
                            if (x != s && on_pu[static_cast<std::size_t>(x)]) { disjoint = false; break; }
                        if (!disjoint) continue;
                        best_len = len;
                        best.vertices.assign(pu.rbegin(), pu.rend()); // s .. u
                        for (std::size_t i = 0; i + 1 < pw.size(); ++i) best.vertices.push_back(pw[i]); // w .. (below s)
                    }
                }
            }
        }
    }
    if (best_len == -1) return std::nullopt;
    return best;
}

} // namespace madst
