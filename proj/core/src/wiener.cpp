#include "madst/wiener.hpp"

#include <algorithm>

namespace madst {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow();
    return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow();
    return r;
}

std::uint64_t wiener_graph(const Graph& g) {
    std::uint64_t total = 0;
    for (int v = 0; v < g.vertex_count(); ++v) total = checked_add(total, distance_sum(g, v));
    return total / 2;
}

std::uint64_t wiener_tree(const SpanningTree& t) {
    const int n = t.vertex_count();
    // Iterative post-order from root 0; subtree sizes give each edge's split.
    std::vector<int> parent(static_cast<std::size_t>(n), -2), order;
    order.reserve(static_cast<std::size_t>(n));
    parent[0] = -1;
    std::vector<int> stack{0};
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (int w : t.neighbors(v))
            if (parent[static_cast<std::size_t>(w)] == -2) {
                parent[static_cast<std::size_t>(w)] = v;
                stack.push_back(w);
            }
    }
    std::vector<std::uint64_t> size(static_cast<std::size_t>(n), 1);
    std::uint64_t total = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        int v = *it;
        if (parent[static_cast<std::size_t>(v)] >= 0) {
            size[static_cast<std::size_t>(parent[static_cast<std::size_t>(v)])] += size[static_cast<std::size_t>(v)];
            std::uint64_t s = size[static_cast<std::size_t>(v)];
            total = checked_add(total, checked_mul(s, static_cast<std::uint64_t>(n) - s));
        }
    }
    return total;
}

std::uint64_t edge_contribution(const SpanningTree& t, Edge e) {
    e = make_edge(e.first, e.second);
    if (e.first < 0 || e.second >= t.vertex_count() || !t.has_edge(e.first, e.second))
        throw EdgeNotInTree("edge is not in the tree");
    // Size of e.first's side of T-e by DFS avoiding the edge.
    std::uint64_t side = 0;
    std::vector<char> seen(static_cast<std::size_t>(t.vertex_count()), 0);
    std::vector<int> stack{e.first};
    seen[static_cast<std::size_t>(e.first)] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        ++side;
        for (int w : t.neighbors(v)) {
            if (v == e.first && w == e.second) continue;
            if (!seen[static_cast<std::size_t>(w)]) {
                seen[static_cast<std::size_t>(w)] = 1;
                stack.push_back(w);
            }
        }
    }
    return checked_mul(side, static_cast<std::uint64_t>(t.vertex_count()) - side);
}

} // namespace madst
