#include "madst/above_guarantee.hpp"

#include <string>
#include <unordered_set>

#include "madst/wiener.hpp"

namespace madst {

namespace {

struct Search {
    const std::vector<Edge>& all_edges; // of the root graph, fixed order
    std::uint64_t budget = 0;
    std::int64_t root_slack = 0;
    std::unordered_set<std::string> refuted; // deleted-edge sets known to fail
    std::optional<SpanningTree> witness;
    int max_depth = 0;

    std::string key(const std::vector<char>& deleted) const {
        return std::string(deleted.begin(), deleted.end());
    }

    Graph materialize(int n, const std::vector<char>& deleted) const {
        Graph g(n);
        for (std::size_t i = 0; i < all_edges.size(); ++i)
            if (!deleted[i]) g.add_edge(all_edges[i].first, all_edges[i].second);
        return g;
    }

    bool rec(const Graph& g, std::vector<char>& deleted, int depth) {
        max_depth = std::max(max_depth, depth);
        const std::uint64_t w = wiener_graph(g);
        if (g.edge_count() == g.vertex_count() - 1) {
            if (w <= budget) {
                witness = SpanningTree(g.vertex_count(), g.edges());
                return true;
            }
            return false;
        }
        if (w > budget) return false; // tree distances only grow
        const std::int64_t slack = static_cast<std::int64_t>(budget - w);
        if (depth > root_slack) throw Error("above-guarantee branching exceeded the root slack");
        auto cycle = shortest_cycle(g);
        if (cycle->length() >= slack + 3) return false;
        auto k = key(deleted);
        if (refuted.count(k)) return false;
        const auto& vs = cycle->vertices;
        for (int i = 0; i < cycle->length(); ++i) {
            Edge e = make_edge(vs[static_cast<std::size_t>(i)],
                               vs[static_cast<std::size_t>((i + 1) % cycle->length())]);
            std::size_t id = 0;
            while (all_edges[id] != e) ++id;
            deleted[id] = 1;
            Graph next = materialize(g.vertex_count(), deleted);
            bool ok = rec(next, deleted, depth + 1);
            deleted[id] = 0;
            if (ok) return true;
        }
        refuted.insert(std::move(k));
        return false;
    }
};

} // namespace

AboveResult solve_above(const Graph& g, std::uint64_t budget) {
    if (g.vertex_count() == 0) throw DisconnectedGraph("empty graph");
    if (!is_connected(g)) throw DisconnectedGraph();
    const auto edges = g.edges();
    const std::uint64_t w = wiener_graph(g);
    Search s{edges, budget, 0, {}, std::nullopt, 0};
    if (budget < w) return AboveResult{false, std::nullopt, 0}; // every tree dominates W(G)
    s.root_slack = static_cast<std::int64_t>(budget - w);
    std::vector<char> deleted(edges.size(), 0);
    bool yes = s.rec(g, deleted, 0);
    return AboveResult{yes, std::move(s.witness), s.max_depth};
}

} // namespace madst
