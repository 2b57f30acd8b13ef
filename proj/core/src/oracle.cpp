#include "madst/oracle.hpp"

#include <algorithm>
#include <optional>

#include "madst/wiener.hpp"

namespace madst {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
    }
    int find(int x) const {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
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

struct Enumerator {
    int n;
    const std::vector<Edge>& medges;
    const std::function<bool(const std::vector<int>&)>& visit;
    std::vector<int> chosen;
    bool stopped = false;

    // True iff the edges from index i onward can still merge every dsu class.
    bool connectable(std::size_t i, const Dsu& dsu) const {
        Dsu probe = dsu;
        int classes = 0;
        for (int v = 0; v < n; ++v)
            if (probe.find(v) == v) ++classes;
        for (; i < medges.size() && classes > 1; ++i)
            if (probe.unite(medges[i].first, medges[i].second)) --classes;
        return classes == 1;
    }

    void rec(std::size_t i, Dsu& dsu, int merged) {
        if (stopped) return;
        if (merged == n - 1) {
            if (!visit(chosen)) stopped = true;
            return;
        }
        // Find the next non-loop edge; loop edges are forced out.
        while (i < medges.size() && dsu.find(medges[i].first) == dsu.find(medges[i].second)) ++i;
        if (i == medges.size()) return;
        // Include branch (contract).
        {
            Dsu next = dsu;
            next.unite(medges[i].first, medges[i].second);
            chosen.push_back(static_cast<int>(i));
            rec(i + 1, next, merged + 1);
            chosen.pop_back();
        }
        if (stopped) return;
        // Exclude branch, unless the edge is a bridge of the contracted rest.
        if (connectable(i + 1, dsu)) rec(i + 1, dsu, merged);
    }
};

} // namespace

void enumerate_spanning_edge_subsets(int n, const std::vector<Edge>& medges,
                                     const std::function<bool(const std::vector<int>&)>& visit) {
    if (n <= 0) return;
    if (n == 1) {
        std::vector<int> empty;
        visit(empty);
        return;
    }
    Enumerator e{n, medges, visit, {}, false};
    Dsu dsu(n);
    if (!e.connectable(0, dsu)) throw DisconnectedGraph();
    e.rec(0, dsu, 0);
}

void enumerate_spanning_trees(const Graph& g,
                              const std::function<bool(const SpanningTree&)>& visit,
                              int vertex_limit) {
    const int n = g.vertex_count();
    if (n > vertex_limit)
        throw TooLarge("oracle guard: " + std::to_string(n) + " vertices exceeds limit " +
                       std::to_string(vertex_limit));
    if (!is_connected(g)) throw DisconnectedGraph();
    const auto edges = g.edges();
    enumerate_spanning_edge_subsets(n, edges, [&](const std::vector<int>& idx) {
        std::vector<Edge> te;
        te.reserve(idx.size());
        for (int i : idx) te.push_back(edges[static_cast<std::size_t>(i)]);
        return visit(SpanningTree(n, std::move(te)));
    });
}

std::uint64_t count_spanning_trees(const Graph& g, int vertex_limit) {
    const int n = g.vertex_count();
    if (n > vertex_limit)
        throw TooLarge("oracle guard: " + std::to_string(n) + " vertices exceeds limit " +
                       std::to_string(vertex_limit));
    if (!is_connected(g)) throw DisconnectedGraph();
    if (n <= 1) return 1;
    // Laplacian cofactor (drop row/col 0), Bareiss fraction-free elimination.
    const int d = n - 1;
    std::vector<std::vector<__int128>> a(static_cast<std::size_t>(d),
                                         std::vector<__int128>(static_cast<std::size_t>(d), 0));
    for (int v = 1; v < n; ++v) {
        a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(v - 1)] = g.degree(v);
        for (int w : g.neighbors(v))
            if (w >= 1) a[static_cast<std::size_t>(v - 1)][static_cast<std::size_t>(w - 1)] = -1;
    }
    __int128 prev = 1;
    int sign = 1;
    for (int k = 0; k < d; ++k) {
        if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
            int pivot = -1;
            for (int i = k + 1; i < d; ++i)
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) { pivot = i; break; }
            if (pivot == -1) return 0;
            std::swap(a[static_cast<std::size_t>(k)], a[static_cast<std::size_t>(pivot)]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i)
            for (int j = k + 1; j < d; ++j) {
                a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                    (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
                     a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                         a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
                    prev;
            }
        prev = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    __int128 det = sign * a[static_cast<std::size_t>(d - 1)][static_cast<std::size_t>(d - 1)];
    if (det < 0 || det > static_cast<__int128>(UINT64_MAX)) throw Overflow();
    return static_cast<std::uint64_t>(det);
}

OracleResult mad_tree_bruteforce(const Graph& g, int vertex_limit) {
    std::optional<SpanningTree> best;
    std::uint64_t best_w = 0;
    enumerate_spanning_trees(
        g,
        [&](const SpanningTree& t) {
            std::uint64_t w = wiener_tree(t);
            if (!best || w < best_w || (w == best_w && t < *best)) {
                best = t;
                best_w = w;
            }
            return true;
        },
        vertex_limit);
    return OracleResult{std::move(*best), best_w};
}

} // namespace madst
