#include "madst/modular.hpp"

#include <algorithm>
#include <future>
#include <numeric>
#include <queue>

#include "madst/oracle.hpp"
#include "madst/wiener.hpp"

namespace madst {

namespace {

struct Dsu {
    std::vector<int> parent;
    explicit Dsu(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

// Components of the complement graph, without materializing it.
std::vector<std::vector<int>> complement_components(const Graph& g) {
    const int n = g.vertex_count();
    std::vector<char> done(static_cast<std::size_t>(n), 0);
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (done[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        done[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            std::vector<char> adj(static_cast<std::size_t>(n), 0);
            for (int w : g.neighbors(u)) adj[static_cast<std::size_t>(w)] = 1;
            for (int v = 0; v < n; ++v)
                if (!done[static_cast<std::size_t>(v)] && v != u && !adj[static_cast<std::size_t>(v)]) {
                    done[static_cast<std::size_t>(v)] = 1;
                    q.push(v);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

// Smallest module containing {u, v}: splitter closure. Returns the member list.
std::vector<int> minimal_module(const Graph& g, int u, int v) {
    const int n = g.vertex_count();
    std::vector<char> in_m(static_cast<std::size_t>(n), 0);
    std::vector<int> inside_degree(static_cast<std::size_t>(n), 0); // |N(x) & M|
    std::vector<int> members;
    auto add = [&](int x) {
        in_m[static_cast<std::size_t>(x)] = 1;
        members.push_back(x);
        for (int w : g.neighbors(x)) ++inside_degree[static_cast<std::size_t>(w)];
    };
    add(u);
    add(v);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int x = 0; x < n; ++x) {
            if (in_m[static_cast<std::size_t>(x)]) continue;
            int d = inside_degree[static_cast<std::size_t>(x)];
            if (d > 0 && d < static_cast<int>(members.size())) {
                add(x); // x splits M
                changed = true;
            }
        }
    }
    std::sort(members.begin(), members.end());
    return members;
}

ModularPartition partition_from_groups(int n, std::vector<std::vector<int>> groups) {
    for (auto& gr : groups) std::sort(gr.begin(), gr.end());
    std::sort(groups.begin(), groups.end());
    ModularPartition p;
    p.modules = std::move(groups);
    p.module_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < p.module_count(); ++i)
        for (int v : p.modules[static_cast<std::size_t>(i)]) p.module_of[static_cast<std::size_t>(v)] = i;
    return p;
}

} // namespace

ModularPartition modular_partition(const Graph& g) {
    const int n = g.vertex_count();
    if (n < 2) throw TooSmall("modular partition needs n >= 2");
    if (!is_connected(g)) throw DisconnectedGraph();

    auto co = complement_components(g);
    if (co.size() >= 2) {
        // Series root: any grouping of co-components is a modular partition,
        // so two groups achieve the minimum.
        std::vector<int> rest;
        for (std::size_t i = 1; i < co.size(); ++i)
            rest.insert(rest.end(), co[i].begin(), co[i].end());
        return partition_from_groups(n, {co[0], std::move(rest)});
    }

    // Prime root: the children are the classes of "the smallest module
    // containing both is proper". Representatives live in distinct children.
    Dsu dsu(n);
    std::vector<int> reps;
    for (int v = 0; v < n; ++v) {
        bool matched = false;
        for (int r : reps) {
            if (dsu.find(r) == dsu.find(v)) {
                matched = true;
                continue;
            }
            auto m = minimal_module(g, r, v);
            if (static_cast<int>(m.size()) < n) {
                for (int x : m) dsu.unite(x, r);
                matched = true;
            }
        }
        if (!matched) reps.push_back(v);
    }
    std::vector<std::vector<int>> groups;
    std::vector<int> group_of(static_cast<std::size_t>(n), -1);
    for (int v = 0; v < n; ++v) {
        int root = dsu.find(v);
        if (group_of[static_cast<std::size_t>(root)] == -1) {
            group_of[static_cast<std::size_t>(root)] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(group_of[static_cast<std::size_t>(root)])].push_back(v);
    }
    return partition_from_groups(n, std::move(groups));
}

QuotientGraph quotient(const Graph& g, const ModularPartition& p) {
    const int n = g.vertex_count();
    const int k = p.module_count();
    if (k < 2) throw InvalidPartition("need at least 2 modules");
    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < k; ++i) {
        const auto& m = p.modules[static_cast<std::size_t>(i)];
        if (m.empty()) throw InvalidPartition("empty module");
        for (int v : m) {
            if (v < 0 || v >= n || covered[static_cast<std::size_t>(v)])
                throw InvalidPartition("not a partition of the vertex set");
            covered[static_cast<std::size_t>(v)] = 1;
            if (p.module_of.size() != static_cast<std::size_t>(n) || p.module_of[static_cast<std::size_t>(v)] != i)
                throw InvalidPartition("module_of map inconsistent");
        }
    }
    for (int v = 0; v < n; ++v)
        if (!covered[static_cast<std::size_t>(v)]) throw InvalidPartition("vertex not covered");
    // Module property: every outside vertex sees all or none of each module.
    for (int i = 0; i < k; ++i) {
        const auto& m = p.modules[static_cast<std::size_t>(i)];
        std::vector<int> inside(static_cast<std::size_t>(n), 0);
        for (int v : m)
            for (int w : g.neighbors(v)) ++inside[static_cast<std::size_t>(w)];
        for (int x = 0; x < n; ++x) {
            if (p.module_of[static_cast<std::size_t>(x)] == i) continue;
            int d = inside[static_cast<std::size_t>(x)];
            if (d != 0 && d != static_cast<int>(m.size()))
                throw InvalidPartition("module property violated at vertex " + std::to_string(x));
        }
    }
    QuotientGraph q;
    q.graph = Graph(k);
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
            if (g.has_edge(p.modules[static_cast<std::size_t>(i)][0], p.modules[static_cast<std::size_t>(j)][0]))
                q.graph.add_edge(i, j);
    return q;
}

void quotient_trees_with_root_star(const QuotientGraph& q, int i,
                                   const std::function<bool(const std::vector<Edge>&)>& visit) {
    const int k = q.module_count();
    if (i < 0 || i >= k) throw Error("module index out of range");
    if (!is_connected(q.graph)) throw DisconnectedGraph();
    std::vector<Edge> star;
    for (int j : q.graph.neighbors(i)) star.push_back(make_edge(i, j));
    // Contract {i} + N(i) to supervertex 0; map the remaining modules densely.
    std::vector<int> super(static_cast<std::size_t>(k), -1);
    super[static_cast<std::size_t>(i)] = 0;
    for (int j : q.graph.neighbors(i)) super[static_cast<std::size_t>(j)] = 0;
    int next = 1;
    for (int v = 0; v < k; ++v)
        if (super[static_cast<std::size_t>(v)] == -1) super[static_cast<std::size_t>(v)] = next++;
    std::vector<Edge> contracted;  // parallel edges stay distinct
    std::vector<Edge> originals;
    for (auto [a, b] : q.graph.edges()) {
        if (a == i || b == i) continue;
        int ma = super[static_cast<std::size_t>(a)], mb = super[static_cast<std::size_t>(b)];
        if (ma == mb) continue; // would close a cycle with the star
        contracted.push_back(make_edge(ma, mb));
        originals.emplace_back(a, b);
    }
    enumerate_spanning_edge_subsets(next, contracted, [&](const std::vector<int>& idx) {
        std::vector<Edge> tree = star;
        for (int e : idx) tree.push_back(make_edge(originals[static_cast<std::size_t>(e)].first,
                                                   originals[static_cast<std::size_t>(e)].second));
        std::sort(tree.begin(), tree.end());
        return visit(tree);
    });
}

namespace {

int designated_vertex(const Graph& g, const std::vector<int>& module, DesignatedRule rule) {
    if (rule == DesignatedRule::SmallestId) return module.front();
    int best = module.front();
    for (int v : module)
        if (g.degree(v) > g.degree(best)) best = v; // ties keep the smaller id
    return best;
}

} // namespace

SpanningTree build_poly_star(const Graph& g, const ModularPartition& p, const QuotientGraph& q,
                             const std::vector<Edge>& quotient_tree, int root_module, int root_vertex,
                             DesignatedRule rule) {
    const int n = g.vertex_count();
    const int k = p.module_count();
    if (root_module < 0 || root_module >= k) throw InvalidPlan("root module out of range");
    const auto& root_members = p.modules[static_cast<std::size_t>(root_module)];
    if (!std::binary_search(root_members.begin(), root_members.end(), root_vertex))
        throw InvalidPlan("root vertex not in root module");
    for (int v : root_members)
        if (g.degree(v) > g.degree(root_vertex)) throw InvalidPlan("root vertex must have maximum degree in its module");

    // The quotient tree must contain the whole star of the root module.
    SpanningTree qt(k, quotient_tree); // validates tree shape
    for (auto [a, b] : quotient_tree)
        if (!q.graph.has_edge(a, b)) throw InvalidPlan("quotient tree edge not in quotient graph");
    for (int j : q.graph.neighbors(root_module))
        if (!qt.has_edge(root_module, j)) throw InvalidPlan("quotient tree misses a root star edge");

    std::vector<int> designated(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j)
        designated[static_cast<std::size_t>(j)] =
            (j == root_module) ? root_vertex : designated_vertex(g, p.modules[static_cast<std::size_t>(j)], rule);

    std::vector<Edge> edges;
    for (auto [a, b] : quotient_tree)
        edges.push_back(make_edge(designated[static_cast<std::size_t>(a)], designated[static_cast<std::size_t>(b)]));

    // Parent pointers toward the root module in the quotient tree.
    std::vector<int> toward_root(static_cast<std::size_t>(k), -1);
    {
        std::queue<int> bfs;
        bfs.push(root_module);
        std::vector<char> seen(static_cast<std::size_t>(k), 0);
        seen[static_cast<std::size_t>(root_module)] = 1;
        while (!bfs.empty()) {
            int a = bfs.front();
            bfs.pop();
            for (int b : qt.neighbors(a))
                if (!seen[static_cast<std::size_t>(b)]) {
                    seen[static_cast<std::size_t>(b)] = 1;
                    toward_root[static_cast<std::size_t>(b)] = a;
                    bfs.push(b);
                }
        }
    }
    for (int j = 0; j < k; ++j) {
        if (j == root_module) continue;
        int cj = designated[static_cast<std::size_t>(toward_root[static_cast<std::size_t>(j)])];
        for (int u : p.modules[static_cast<std::size_t>(j)])
            if (u != designated[static_cast<std::size_t>(j)]) edges.push_back(make_edge(u, cj));
    }
    std::vector<char> attached_to_root(static_cast<std::size_t>(n), 0);
    for (int u : g.neighbors(root_vertex))
        if (p.module_of[static_cast<std::size_t>(u)] == root_module) {
            edges.push_back(make_edge(u, root_vertex));
            attached_to_root[static_cast<std::size_t>(u)] = 1;
        }

    std::vector<int> rest; // root-module vertices outside N_G[root]
    for (int u : root_members)
        if (u != root_vertex && !attached_to_root[static_cast<std::size_t>(u)]) rest.push_back(u);
    if (!rest.empty()) {
        // R = the tree built so far; pick the designated neighbor of the root
        // minimizing the distance sum over R, smallest id on ties.
        std::vector<std::vector<int>> radj(static_cast<std::size_t>(n));
        for (auto [a, b] : edges) {
            radj[static_cast<std::size_t>(a)].push_back(b);
            radj[static_cast<std::size_t>(b)].push_back(a);
        }
        std::vector<char> in_rest(static_cast<std::size_t>(n), 0);
        for (int u : rest) in_rest[static_cast<std::size_t>(u)] = 1;
        auto dist_sum_r = [&](int w) {
            std::vector<int> dist(static_cast<std::size_t>(n), -1);
            std::queue<int> bfs;
            bfs.push(w);
            dist[static_cast<std::size_t>(w)] = 0;
            std::uint64_t sum = 0;
            while (!bfs.empty()) {
                int a = bfs.front();
                bfs.pop();
                sum += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(a)]);
                for (int b : radj[static_cast<std::size_t>(a)])
                    if (!in_rest[static_cast<std::size_t>(b)] && dist[static_cast<std::size_t>(b)] == -1) {
                        dist[static_cast<std::size_t>(b)] = dist[static_cast<std::size_t>(a)] + 1;
                        bfs.push(b);
                    }
            }
            return sum;
        };
        int ci = -1;
        std::uint64_t best = 0;
        for (int j : qt.neighbors(root_module)) {
            int w = designated[static_cast<std::size_t>(j)];
            std::uint64_t s = dist_sum_r(w);
            if (ci == -1 || s < best || (s == best && w < ci)) {
                ci = w;
                best = s;
            }
        }
        for (int u : rest) edges.push_back(make_edge(u, ci));
    }
    return SpanningTree(n, std::move(edges));
}

namespace {

struct Best {
    std::uint64_t w = 0;
    std::optional<SpanningTree> tree;
    void offer(std::uint64_t cand_w, const SpanningTree& cand) {
        if (!tree || cand_w < w || (cand_w == w && cand < *tree)) {
            w = cand_w;
            tree = cand;
        }
    }
    void merge(const Best& other) {
        if (other.tree) offer(other.w, *other.tree);
    }
};

} // namespace

ModularResult solve_modular(const Graph& g, std::uint64_t budget, ModularOptions options) {
    const int n = g.vertex_count();
    if (n == 0) throw DisconnectedGraph("empty graph");
    if (!is_connected(g)) throw DisconnectedGraph();
    if (n == 1) {
        SpanningTree t(1, {});
        return ModularResult{true, 0, std::move(t)}; // W = 0 fits any budget
    }
    auto p = modular_partition(g);
    auto q = quotient(g, p);

    // Candidate roots: every maximum-degree vertex of each module. The paper
    // picks one arbitrarily; trying all of them can only help.
    std::vector<std::pair<int, int>> candidates;
    for (int i = 0; i < p.module_count(); ++i) {
        int max_deg = 0;
        for (int v : p.modules[static_cast<std::size_t>(i)]) max_deg = std::max(max_deg, g.degree(v));
        for (int v : p.modules[static_cast<std::size_t>(i)])
            if (g.degree(v) == max_deg) candidates.emplace_back(i, v);
    }

    auto run_range = [&](std::size_t lo, std::size_t hi) {
        Best best;
        for (std::size_t c = lo; c < hi; ++c) {
            auto [i, r] = candidates[c];
            quotient_trees_with_root_star(q, i, [&](const std::vector<Edge>& qt) {
                SpanningTree t = build_poly_star(g, p, q, qt, i, r, options.rule);
                best.offer(wiener_tree(t), t);
                return true;
            });
        }
        return best;
    };

    Best best;
    int threads = std::max(1, options.threads);
    if (threads == 1 || candidates.size() <= 1) {
        best = run_range(0, candidates.size());
    } else {
        std::size_t chunk = (candidates.size() + static_cast<std::size_t>(threads) - 1) / static_cast<std::size_t>(threads);
        std::vector<std::future<Best>> futures;
        for (std::size_t lo = 0; lo < candidates.size(); lo += chunk) {
            std::size_t hi = std::min(candidates.size(), lo + chunk);
            futures.push_back(std::async(std::launch::async, run_range, lo, hi));
        }
        for (auto& f : futures) best.merge(f.get());
    }
    return ModularResult{best.w <= budget, best.w, std::move(best.tree)};
}

std::pair<SpanningTree, SpanningTree> reposition_subtrees(const SpanningTree& t, int a, int b,
                                                          const std::vector<int>& v_a,
                                                          const std::vector<int>& v_b,
                                                          const Graph& g) {
    if (a == b) throw HypothesisViolated("a and b must be distinct");
    if (v_a.empty() || v_b.empty()) throw HypothesisViolated("V_a and V_b must be nonempty");
    for (int v : v_a)
        if (!t.has_edge(a, v)) throw HypothesisViolated("V_a must be tree neighbors of a");
    for (int v : v_b)
        if (!t.has_edge(b, v)) throw HypothesisViolated("V_b must be tree neighbors of b");
    for (const auto& side : {v_a, v_b})
        for (int v : side)
            if (!g.has_edge(a, v) || !g.has_edge(b, v))
                throw HypothesisViolated("every moved vertex must be adjacent to both a and b in G");
    auto path = t.path(a, b);
    std::vector<char> moved(static_cast<std::size_t>(t.vertex_count()), 0);
    for (int v : v_a) moved[static_cast<std::size_t>(v)] = 1;
    for (int v : v_b) moved[static_cast<std::size_t>(v)] = 1;
    for (int x : path)
        if (moved[static_cast<std::size_t>(x)])
            throw HypothesisViolated("the a-b tree path must avoid V_a and V_b");

    auto rewire = [&](int from, int to, const std::vector<int>& vs) {
        std::vector<char> in_vs(static_cast<std::size_t>(t.vertex_count()), 0);
        for (int v : vs) in_vs[static_cast<std::size_t>(v)] = 1;
        std::vector<Edge> edges;
        for (auto e : t.edges()) {
            bool drop = (e.first == from && in_vs[static_cast<std::size_t>(e.second)]) ||
                        (e.second == from && in_vs[static_cast<std::size_t>(e.first)]);
            if (!drop) edges.push_back(e);
        }
        for (int v : vs) edges.push_back(make_edge(to, v));
        return SpanningTree(t.vertex_count(), std::move(edges));
    };
    return {rewire(b, a, v_b), rewire(a, b, v_a)};
}

} // namespace madst
