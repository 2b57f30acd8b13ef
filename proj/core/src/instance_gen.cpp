#include "madst/instance_gen.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace madst {

ReducedInstance reduce_x3c(const X3CInstance& x) {
    const int q = x.q;
    const int s = x.set_count();
    if (q < 1 || s < 1) throw InvalidX3C("need q >= 1 and at least one set");
    std::vector<int> occurrences(static_cast<std::size_t>(3 * q) + 1, 0);
    for (const auto& set : x.sets) {
        if (set[0] == set[1] || set[1] == set[2] || set[0] == set[2])
            throw InvalidX3C("set with repeated elements");
        for (int e : set) {
            if (e < 1 || e > 3 * q) throw InvalidX3C("element id out of range");
            ++occurrences[static_cast<std::size_t>(e)];
        }
    }
    for (int e = 1; e <= 3 * q; ++e)
        if (occurrences[static_cast<std::size_t>(e)] == 0)
            throw InvalidX3C("element " + std::to_string(e) + " appears in no set; graph would be disconnected");

    ReducedInstance r;
    r.q = q;
    r.s = s;
    r.graph = Graph(3 * q + s);
    for (int j = 1; j <= s; ++j)
        for (int j2 = j + 1; j2 <= s; ++j2) r.graph.add_edge(r.set_vertex(j), r.set_vertex(j2));
    for (int j = 1; j <= s; ++j)
        for (int e : x.sets[static_cast<std::size_t>(j - 1)])
            r.graph.add_edge(r.element_vertex(e), r.set_vertex(j));

    const auto u64 = [](long long v) {
        if (v < 0) throw InvalidX3C("negative budget term");
        return static_cast<std::uint64_t>(v);
    };
    r.d_cc = u64(1LL * (s - 1) * (s - 1));
    r.d_cx = u64(3LL * (1 + 2 * (s - 1)) + 1LL * (3 * q - 3) * (3 + 3 * (s - 2)));
    r.d_xx = u64(6LL + 9LL * (3 * q - 3) + 2LL * (3 * q - 3) * (3 * q - 5));
    r.budget = r.d_cc + r.d_cx + r.d_xx;
    return r;
}

bool x3c_decide_bruteforce(const X3CInstance& x) {
    if (x.universe_size() > 24) throw TooLarge("X3C brute force limited to 3q <= 24");
    const std::uint32_t full = (x.universe_size() >= 32) ? ~0u : ((1u << x.universe_size()) - 1);
    std::vector<std::uint32_t> masks;
    masks.reserve(x.sets.size());
    for (const auto& set : x.sets) {
        std::uint32_t m = 0;
        for (int e : set) m |= 1u << (e - 1);
        masks.push_back(m);
    }
    // DFS over the lowest uncovered element; only sets containing it matter.
    std::vector<std::vector<int>> by_element(static_cast<std::size_t>(x.universe_size()));
    for (std::size_t i = 0; i < masks.size(); ++i)
        for (int e : x.sets[i]) by_element[static_cast<std::size_t>(e - 1)].push_back(static_cast<int>(i));
    std::function<bool(std::uint32_t)> rec = [&](std::uint32_t covered) {
        if (covered == full) return true;
        int e = std::countr_one(covered); // lowest uncovered element
        for (int i : by_element[static_cast<std::size_t>(e)])
            if ((masks[static_cast<std::size_t>(i)] & covered) == 0)
                if (rec(covered | masks[static_cast<std::size_t>(i)])) return true;
        return false;
    };
    return rec(0);
}

X3CInstance gen_x3c(int q, int s, std::uint64_t seed, bool planted, int max_occurrences) {
    if (q < 1) throw InfeasibleParameters("q must be >= 1");
    if (s < q) throw InfeasibleParameters("covering 3q elements needs s >= q sets");
    if (3LL * q < 3) throw InfeasibleParameters("universe too small");
    std::mt19937_64 rng(seed);
    const int universe = 3 * q;
    X3CInstance x;
    x.q = q;
    std::vector<int> occurrences(static_cast<std::size_t>(universe) + 1, 0);

    auto sorted_triple = [](int a, int b, int c) {
        std::array<int, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        return t;
    };
    auto contains = [&](const std::array<int, 3>& t) {
        return std::find(x.sets.begin(), x.sets.end(), t) != x.sets.end();
    };
    auto usable = [&](int e) {
        return max_occurrences <= 0 || occurrences[static_cast<std::size_t>(e)] < max_occurrences;
    };
    auto push = [&](const std::array<int, 3>& t) {
        x.sets.push_back(t);
        for (int e : t) ++occurrences[static_cast<std::size_t>(e)];
    };

    if (planted) {
        std::vector<int> perm(static_cast<std::size_t>(universe));
        std::iota(perm.begin(), perm.end(), 1);
        std::shuffle(perm.begin(), perm.end(), rng);
        for (int i = 0; i < q; ++i)
            push(sorted_triple(perm[static_cast<std::size_t>(3 * i)], perm[static_cast<std::size_t>(3 * i + 1)],
                               perm[static_cast<std::size_t>(3 * i + 2)]));
    }
    std::uniform_int_distribution<int> pick(1, universe);
    int attempts = 0;
    while (x.set_count() < s) {
        if (++attempts > 100000)
            throw InfeasibleParameters("could not generate the requested collection under the constraints");
        int a = pick(rng), b = pick(rng), c = pick(rng);
        if (a == b || b == c || a == c) continue;
        auto t = sorted_triple(a, b, c);
        if (contains(t)) continue;
        if (!(usable(a) && usable(b) && usable(c))) continue;
        push(t);
    }
    if (!planted) {
        // Guarantee coverage: swap a multiply-covered element for an uncovered
        // one inside some set. Each swap shrinks the uncovered count, and a
        // multiply-covered element always exists while s >= q.
        for (int e = 1; e <= universe; ++e) {
            if (occurrences[static_cast<std::size_t>(e)] > 0) continue;
            int tries = 0;
            bool fixed = false;
            while (!fixed) {
                if (++tries > 100000) throw InfeasibleParameters("cannot cover universe");
                std::uniform_int_distribution<std::size_t> set_pick(0, x.sets.size() - 1);
                std::size_t i = set_pick(rng);
                std::uniform_int_distribution<int> slot_pick(0, 2);
                int slot = slot_pick(rng);
                int victim = x.sets[i][static_cast<std::size_t>(slot)];
                if (occurrences[static_cast<std::size_t>(victim)] < 2) continue;
                auto candidate = x.sets[i];
                candidate[static_cast<std::size_t>(slot)] = e;
                std::sort(candidate.begin(), candidate.end());
                if (contains(candidate)) continue;
                --occurrences[static_cast<std::size_t>(victim)];
                ++occurrences[static_cast<std::size_t>(e)];
                x.sets[i] = candidate;
                fixed = true;
            }
        }
    }
    std::sort(x.sets.begin(), x.sets.end());
    return x;
}

X3CInstance read_x3c(std::istream& in) {
    std::string tag;
    int universe = 0, s = 0;
    if (!(in >> tag >> universe >> s) || tag != "x3c" || universe <= 0 || universe % 3 != 0 || s < 0)
        throw ParseError("expected `x3c <3q> <s>` header");
    X3CInstance x;
    x.q = universe / 3;
    for (int i = 0; i < s; ++i) {
        int a, b, c;
        if (!(in >> a >> b >> c)) throw ParseError("truncated x3c set list");
        std::array<int, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        x.sets.push_back(t);
    }
    return x;
}

void write_x3c(std::ostream& out, const X3CInstance& x) {
    out << "x3c " << x.universe_size() << ' ' << x.set_count() << '\n';
    for (const auto& set : x.sets) out << set[0] << ' ' << set[1] << ' ' << set[2] << '\n';
}

Graph gen_random_connected(int n, double p, std::uint64_t seed) {
    if (n < 1 || p < 0.0 || p > 1.0) throw InfeasibleParameters("need n >= 1 and p in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) g.add_edge(u, v);
    // Augment with a random spanning tree so the result is always connected.
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 1; i < n; ++i) {
        std::uniform_int_distribution<int> anchor(0, i - 1);
        g.add_edge(perm[static_cast<std::size_t>(i)], perm[static_cast<std::size_t>(anchor(rng))]);
    }
    return g;
}

namespace {

struct CotreeBuilder {
    std::mt19937_64 rng;
    Graph g;
    explicit CotreeBuilder(int n, std::uint64_t seed) : rng(seed), g(n) {}

    // Builds a cotree over the vertex range [lo, hi); join=true connects all
    // parts pairwise. Returns the cotree term.
    std::string build(int lo, int hi, bool join) {
        if (hi - lo == 1) return std::to_string(lo);
        std::uniform_int_distribution<int> cut(lo + 1, hi - 1);
        int mid = cut(rng);
        std::string left = build(lo, mid, !join);
        std::string right = build(mid, hi, !join);
        if (join)
            for (int u = lo; u < mid; ++u)
                for (int v = mid; v < hi; ++v) g.add_edge(u, v);
        return std::string(join ? "(j " : "(u ") + left + " " + right + ")";
    }
};

} // namespace

CographResult gen_cograph(int n, std::uint64_t seed) {
    if (n < 1) throw InfeasibleParameters("need n >= 1");
    CotreeBuilder b(n, seed);
    std::string term = b.build(0, n, /*join=*/true);
    return CographResult{std::move(b.g), std::move(term)};
}

Graph gen_partial_ktree(int n, int k, int extra_removals, std::uint64_t seed) {
    if (n < 1 || k < 1 || extra_removals < 0) throw InfeasibleParameters("bad k-tree parameters");
    std::mt19937_64 rng(seed);
    const int base = std::min(n, k + 1);
    Graph g(n);
    for (int u = 0; u < base; ++u)
        for (int v = u + 1; v < base; ++v) g.add_edge(u, v);
    // Cliques available for attachment, as vertex lists of size min(k, base).
    std::vector<std::vector<int>> cliques;
    {
        std::vector<int> all(static_cast<std::size_t>(base));
        std::iota(all.begin(), all.end(), 0);
        if (base <= k) {
            cliques.push_back(all);
        } else {
            for (int skip = 0; skip < base; ++skip) {
                std::vector<int> c;
                for (int v : all)
                    if (v != skip) c.push_back(v);
                cliques.push_back(std::move(c));
            }
        }
    }
    for (int v = base; v < n; ++v) {
        std::uniform_int_distribution<std::size_t> pick(0, cliques.size() - 1);
        const auto clique = cliques[pick(rng)];
        for (int u : clique) g.add_edge(v, u);
        // New cliques: v plus each (k-1)-subset of the chosen clique.
        for (std::size_t skip = 0; skip < clique.size(); ++skip) {
            std::vector<int> c{v};
            for (std::size_t i = 0; i < clique.size(); ++i)
                if (i != skip) c.push_back(clique[i]);
            cliques.push_back(std::move(c));
        }
    }
    // Remove extra edges, never disconnecting the graph.
    auto is_bridge = [&](int u, int v) {
        // Connectivity check of g - uv via BFS that skips the edge once.
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::vector<int> stack{u};
        seen[static_cast<std::size_t>(u)] = 1;
        int visited = 0;
        while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            ++visited;
            for (int w : g.neighbors(x)) {
                if ((x == u && w == v) || (x == v && w == u)) continue;
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    stack.push_back(w);
                }
            }
        }
        return visited != n;
    };
    for (int r = 0; r < extra_removals; ++r) {
        auto edges = g.edges();
        std::shuffle(edges.begin(), edges.end(), rng);
        bool removed = false;
        for (auto [u, v] : edges) {
            if (g.edge_count() == n - 1) break;
            if (!is_bridge(u, v)) {
                Graph h(n);
                for (auto [a, c] : g.edges())
                    if (!(a == u && c == v)) h.add_edge(a, c);
                g = std::move(h);
                removed = true;
                break;
            }
        }
        if (!removed) break; // already a tree
    }
    return g;
}

Graph gen_split(int n_clique, int n_ind, double p, std::uint64_t seed) {
    if (n_clique < 1 || n_ind < 0 || p < 0.0 || p > 1.0)
        throw InfeasibleParameters("need n_clique >= 1, n_ind >= 0, p in [0,1]");
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution coin(p);
    Graph g(n_clique + n_ind);
    for (int u = 0; u < n_clique; ++u)
        for (int v = u + 1; v < n_clique; ++v) g.add_edge(u, v);
    std::uniform_int_distribution<int> anchor(0, n_clique - 1);
    for (int x = n_clique; x < n_clique + n_ind; ++x) {
        bool any = false;
        for (int u = 0; u < n_clique; ++u)
            if (coin(rng)) {
                g.add_edge(x, u);
                any = true;
            }
        if (!any) g.add_edge(x, anchor(rng));
    }
    return g;
}

} // namespace madst
