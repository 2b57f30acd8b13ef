#include "madst/vertex_integrity.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>

#include "madst/oracle.hpp"
#include "madst/wiener.hpp"

namespace madst {

namespace {

std::vector<std::vector<int>> components_avoiding(const Graph& g, const std::vector<char>& banned) {
    const int n = g.vertex_count();
    std::vector<char> seen(banned.begin(), banned.end());
    std::vector<std::vector<int>> comps;
    for (int s = 0; s < n; ++s) {
        if (seen[static_cast<std::size_t>(s)]) continue;
        std::vector<int> comp;
        std::queue<int> q;
        q.push(s);
        seen[static_cast<std::size_t>(s)] = 1;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            comp.push_back(u);
            for (int w : g.neighbors(u))
                if (!seen[static_cast<std::size_t>(w)]) {
                    seen[static_cast<std::size_t>(w)] = 1;
                    q.push(w);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    std::sort(comps.begin(), comps.end());
    return comps;
}

// ---- canonical component codes -------------------------------------------

struct CompStructure {
    std::vector<int> vertices;            // sorted original ids
    std::vector<std::vector<char>> adj;   // local adjacency matrix
    std::vector<std::uint32_t> s_mask;    // per local vertex, bitmask over sorted S
};

CompStructure comp_structure(const Graph& g, const std::vector<int>& comp, const std::vector<int>& s) {
    CompStructure cs;
    cs.vertices = comp;
    const int c = static_cast<int>(comp.size());
    cs.adj.assign(static_cast<std::size_t>(c), std::vector<char>(static_cast<std::size_t>(c), 0));
    cs.s_mask.assign(static_cast<std::size_t>(c), 0);
    for (int i = 0; i < c; ++i) {
        for (int j = i + 1; j < c; ++j)
            if (g.has_edge(comp[static_cast<std::size_t>(i)], comp[static_cast<std::size_t>(j)])) {
                cs.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1;
                cs.adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = 1;
            }
        for (std::size_t k = 0; k < s.size(); ++k)
            if (g.has_edge(comp[static_cast<std::size_t>(i)], s[k])) cs.s_mask[static_cast<std::size_t>(i)] |= 1u << k;
    }
    return cs;
}

std::string serialize_under(const CompStructure& cs, const std::vector<int>& order) {
    const int c = static_cast<int>(order.size());
    std::string out;
    out.push_back(static_cast<char>(c));
    for (int p = 0; p < c; ++p)
        for (int q2 = p + 1; q2 < c; ++q2)
            out.push_back(cs.adj[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])]
                                [static_cast<std::size_t>(order[static_cast<std::size_t>(q2)])]
                              ? '1'
                              : '0');
    for (int p = 0; p < c; ++p) {
        std::uint32_t m = cs.s_mask[static_cast<std::size_t>(order[static_cast<std::size_t>(p)])];
        for (int b = 0; b < 4; ++b) out.push_back(static_cast<char>((m >> (8 * b)) & 0xff));
    }
    return out;
}

/// Enumerates the orderings that respect the (degree, S-mask) classes; any
/// isomorphism preserves those invariants, so the minimum over these orderings
/// is a sound canonical form.
void class_respecting_orders(const CompStructure& cs, const std::function<void(const std::vector<int>&)>& cb) {
    const int c = static_cast<int>(cs.vertices.size());
    std::vector<std::pair<std::uint64_t, int>> keyed;
    for (int i = 0; i < c; ++i) {
        std::uint64_t deg = 0;
        for (int j = 0; j < c; ++j) deg += cs.adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        keyed.emplace_back((deg << 32) | cs.s_mask[static_cast<std::size_t>(i)], i);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::vector<int>> classes;
    for (std::size_t i = 0; i < keyed.size(); ++i) {
        if (i == 0 || keyed[i].first != keyed[i - 1].first) classes.emplace_back();
        classes.back().push_back(keyed[i].second);
    }
    for (auto& cl : classes) std::sort(cl.begin(), cl.end());
    // Odometer over per-class permutations.
    std::function<void(std::size_t, std::vector<int>&)> rec = [&](std::size_t ci, std::vector<int>& acc) {
        if (ci == classes.size()) {
            cb(acc);
            return;
        }
        std::vector<int> perm = classes[ci];
        std::sort(perm.begin(), perm.end());
        do {
            std::size_t base = acc.size();
            acc.insert(acc.end(), perm.begin(), perm.end());
            rec(ci + 1, acc);
            acc.resize(base);
        } while (std::next_permutation(perm.begin(), perm.end()));
    };
    std::vector<int> acc;
    rec(0, acc);
}

struct Canonical {
    std::string code;
    std::vector<int> order; // canonical position -> local index
};

Canonical canonical_form(const CompStructure& cs) {
    Canonical best;
    class_respecting_orders(cs, [&](const std::vector<int>& order) {
        std::string code = serialize_under(cs, order);
        if (best.code.empty() || code < best.code) {
            best.code = code;
            best.order = order;
        }
    });
    return best;
}

/// Automorphisms of the canonically ordered structure, as position permutations.
std::vector<std::vector<int>> automorphisms(const CompStructure& cs, const std::vector<int>& canon_order) {
    const int c = static_cast<int>(canon_order.size());
    // Re-index so position p carries the canonical structure.
    CompStructure ordered;
    ordered.vertices.resize(static_cast<std::size_t>(c));
    ordered.adj.assign(static_cast<std::size_t>(c), std::vector<char>(static_cast<std::size_t>(c), 0));
    ordered.s_mask.assign(static_cast<std::size_t>(c), 0);
    for (int p = 0; p < c; ++p) {
        ordered.s_mask[static_cast<std::size_t>(p)] = cs.s_mask[static_cast<std::size_t>(canon_order[static_cast<std::size_t>(p)])];
        for (int q2 = 0; q2 < c; ++q2)
            ordered.adj[static_cast<std::size_t>(p)][static_cast<std::size_t>(q2)] =
                cs.adj[static_cast<std::size_t>(canon_order[static_cast<std::size_t>(p)])]
                      [static_cast<std::size_t>(canon_order[static_cast<std::size_t>(q2)])];
    }
    std::string reference = serialize_under(ordered, [&] {
        std::vector<int> id(static_cast<std::size_t>(c));
        std::iota(id.begin(), id.end(), 0);
        return id;
    }());
    std::vector<std::vector<int>> autos;
    class_respecting_orders(ordered, [&](const std::vector<int>& order) {
        if (serialize_under(ordered, order) == reference) autos.push_back(order);
    });
    return autos;
}

std::string extension_code(const std::vector<std::pair<int, int>>& internal,
                           const std::vector<std::pair<int, int>>& crossing,
                           const std::vector<std::vector<int>>& autos) {
    std::string best;
    for (const auto& sigma : autos) {
        std::vector<std::pair<int, int>> in2, cr2;
        in2.reserve(internal.size());
        cr2.reserve(crossing.size());
        for (auto [p, q2] : internal) {
            int a = sigma[static_cast<std::size_t>(p)], b = sigma[static_cast<std::size_t>(q2)];
            in2.emplace_back(std::min(a, b), std::max(a, b));
        }
        for (auto [p, s] : crossing) cr2.emplace_back(sigma[static_cast<std::size_t>(p)], s);
        std::sort(in2.begin(), in2.end());
        std::sort(cr2.begin(), cr2.end());
        std::string code;
        for (auto [a, b] : in2) {
            code.push_back(static_cast<char>('i'));
            code.push_back(static_cast<char>(a));
            code.push_back(static_cast<char>(b));
        }
        for (auto [a, s] : cr2) {
            code.push_back(static_cast<char>('x'));
            code.push_back(static_cast<char>(a));
            code.append(std::to_string(s));
            code.push_back(';');
        }
        if (best.empty() || code < best) best = std::move(code);
    }
    return best;
}

} // namespace

VIWitness vi_witness(const Graph& g) {
    const int n = g.vertex_count();
    if (n > 24) throw TooLarge("vertex-integrity witness brute force limited to n <= 24");
    VIWitness best;
    best.integrity = n + 1;
    std::vector<char> banned(static_cast<std::size_t>(n), 0);
    for (int size = 0; size <= n; ++size) {
        if (size + (size < n ? 1 : 0) >= best.integrity) break;
        // Lexicographic combinations of the given size.
        std::vector<int> pick(static_cast<std::size_t>(size));
        std::iota(pick.begin(), pick.end(), 0);
        while (true) {
            std::fill(banned.begin(), banned.end(), 0);
            for (int v : pick) banned[static_cast<std::size_t>(v)] = 1;
            auto comps = components_avoiding(g, banned);
            int largest = 0;
            for (const auto& c : comps) largest = std::max(largest, static_cast<int>(c.size()));
            int val = size + largest;
            if (val < best.integrity) {
                best.integrity = val;
                best.separator = pick;
                best.components = comps;
            }
            // next combination
            int i = size - 1;
            while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
            if (i < 0) break;
            ++pick[static_cast<std::size_t>(i)];
            for (int j = i + 1; j < size; ++j)
                pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
        }
    }
    return best;
}

std::vector<std::vector<int>> connected_components_without(const Graph& g, const std::vector<int>& s) {
    std::vector<char> banned(static_cast<std::size_t>(g.vertex_count()), 0);
    for (int v : s) banned[static_cast<std::size_t>(v)] = 1;
    return components_avoiding(g, banned);
}

std::map<std::string, std::vector<std::vector<int>>> classify_components(const Graph& g,
                                                                         const std::vector<int>& s) {
    std::map<std::string, std::vector<std::vector<int>>> out;
    for (auto& comp : connected_components_without(g, s)) {
        auto cs = comp_structure(g, comp, s);
        out[canonical_form(cs).code].push_back(comp);
    }
    return out;
}

namespace {

struct Attachment {
    std::vector<std::pair<int, int>> internal; // canonical positions
    std::vector<std::pair<int, int>> crossing; // (canonical position, S vertex)
};

/// All ways to hang `comp` (in canonical coordinates) onto an already-connected
/// host: spanning trees of comp plus one hub standing for the host.
void enumerate_attachments(const Graph& g, const std::vector<int>& comp,
                           const std::vector<int>& canon_order, const std::vector<int>& s_candidates,
                           const std::function<void(const Attachment&)>& cb) {
    const int c = static_cast<int>(comp.size());
    std::vector<int> pos_vertex(static_cast<std::size_t>(c)); // canonical position -> original id
    for (int p = 0; p < c; ++p)
        pos_vertex[static_cast<std::size_t>(p)] = comp[static_cast<std::size_t>(canon_order[static_cast<std::size_t>(p)])];
    std::vector<Edge> medges;                       // vertex 0 = hub, 1..c = positions
    std::vector<std::pair<int, int>> labels;        // parallel edges keep their (pos, s) label
    for (int p = 0; p < c; ++p)
        for (int q2 = p + 1; q2 < c; ++q2)
            if (g.has_edge(pos_vertex[static_cast<std::size_t>(p)], pos_vertex[static_cast<std::size_t>(q2)])) {
                medges.emplace_back(p + 1, q2 + 1);
                labels.emplace_back(-1, -1);
            }
    for (int p = 0; p < c; ++p)
        for (int s : s_candidates)
            if (g.has_edge(pos_vertex[static_cast<std::size_t>(p)], s)) {
                medges.emplace_back(0, p + 1);
                labels.emplace_back(p, s);
            }
    enumerate_spanning_edge_subsets(c + 1, medges, [&](const std::vector<int>& idx) {
        Attachment at;
        for (int i : idx) {
            if (labels[static_cast<std::size_t>(i)].first == -1) {
                auto [a, b] = medges[static_cast<std::size_t>(i)];
                at.internal.emplace_back(a - 1, b - 1);
            } else {
                at.crossing.push_back(labels[static_cast<std::size_t>(i)]);
            }
        }
        cb(at);
        return true;
    });
}

std::vector<Edge> instantiate(const Attachment& at, const std::vector<int>& comp,
                              const std::vector<int>& canon_order) {
    std::vector<Edge> out;
    auto vertex_at = [&](int p) {
        return comp[static_cast<std::size_t>(canon_order[static_cast<std::size_t>(p)])];
    };
    for (auto [p, q2] : at.internal) out.push_back(make_edge(vertex_at(p), vertex_at(q2)));
    for (auto [p, s] : at.crossing) out.push_back(make_edge(vertex_at(p), s));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

std::vector<CandidateTree> enumerate_candidate_trees(const Graph& g, const std::vector<int>& s,
                                                     const VIOptions& options) {
    std::vector<int> sep = s;
    std::sort(sep.begin(), sep.end());
    if (sep.empty()) throw InfeasibleParameters("separator must be nonempty");
    const int ssz = static_cast<int>(sep.size());

    // Forests on S as acyclic subsets of E(G[S]).
    std::vector<Edge> s_edges;
    for (int i = 0; i < ssz; ++i)
        for (int j = i + 1; j < ssz; ++j)
            if (g.has_edge(sep[static_cast<std::size_t>(i)], sep[static_cast<std::size_t>(j)]))
                s_edges.emplace_back(i, j); // S-local indices
    if (s_edges.size() > 20) throw TooLarge("separator too dense for forest enumeration");

    auto typed = classify_components(g, sep);
    std::vector<std::pair<std::string, std::vector<std::vector<int>>>> types(typed.begin(), typed.end());

    // Canonical data per concrete component, computed once.
    struct CanonCache {
        Canonical canon;
        std::vector<std::vector<int>> autos;
    };
    std::map<std::vector<int>, CanonCache> canon_cache;
    for (const auto& [code, comps] : types)
        for (const auto& comp : comps) {
            auto cs = comp_structure(g, comp, sep);
            CanonCache cc;
            cc.canon = canonical_form(cs);
            cc.autos = automorphisms(cs, cc.canon.order);
            canon_cache.emplace(comp, std::move(cc));
        }

    std::vector<CandidateTree> out;
    std::set<std::string> signatures;

    for (std::uint32_t fmask = 0; fmask < (1u << s_edges.size()); ++fmask) {
        // Check acyclicity and find the forest components over S-local indices.
        std::vector<int> comp_of(static_cast<std::size_t>(ssz));
        std::iota(comp_of.begin(), comp_of.end(), 0);
        std::function<int(int)> find = [&](int x) {
            while (comp_of[static_cast<std::size_t>(x)] != x) x = comp_of[static_cast<std::size_t>(x)];
            return x;
        };
        bool forest = true;
        std::vector<Edge> fs_edges;
        for (std::size_t e = 0; e < s_edges.size() && forest; ++e)
            if (fmask & (1u << e)) {
                int a = find(s_edges[e].first), b = find(s_edges[e].second);
                if (a == b)
                    forest = false;
                else {
                    comp_of[static_cast<std::size_t>(a)] = b;
                    fs_edges.push_back(make_edge(sep[static_cast<std::size_t>(s_edges[e].first)],
                                                 sep[static_cast<std::size_t>(s_edges[e].second)]));
                }
            }
        if (!forest) continue;
        std::vector<int> f_label(static_cast<std::size_t>(ssz), -1);
        int r = 0;
        for (int i = 0; i < ssz; ++i) {
            int root = find(i);
            if (f_label[static_cast<std::size_t>(root)] == -1) f_label[static_cast<std::size_t>(root)] = r++;
            f_label[static_cast<std::size_t>(i)] = f_label[static_cast<std::size_t>(root)];
        }

        // Connector counts per type, total at most r-1.
        std::vector<int> counts(types.size(), 0);
        std::function<void(std::size_t, int)> choose = [&](std::size_t ti, int left) {
            if (ti == types.size()) {
                // Assemble the multigraph: r forest hubs + chosen components.
                std::vector<std::vector<int>> chosen;          // concrete comps
                std::vector<int> chosen_type;
                for (std::size_t t = 0; t < types.size(); ++t)
                    for (int c = 0; c < counts[t]; ++c) {
                        chosen.push_back(types[t].second[static_cast<std::size_t>(c)]);
                        chosen_type.push_back(static_cast<int>(t));
                    }
                int hub_count = r;
                std::vector<int> vertex_node; // per chosen comp, base node id
                int node_count = hub_count;
                std::vector<int> node_of_vertex(static_cast<std::size_t>(g.vertex_count()), -1);
                for (const auto& comp : chosen) {
                    vertex_node.push_back(node_count);
                    for (int v : comp) node_of_vertex[static_cast<std::size_t>(v)] = node_count++;
                }
                for (int i = 0; i < ssz; ++i)
                    node_of_vertex[static_cast<std::size_t>(sep[static_cast<std::size_t>(i)])] =
                        f_label[static_cast<std::size_t>(i)];
                std::vector<Edge> medges;
                std::vector<Edge> original;
                for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
                    const auto& comp = chosen[ci];
                    for (std::size_t a = 0; a < comp.size(); ++a) {
                        for (std::size_t b = a + 1; b < comp.size(); ++b)
                            if (g.has_edge(comp[a], comp[b])) {
                                medges.emplace_back(node_of_vertex[static_cast<std::size_t>(comp[a])],
                                                    node_of_vertex[static_cast<std::size_t>(comp[b])]);
                                original.push_back(make_edge(comp[a], comp[b]));
                            }
                        for (int i = 0; i < ssz; ++i)
                            if (g.has_edge(comp[a], sep[static_cast<std::size_t>(i)])) {
                                medges.emplace_back(node_of_vertex[static_cast<std::size_t>(comp[a])],
                                                    f_label[static_cast<std::size_t>(i)]);
                                original.push_back(make_edge(comp[a], sep[static_cast<std::size_t>(i)]));
                            }
                    }
                }
                // A single hub with no connectors is the bare forest-as-tree case.
                if (node_count == 1 && chosen.empty()) {
                    CandidateTree ct;
                    ct.vertices = sep;
                    ct.edges = fs_edges;
                    std::string sig = "F";
                    for (auto [a, b] : fs_edges) sig += std::to_string(a) + "," + std::to_string(b) + ";";
                    if (signatures.insert(sig).second) out.push_back(std::move(ct));
                    return;
                }
                if (chosen.empty() && r > 1) return; // disconnected forest, no connectors
                bool connectable = true;
                try {
                    enumerate_spanning_edge_subsets(node_count, medges, [&](const std::vector<int>& idx) {
                        // Every connector must link at least two distinct hubs,
                        // otherwise a smaller candidate tree already covers it.
                        std::vector<std::set<int>> hub_touch(chosen.size());
                        for (int e : idx) {
                            auto [a, b] = medges[static_cast<std::size_t>(e)];
                            int hub = std::min(a, b), other = std::max(a, b);
                            if (hub < hub_count && other >= hub_count) {
                                // find which comp `other` belongs to
                                for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
                                    int base = vertex_node[ci];
                                    int end = base + static_cast<int>(chosen[ci].size());
                                    if (other >= base && other < end) {
                                        hub_touch[ci].insert(hub);
                                        break;
                                    }
                                }
                            }
                        }
                        for (const auto& touched : hub_touch)
                            if (touched.size() < 2) return true; // skip, keep enumerating
                        CandidateTree ct;
                        ct.vertices = sep;
                        for (const auto& comp : chosen) ct.vertices.insert(ct.vertices.end(), comp.begin(), comp.end());
                        std::sort(ct.vertices.begin(), ct.vertices.end());
                        ct.edges = fs_edges;
                        for (int e : idx) ct.edges.push_back(original[static_cast<std::size_t>(e)]);
                        std::sort(ct.edges.begin(), ct.edges.end());
                        // Signature: forest edges plus per-connector canonical attachments.
                        std::vector<std::string> parts;
                        for (std::size_t ci = 0; ci < chosen.size(); ++ci) {
                            const auto& comp = chosen[ci];
                            const auto& cached = canon_cache.at(comp);
                            const auto& canon = cached.canon;
                            const auto& autos = cached.autos;
                            std::vector<int> vertex_pos(static_cast<std::size_t>(g.vertex_count()), -1);
                            for (int p = 0; p < static_cast<int>(comp.size()); ++p)
                                vertex_pos[static_cast<std::size_t>(
                                    comp[static_cast<std::size_t>(canon.order[static_cast<std::size_t>(p)])])] = p;
                            std::vector<std::pair<int, int>> internal, crossing;
                            for (auto [a, b] : ct.edges) {
                                bool a_in = vertex_pos[static_cast<std::size_t>(a)] != -1 &&
                                            std::binary_search(comp.begin(), comp.end(), a);
                                bool b_in = vertex_pos[static_cast<std::size_t>(b)] != -1 &&
                                            std::binary_search(comp.begin(), comp.end(), b);
                                if (a_in && b_in)
                                    internal.emplace_back(vertex_pos[static_cast<std::size_t>(a)],
                                                          vertex_pos[static_cast<std::size_t>(b)]);
                                else if (a_in && std::binary_search(sep.begin(), sep.end(), b))
                                    crossing.emplace_back(vertex_pos[static_cast<std::size_t>(a)], b);
                                else if (b_in && std::binary_search(sep.begin(), sep.end(), a))
                                    crossing.emplace_back(vertex_pos[static_cast<std::size_t>(b)], a);
                            }
                            parts.push_back(types[static_cast<std::size_t>(chosen_type[ci])].first + "|" +
                                            extension_code(internal, crossing, autos));
                        }
                        std::sort(parts.begin(), parts.end());
                        std::string sig = "F";
                        for (auto [a, b] : fs_edges) sig += std::to_string(a) + "," + std::to_string(b) + ";";
                        for (const auto& p2 : parts) sig += "#" + p2;
                        if (signatures.insert(sig).second) {
                            out.push_back(std::move(ct));
                            if (out.size() > options.max_candidate_trees)
                                throw TooLarge("candidate tree budget exceeded");
                        }
                        return true;
                    });
                } catch (const DisconnectedGraph&) {
                    connectable = false; // this connector multiset cannot join the forest
                }
                (void)connectable;
                return;
            }
            int limit = std::min(static_cast<int>(types[ti].second.size()), left);
            for (int c = 0; c <= limit; ++c) {
                counts[ti] = c;
                choose(ti + 1, left - c);
            }
            counts[ti] = 0;
        };
        choose(0, r - 1);
    }
    std::sort(out.begin(), out.end(), [](const CandidateTree& a, const CandidateTree& b) {
        if (a.vertices != b.vertices) return a.vertices < b.vertices;
        return a.edges < b.edges;
    });
    return out;
}

namespace {

std::uint64_t tree_wiener_local(const CandidateTree& ts) {
    // Relabel to dense ids and reuse the tree formula.
    std::vector<int> index(ts.vertices.size());
    std::iota(index.begin(), index.end(), 0);
    std::vector<Edge> edges;
    auto local = [&](int v) {
        return static_cast<int>(std::lower_bound(ts.vertices.begin(), ts.vertices.end(), v) - ts.vertices.begin());
    };
    for (auto [a, b] : ts.edges) edges.push_back(make_edge(local(a), local(b)));
    return wiener_tree(SpanningTree(static_cast<int>(ts.vertices.size()), std::move(edges)));
}

/// Distance sums over an explicit edge set: BFS from each source vertex.
struct ScratchGraph {
    std::vector<std::vector<int>> adj;
    explicit ScratchGraph(int n) : adj(static_cast<std::size_t>(n)) {}
    void add(const std::vector<Edge>& edges) {
        for (auto [a, b] : edges) {
            adj[static_cast<std::size_t>(a)].push_back(b);
            adj[static_cast<std::size_t>(b)].push_back(a);
        }
    }
    std::vector<int> bfs(int source) const {
        std::vector<int> dist(adj.size(), -1);
        std::queue<int> q;
        q.push(source);
        dist[static_cast<std::size_t>(source)] = 0;
        while (!q.empty()) {
            int u = q.front();
            q.pop();
            for (int w : adj[static_cast<std::size_t>(u)])
                if (dist[static_cast<std::size_t>(w)] == -1) {
                    dist[static_cast<std::size_t>(w)] = dist[static_cast<std::size_t>(u)] + 1;
                    q.push(w);
                }
        }
        return dist;
    }
};

} // namespace

ViConstants extension_constants(const Graph& g, const std::vector<int>& s, const CandidateTree& ts,
                                const VIOptions& options) {
    ViConstants out;
    out.ts = ts;
    out.w_ts = tree_wiener_local(ts);

    auto residual = connected_components_without(g, ts.vertices);
    std::map<std::string, std::vector<std::vector<int>>> typed;
    std::vector<int> sep = s;
    std::sort(sep.begin(), sep.end());
    for (auto& comp : residual) {
        if (static_cast<int>(comp.size()) > options.max_component_size)
            throw TooLarge("residual component larger than the configured bound");
        auto cs = comp_structure(g, comp, sep);
        typed[canonical_form(cs).code].push_back(comp);
    }

    for (auto& [code, comps] : typed) {
        ViType vt;
        vt.code = code;
        vt.components = comps;
        for (const auto& comp : comps) {
            auto cs = comp_structure(g, comp, sep);
            vt.canonical_order.push_back(canonical_form(cs).order);
        }
        // Extensions on the representative, deduplicated by automorphism class.
        auto cs0 = comp_structure(g, comps[0], sep);
        auto canon0 = canonical_form(cs0);
        auto autos = automorphisms(cs0, canon0.order);
        std::map<std::string, Attachment> dedup;
        enumerate_attachments(g, comps[0], canon0.order, sep, [&](const Attachment& at) {
            std::string acode = extension_code(at.internal, at.crossing, autos);
            dedup.emplace(std::move(acode), at);
        });
        if (dedup.empty()) throw InfeasibleCounts("a residual component admits no attachment");
        for (auto& [acode, at] : dedup) {
            ViExtension e;
            e.code = acode;
            e.internal = at.internal;
            e.crossing = at.crossing;
            vt.extensions.push_back(std::move(e));
        }
        out.types.push_back(std::move(vt));
    }

    for (std::size_t t = 0; t < out.types.size(); ++t)
        for (std::size_t e = 0; e < out.types[t].extensions.size(); ++e)
            out.buckets.emplace_back(static_cast<int>(t), static_cast<int>(e));

    const int n = g.vertex_count();
    const std::size_t nb = out.buckets.size();
    out.d_internal.assign(nb, 0);
    out.d_to_ts.assign(nb, 0);
    out.d_pair.assign(nb, std::vector<std::uint64_t>(nb, 0));

    auto attach_edges = [&](int type, int ext, int comp_index) {
        const ViType& vt = out.types[static_cast<std::size_t>(type)];
        Attachment at{vt.extensions[static_cast<std::size_t>(ext)].internal,
                      vt.extensions[static_cast<std::size_t>(ext)].crossing};
        return instantiate(at, vt.components[static_cast<std::size_t>(comp_index)],
                           vt.canonical_order[static_cast<std::size_t>(comp_index)]);
    };

    for (std::size_t b = 0; b < nb; ++b) {
        auto [t, e] = out.buckets[b];
        const auto& comp = out.types[static_cast<std::size_t>(t)].components[0];
        ScratchGraph sg(n);
        sg.add(ts.edges);
        sg.add(attach_edges(t, e, 0));
        std::uint64_t internal = 0, to_ts = 0;
        for (int u : comp) {
            auto dist = sg.bfs(u);
            for (int v : comp)
                if (v > u) internal += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(v)]);
            for (int v : ts.vertices) to_ts += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(v)]);
        }
        out.d_internal[b] = internal;
        out.d_to_ts[b] = to_ts;
    }
    for (std::size_t b1 = 0; b1 < nb; ++b1) {
        for (std::size_t b2 = b1; b2 < nb; ++b2) {
            auto [t1, e1] = out.buckets[b1];
            auto [t2, e2] = out.buckets[b2];
            int comp1 = 0, comp2 = 0;
            if (t1 == t2) {
                if (out.types[static_cast<std::size_t>(t1)].components.size() < 2) continue; // value never used
                comp2 = 1;
            }
            const auto& ca = out.types[static_cast<std::size_t>(t1)].components[static_cast<std::size_t>(comp1)];
            const auto& cb = out.types[static_cast<std::size_t>(t2)].components[static_cast<std::size_t>(comp2)];
            ScratchGraph sg(n);
            sg.add(ts.edges);
            sg.add(attach_edges(t1, e1, comp1));
            sg.add(attach_edges(t2, e2, comp2));
            std::uint64_t sum = 0;
            for (int u : ca) {
                auto dist = sg.bfs(u);
                for (int v : cb) sum += static_cast<std::uint64_t>(dist[static_cast<std::size_t>(v)]);
            }
            out.d_pair[b1][b2] = sum;
            out.d_pair[b2][b1] = sum;
        }
    }
    return out;
}

ViAssignment solve_extension_counts(const ViConstants& constants, const VIOptions& options) {
    const std::size_t nb = constants.buckets.size();
    ViAssignment best;
    if (nb == 0) return best; // nothing to place, objective 0

    // State-count guard.
    double states = 1.0;
    for (const auto& vt : constants.types) {
        double n_t = static_cast<double>(vt.components.size());
        double e_t = static_cast<double>(vt.extensions.size());
        double ways = 1.0;
        for (double i = 0; i < e_t - 1; ++i) ways = ways * (n_t + i + 1) / (i + 1);
        states *= std::max(1.0, ways);
        if (states > static_cast<double>(options.max_assignments))
            throw TooLarge("assignment enumeration budget exceeded");
    }

    std::vector<std::uint64_t> x(nb, 0);
    bool have = false;
    auto evaluate = [&]() {
        std::uint64_t obj = 0;
        for (std::size_t i = 0; i < nb; ++i) {
            if (x[i] == 0) continue;
            obj = checked_add(obj, checked_mul(x[i], checked_add(constants.d_internal[i], constants.d_to_ts[i])));
            obj = checked_add(obj, checked_mul(x[i] * (x[i] - 1) / 2, constants.d_pair[i][i]));
            for (std::size_t j = i + 1; j < nb; ++j)
                if (x[j] > 0) obj = checked_add(obj, checked_mul(checked_mul(x[i], x[j]), constants.d_pair[i][j]));
        }
        if (!have || obj < best.objective) {
            best.objective = obj;
            best.counts = x;
            have = true;
        }
    };
    // DFS in lexicographic order; the last bucket of each type takes the rest.
    std::function<void(std::size_t, std::size_t, std::uint64_t)> rec = [&](std::size_t b, std::size_t type_start,
                                                                           std::uint64_t left) {
        if (b == nb) {
            evaluate();
            return;
        }
        auto [t, e] = constants.buckets[b];
        if (static_cast<std::size_t>(t) != type_start) {
            // entering a new type
            left = constants.types[static_cast<std::size_t>(t)].components.size();
            type_start = static_cast<std::size_t>(t);
        }
        bool last_of_type = (b + 1 == nb) || (constants.buckets[b + 1].first != t);
        if (last_of_type) {
            x[b] = left;
            rec(b + 1, type_start, 0);
            x[b] = 0;
            return;
        }
        for (std::uint64_t v = 0; v <= left; ++v) {
            x[b] = v;
            rec(b + 1, type_start, left - v);
        }
        x[b] = 0;
    };
    // Seed: give the first type its count.
    rec(0, static_cast<std::size_t>(-1), 0);
    return best;
}

ViResult solve_vertex_integrity(const Graph& g, std::uint64_t budget, VIOptions options) {
    const int n = g.vertex_count();
    if (n == 0) throw DisconnectedGraph("empty graph");
    if (!is_connected(g)) throw DisconnectedGraph();
    if (n == 1) return ViResult{true, 0, SpanningTree(1, {})};

    auto witness = vi_witness(g);
    std::vector<int> s = witness.separator;
    if (s.empty()) s.push_back(0); // the framework needs a seed separator
    for (const auto& comp : connected_components_without(g, s))
        if (static_cast<int>(comp.size()) > options.max_component_size)
            throw TooLarge("a component of G - S exceeds the configured size bound");

    auto candidates = enumerate_candidate_trees(g, s, options);
    ViResult best;
    bool have = false;
    for (const auto& ts : candidates) {
        auto constants = extension_constants(g, s, ts, options);
        auto assignment = solve_extension_counts(constants, options);
        std::uint64_t total = checked_add(constants.w_ts, assignment.objective);
        if (have && total > best.wiener) continue;
        // Materialize: hand out extensions to concrete components per type.
        std::vector<Edge> edges = ts.edges;
        for (std::size_t t = 0; t < constants.types.size(); ++t) {
            std::size_t comp_index = 0;
            for (std::size_t b = 0; b < constants.buckets.size(); ++b) {
                if (constants.buckets[b].first != static_cast<int>(t)) continue;
                for (std::uint64_t c2 = 0; c2 < (b < assignment.counts.size() ? assignment.counts[b] : 0); ++c2) {
                    const ViType& vt = constants.types[t];
                    Attachment at{vt.extensions[static_cast<std::size_t>(constants.buckets[b].second)].internal,
                                  vt.extensions[static_cast<std::size_t>(constants.buckets[b].second)].crossing};
                    auto inst = instantiate(at, vt.components[comp_index], vt.canonical_order[comp_index]);
                    edges.insert(edges.end(), inst.begin(), inst.end());
                    ++comp_index;
                }
            }
        }
        SpanningTree tree(n, std::move(edges));
        if (!have || total < best.wiener || (total == best.wiener && tree < *best.tree)) {
            best.wiener = total;
            best.tree = std::move(tree);
            have = true;
        }
    }
    if (!have) throw Error("vertex-integrity solver produced no candidate tree");
    best.yes = best.wiener <= budget;
    return best;
}

} // namespace madst
