#include "madst/treewidth_dp.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <queue>

#include "madst/spanning_tree.hpp"
#include "madst/wiener.hpp"

namespace madst {

namespace {

struct Components {
    std::array<int, kMaxBag> comp_of{};
    int count = 0;
    bool acyclic = true;
};

Components forest_components(std::uint32_t forest, int bag_size) {
    Components c;
    std::array<int, kMaxBag> parent{};
    for (int i = 0; i < bag_size; ++i) parent[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
        return x;
    };
    for (int j = 0; j < bag_size; ++j)
        for (int i = 0; i < j; ++i)
            if (forest & (1u << pair_bit(i, j))) {
                int a = find(i), b = find(j);
                if (a == b) {
                    c.acyclic = false;
                    return c;
                }
                parent[static_cast<std::size_t>(a)] = b;
            }
    std::array<int, kMaxBag> label{};
    label.fill(-1);
    for (int i = 0; i < bag_size; ++i) {
        int r = find(i);
        if (label[static_cast<std::size_t>(r)] == -1) label[static_cast<std::size_t>(r)] = c.count++;
        c.comp_of[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(r)];
    }
    return c;
}

std::uint32_t remap_forest(std::uint32_t forest, int bag_size, const std::array<int, kMaxBag>& pos_map) {
    std::uint32_t out = 0;
    for (int j = 0; j < bag_size; ++j)
        for (int i = 0; i < j; ++i)
            if (forest & (1u << pair_bit(i, j))) {
                int a = pos_map[static_cast<std::size_t>(i)], b = pos_map[static_cast<std::size_t>(j)];
                if (a > b) std::swap(a, b);
                out |= 1u << pair_bit(a, b);
            }
    return out;
}

std::uint8_t remap_mask(std::uint8_t mask, const std::array<int, kMaxBag>& pos_map) {
    std::uint8_t out = 0;
    for (int p = 0; p < kMaxBag; ++p)
        if (mask & (1u << p)) out = static_cast<std::uint8_t>(out | (1u << pos_map[static_cast<std::size_t>(p)]));
    return out;
}

/// Inserts a connection mask keeping the list sorted. False on duplicates
/// (a duplicate below connection would close a cycle) or overflow.
bool add_connection(DpIndex& idx, std::uint8_t mask) {
    if (idx.connection_count >= kMaxConnections) return false;
    int pos = idx.connection_count;
    while (pos > 0 && idx.connections[static_cast<std::size_t>(pos - 1)] > mask) {
        idx.connections[static_cast<std::size_t>(pos)] = idx.connections[static_cast<std::size_t>(pos - 1)];
        --pos;
    }
    if (pos > 0 && idx.connections[static_cast<std::size_t>(pos - 1)] == mask) {
        // roll back the shift
        for (int q = pos; q < idx.connection_count; ++q)
            idx.connections[static_cast<std::size_t>(q)] = idx.connections[static_cast<std::size_t>(q + 1)];
        return false;
    }
    idx.connections[static_cast<std::size_t>(pos)] = mask;
    ++idx.connection_count;
    return true;
}

void insert_min(DpTable& table, const DpIndex& idx, std::uint64_t cost, std::uint64_t bound, int n) {
    if (cost > bound) return;
    if (!dp_index_feasible(idx, n)) return;
    auto [it, inserted] = table.emplace(idx, cost);
    if (!inserted && cost < it->second) it->second = cost;
}

// Enumerates integer tuples s[0..parts) with s[j] >= lb[j] summing to total.
void compositions(int total, const std::vector<int>& lb,
                  const std::function<void(const std::vector<int>&)>& cb) {
    std::vector<int> s(lb.size());
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
        if (j + 1 == s.size()) {
            if (left >= lb[j]) {
                s[j] = left;
                cb(s);
            }
            return;
        }
        int reserve = 0;
        for (std::size_t l = j + 1; l < s.size(); ++l) reserve += lb[l];
        for (int v = lb[j]; v <= left - reserve; ++v) {
            s[j] = v;
            rec(j + 1, left - v);
        }
    };
    if (!s.empty()) {
        rec(0, total);
    }
}

} // namespace

bool dp_index_feasible(const DpIndex& idx, int n) {
    const int b = idx.bag_size;
    auto comps = forest_components(idx.forest, b);
    if (!comps.acyclic) return false;
    // Per-component mass must account for every vertex of the graph.
    std::array<std::int64_t, kMaxBag> mass{};
    for (int i = 0; i < b; ++i)
        mass[static_cast<std::size_t>(comps.comp_of[static_cast<std::size_t>(i)])] +=
            1 + idx.above[static_cast<std::size_t>(i)] + idx.below[static_cast<std::size_t>(i)];
    for (int c = 0; c < comps.count; ++c)
        if (mass[static_cast<std::size_t>(c)] != n) return false;
    // Forest plus connection hubs must stay acyclic; this also gives each
    // connection at most one vertex per forest component.
    std::array<int, kMaxBag> parent{};
    for (int i = 0; i < b; ++i) parent[static_cast<std::size_t>(i)] = comps.comp_of[static_cast<std::size_t>(i)];
    // parent[] now maps position -> component label; use labels as DSU items.
    std::array<int, kMaxBag> dsu{};
    for (int i = 0; i < kMaxBag; ++i) dsu[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (dsu[static_cast<std::size_t>(x)] != x) x = dsu[static_cast<std::size_t>(x)];
        return x;
    };
    for (int ci = 0; ci < idx.connection_count; ++ci) {
        std::uint8_t mask = idx.connections[static_cast<std::size_t>(ci)];
        if (std::popcount(mask) < 2) return false;
        int first = -1;
        for (int p = 0; p < b; ++p) {
            if (!(mask & (1u << p))) continue;
            int comp = parent[static_cast<std::size_t>(p)];
            if (first == -1) {
                first = comp;
                continue;
            }
            int a = find(first), c = find(comp);
            if (a == c) return false; // cycle through the hub
            dsu[static_cast<std::size_t>(a)] = c;
        }
        if ((mask >> b) != 0) return false; // bits past the bag
    }
    return true;
}

NodeTable process_leaf(const NiceNode& node, int n) {
    NodeTable t;
    t.bag = node.bag;
    DpIndex idx;
    idx.bag_size = 1;
    idx.above[0] = static_cast<std::uint16_t>(n - 1);
    idx.below[0] = 0;
    t.entries.emplace(idx, 0);
    return t;
}

NodeTable process_introduce(const Graph& g, const NiceNode& node, const NodeTable& child, int n,
                            std::uint64_t bound) {
    NodeTable out;
    out.bag = node.bag;
    const int u = node.vertex;
    const int pb = static_cast<int>(node.bag.size());
    const int cb = pb - 1;
    if (pb > kMaxBag) throw TooLarge("bag size exceeds kMaxBag");
    const int pu = static_cast<int>(std::lower_bound(node.bag.begin(), node.bag.end(), u) - node.bag.begin());
    std::array<int, kMaxBag> pos_map{}; // child position -> parent position
    for (int c = 0; c < cb; ++c) pos_map[static_cast<std::size_t>(c)] = (c < pu) ? c : c + 1;

    // Child positions whose vertex is a G-neighbor of u.
    std::vector<int> candidates;
    for (int c = 0; c < cb; ++c)
        if (g.has_edge(u, child.bag[static_cast<std::size_t>(c)])) candidates.push_back(c);

    for (const auto& [cidx, cost] : child.entries) {
        auto comps = forest_components(cidx.forest, cb);
        // Base remap shared by all attach choices.
        DpIndex base;
        base.bag_size = static_cast<std::uint8_t>(pb);
        base.forest = remap_forest(cidx.forest, cb, pos_map);
        for (int c = 0; c < cb; ++c) {
            base.above[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(c)])] =
                cidx.above[static_cast<std::size_t>(c)];
            base.below[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(c)])] =
                cidx.below[static_cast<std::size_t>(c)];
        }
        base.connection_count = 0;
        bool conn_ok = true;
        for (int ci = 0; ci < cidx.connection_count; ++ci)
            conn_ok = conn_ok &&
                      add_connection(base, remap_mask(cidx.connections[static_cast<std::size_t>(ci)], pos_map));
        if (!conn_ok) continue;

        // u isolated in F: everything else sits above it.
        {
            DpIndex idx = base;
            idx.above[static_cast<std::size_t>(pu)] = static_cast<std::uint16_t>(n - 1);
            idx.below[static_cast<std::size_t>(pu)] = 0;
            insert_min(out.entries, idx, cost, bound, n);
        }
        if (candidates.empty()) continue;

        // Attach u to a set of distinct child components, one edge each.
        const int csz = static_cast<int>(candidates.size());
        for (std::uint32_t sel = 1; sel < (1u << csz); ++sel) {
            std::vector<int> attach;
            std::uint32_t comp_seen = 0;
            bool ok = true;
            for (int a = 0; a < csz && ok; ++a)
                if (sel & (1u << a)) {
                    int cpos = candidates[static_cast<std::size_t>(a)];
                    int comp = comps.comp_of[static_cast<std::size_t>(cpos)];
                    if (comp_seen & (1u << comp)) ok = false; // two edges into one component
                    comp_seen |= 1u << comp;
                    attach.push_back(cpos);
                }
            if (!ok) continue;
            const std::size_t j_count = attach.size();
            // Parent masses: alpha for u's side, S_j per attached component, with
            // (1 + alpha) + sum S_j = n. Child components each had mass n, so
            // abov(v_j) shrinks by n - S_j.
            std::vector<int> lb(j_count + 1, 0);
            for (std::size_t j = 0; j < j_count; ++j)
                lb[j + 1] = n - static_cast<int>(cidx.above[static_cast<std::size_t>(attach[j])]);
            for (std::size_t j = 0; j < j_count; ++j)
                if (lb[j + 1] < 1) lb[j + 1] = 1;
            compositions(n - 1, lb, [&](const std::vector<int>& s) {
                DpIndex idx = base;
                idx.above[static_cast<std::size_t>(pu)] = static_cast<std::uint16_t>(s[0]);
                idx.below[static_cast<std::size_t>(pu)] = 0;
                for (std::size_t j = 0; j < j_count; ++j) {
                    int cpos = attach[j];
                    int ppos = pos_map[static_cast<std::size_t>(cpos)];
                    int delta = n - s[j + 1];
                    idx.above[static_cast<std::size_t>(ppos)] =
                        static_cast<std::uint16_t>(cidx.above[static_cast<std::size_t>(cpos)] - delta);
                    int a = std::min(ppos, pu), b2 = std::max(ppos, pu);
                    idx.forest |= 1u << pair_bit(a, b2);
                }
                insert_min(out.entries, idx, cost, bound, n);
            });
        }
    }
    return out;
}

NodeTable process_join(const NiceNode& node, const NodeTable& left, const NodeTable& right,
                       std::uint64_t bound) {
    NodeTable out;
    out.bag = node.bag;
    const int b = static_cast<int>(node.bag.size());

    struct BucketKey {
        std::uint32_t forest;
        std::array<std::uint16_t, kMaxBag> sums;
        bool operator==(const BucketKey&) const = default;
    };
    struct BucketHash {
        std::size_t operator()(const BucketKey& k) const {
            std::uint64_t h = 1469598103934665603ull;
            auto mix = [&](std::uint64_t v) {
                h ^= v;
                h *= 1099511628211ull;
            };
            mix(k.forest);
            for (int i = 0; i < kMaxBag; ++i) mix(k.sums[static_cast<std::size_t>(i)]);
            return static_cast<std::size_t>(h);
        }
    };
    auto key_of = [&](const DpIndex& idx) {
        BucketKey k{idx.forest, {}};
        for (int i = 0; i < b; ++i)
            k.sums[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(
                idx.above[static_cast<std::size_t>(i)] + idx.below[static_cast<std::size_t>(i)]);
        return k;
    };

    const NodeTable& small = left.entries.size() <= right.entries.size() ? left : right;
    const NodeTable& big = left.entries.size() <= right.entries.size() ? right : left;
    std::unordered_map<BucketKey, std::vector<const std::pair<const DpIndex, std::uint64_t>*>, BucketHash> buckets;
    for (const auto& e : big.entries) buckets[key_of(e.first)].push_back(&e);

    const int n_hint = [&] { // for feasibility checks; recover n from any entry
        for (const auto& e : small.entries) {
            std::int64_t m = 0;
            auto comps = forest_components(e.first.forest, b);
            std::array<std::int64_t, kMaxBag> mass{};
            for (int i = 0; i < b; ++i)
                mass[static_cast<std::size_t>(comps.comp_of[static_cast<std::size_t>(i)])] +=
                    1 + e.first.above[static_cast<std::size_t>(i)] + e.first.below[static_cast<std::size_t>(i)];
            m = mass[0];
            return static_cast<int>(m);
        }
        return 0;
    }();

    for (const auto& [sidx, scost] : small.entries) {
        auto it = buckets.find(key_of(sidx));
        if (it == buckets.end()) continue;
        for (const auto* bentry : it->second) {
            const DpIndex& bidx = bentry->first;
            // Below counts split between the children; above makes up the rest.
            DpIndex idx;
            idx.bag_size = static_cast<std::uint8_t>(b);
            idx.forest = sidx.forest;
            bool ok = true;
            for (int i = 0; i < b && ok; ++i) {
                int above = static_cast<int>(sidx.above[static_cast<std::size_t>(i)]) -
                            static_cast<int>(bidx.below[static_cast<std::size_t>(i)]);
                if (above < 0) ok = false;
                idx.above[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(above);
                idx.below[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(
                    sidx.below[static_cast<std::size_t>(i)] + bidx.below[static_cast<std::size_t>(i)]);
            }
            if (!ok) continue;
            for (int ci = 0; ci < sidx.connection_count && ok; ++ci)
                ok = add_connection(idx, sidx.connections[static_cast<std::size_t>(ci)]);
            for (int ci = 0; ci < bidx.connection_count && ok; ++ci)
                ok = add_connection(idx, bidx.connections[static_cast<std::size_t>(ci)]);
            if (!ok) continue; // shared or overflowing connections
            insert_min(out.entries, idx, checked_add(scost, bentry->second), bound, n_hint);
        }
    }
    return out;
}

NodeTable process_forget(const Graph& g, const NiceNode& node, const NodeTable& child, int n,
                         std::uint64_t bound) {
    NodeTable out;
    out.bag = node.bag;
    const int u = node.vertex;
    const int cb = static_cast<int>(child.bag.size());
    const int pu = static_cast<int>(std::lower_bound(child.bag.begin(), child.bag.end(), u) - child.bag.begin());
    std::array<int, kMaxBag> pos_map{}; // child position -> parent position (pu unmapped)
    for (int c = 0; c < cb; ++c) pos_map[static_cast<std::size_t>(c)] = (c < pu) ? c : c - 1;
    (void)g;

    for (const auto& [cidx, cost] : child.entries) {
        if (cidx.above[static_cast<std::size_t>(pu)] != 0) continue;

        std::vector<int> x_positions; // F'-neighbors of u (child positions)
        for (int c = 0; c < cb; ++c) {
            if (c == pu) continue;
            int a = std::min(c, pu), b2 = std::max(c, pu);
            if (cidx.forest & (1u << pair_bit(a, b2))) x_positions.push_back(c);
        }
        std::vector<int> k_conns; // indices of connections containing u
        for (int ci = 0; ci < cidx.connection_count; ++ci)
            if (cidx.connections[static_cast<std::size_t>(ci)] & (1u << pu)) k_conns.push_back(ci);

        int links = static_cast<int>(x_positions.size());
        for (int ci : k_conns)
            links += std::popcount(cidx.connections[static_cast<std::size_t>(ci)]) - 1;
        if (links == 0) continue; // u would be cut off

        // Forest without u's edges, still in child positions.
        std::uint32_t forest_wo_u = cidx.forest;
        for (int v : x_positions) {
            int a = std::min(v, pu), b2 = std::max(v, pu);
            forest_wo_u &= ~(1u << pair_bit(a, b2));
        }

        DpIndex idx;
        idx.bag_size = static_cast<std::uint8_t>(cb - 1);
        idx.forest = remap_forest(forest_wo_u, cb, pos_map);
        for (int c = 0; c < cb; ++c) {
            if (c == pu) continue;
            idx.above[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(c)])] =
                cidx.above[static_cast<std::size_t>(c)];
            idx.below[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(c)])] =
                cidx.below[static_cast<std::size_t>(c)];
        }

        if (x_positions.size() == 1 && k_conns.empty()) {
            // Forgetting along a single tree edge uv: the edge's cost is
            // (i+1)(n-i-1) for i vertices below u; they all move below v.
            int v = x_positions[0];
            std::uint64_t i_below = cidx.below[static_cast<std::size_t>(pu)];
            bool ok = true;
            for (int ci = 0; ci < cidx.connection_count && ok; ++ci)
                ok = add_connection(idx, remap_mask(cidx.connections[static_cast<std::size_t>(ci)], pos_map));
            if (!ok) continue;
            idx.below[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(v)])] =
                static_cast<std::uint16_t>(cidx.below[static_cast<std::size_t>(v)] + i_below + 1);
            std::uint64_t w = checked_mul(i_below + 1, static_cast<std::uint64_t>(n) - (i_below + 1));
            insert_min(out.entries, idx, checked_add(cost, w), bound, n);
            continue;
        }
        if (x_positions.empty() && k_conns.size() == 1 &&
            std::popcount(cidx.connections[static_cast<std::size_t>(k_conns[0])]) == 2) {
            // u leaves through its single below connection {u, v}; nothing is
            // forgotten and the connection dissolves.
            bool ok = true;
            for (int ci = 0; ci < cidx.connection_count && ok; ++ci) {
                if (ci == k_conns[0]) continue;
                ok = add_connection(idx, remap_mask(cidx.connections[static_cast<std::size_t>(ci)], pos_map));
            }
            if (!ok) continue;
            insert_min(out.entries, idx, cost, bound, n);
            continue;
        }

        // Several edges and/or connections: they fuse into one below connection,
        // and each tree edge uv pays its contribution now.
        std::uint8_t new_conn = 0;
        for (int v : x_positions) new_conn = static_cast<std::uint8_t>(new_conn | (1u << v));
        for (int ci : k_conns)
            new_conn = static_cast<std::uint8_t>(
                new_conn | (cidx.connections[static_cast<std::size_t>(ci)] & ~(1u << pu)));
        auto comps = forest_components(forest_wo_u, cb);
        std::array<std::int64_t, kMaxBag> mass{};
        for (int c = 0; c < cb; ++c) {
            if (c == pu) continue;
            mass[static_cast<std::size_t>(comps.comp_of[static_cast<std::size_t>(c)])] +=
                1 + cidx.above[static_cast<std::size_t>(c)] + cidx.below[static_cast<std::size_t>(c)];
        }
        std::uint64_t total = cost;
        bool ok = true;
        for (int v : x_positions) {
            std::int64_t mv = mass[static_cast<std::size_t>(comps.comp_of[static_cast<std::size_t>(v)])];
            if (mv <= 0 || mv >= n) {
                ok = false;
                break;
            }
            total = checked_add(total, checked_mul(static_cast<std::uint64_t>(mv),
                                                   static_cast<std::uint64_t>(n - mv)));
            idx.below[static_cast<std::size_t>(pos_map[static_cast<std::size_t>(v)])] =
                static_cast<std::uint16_t>(cidx.below[static_cast<std::size_t>(v)] + (n - mv));
        }
        if (!ok) continue;
        for (int ci = 0; ci < cidx.connection_count && ok; ++ci) {
            if (std::find(k_conns.begin(), k_conns.end(), ci) != k_conns.end()) continue;
            ok = add_connection(idx, remap_mask(cidx.connections[static_cast<std::size_t>(ci)], pos_map));
        }
        if (ok) ok = add_connection(idx, remap_mask(new_conn, pos_map));
        if (!ok) continue;
        insert_min(out.entries, idx, total, bound, n);
    }
    return out;
}

namespace {

// Wiener index of a BFS tree from a median; a cheap valid upper bound for pruning.
std::uint64_t greedy_upper_bound(const Graph& g) {
    return wiener_tree(bfs_spanning_tree(g, median_vertices(g).front()));
}

} // namespace

TreewidthResult solve_treewidth(const Graph& g, std::uint64_t budget,
                                const std::optional<TreeDecomposition>& td) {
    const int n = g.vertex_count();
    if (n == 0) throw DisconnectedGraph("empty graph");
    if (!is_connected(g)) throw DisconnectedGraph();
    if (n == 1) return TreewidthResult{true, 0};

    TreeDecomposition dec = td ? *td : heuristic_tree_decomposition(g);
    NiceTreeDecomposition nice = to_nice(g, dec); // validates
    if (nice.width() + 1 > kMaxBag)
        throw TooLarge("decomposition width " + std::to_string(nice.width()) + " exceeds the supported maximum " +
                       std::to_string(kMaxBag - 1));

    const std::uint64_t bound = greedy_upper_bound(g);
    std::vector<std::optional<NodeTable>> tables(nice.nodes.size());
    for (std::size_t i = 0; i < nice.nodes.size(); ++i) {
        const NiceNode& nd = nice.nodes[i];
        switch (nd.kind) {
            case NodeKind::Leaf:
                tables[i] = process_leaf(nd, n);
                break;
            case NodeKind::Introduce:
                tables[i] = process_introduce(g, nd, *tables[static_cast<std::size_t>(nd.child)], n, bound);
                tables[static_cast<std::size_t>(nd.child)].reset();
                break;
            case NodeKind::Forget:
                tables[i] = process_forget(g, nd, *tables[static_cast<std::size_t>(nd.child)], n, bound);
                tables[static_cast<std::size_t>(nd.child)].reset();
                break;
            case NodeKind::Join:
                tables[i] = process_join(nd, *tables[static_cast<std::size_t>(nd.child)],
                                         *tables[static_cast<std::size_t>(nd.child2)], bound);
                tables[static_cast<std::size_t>(nd.child)].reset();
                tables[static_cast<std::size_t>(nd.child2)].reset();
                break;
        }
    }
    const auto& root_table = *tables.back();
    DpIndex want;
    want.bag_size = 1;
    want.above[0] = 0;
    want.below[0] = static_cast<std::uint16_t>(n - 1);
    auto it = root_table.entries.find(want);
    if (it == root_table.entries.end())
        throw Error("treewidth DP lost the root entry; decomposition or table bug");
    return TreewidthResult{it->second <= budget, it->second};
}

} // namespace madst
