#include "madst/tree_decomposition.hpp"

#include <algorithm>
#include <fstream>
#include <queue>
#include <set>
#include <sstream>

namespace madst {

std::vector<std::string> decomposition_violations(const Graph& g, const TreeDecomposition& td) {
    std::vector<std::string> out;
    const int n = g.vertex_count();
    if (td.n != n) out.push_back("decomposition is for a different vertex count");
    if (td.bags.empty()) {
        out.push_back("no bags");
        return out;
    }
    for (std::size_t i = 0; i < td.bags.size(); ++i)
        for (int v : td.bags[i])
            if (v < 0 || v >= n) out.push_back("bag " + std::to_string(i) + " has out-of-range vertex");
    // The bag relation must be a tree.
    const int bcount = static_cast<int>(td.bags.size());
    if (static_cast<int>(td.tree_edges.size()) != bcount - 1)
        out.push_back("decomposition tree must have #bags-1 edges");
    std::vector<std::vector<int>> badj(td.bags.size());
    for (auto [a, b] : td.tree_edges) {
        if (a < 0 || a >= bcount || b < 0 || b >= bcount || a == b) {
            out.push_back("bad decomposition tree edge");
            return out;
        }
        badj[static_cast<std::size_t>(a)].push_back(b);
        badj[static_cast<std::size_t>(b)].push_back(a);
    }
    {
        std::vector<char> seen(td.bags.size(), 0);
        std::queue<int> q;
        q.push(0);
        seen[0] = 1;
        int cnt = 0;
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            ++cnt;
            for (int y : badj[static_cast<std::size_t>(x)])
                if (!seen[static_cast<std::size_t>(y)]) {
                    seen[static_cast<std::size_t>(y)] = 1;
                    q.push(y);
                }
        }
        if (cnt != bcount) out.push_back("decomposition tree is disconnected");
    }
    // Vertex coverage and connected occurrence subtrees.
    for (int v = 0; v < n; ++v) {
        std::vector<int> holding;
        for (std::size_t i = 0; i < td.bags.size(); ++i)
            if (std::binary_search(td.bags[i].begin(), td.bags[i].end(), v))
                holding.push_back(static_cast<int>(i));
        if (holding.empty()) {
            out.push_back("vertex " + std::to_string(v) + " appears in no bag");
            continue;
        }
        std::set<int> member(holding.begin(), holding.end());
        std::queue<int> q;
        q.push(holding[0]);
        std::set<int> seen{holding[0]};
        while (!q.empty()) {
            int x = q.front();
            q.pop();
            for (int y : badj[static_cast<std::size_t>(x)])
                if (member.count(y) && !seen.count(y)) {
                    seen.insert(y);
                    q.push(y);
                }
        }
        if (seen.size() != member.size())
            out.push_back("occurrence subtree of vertex " + std::to_string(v) + " is disconnected");
    }
    // Edge coverage.
    for (auto [u, v] : g.edges()) {
        bool covered = false;
        for (const auto& bag : td.bags)
            if (std::binary_search(bag.begin(), bag.end(), u) &&
                std::binary_search(bag.begin(), bag.end(), v)) {
                covered = true;
                break;
            }
        if (!covered)
            out.push_back("edge " + std::to_string(u) + "-" + std::to_string(v) + " is in no bag");
    }
    return out;
}

TreeDecomposition heuristic_tree_decomposition(const Graph& g, EliminationRule rule) {
    const int n = g.vertex_count();
    TreeDecomposition td;
    td.n = n;
    if (n == 0) return td;
    std::vector<std::set<int>> adj(static_cast<std::size_t>(n));
    for (auto [u, v] : g.edges()) {
        adj[static_cast<std::size_t>(u)].insert(v);
        adj[static_cast<std::size_t>(v)].insert(u);
    }
    std::vector<char> gone(static_cast<std::size_t>(n), 0);
    std::vector<int> position(static_cast<std::size_t>(n), -1);
    auto fill_count = [&](int v) {
        int fill = 0;
        const auto& nb = adj[static_cast<std::size_t>(v)];
        for (auto it = nb.begin(); it != nb.end(); ++it)
            for (auto jt = std::next(it); jt != nb.end(); ++jt)
                if (!adj[static_cast<std::size_t>(*it)].count(*jt)) ++fill;
        return fill;
    };
    for (int step = 0; step < n; ++step) {
        int best = -1;
        long best_score = 0;
        for (int v = 0; v < n; ++v) {
            if (gone[static_cast<std::size_t>(v)]) continue;
            long score = (rule == EliminationRule::MinFill)
                             ? fill_count(v)
                             : static_cast<long>(adj[static_cast<std::size_t>(v)].size());
            if (best == -1 || score < best_score) {
                best = v;
                best_score = score;
            }
        }
        position[static_cast<std::size_t>(best)] = step;
        std::vector<int> bag{best};
        const auto nb = adj[static_cast<std::size_t>(best)];
        for (int w : nb) bag.push_back(w);
        std::sort(bag.begin(), bag.end());
        td.bags.push_back(std::move(bag));
        for (int u : nb)
            for (int w : nb)
                if (u < w) {
                    adj[static_cast<std::size_t>(u)].insert(w);
                    adj[static_cast<std::size_t>(w)].insert(u);
                }
        for (int u : nb) adj[static_cast<std::size_t>(u)].erase(best);
        adj[static_cast<std::size_t>(best)].clear();
        gone[static_cast<std::size_t>(best)] = 1;
    }
    // Bag i hangs off the bag of its earliest-eliminated other member.
    for (int i = 0; i < n; ++i) {
        int next_pos = -1;
        for (int v : td.bags[static_cast<std::size_t>(i)]) {
            int pv = position[static_cast<std::size_t>(v)];
            if (pv > i && (next_pos == -1 || pv < next_pos)) next_pos = pv;
        }
        if (next_pos != -1) td.tree_edges.emplace_back(i, next_pos);
    }
    return td;
}

namespace {

struct NiceBuilder {
    const TreeDecomposition& td;
    NiceTreeDecomposition out;
    std::vector<std::vector<int>> children;

    int add(NiceNode node) {
        out.nodes.push_back(std::move(node));
        return static_cast<int>(out.nodes.size()) - 1;
    }

    // Chain of forgets/introduces converting node `idx` (bag `from`) to bag `to`.
    int morph(int idx, const std::vector<int>& from, const std::vector<int>& to) {
        std::vector<int> cur = from;
        for (int v : from) {
            if (std::binary_search(to.begin(), to.end(), v)) continue;
            std::vector<int> bag;
            for (int w : cur)
                if (w != v) bag.push_back(w);
            idx = add(NiceNode{NodeKind::Forget, bag, idx, -1, v});
            cur = std::move(bag);
        }
        for (int v : to) {
            if (std::binary_search(cur.begin(), cur.end(), v)) continue;
            std::vector<int> bag = cur;
            bag.insert(std::lower_bound(bag.begin(), bag.end(), v), v);
            idx = add(NiceNode{NodeKind::Introduce, bag, idx, -1, v});
            cur = std::move(bag);
        }
        return idx;
    }

    // Leaf chain building up the full bag from a single vertex.
    int grow(const std::vector<int>& bag) {
        int idx = add(NiceNode{NodeKind::Leaf, {bag[0]}, -1, -1, bag[0]});
        std::vector<int> cur{bag[0]};
        for (std::size_t i = 1; i < bag.size(); ++i) {
            cur.insert(std::lower_bound(cur.begin(), cur.end(), bag[i]), bag[i]);
            idx = add(NiceNode{NodeKind::Introduce, cur, idx, -1, bag[i]});
        }
        return idx;
    }

    int build(int b, int parent) {
        const auto& bag = td.bags[static_cast<std::size_t>(b)];
        std::vector<int> tops;
        for (int c : children[static_cast<std::size_t>(b)]) {
            if (c == parent) continue;
            int sub = build(c, b);
            tops.push_back(morph(sub, td.bags[static_cast<std::size_t>(c)], bag));
        }
        if (tops.empty()) return grow(bag);
        int idx = tops[0];
        for (std::size_t i = 1; i < tops.size(); ++i)
            idx = add(NiceNode{NodeKind::Join, bag, idx, tops[i], -1});
        return idx;
    }
};

} // namespace

NiceTreeDecomposition to_nice(const Graph& g, const TreeDecomposition& td_in) {
    auto violations = decomposition_violations(g, td_in);
    if (!violations.empty()) throw InvalidDecomposition(violations.front());
    TreeDecomposition td = td_in;
    // Contract empty leaf bags away; an empty internal bag would cut the
    // decomposition tree and cannot appear for a connected graph.
    for (bool removed = true; removed && td.bags.size() > 1;) {
        removed = false;
        for (std::size_t b = 0; b < td.bags.size() && !removed; ++b) {
            if (!td.bags[b].empty()) continue;
            int degree = 0;
            for (auto [x, y] : td.tree_edges)
                degree += (x == static_cast<int>(b)) + (y == static_cast<int>(b));
            if (degree > 1) throw InvalidDecomposition("empty internal bag");
            std::vector<std::pair<int, int>> edges;
            for (auto [x, y] : td.tree_edges) {
                if (x == static_cast<int>(b) || y == static_cast<int>(b)) continue;
                edges.emplace_back(x - (x > static_cast<int>(b)), y - (y > static_cast<int>(b)));
            }
            td.tree_edges = std::move(edges);
            td.bags.erase(td.bags.begin() + static_cast<std::ptrdiff_t>(b));
            removed = true;
        }
    }
    if (td.bags.size() == 1 && td.bags[0].empty()) throw InvalidDecomposition("decomposition covers no vertex");
    NiceBuilder nb{td, {}, {}};
    nb.children.assign(td.bags.size(), {});
    for (auto [a, b] : td.tree_edges) {
        nb.children[static_cast<std::size_t>(a)].push_back(b);
        nb.children[static_cast<std::size_t>(b)].push_back(a);
    }
    int top = nb.build(0, -1);
    // Shrink the top bag to a single-vertex root.
    const std::vector<int> top_bag = nb.out.nodes[static_cast<std::size_t>(top)].bag;
    nb.morph(top, top_bag, {top_bag[0]});
    return std::move(nb.out);
}

TreeDecomposition read_tree_decomposition(std::istream& in) {
    TreeDecomposition td;
    std::string line;
    bool have_header = false;
    int bag_count = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue;
        if (tag == "c") continue;
        if (tag == "s") {
            std::string kind;
            int width_plus_one = 0;
            if (!(ls >> kind >> bag_count >> width_plus_one >> td.n) || kind != "td")
                throw ParseError("line " + std::to_string(lineno) + ": expected `s td <#bags> <width+1> <n>`");
            td.bags.assign(static_cast<std::size_t>(bag_count), {});
            have_header = true;
            continue;
        }
        if (tag == "b") {
            if (!have_header) throw ParseError("line " + std::to_string(lineno) + ": bag before header");
            int id;
            if (!(ls >> id) || id < 1 || id > bag_count)
                throw ParseError("line " + std::to_string(lineno) + ": bad bag id");
            int v;
            auto& bag = td.bags[static_cast<std::size_t>(id - 1)];
            while (ls >> v) {
                if (v < 1 || v > td.n) throw ParseError("line " + std::to_string(lineno) + ": vertex out of range");
                bag.push_back(v - 1);
            }
            std::sort(bag.begin(), bag.end());
            bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
            continue;
        }
        // Decomposition-tree edge line: two bag ids.
        std::istringstream es(line);
        int a, b;
        if (!(es >> a >> b) || a < 1 || a > bag_count || b < 1 || b > bag_count)
            throw ParseError("line " + std::to_string(lineno) + ": expected a bag edge `<i> <j>`");
        td.tree_edges.emplace_back(a - 1, b - 1);
    }
    if (!have_header) throw ParseError("missing `s td` header");
    return td;
}

TreeDecomposition read_tree_decomposition_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_tree_decomposition(in);
}

void write_tree_decomposition(std::ostream& out, const TreeDecomposition& td) {
    out << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << td.n << '\n';
    for (std::size_t i = 0; i < td.bags.size(); ++i) {
        out << "b " << i + 1;
        for (int v : td.bags[i]) out << ' ' << v + 1;
        out << '\n';
    }
    for (auto [a, b] : td.tree_edges) out << a + 1 << ' ' << b + 1 << '\n';
}

} // namespace madst
