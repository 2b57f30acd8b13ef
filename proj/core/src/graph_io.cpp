#include "madst/graph_io.hpp"

#include <fstream>
#include <sstream>

#include "madst/wiener.hpp"

namespace madst {

GraphFile read_graph(std::istream& in) {
    GraphFile out;
    std::string line;
    bool have_header = false;
    int n = 0, m = 0, seen = 0;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag)) continue; // blank line
        if (tag == "c") {
            std::string key;
            if (ls >> key && key == "budget") {
                std::uint64_t b;
                if (ls >> b) out.budget = b;
            }
            continue;
        }
        if (tag == "p") {
            std::string fmt;
            if (have_header) throw ParseError("line " + std::to_string(lineno) + ": duplicate p line");
            if (!(ls >> fmt >> n >> m) || fmt != "edge" || n < 0 || m < 0)
                throw ParseError("line " + std::to_string(lineno) + ": expected `p edge <n> <m>`");
            have_header = true;
            out.graph = Graph(n);
            continue;
        }
        if (tag == "e") {
            if (!have_header) throw ParseError("line " + std::to_string(lineno) + ": edge before p line");
            int u, v;
            if (!(ls >> u >> v)) throw ParseError("line " + std::to_string(lineno) + ": expected `e <u> <v>`");
            if (u < 1 || u > n || v < 1 || v > n)
                throw ParseError("line " + std::to_string(lineno) + ": vertex id out of range 1.." + std::to_string(n));
            if (u == v) throw ParseError("line " + std::to_string(lineno) + ": self-loop");
            if (!out.graph.add_edge(u - 1, v - 1))
                throw ParseError("line " + std::to_string(lineno) + ": duplicate edge");
            ++seen;
            continue;
        }
        throw ParseError("line " + std::to_string(lineno) + ": unknown line tag `" + tag + "`");
    }
    if (!have_header) throw ParseError("missing `p edge` header");
    if (seen != m) throw ParseError("edge count mismatch: header says " + std::to_string(m) +
                                    ", found " + std::to_string(seen));
    return out;
}

GraphFile read_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    return read_graph(in);
}

namespace {

void write_edges(std::ostream& out, const Graph& g) {
    out << "p edge " << g.vertex_count() << ' ' << g.edge_count() << '\n';
    for (auto [u, v] : g.edges()) out << "e " << u + 1 << ' ' << v + 1 << '\n';
}

} // namespace

void write_graph(std::ostream& out, const Graph& g, std::optional<std::uint64_t> budget) {
    write_edges(out, g);
    if (budget) out << "c budget " << *budget << '\n';
}

void write_graph_file(const std::string& path, const Graph& g, std::optional<std::uint64_t> budget) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_graph(out, g, budget);
}

void write_tree(std::ostream& out, const SpanningTree& t) {
    write_edges(out, t.as_graph());
    out << "c wiener " << wiener_tree(t) << '\n';
}

void write_tree_file(const std::string& path, const SpanningTree& t) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path + " for writing");
    write_tree(out, t);
}

void write_dot(std::ostream& out, const Graph& g) {
    out << "graph {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        if (g.degree(v) == 0) out << "  " << v << ";\n";
    for (auto [u, v] : g.edges()) out << "  " << u << " -- " << v << ";\n";
    out << "}\n";
}

} // namespace madst
