#ifndef MADST_GRAPH_IO_HPP
#define MADST_GRAPH_IO_HPP

#include <iosfwd>
#include <optional>
#include <string>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

// DIMACS-like edge format: a `p edge <n> <m>` header, then m lines `e <u> <v>`
// with 1-based vertex ids. Lines starting with `c` are comments. The writer
// emits edges sorted lexicographically.

struct GraphFile {
    Graph graph;
    /// Budget from a `c budget <b>` comment, when present (reduced instances).
    std::optional<std::uint64_t> budget;
};

GraphFile read_graph(std::istream& in);
GraphFile read_graph_file(const std::string& path);

void write_graph(std::ostream& out, const Graph& g,
                 std::optional<std::uint64_t> budget = std::nullopt);
void write_graph_file(const std::string& path, const Graph& g,
                      std::optional<std::uint64_t> budget = std::nullopt);

/// Tree output: the same shape plus a trailing `c wiener <W>` comment.
void write_tree(std::ostream& out, const SpanningTree& t);
void write_tree_file(const std::string& path, const SpanningTree& t);

/// Plain undirected DOT: `graph { ... }` with one `u -- v;` line per edge.
void write_dot(std::ostream& out, const Graph& g);

} // namespace madst

#endif
