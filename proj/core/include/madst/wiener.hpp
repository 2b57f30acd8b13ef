#ifndef MADST_WIENER_HPP
#define MADST_WIENER_HPP

#include <cstdint>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

// All Wiener values are unordered-pair sums in checked 64-bit arithmetic;
// W <= n^3 keeps this exact for every graph this library can handle.

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b);
std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b);

/// Wiener index of a connected graph: sum of dist(u,v) over unordered pairs.
std::uint64_t wiener_graph(const Graph& g);

/// Wiener index of a tree via edge contributions w_T(uv) = |side_u| * |side_v|,
/// computed in linear time from rooted subtree sizes. Always equals
/// wiener_graph(t.as_graph()).
std::uint64_t wiener_tree(const SpanningTree& t);

/// Contribution of a single tree edge: product of the two component sizes of T-e.
std::uint64_t edge_contribution(const SpanningTree& t, Edge e);

} // namespace madst

#endif
