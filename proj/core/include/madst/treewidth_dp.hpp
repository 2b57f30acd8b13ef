#ifndef MADST_TREEWIDTH_DP_HPP
#define MADST_TREEWIDTH_DP_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <unordered_map>

#include "madst/graph.hpp"
#include "madst/tree_decomposition.hpp"

namespace madst {

// Dynamic program over a nice tree decomposition. Each node keeps a sparse
// table mapping an index (F, C, abov, below) to the minimum partial cost
// (Wiener contributions of the already-forgotten tree edges):
//   F     - the tree edges inside the bag, as a bitmask over position pairs,
//   C     - the below connections: bag subsets joined through forgotten
//           subtrees, each of size >= 2,
//   abov  - per bag vertex, how many vertices hang above it (via hidden edges),
//   below - per bag vertex, how many hang below it (via forgotten edges).
// Only finite entries are stored; the index space is huge but sparse.

inline constexpr int kMaxBag = 8;          // supports width <= 7
inline constexpr int kMaxConnections = 7;  // structural cap for bag <= 8

struct DpIndex {
    std::array<std::uint16_t, kMaxBag> above{};
    std::array<std::uint16_t, kMaxBag> below{};
    std::uint32_t forest = 0; // bit j*(j-1)/2+i for bag positions i<j
    std::array<std::uint8_t, kMaxConnections> connections{}; // sorted position masks
    std::uint8_t connection_count = 0;
    std::uint8_t bag_size = 0;

    bool operator==(const DpIndex&) const = default;
};

inline int pair_bit(int i, int j) { return j * (j - 1) / 2 + i; } // requires i < j

struct DpIndexHash {
    std::size_t operator()(const DpIndex& k) const {
        std::uint64_t h = 1469598103934665603ull;
        auto mix = [&](std::uint64_t v) {
            h ^= v;
            h *= 1099511628211ull;
        };
        for (int i = 0; i < kMaxBag; ++i)
            mix((static_cast<std::uint64_t>(k.above[static_cast<std::size_t>(i)]) << 16) |
                k.below[static_cast<std::size_t>(i)]);
        mix(k.forest);
        for (int i = 0; i < kMaxConnections; ++i) mix(k.connections[static_cast<std::size_t>(i)]);
        mix((static_cast<std::uint64_t>(k.connection_count) << 8) | k.bag_size);
        return static_cast<std::size_t>(h);
    }
};

using DpTable = std::unordered_map<DpIndex, std::uint64_t, DpIndexHash>;

struct NodeTable {
    std::vector<int> bag; // sorted vertex ids
    DpTable entries;
};

/// Necessary conditions for an index to be realizable: F a forest, per-component
/// masses (1 + abov + below) summing to n, and F plus the connections (each
/// contracted to a hub) jointly acyclic.
bool dp_index_feasible(const DpIndex& idx, int n);

NodeTable process_leaf(const NiceNode& node, int n);
NodeTable process_introduce(const Graph& g, const NiceNode& node, const NodeTable& child, int n,
                            std::uint64_t bound = UINT64_MAX);
NodeTable process_join(const NiceNode& node, const NodeTable& left, const NodeTable& right,
                       std::uint64_t bound = UINT64_MAX);
NodeTable process_forget(const Graph& g, const NiceNode& node, const NodeTable& child, int n,
                         std::uint64_t bound = UINT64_MAX);

struct TreewidthResult {
    bool yes = false;
    std::uint64_t wiener = 0;
};

/// Exact optimum via the DP; value only, no witness tree. Uses the supplied
/// decomposition when given (validated), otherwise a min-fill heuristic one.
TreewidthResult solve_treewidth(const Graph& g, std::uint64_t budget,
                                const std::optional<TreeDecomposition>& td = std::nullopt);

} // namespace madst

#endif
