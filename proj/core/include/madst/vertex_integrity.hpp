#ifndef MADST_VERTEX_INTEGRITY_HPP
#define MADST_VERTEX_INTEGRITY_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "madst/graph.hpp"
#include "madst/spanning_tree.hpp"

namespace madst {

struct VIWitness {
    std::vector<int> separator;                  // S, sorted
    std::vector<std::vector<int>> components;    // of G - S, sorted members
    int integrity = 0;                           // |S| + max component size
};

/// Brute-force witness: minimizes |S| + max component size over all S,
/// ties broken by smaller |S| then lexicographic S.
VIWitness vi_witness(const Graph& g);

/// Connected components of G - s, each sorted, ordered by first vertex.
std::vector<std::vector<int>> connected_components_without(const Graph& g, const std::vector<int>& s);

/// Type partition of the components of G - s: same code iff there is an
/// isomorphism preserving each vertex's neighborhood inside s. Codes are
/// canonical strings (minimum serialization over admissible orderings).
std::map<std::string, std::vector<std::vector<int>>> classify_components(const Graph& g,
                                                                         const std::vector<int>& s);

/// A partial tree T_S: a forest on S joined into a tree through a few
/// connector components of G - S.
struct CandidateTree {
    std::vector<int> vertices; // sorted, contains all of S
    std::vector<Edge> edges;
};

struct VIOptions {
    int max_component_size = 6;
    std::size_t max_candidate_trees = 200000;
    std::uint64_t max_assignments = 20000000;
};

/// All candidate trees T_S: every forest on S extended through at most
/// (forest components - 1) connector components, deduplicated up to
/// isomorphisms fixing S pointwise.
std::vector<CandidateTree> enumerate_candidate_trees(const Graph& g, const std::vector<int>& s,
                                                     const VIOptions& options = {});

/// One way of hanging a component of a given type onto T_S so the union stays
/// a tree. Edges are stored in canonical component coordinates so they can be
/// instantiated on any component of the type.
struct ViExtension {
    std::string code;                            // canonical, fixes V(T_S) pointwise
    std::vector<std::pair<int, int>> internal;   // canonical positions
    std::vector<std::pair<int, int>> crossing;   // (canonical position, S vertex)
};

struct ViType {
    std::string code;
    std::vector<std::vector<int>> components;    // residual comps of this type
    std::vector<std::vector<int>> canonical_order; // per comp: canonical position -> vertex
    std::vector<ViExtension> extensions;
};

struct ViConstants {
    CandidateTree ts;
    std::uint64_t w_ts = 0;                      // Wiener index of T_S itself
    std::vector<ViType> types;
    std::vector<std::pair<int, int>> buckets;    // (type index, extension index)
    std::vector<std::uint64_t> d_internal;       // per bucket: distances inside one comp
    std::vector<std::uint64_t> d_to_ts;          // per bucket: comp <-> V(T_S)
    std::vector<std::vector<std::uint64_t>> d_pair; // bucket x bucket: comp <-> other comp
};

/// Types, extensions and all distance constants for the residual components of
/// G - V(T_S). Throws InfeasibleCounts if a type admits no extension.
ViConstants extension_constants(const Graph& g, const std::vector<int>& s, const CandidateTree& ts,
                                const VIOptions& options = {});

struct ViAssignment {
    std::vector<std::uint64_t> counts; // per bucket
    std::uint64_t objective = 0;
};

/// Exact integer minimizer by exhaustive enumeration of per-type compositions;
/// deterministic lexicographically-smallest tie-break.
ViAssignment solve_extension_counts(const ViConstants& constants, const VIOptions& options = {});

struct ViResult {
    bool yes = false;
    std::uint64_t wiener = 0;
    std::optional<SpanningTree> tree;
};

/// Exact optimum: min over candidate trees of W(T_S) plus the assignment
/// objective, with the optimal assignment materialized into a witness tree.
ViResult solve_vertex_integrity(const Graph& g, std::uint64_t budget, VIOptions options = {});

} // namespace madst

#endif
