#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "hypermatch/exact_count.hpp"
#include "hypermatch/hypergraph.hpp"

namespace hypermatch {

/// Berge path whose every edge after the first avoids the accumulated
/// conflict sets C_j = {non-designated u in e_j with u < v_j} + {v_{j-1}}.
struct ConflictFreeWalk {
    std::vector<Vertex> vertices;  // v_0 .. v_len
    std::vector<int> edges;        // indices into H.edges, e_1 .. e_len
    std::vector<Vertex> conflicts; // cumulative conflict set, sorted

    Vertex end() const { return vertices.back(); }
    int length() const { return static_cast<int>(edges.size()); }

    static ConflictFreeWalk trivial(Vertex v) { return {{v}, {}, {}}; }
    bool operator==(const ConflictFreeWalk&) const = default;
};

/// Throws InvalidWalk unless W is a conflict-free walk of H under `order`.
void validate_walk(const Hypergraph& h, const VertexOrdering& order,
                   const ConflictFreeWalk& w);

struct WalkExtension {
    int h_edge = -1;
    Vertex exit = -1;
    ConflictFreeWalk walk;
};

/// All single-edge extensions of W: pairs (e, u) with e containing end(W),
/// e disjoint from W's conflict set, u an exit vertex of e.
std::vector<WalkExtension> conflict_free_extensions(const Hypergraph& h,
                                                    const VertexOrdering& order,
                                                    const ConflictFreeWalk& w);

struct WalkTree {
    Hypergraph tree;                     // k-uniform hypertree, node 0 = root
    std::vector<ConflictFreeWalk> walks; // walks[node] = walk the node stands for
    std::vector<int> edge_source;        // tree edge index -> H edge index
    Vertex root = 0;
};

WalkTree build_walk_tree(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                         std::uint64_t max_nodes = 1'000'000);

/// Matching counts of a hypertree and of the hypertree minus its root, from
/// one bottom-up pass (polynomial-time, unlike generic branching).
std::pair<SizePoly, SizePoly> hypertree_match_counts(const Hypergraph& tree, Vertex root);

/// P_T(root avoided) for a hypertree, single bottom-up pass, exact.
Probability prob_on_hypertree(const Hypergraph& tree, Vertex root);

/// P_H(v avoided) by structural recursion on vertex deletions; never
/// materializes the walk-tree.
Probability prob_via_recursion(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                               std::uint64_t budget = 100'000'000ULL);

struct GodsilReport {
    MatchingPolynomial lhs; // m_k(H - v) * m_k(T)
    MatchingPolynomial rhs; // m_k(H) * m_k(T - V)
    bool equal = false;
    Rational prob_h; // P_H(v avoided)
    Rational prob_t; // P_T(root avoided)
    bool prob_equal = false;
    std::size_t tree_nodes = 0;
};

GodsilReport verify_godsil(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                           const CountOptions& opts = {},
                           std::uint64_t max_tree_nodes = 1'000'000);

} // namespace hypermatch
