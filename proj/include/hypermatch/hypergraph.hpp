#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hypermatch/errors.hpp"

namespace hypermatch {

using Vertex = int;
using Edge = std::vector<Vertex>; // sorted ascending, exactly k entries

/// A k-uniform hypergraph on vertices 0..n-1.  Edges are stored as sorted
/// vertex lists in lexicographic order; construction canonicalizes and
/// validates, so two structurally equal hypergraphs compare equal.
struct Hypergraph {
    int k = 2;
    int n = 0;
    std::vector<Edge> edges;
    std::map<Vertex, std::string> labels; // optional provenance ("head", ...)

    int edge_count() const { return static_cast<int>(edges.size()); }
    bool operator==(const Hypergraph&) const = default;
};

Hypergraph new_hypergraph(int k, int n, std::vector<Edge> edges,
                          std::map<Vertex, std::string> labels = {});

struct DeletionResult {
    Hypergraph graph;
    std::vector<Vertex> old_to_new; // -1 for deleted vertices
};

/// H - S: removes S and every edge meeting S; survivors are re-indexed
/// densely, old ids recoverable through old_to_new.
DeletionResult delete_vertices(const Hypergraph& h, const std::vector<Vertex>& s);

struct UnionResult {
    Hypergraph graph;
    std::vector<Vertex> offsets; // offsets[i] added to the ids of parts[i]
};

UnionResult disjoint_union(const std::vector<Hypergraph>& parts);

struct DegreeReport {
    std::vector<int> degrees;
    int max_codegree = 0;
    bool is_linear = true;
    std::optional<int> regular_degree;
    std::optional<Vertex> extendable_head; // unique vertex of degree d-1
};

DegreeReport degree_report(const Hypergraph& h);

/// True iff the vertex/edge incidence graph is connected and acyclic,
/// which is equivalent to the unique-Berge-path characterization.
bool is_hypertree(const Hypergraph& h);

/// Linear order on V(H) given by a permutation: perm[rank] = vertex.
struct VertexOrdering {
    std::vector<Vertex> perm;
    std::vector<int> rank; // rank[v] = position of v in perm

    static VertexOrdering identity(int n);
    static VertexOrdering from_perm(std::vector<Vertex> perm);

    bool precedes(Vertex u, Vertex v) const { return rank[u] < rank[v]; }
    int size() const { return static_cast<int>(perm.size()); }
};

} // namespace hypermatch
