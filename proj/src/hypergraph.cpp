#include "hypermatch/hypergraph.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace hypermatch {

Hypergraph new_hypergraph(int k, int n, std::vector<Edge> edges,
                          std::map<Vertex, std::string> labels) {
    if (k < 2)
        fail(errc::domain_error, "uniformity k must be >= 2, got " + std::to_string(k));
    if (n < 0)
        fail(errc::domain_error, "vertex count must be >= 0, got " + std::to_string(n));

    for (auto& e : edges) {
        if (static_cast<int>(e.size()) != k)
            fail(errc::non_uniform_edge,
                 "edge has " + std::to_string(e.size()) + " vertices, expected " + std::to_string(k));
        std::sort(e.begin(), e.end());
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] < 0 || e[i] >= n)
                fail(errc::out_of_range_vertex,
                     "vertex " + std::to_string(e[i]) + " not in [0, " + std::to_string(n) + ")");
            if (i > 0 && e[i] == e[i - 1])
                fail(errc::duplicate_vertex_in_edge,
                     "vertex " + std::to_string(e[i]) + " repeated within an edge");
        }
    }
    std::sort(edges.begin(), edges.end());
    for (std::size_t i = 1; i < edges.size(); ++i)
        if (edges[i] == edges[i - 1])
            fail(errc::duplicate_edge, "duplicate edge at canonical position " + std::to_string(i));

    for (const auto& [v, name] : labels)
        if (v < 0 || v >= n)
            fail(errc::out_of_range_vertex, "label on unknown vertex " + std::to_string(v));

    Hypergraph h;
    h.k = k;
    h.n = n;
    h.edges = std::move(edges);
    h.labels = std::move(labels);
    return h;
}

DeletionResult delete_vertices(const Hypergraph& h, const std::vector<Vertex>& s) {
    std::vector<char> dead(h.n, 0);
    for (Vertex v : s) {
        if (v < 0 || v >= h.n)
            fail(errc::unknown_vertex, "vertex " + std::to_string(v) + " not in hypergraph");
        dead[v] = 1;
    }

    std::vector<Vertex> old_to_new(h.n, -1);
    int next = 0;
    for (Vertex v = 0; v < h.n; ++v)
        if (!dead[v])
            old_to_new[v] = next++;

    std::vector<Edge> kept;
    for (const Edge& e : h.edges) {
        bool hit = false;
        for (Vertex v : e)
            if (dead[v]) { hit = true; break; }
        if (hit)
            continue;
        Edge mapped = e;
        for (Vertex& v : mapped)
            v = old_to_new[v];
        kept.push_back(std::move(mapped));
    }

    std::map<Vertex, std::string> labels;
    for (const auto& [v, name] : h.labels)
        if (old_to_new[v] >= 0)
            labels[old_to_new[v]] = name;

    DeletionResult r;
    r.graph = new_hypergraph(h.k, next, std::move(kept), std::move(labels));
    r.old_to_new = std::move(old_to_new);
    return r;
}

UnionResult disjoint_union(const std::vector<Hypergraph>& parts) {
    UnionResult r;
    if (parts.empty()) {
        r.graph = new_hypergraph(2, 0, {});
        return r;
    }
    int k = parts[0].k;
    int n = 0;
    std::vector<Edge> edges;
    std::map<Vertex, std::string> labels;
    for (const auto& part : parts) {
        if (part.k != k)
            fail(errc::mixed_uniformity,
                 "cannot union k=" + std::to_string(part.k) + " with k=" + std::to_string(k));
        r.offsets.push_back(n);
        for (Edge e : part.edges) {
            for (Vertex& v : e)
                v += n;
            edges.push_back(std::move(e));
        }
        for (const auto& [v, name] : part.labels)
            labels[v + n] = name;
        n += part.n;
    }
    r.graph = new_hypergraph(k, n, std::move(edges), std::move(labels));
    return r;
}

DegreeReport degree_report(const Hypergraph& h) {
    DegreeReport rep;
    rep.degrees.assign(h.n, 0);
    for (const Edge& e : h.edges)
        for (Vertex v : e)
            ++rep.degrees[v];

    // max codegree over vertex pairs; linear iff <= 1
    std::map<std::pair<Vertex, Vertex>, int> co;
    for (const Edge& e : h.edges)
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                ++co[{e[i], e[j]}];
    rep.max_codegree = 0;
    for (const auto& [pair, c] : co)
        rep.max_codegree = std::max(rep.max_codegree, c);
    rep.is_linear = rep.max_codegree <= 1;

    if (h.n > 0) {
        int dmax = *std::max_element(rep.degrees.begin(), rep.degrees.end());
        bool regular = std::all_of(rep.degrees.begin(), rep.degrees.end(),
                                   [&](int d) { return d == dmax; });
        if (regular)
            rep.regular_degree = dmax;
        if (!regular && h.n >= 2 && dmax >= 1) {
            // head: unique vertex of degree dmax-1, everyone else dmax
            Vertex head = -1;
            bool ok = true;
            for (Vertex v = 0; v < h.n; ++v) {
                if (rep.degrees[v] == dmax)
                    continue;
                if (rep.degrees[v] == dmax - 1 && head < 0)
                    head = v;
                else {
                    ok = false;
                    break;
                }
            }
            if (ok && head >= 0)
                rep.extendable_head = head;
        }
    }
    return rep;
}

bool is_hypertree(const Hypergraph& h) {
    // incidence graph: nodes 0..n-1 are vertices, n..n+m-1 are edges
    if (h.n == 0)
        return h.edges.empty();
    int m = h.edge_count();
    int total = h.n + m;
    std::vector<std::vector<int>> adj(total);
    for (int ei = 0; ei < m; ++ei)
        for (Vertex v : h.edges[ei]) {
            adj[v].push_back(h.n + ei);
            adj[h.n + ei].push_back(v);
        }
    // a tree on `total` nodes has exactly total-1 incidence arcs
    long long incidences = static_cast<long long>(m) * h.k;
    if (incidences != total - 1)
        return false;
    // connectivity
    std::vector<char> seen(total, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        int u = stack.back();
        stack.pop_back();
        for (int w : adj[u])
            if (!seen[w]) {
                seen[w] = 1;
                ++reached;
                stack.push_back(w);
            }
    }
    return reached == total;
}

VertexOrdering VertexOrdering::identity(int n) {
    VertexOrdering o;
    o.perm.resize(n);
    std::iota(o.perm.begin(), o.perm.end(), 0);
    o.rank = o.perm;
    return o;
}

VertexOrdering VertexOrdering::from_perm(std::vector<Vertex> perm) {
    VertexOrdering o;
    int n = static_cast<int>(perm.size());
    o.rank.assign(n, -1);
    for (int r = 0; r < n; ++r) {
        Vertex v = perm[r];
        if (v < 0 || v >= n || o.rank[v] != -1)
            fail(errc::domain_error, "ordering is not a permutation of 0.." + std::to_string(n - 1));
        o.rank[v] = r;
    }
    o.perm = std::move(perm);
    return o;
}

} // namespace hypermatch
