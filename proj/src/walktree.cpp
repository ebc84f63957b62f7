#include "hypermatch/walktree.hpp"

#include <algorithm>
#include <queue>

#include "hypermatch/detail/bitset_ops.hpp"

namespace hypermatch {

namespace {

using detail::Ops64;
using detail::OpsDyn;

template <class Ops>
typename Ops::Mask to_mask(const std::vector<Vertex>& vs, int n) {
    auto m = Ops::empty(n);
    for (Vertex v : vs)
        Ops::set(m, v);
    return m;
}

void check_vertex(const Hypergraph& h, Vertex v) {
    if (v < 0 || v >= h.n)
        fail(errc::unknown_vertex, "vertex " + std::to_string(v) + " not in hypergraph");
}

void check_order(const Hypergraph& h, const VertexOrdering& order) {
    if (order.size() != h.n)
        fail(errc::domain_error, "ordering covers " + std::to_string(order.size()) +
                                     " vertices, hypergraph has " + std::to_string(h.n));
}

// conflict set contributed by traversing edge e from `entry` to `exit`
std::vector<Vertex> step_conflicts(const Edge& e, Vertex entry, Vertex exit,
                                   const VertexOrdering& order) {
    std::vector<Vertex> c;
    for (Vertex w : e)
        if (w != entry && w != exit && order.precedes(w, exit))
            c.push_back(w);
    c.push_back(entry);
    return c;
}

void merge_into(std::vector<Vertex>& sorted, std::vector<Vertex> extra) {
    sorted.insert(sorted.end(), extra.begin(), extra.end());
    std::sort(sorted.begin(), sorted.end());
}

} // namespace

void validate_walk(const Hypergraph& h, const VertexOrdering& order,
                   const ConflictFreeWalk& w) {
    check_order(h, order);
    if (w.vertices.empty() || w.vertices.size() != w.edges.size() + 1)
        fail(errc::invalid_walk, "walk shape: need l+1 vertices for l edges");
    for (Vertex v : w.vertices)
        check_vertex(h, v);
    {
        auto vs = w.vertices;
        std::sort(vs.begin(), vs.end());
        if (std::adjacent_find(vs.begin(), vs.end()) != vs.end())
            fail(errc::invalid_walk, "designated vertices repeat");
        auto es = w.edges;
        std::sort(es.begin(), es.end());
        if (std::adjacent_find(es.begin(), es.end()) != es.end())
            fail(errc::invalid_walk, "edges repeat");
    }

    std::vector<Vertex> conflicts;
    for (std::size_t i = 0; i < w.edges.size(); ++i) {
        int ei = w.edges[i];
        if (ei < 0 || ei >= h.edge_count())
            fail(errc::invalid_walk, "edge index " + std::to_string(ei) + " out of range");
        const Edge& e = h.edges[ei];
        Vertex entry = w.vertices[i], exit = w.vertices[i + 1];
        if (!std::binary_search(e.begin(), e.end(), entry) ||
            !std::binary_search(e.begin(), e.end(), exit))
            fail(errc::invalid_walk, "edge " + std::to_string(ei) +
                                         " misses its designated vertices");
        if (i >= 1)
            for (Vertex c : conflicts)
                if (std::binary_search(e.begin(), e.end(), c))
                    fail(errc::invalid_walk,
                         "edge " + std::to_string(ei) + " hits conflict vertex " +
                             std::to_string(c));
        merge_into(conflicts, step_conflicts(e, entry, exit, order));
    }
    if (conflicts != w.conflicts)
        fail(errc::invalid_walk, "stored conflict set does not match the walk");
}

std::vector<WalkExtension> conflict_free_extensions(const Hypergraph& h,
                                                    const VertexOrdering& order,
                                                    const ConflictFreeWalk& w) {
    validate_walk(h, order, w);
    std::vector<WalkExtension> out;
    Vertex endv = w.end();
    for (int ei = 0; ei < h.edge_count(); ++ei) {
        const Edge& e = h.edges[ei];
        if (!std::binary_search(e.begin(), e.end(), endv))
            continue;
        bool conflicted = false;
        for (Vertex c : w.conflicts)
            if (std::binary_search(e.begin(), e.end(), c)) {
                conflicted = true;
                break;
            }
        if (conflicted)
            continue;
        for (Vertex u : e) {
            if (u == endv)
                continue;
            WalkExtension ext;
            ext.h_edge = ei;
            ext.exit = u;
            ext.walk = w;
            ext.walk.vertices.push_back(u);
            ext.walk.edges.push_back(ei);
            merge_into(ext.walk.conflicts, step_conflicts(e, endv, u, order));
            out.push_back(std::move(ext));
        }
    }
    return out;
}

namespace {

template <class Ops>
WalkTree build_walk_tree_impl(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                              std::uint64_t max_nodes) {
    using Mask = typename Ops::Mask;

    struct Node {
        Vertex end;
        Mask conflicts;
    };

    std::vector<Mask> edge_masks;
    edge_masks.reserve(h.edges.size());
    for (const Edge& e : h.edges)
        edge_masks.push_back(to_mask<Ops>(e, h.n));

    std::vector<Node> nodes;
    std::vector<ConflictFreeWalk> walks;
    std::vector<Edge> tree_edges;
    std::vector<int> edge_source;

    nodes.push_back({v, Ops::empty(h.n)});
    walks.push_back(ConflictFreeWalk::trivial(v));

    for (std::size_t cur = 0; cur < nodes.size(); ++cur) {
        Vertex endv = nodes[cur].end;
        Mask conflicts = nodes[cur].conflicts; // copy: nodes may reallocate
        // previously used edges always carry their entry vertex, which sits
        // in the conflict set, so the intersection test excludes them too
        for (int ei = 0; ei < h.edge_count(); ++ei) {
            const Edge& e = h.edges[ei];
            if (!std::binary_search(e.begin(), e.end(), endv))
                continue;
            if (Ops::intersects(edge_masks[ei], conflicts))
                continue;
            Edge tree_edge{static_cast<Vertex>(cur)};
            for (Vertex u : e) {
                if (u == endv)
                    continue;
                if (nodes.size() >= max_nodes)
                    fail(errc::budget_exceeded,
                         "walk-tree exceeds " + std::to_string(max_nodes) + " nodes");
                Mask child_conf = conflicts;
                for (Vertex w : e)
                    if (w != endv && w != u && order.precedes(w, u))
                        Ops::set(child_conf, w);
                Ops::set(child_conf, endv);
                int id = static_cast<int>(nodes.size());
                nodes.push_back({u, child_conf});
                ConflictFreeWalk cw = walks[cur];
                cw.vertices.push_back(u);
                cw.edges.push_back(ei);
                merge_into(cw.conflicts, step_conflicts(e, endv, u, order));
                walks.push_back(std::move(cw));
                tree_edge.push_back(id);
            }
            tree_edges.push_back(std::move(tree_edge));
            edge_source.push_back(ei);
        }
    }

    WalkTree t;
    t.root = 0;
    t.tree = new_hypergraph(h.k, static_cast<int>(nodes.size()), tree_edges);
    if (t.tree.edges != tree_edges)
        fail(errc::internal_error, "walk-tree edges lost canonical order");
    t.walks = std::move(walks);
    t.edge_source = std::move(edge_source);
    return t;
}

} // namespace

WalkTree build_walk_tree(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                         std::uint64_t max_nodes) {
    check_vertex(h, v);
    check_order(h, order);
    if (h.n <= 64)
        return build_walk_tree_impl<Ops64>(h, v, order, max_nodes);
    return build_walk_tree_impl<OpsDyn>(h, v, order, max_nodes);
}

namespace {

// Incidence-tree scaffolding for bottom-up hypertree passes.  For vertex u
// reached through parent edge pe, children are the other incident edges; for
// an edge reached through vertex u, children are its other endpoints.
struct IncidenceTree {
    std::vector<std::vector<int>> vertex_edges; // incident edge ids per vertex
    std::vector<int> vertex_order;              // bottom-up (reverse BFS) vertex list
    std::vector<int> parent_edge;               // per vertex, -1 at root
    std::vector<int> parent_vertex;             // per edge: the endpoint nearer the root
};

IncidenceTree incidence_tree(const Hypergraph& t, Vertex root) {
    if (!is_hypertree(t))
        fail(errc::not_a_hypertree, "input is not a hypertree");
    check_vertex(t, root);

    IncidenceTree it;
    it.vertex_edges.assign(t.n, {});
    for (int e = 0; e < t.edge_count(); ++e)
        for (Vertex v : t.edges[e])
            it.vertex_edges[v].push_back(e);

    it.parent_edge.assign(t.n, -2);
    it.parent_vertex.assign(t.edge_count(), -1);
    std::vector<int> bfs{root};
    it.parent_edge[root] = -1;
    for (std::size_t head = 0; head < bfs.size(); ++head) {
        Vertex u = bfs[head];
        for (int e : it.vertex_edges[u]) {
            if (it.parent_vertex[e] != -1 || e == it.parent_edge[u])
                continue;
            it.parent_vertex[e] = u;
            for (Vertex w : t.edges[e]) {
                if (w == u)
                    continue;
                it.parent_edge[w] = e;
                bfs.push_back(w);
            }
        }
    }
    it.vertex_order.assign(bfs.rbegin(), bfs.rend());
    return it;
}

} // namespace

std::pair<SizePoly, SizePoly> hypertree_match_counts(const Hypergraph& t, Vertex root) {
    IncidenceTree it = incidence_tree(t, root);

    // per vertex: generating polynomials of the subtree below it,
    // split by whether the vertex itself is covered
    std::vector<SizePoly> avoid(t.n), cover(t.n);
    for (Vertex u : it.vertex_order) {
        std::vector<SizePoly> edge_total, edge_avoid;
        for (int e : it.vertex_edges[u]) {
            if (e == it.parent_edge[u])
                continue;
            SizePoly prod_total{BigInt(1)}, prod_avoid{BigInt(1)};
            for (Vertex w : t.edges[e]) {
                if (w == u)
                    continue;
                SizePoly tw = avoid[w];
                poly_add(tw, cover[w]);
                prod_total = poly_conv(prod_total, tw);
                prod_avoid = poly_conv(prod_avoid, avoid[w]);
            }
            edge_total.push_back(std::move(prod_total));
            edge_avoid.push_back(std::move(prod_avoid));
        }
        std::size_t deg = edge_total.size();
        if (deg == 0) {
            avoid[u] = {BigInt(1)};
            cover[u] = {};
            continue;
        }
        // prefix/suffix products of edge_total for the "one edge covers u" sum
        std::vector<SizePoly> pre(deg + 1), suf(deg + 1);
        pre[0] = {BigInt(1)};
        for (std::size_t i = 0; i < deg; ++i)
            pre[i + 1] = poly_conv(pre[i], edge_total[i]);
        suf[deg] = {BigInt(1)};
        for (std::size_t i = deg; i-- > 0;)
            suf[i] = poly_conv(edge_total[i], suf[i + 1]);
        avoid[u] = pre[deg];
        SizePoly covered;
        for (std::size_t i = 0; i < deg; ++i) {
            SizePoly term = poly_conv(pre[i], edge_avoid[i]);
            term = poly_conv(term, suf[i + 1]);
            poly_add(covered, term, 1); // the covering edge itself
        }
        cover[u] = std::move(covered);
    }

    SizePoly whole = avoid[root];
    poly_add(whole, cover[root]);
    return {std::move(whole), std::move(avoid[root])};
}

Probability prob_on_hypertree(const Hypergraph& t, Vertex root) {
    IncidenceTree it = incidence_tree(t, root);

    // same pass as hypertree_match_counts evaluated at x = 1
    std::vector<BigInt> avoid(t.n), cover(t.n);
    for (Vertex u : it.vertex_order) {
        BigInt total_prod = 1, cover_sum = 0;
        std::vector<BigInt> etotals, eavoids;
        for (int e : it.vertex_edges[u]) {
            if (e == it.parent_edge[u])
                continue;
            BigInt pt = 1, pa = 1;
            for (Vertex w : t.edges[e]) {
                if (w == u)
                    continue;
                pt *= avoid[w] + cover[w];
                pa *= avoid[w];
            }
            etotals.push_back(pt);
            eavoids.push_back(pa);
        }
        for (const BigInt& pt : etotals)
            total_prod *= pt;
        for (std::size_t i = 0; i < etotals.size(); ++i) {
            BigInt term = eavoids[i];
            for (std::size_t j = 0; j < etotals.size(); ++j)
                if (j != i)
                    term *= etotals[j];
            cover_sum += term;
        }
        avoid[u] = total_prod;
        cover[u] = cover_sum;
    }

    Probability p;
    BigInt total = avoid[root] + cover[root];
    p.value = Rational(avoid[root], total);
    p.value.canonicalize();
    p.provenance = "hypertree bottom-up: N(T-root)/N(T) = " + avoid[root].get_str() + "/" +
                   total.get_str();
    return p;
}

namespace {

template <class Ops>
class RecursionEvaluator {
public:
    using Mask = typename Ops::Mask;

    RecursionEvaluator(const Hypergraph& h, const VertexOrdering& order, std::uint64_t budget)
        : h_(h), order_(order), budget_(budget) {
        edge_masks_.reserve(h.edges.size());
        for (const Edge& e : h.edges)
            edge_masks_.push_back(to_mask<Ops>(e, h.n));
        vertex_edges_.assign(h.n, {});
        for (int e = 0; e < h.edge_count(); ++e)
            for (Vertex v : h.edges[e])
                vertex_edges_[v].push_back(e);
    }

    Rational eval(Mask alive, Vertex v) {
        if (++nodes_ > budget_)
            fail(errc::budget_exceeded,
                 "probability recursion exceeded " + std::to_string(budget_) + " nodes");
        Rational denom(1);
        for (int ei : vertex_edges_[v]) {
            if (!Ops::subset_of(edge_masks_[ei], alive))
                continue;
            std::vector<Vertex> others;
            for (Vertex u : h_.edges[ei])
                if (u != v)
                    others.push_back(u);
            std::sort(others.begin(), others.end(), [&](Vertex a, Vertex b) {
                return order_.precedes(a, b);
            });
            Mask cur = alive;
            Ops::clear(cur, v);
            Rational prod(1);
            for (Vertex u : others) {
                prod *= eval(cur, u);
                Ops::clear(cur, u);
            }
            denom += prod;
        }
        Rational r(1);
        r /= denom;
        return r;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    const Hypergraph& h_;
    const VertexOrdering& order_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<Mask> edge_masks_;
    std::vector<std::vector<int>> vertex_edges_;
};

} // namespace

Probability prob_via_recursion(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                               std::uint64_t budget) {
    check_vertex(h, v);
    check_order(h, order);
    Probability p;
    if (h.n <= 64) {
        RecursionEvaluator<Ops64> ev(h, order, budget);
        p.value = ev.eval(Ops64::full(h.n), v);
        p.provenance = "structural recursion, " + std::to_string(ev.nodes()) + " nodes";
    } else {
        RecursionEvaluator<OpsDyn> ev(h, order, budget);
        p.value = ev.eval(OpsDyn::full(h.n), v);
        p.provenance = "structural recursion, " + std::to_string(ev.nodes()) + " nodes";
    }
    return p;
}

namespace {

MatchingPolynomial product_as_matching_poly(int k, int n_sum, const SizePoly& conv) {
    MatchingPolynomial p;
    p.form = MatchingPolynomial::Form::defect;
    p.k = k;
    p.n = n_sum;
    p.coeffs.assign(n_sum + 1, BigInt(0));
    for (std::size_t i = 0; i < conv.size(); ++i) {
        int power = n_sum - k * static_cast<int>(i);
        if (power < 0) {
            if (conv[i] != 0)
                fail(errc::internal_error, "matching count beyond n/k");
            continue;
        }
        p.coeffs[power] = (i % 2 == 0) ? conv[i] : BigInt(-conv[i]);
    }
    return p;
}

} // namespace

GodsilReport verify_godsil(const Hypergraph& h, Vertex v, const VertexOrdering& order,
                           const CountOptions& opts, std::uint64_t max_tree_nodes) {
    check_vertex(h, v);
    check_order(h, order);

    MatchCoeffs q_h = match_coeffs(h, opts);
    MatchCoeffs q_hv = match_coeffs(delete_vertices(h, {v}).graph, opts);

    WalkTree wt = build_walk_tree(h, v, order, max_tree_nodes);
    auto [q_t, q_tr] = hypertree_match_counts(wt.tree, wt.root);

    SizePoly lhs_conv = poly_conv(q_hv.counts, q_t);
    SizePoly rhs_conv = poly_conv(q_h.counts, q_tr);

    auto trimmed = [](SizePoly p) {
        while (!p.empty() && p.back() == 0)
            p.pop_back();
        return p;
    };

    GodsilReport rep;
    rep.tree_nodes = wt.tree.n;
    rep.equal = trimmed(lhs_conv) == trimmed(rhs_conv);

    int n_sum = (h.n - 1) + wt.tree.n;
    rep.lhs = product_as_matching_poly(h.k, n_sum, lhs_conv);
    rep.rhs = product_as_matching_poly(h.k, n_sum, rhs_conv);

    rep.prob_h = Rational(q_hv.total(), q_h.total());
    rep.prob_h.canonicalize();
    rep.prob_t = Rational(poly_total(q_tr), poly_total(q_t));
    rep.prob_t.canonicalize();
    rep.prob_equal = rep.prob_h == rep.prob_t;
    return rep;
}

} // namespace hypermatch
