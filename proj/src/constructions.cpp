#include "hypermatch/constructions.hpp"

#include <algorithm>
#include <numeric>

namespace hypermatch::construct {

namespace {

void check_kd(int k, int d) {
    if (k < 2)
        fail(errc::domain_error, "k must be >= 2, got " + std::to_string(k));
    if (d < 1)
        fail(errc::domain_error, "d must be >= 1, got " + std::to_string(d));
}

std::uint64_t ipow_u64(std::uint64_t base, int e, std::uint64_t cap) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) {
        if (r > cap / base)
            return cap + 1;
        r *= base;
    }
    return r;
}

} // namespace

Hypergraph regular_linear(int k, int d, std::uint64_t max_vertices) {
    check_kd(k, d);
    if (ipow_u64(k, d, max_vertices) > max_vertices)
        fail(errc::budget_exceeded,
             "regular_linear(" + std::to_string(k) + "," + std::to_string(d) +
                 ") needs k^d vertices over the memory budget");

    // d = 1: a single edge
    std::vector<Edge> edges;
    Edge base(k);
    std::iota(base.begin(), base.end(), 0);
    edges.push_back(base);
    int n = k;

    for (int level = 2; level <= d; ++level) {
        std::vector<Edge> next;
        for (int copy = 0; copy < k; ++copy)
            for (Edge e : edges) {
                for (Vertex& v : e)
                    v += copy * n;
                next.push_back(std::move(e));
            }
        // perfect matching: edge j takes vertex j of every copy
        for (int j = 0; j < n; ++j) {
            Edge e;
            for (int copy = 0; copy < k; ++copy)
                e.push_back(copy * n + j);
            next.push_back(std::move(e));
        }
        edges = std::move(next);
        n *= k;
    }
    return new_hypergraph(k, n, std::move(edges));
}

ExtendableGraph s_extend(const ExtendableGraph& f, bool strict) {
    check_kd(f.k, f.d);
    if (f.head < 0 || f.head >= f.graph.n)
        fail(errc::unknown_vertex, "designated head " + std::to_string(f.head));
    if (f.graph.k != f.k)
        fail(errc::mixed_uniformity, "graph uniformity differs from parameter k");

    DegreeReport rep = degree_report(f.graph);
    if (strict) {
        bool ok = rep.is_linear && rep.extendable_head && *rep.extendable_head == f.head &&
                  rep.degrees[f.head] == f.d - 1;
        if (!ok)
            fail(errc::not_extendable, "input is not a d-extendable linear k-graph with the "
                                       "designated head");
    } else if (rep.degrees[f.head] > f.d - 1) {
        fail(errc::not_extendable, "designated vertex has degree " +
                                       std::to_string(rep.degrees[f.head]) + " > d-1");
    }

    int copies = (f.d - 1) * (f.k - 1);
    std::vector<Hypergraph> parts(copies, f.graph);
    UnionResult u = disjoint_union(parts);

    int n = u.graph.n + 1;
    Vertex head = n - 1;
    std::vector<Edge> edges = u.graph.edges;
    for (int i = 0; i < f.d - 1; ++i) {
        Edge e{head};
        for (int j = 0; j < f.k - 1; ++j)
            e.push_back(u.offsets[i * (f.k - 1) + j] + f.head);
        edges.push_back(std::move(e));
    }

    std::map<Vertex, std::string> labels;
    labels[head] = "head";
    for (int i = 0; i < f.d - 1; ++i)
        for (int j = 0; j < f.k - 1; ++j)
            labels[u.offsets[i * (f.k - 1) + j] + f.head] =
                "copy:" + std::to_string(i + 1) + "," + std::to_string(j + 1);

    ExtendableGraph out;
    out.graph = new_hypergraph(f.k, n, std::move(edges), std::move(labels));
    out.head = head;
    out.k = f.k;
    out.d = f.d;
    return out;
}

namespace {

struct SearchState {
    int k, d, n;
    long target_incidence;
    std::vector<Edge> candidates;
    std::vector<int> degree;
    std::vector<char> copair; // codegree flags, n*n
    std::vector<int> chosen;

    bool pair_used(Vertex a, Vertex b) const { return copair[a * n + b]; }
    void set_pairs(const Edge& e, char val) {
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j) {
                copair[e[i] * n + e[j]] = val;
                copair[e[j] * n + e[i]] = val;
            }
    }

    bool feasible_edge(const Edge& e) const {
        for (Vertex v : e)
            if (degree[v] >= d)
                return false;
        for (std::size_t i = 0; i < e.size(); ++i)
            for (std::size_t j = i + 1; j < e.size(); ++j)
                if (pair_used(e[i], e[j]))
                    return false;
        return true;
    }

    bool dfs(std::size_t next, long incidence) {
        if (incidence == target_incidence)
            return true; // degree caps force the extendable profile here
        if (next == candidates.size())
            return false;
        long remaining = static_cast<long>(candidates.size() - next) * k;
        if (incidence + remaining < target_incidence)
            return false;

        const Edge& e = candidates[next];
        if (feasible_edge(e)) {
            for (Vertex v : e)
                ++degree[v];
            set_pairs(e, 1);
            chosen.push_back(static_cast<int>(next));
            if (dfs(next + 1, incidence + k))
                return true;
            chosen.pop_back();
            set_pairs(e, 0);
            for (Vertex v : e)
                --degree[v];
        }
        return dfs(next + 1, incidence);
    }
};

void enumerate_ksets(int n, int k, Edge& cur, int start, std::vector<Edge>& out) {
    if (static_cast<int>(cur.size()) == k) {
        out.push_back(cur);
        return;
    }
    for (int v = start; v < n; ++v) {
        cur.push_back(v);
        enumerate_ksets(n, k, cur, v + 1, out);
        cur.pop_back();
    }
}

} // namespace

ExtendableGraph extendable_search(int k, int d, int max_n) {
    check_kd(k, d);
    if (d < 2)
        fail(errc::domain_error, "search requires d >= 2");
    for (int n = k; n <= max_n; ++n) {
        long target = static_cast<long>(d) * n - 1;
        if (target % k != 0)
            continue;
        SearchState st;
        st.k = k;
        st.d = d;
        st.n = n;
        st.target_incidence = target;
        Edge cur;
        enumerate_ksets(n, k, cur, 0, st.candidates);
        st.degree.assign(n, 0);
        st.copair.assign(static_cast<std::size_t>(n) * n, 0);
        if (st.dfs(0, 0)) {
            std::vector<Edge> edges;
            for (int idx : st.chosen)
                edges.push_back(st.candidates[idx]);
            ExtendableGraph out;
            out.graph = new_hypergraph(k, n, std::move(edges));
            DegreeReport rep = degree_report(out.graph);
            if (!rep.extendable_head || !rep.is_linear)
                fail(errc::internal_error, "search produced an invalid graph");
            out.head = *rep.extendable_head;
            out.k = k;
            out.d = d;
            out.graph.labels[out.head] = "head";
            return out;
        }
    }
    fail(errc::not_found, "no d-extendable linear k-graph with n <= " + std::to_string(max_n));
}

namespace {

/// One regular layer with a hub: k-1 copies of a (kl+1)-regular graph, one
/// edge removed per copy, re-wired through a fresh hub of degree k.
Hypergraph hub_layer(int k, int ell, std::uint64_t max_vertices) {
    Hypergraph f = regular_linear(k, k * ell + 1, max_vertices);
    std::vector<Hypergraph> parts(k - 1, f);
    UnionResult u = disjoint_union(parts);

    int n = u.graph.n + 1;
    Vertex hub = n - 1;
    std::vector<Edge> edges;
    std::vector<Edge> removed;
    for (int i = 0; i < k - 1; ++i) {
        Edge gone = f.edges[0];
        for (Vertex& v : gone)
            v += u.offsets[i];
        removed.push_back(gone);
    }
    for (const Edge& e : u.graph.edges)
        if (std::find(removed.begin(), removed.end(), e) == removed.end())
            edges.push_back(e);
    Edge last{hub};
    for (int i = 0; i < k - 1; ++i) {
        Edge via{hub};
        for (int j = 0; j + 1 < k; ++j)
            via.push_back(removed[i][j]);
        edges.push_back(std::move(via));
        last.push_back(removed[i][k - 1]);
    }
    edges.push_back(std::move(last));
    return new_hypergraph(k, n, std::move(edges));
}

} // namespace

ExtendableGraph extendable_paper(int k, int ell, std::uint64_t max_vertices) {
    if (k < 2 || ell < 0)
        fail(errc::domain_error, "need k >= 2 and ell >= 0");

    // level 0: single edge plus one isolated vertex; the isolated vertex is
    // the head (degree 0 = k*0)
    Edge base(k);
    std::iota(base.begin(), base.end(), 0);
    Hypergraph h = new_hypergraph(k, k + 1, {base});
    Vertex head = k;

    for (int level = 1; level <= ell; ++level) {
        Hypergraph layer = hub_layer(k, level, max_vertices);
        Vertex hub = layer.n - 1;
        int copy_size = layer.n - 1; // layer vertices except the hub

        std::uint64_t total = static_cast<std::uint64_t>(h.n) +
                              static_cast<std::uint64_t>(h.n) * copy_size;
        if (total > max_vertices)
            fail(errc::budget_exceeded, "construction exceeds the vertex budget");

        // one layer copy glued per vertex of the previous level: the copy's
        // hub is identified with that vertex
        std::vector<Edge> edges = h.edges;
        int next_free = h.n;
        for (Vertex u = 0; u < h.n; ++u) {
            int offset = next_free;
            for (Edge e : layer.edges) {
                for (Vertex& v : e)
                    v = (v == hub) ? u : offset + (v > hub ? v - 1 : v);
                std::sort(e.begin(), e.end());
                edges.push_back(std::move(e));
            }
            next_free += copy_size;
        }
        h = new_hypergraph(k, next_free, std::move(edges));
    }

    DegreeReport rep = degree_report(h);
    int want = k * ell + 1;
    bool ok = rep.is_linear;
    if (ell == 0) {
        ok = ok && rep.degrees[head] == 0;
        for (Vertex v = 0; v < h.n && ok; ++v)
            if (v != head)
                ok = rep.degrees[v] == 1;
    } else {
        ok = ok && rep.extendable_head && *rep.extendable_head == head &&
             rep.degrees[head] == want - 1;
        for (Vertex v = 0; v < h.n && ok; ++v)
            if (v != head)
                ok = rep.degrees[v] == want;
    }
    if (!ok)
        fail(errc::construction_ambiguous,
             "validation failed: expected head degree " + std::to_string(want - 1) +
                 " and remaining degrees " + std::to_string(want) + " on a linear graph");

    h.labels[head] = "head";
    ExtendableGraph out;
    out.graph = std::move(h);
    out.head = head;
    out.k = k;
    out.d = want;
    return out;
}

ExtendableGraph tower_build(const ExtendableGraph& f, int levels,
                            std::uint64_t max_vertices) {
    if (levels < 0)
        fail(errc::domain_error, "levels must be >= 0");
    ExtendableGraph cur = f;
    for (int i = 0; i < levels; ++i) {
        std::uint64_t next_n = static_cast<std::uint64_t>(cur.graph.n) *
                                   (static_cast<std::uint64_t>(cur.d - 1) * (cur.k - 1)) +
                               1;
        if (next_n > max_vertices)
            fail(errc::budget_exceeded, "tower exceeds the vertex budget at level " +
                                            std::to_string(i + 1));
        cur = s_extend(cur, false);
    }
    return cur;
}

TowerStats tower_stats(int k, int d, const Rational& p0, int levels,
                       std::size_t den_bit_budget, int prec) {
    if (k < 2 || d < 2)
        fail(errc::domain_error, "need k >= 2 and d >= 2");
    if (!(p0 > 0 && p0 <= 1))
        fail(errc::domain_error, "p0 must lie in (0,1], got " + rat_str(p0));
    if (levels < 0)
        fail(errc::domain_error, "levels must be >= 0");

    dynamics::DynParams params{k, d};
    TowerStats ts;
    ts.k = k;
    ts.d = d;
    ts.alpha = dynamics::alpha_enclosure(params, prec);

    ts.levels.push_back(p0);
    Rational p = p0;
    for (int i = 0; i < levels; ++i) {
        p = dynamics::g_map(params, p);
        if (rat_den_bits(p) > den_bit_budget)
            fail(errc::rational_blowup,
                 "denominator passed " + std::to_string(den_bit_budget) +
                     " bits at level " + std::to_string(i + 1) +
                     "; use the float trajectory in dynamics instead");
        ts.levels.push_back(p);
        // fixed-point sanity: p_{i+1} (1 + (d-1) p_i^{k-1}) = 1 exactly
        Rational check = ts.levels[i + 1] * (1 + (d - 1) * rat_pow(ts.levels[i], k - 1));
        if (check != 1)
            fail(errc::internal_error, "tower recursion identity failed");
    }

    if (ts.alpha.contains(p0))
        ts.alpha_side = 0;
    else
        ts.alpha_side = p0 > ts.alpha.hi ? 1 : -1;

    if (k >= 3 && dynamics::has_three_fixed_points(params)) {
        ts.three = true;
        dynamics::FixedPoints fp = dynamics::beta_gamma(params, prec);
        ts.beta = fp.beta;
        ts.gamma = fp.gamma;
        ts.even_to_beta = ts.alpha_side >= 0;
        auto gap = [](const Rational& x, const dynamics::Enclosure& e) {
            if (x < e.lo)
                return Rational(e.lo - x);
            if (x > e.hi)
                return Rational(x - e.hi);
            return Rational(0);
        };
        for (std::size_t i = 0; i < ts.levels.size(); ++i) {
            const dynamics::Enclosure& even_att = ts.even_to_beta ? ts.beta : ts.gamma;
            const dynamics::Enclosure& odd_att = ts.even_to_beta ? ts.gamma : ts.beta;
            if (i % 2 == 0)
                ts.even_gap.push_back(gap(ts.levels[i], even_att));
            else
                ts.odd_gap.push_back(gap(ts.levels[i], odd_att));
        }
    }
    return ts;
}

namespace {

/// One cheap trajectory pass: the smallest L with both p_{2L} and p_{2L+1}
/// inside tol of their attractor enclosures, or -1 if the probe budget or
/// level cap cuts the search first.
int probe_tower_levels(int k, int d, const Rational& p0, const Rational& tol,
                       const dynamics::FixedPoints& fp, int max_levels,
                       std::size_t probe_den_bits) {
    dynamics::DynParams params{k, d};
    auto gap = [](const Rational& x, const dynamics::Enclosure& e) {
        if (x < e.lo)
            return Rational(e.lo - x);
        if (x > e.hi)
            return Rational(x - e.hi);
        return Rational(0);
    };
    Rational even = p0; // p_{2L}
    for (int level = 1; 2 * level + 1 <= max_levels; ++level) {
        Rational odd = dynamics::g_map(params, even);
        Rational next_even = dynamics::g_map(params, odd);
        if (rat_den_bits(next_even) > probe_den_bits)
            return -1;
        if (gap(next_even, fp.beta) <= tol && gap(dynamics::g_map(params, next_even), fp.gamma) <= tol)
            return level;
        even = std::move(next_even);
    }
    return -1;
}

} // namespace

GapSearch gap_at_d(int k, int d, const Rational& p0, const Rational& epsilon,
                   const Rational& tol, int prec, int max_levels) {
    GapSearch gs;
    gs.d = d;
    dynamics::DynParams params{k, d};
    if (!dynamics::has_three_fixed_points(params)) {
        gs.levels = -1;
        return gs;
    }
    gs.fixed_points = dynamics::beta_gamma(params, prec);
    gs.levels = probe_tower_levels(k, d, p0, tol, gs.fixed_points, max_levels, 1u << 18);
    if (gs.levels < 0)
        return gs;
    gs.tower = tower_stats(k, d, p0, 2 * gs.levels + 1, 1u << 22, prec);
    gs.stats = counterexample_stats(k, d, gs.tower.levels.back(), epsilon, 2 * gs.levels + 1);
    return gs;
}

GapSearch find_gap_d(int k, const Rational& p0, const Rational& epsilon, const Rational& tol,
                     int prec, int max_levels, int d_limit) {
    int d_first = dynamics::smallest_three_fixed_point_d(k, d_limit);
    for (int d = d_first; d <= d_limit; ++d) {
        GapSearch gs = gap_at_d(k, d, p0, epsilon, tol, prec, max_levels);
        if (gs.levels >= 0 && gs.stats.center_ok && gs.stats.head_ok) {
            gs.d_first_certified = d_first;
            return gs;
        }
    }
    fail(errc::not_found,
         "no d <= " + std::to_string(d_limit) + " certifies the full gap pipeline");
}

std::pair<BigInt, BigInt> tower_size(int k, int d, int levels, const BigInt& base_vertices,
                                     const BigInt& base_edges) {
    BigInt n = base_vertices, e = base_edges;
    BigInt factor = BigInt(d - 1) * (k - 1);
    for (int i = 0; i < levels; ++i) {
        n = factor * n + 1;
        e = factor * e + (d - 1);
    }
    return {n, e};
}

CounterexampleStats counterexample_stats(int k, int d, const Rational& p,
                                         const Rational& epsilon, int tower_level,
                                         const BigInt& base_vertices,
                                         const BigInt& base_edges) {
    if (k < 2 || d < 1)
        fail(errc::domain_error, "need k >= 2 and d >= 1");
    if (!(p > 0 && p <= 1))
        fail(errc::domain_error, "p must lie in (0,1], got " + rat_str(p));

    CounterexampleStats cs;
    cs.k = k;
    cs.d = d;
    cs.tower_level = tower_level;
    cs.p = p;
    cs.epsilon = epsilon;

    Rational pk = rat_pow(p, k - 1);
    Rational denom = 1 + d * pk;
    cs.p_center = 1 / denom;
    cs.p_head = p * (1 + (d - 1) * pk) / denom;

    if (cs.p_center * denom != 1)
        fail(errc::internal_error, "center-probability identity failed");

    // Thm-style inequality checks at the given epsilon
    Rational center_bound = 1 - (1 + epsilon) / rat_pow(Rational(d), k - 2);
    Rational head_bound = (1 + epsilon) / (d + 1);
    cs.center_ok = cs.p_center > center_bound;
    cs.head_ok = cs.p_head < head_bound;

    if (base_vertices > 0) {
        BigInt copies = BigInt(d) * (k - 1);
        cs.h_vertices = copies * base_vertices + 1;
        cs.h_edges = copies * base_edges + d;
    }
    return cs;
}

Rational components_join_prob(const std::vector<std::vector<Rational>>& factor_lists) {
    Rational denom(1);
    for (const auto& factors : factor_lists) {
        Rational prod(1);
        for (const Rational& f : factors) {
            if (f < 0 || f > 1)
                fail(errc::domain_error, "factor " + rat_str(f) + " outside [0,1]");
            prod *= f;
        }
        denom += prod;
    }
    Rational r(1);
    r /= denom;
    return r;
}

CounterexampleGraph build_counterexample(const ExtendableGraph& h0, int d,
                                         std::uint64_t max_vertices) {
    check_kd(h0.k, d);
    if (h0.head < 0 || h0.head >= h0.graph.n)
        fail(errc::unknown_vertex, "designated head " + std::to_string(h0.head));

    int k = h0.k;
    int copies = d * (k - 1);
    std::uint64_t total = static_cast<std::uint64_t>(copies) * h0.graph.n + 1;
    if (total > max_vertices)
        fail(errc::budget_exceeded, "counterexample exceeds the vertex budget");

    std::vector<Hypergraph> parts(copies, h0.graph);
    UnionResult u = disjoint_union(parts);
    int n = u.graph.n + 1;
    Vertex center = n - 1;

    std::vector<Edge> edges = u.graph.edges;
    for (int i = 0; i < d; ++i) {
        Edge e{center};
        for (int j = 0; j < k - 1; ++j)
            e.push_back(u.offsets[i * (k - 1) + j] + h0.head);
        edges.push_back(std::move(e));
    }

    std::map<Vertex, std::string> labels;
    labels[center] = "center";
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < k - 1; ++j)
            labels[u.offsets[i * (k - 1) + j] + h0.head] =
                "copy:" + std::to_string(i + 1) + "," + std::to_string(j + 1);

    CounterexampleGraph out;
    out.center = center;
    out.first_copy_head = u.offsets[0] + h0.head;
    out.graph = new_hypergraph(k, n, std::move(edges), std::move(labels));
    return out;
}

} // namespace hypermatch::construct
