#include "hypermatch/exact_count.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <unordered_map>

#include <omp.h>

#include "hypermatch/detail/bitset_ops.hpp"

namespace hypermatch {

namespace {

// Matchings of H are exactly the independent sets of the edge conflict
// graph, so the counting recursion only ever needs edge-index sets.
// m <= 64 gets a single-word fast path; larger instances use block masks.
using detail::MaskHash;
using detail::Ops64;
using detail::OpsDyn;

template <class Ops>
struct Engine {
    using Mask = typename Ops::Mask;

    int k = 2;
    int m = 0;
    std::vector<Mask> conflict;   // per edge: conflicting edges, self included
    std::vector<Mask> vert_edges; // per vertex: incident edges
    const std::vector<Edge>* edge_verts = nullptr;

    CountOptions opts;
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<bool> over_budget{false};
    std::unordered_map<Mask, SizePoly, MaskHash<Ops>> memo; // serial use only

    explicit Engine(const Hypergraph& h, const CountOptions& o) : opts(o) {
        k = h.k;
        m = h.edge_count();
        edge_verts = &h.edges;
        vert_edges.assign(h.n, Ops::empty(m));
        conflict.assign(m, Ops::empty(m));
        for (int e = 0; e < m; ++e)
            for (Vertex v : h.edges[e])
                Ops::set(vert_edges[v], e);
        for (int e = 0; e < m; ++e) {
            Mask c = Ops::empty(m);
            for (Vertex v : h.edges[e])
                c = Ops::or_(c, vert_edges[v]);
            conflict[e] = c;
        }
    }

    void tick() {
        if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > opts.budget) {
            over_budget.store(true, std::memory_order_relaxed);
            if (!opts.parallel)
                fail(errc::budget_exceeded,
                     "counting recursion exceeded " + std::to_string(opts.budget) + " nodes");
        }
    }

    Mask component_of(int seed_edge, const Mask& s) const {
        Mask comp = Ops::empty(m);
        Ops::set(comp, seed_edge);
        Mask frontier = comp;
        while (!Ops::is_empty(frontier)) {
            Mask next = Ops::empty(m);
            Ops::for_each(frontier, [&](int e) { next = Ops::or_(next, conflict[e]); });
            next = Ops::andnot(Ops::and_(next, s), comp);
            comp = Ops::or_(comp, next);
            frontier = next;
        }
        return comp;
    }

    // edge whose vertices carry the largest residual degree sum;
    // ties resolve to the lowest canonical index via strict >
    int pick_pivot(const Mask& comp) const {
        int best = -1;
        long best_score = -1;
        Ops::for_each(comp, [&](int e) {
            long score = 0;
            for (Vertex v : (*edge_verts)[e])
                score += Ops::popcount(Ops::and_(vert_edges[v], comp));
            if (score > best_score) {
                best_score = score;
                best = e;
            }
        });
        return best;
    }

    SizePoly count(const Mask& s, int depth) {
        tick();
        if (over_budget.load(std::memory_order_relaxed))
            return {BigInt(1)};
        if (Ops::is_empty(s))
            return {BigInt(1)};

        if (opts.memoize && !opts.parallel) {
            auto it = memo.find(s);
            if (it != memo.end())
                return it->second;
        }

        SizePoly result{BigInt(1)};
        Mask rest = s;
        while (!Ops::is_empty(rest)) {
            int b = Ops::lowest(rest);
            Mask comp = component_of(b, s);
            rest = Ops::andnot(rest, comp);
            SizePoly part = count_component(comp, depth);
            if (result.size() == 1 && result[0] == 1)
                result = std::move(part);
            else
                result = poly_conv(result, part);
        }

        if (opts.memoize && !opts.parallel)
            memo.emplace(s, result);
        return result;
    }

    SizePoly count_component(const Mask& comp, int depth) {
        if (Ops::popcount(comp) == 1)
            return {BigInt(1), BigInt(1)};
        int pivot = pick_pivot(comp);
        Mask without = comp;
        Ops::clear(without, pivot);
        Mask with = Ops::andnot(comp, conflict[pivot]);

        SizePoly excluded, included;
        if (opts.parallel && depth < opts.task_depth) {
#pragma omp task shared(included, with, depth)
            included = count(with, depth + 1);
            excluded = count(without, depth + 1);
#pragma omp taskwait
        } else {
            excluded = count(without, depth + 1);
            included = count(with, depth + 1);
        }
        poly_add(excluded, included, 1);
        return excluded;
    }

    SizePoly run() {
        Mask all = Ops::full(m);
        SizePoly out;
        if (opts.parallel) {
#pragma omp parallel
#pragma omp single
            out = count(all, 0);
            if (over_budget.load())
                fail(errc::budget_exceeded,
                     "counting recursion exceeded " + std::to_string(opts.budget) + " nodes");
        } else {
            out = count(all, 0);
        }
        return out;
    }
};

template <class Ops>
SizePoly count_all(const Hypergraph& h, const CountOptions& opts) {
    Engine<Ops> engine(h, opts);
    return engine.run();
}

} // namespace

MatchCoeffs match_coeffs(const Hypergraph& h, const CountOptions& opts) {
    SizePoly counts = h.edge_count() <= 64 ? count_all<Ops64>(h, opts)
                                           : count_all<OpsDyn>(h, opts);
    MatchCoeffs c;
    c.k = h.k;
    c.n = h.n;
    c.counts = std::move(counts);
    c.counts.resize(static_cast<std::size_t>(h.n / h.k) + 1);
    return c;
}

MatchingPolynomial matching_polynomial(const MatchCoeffs& c) {
    MatchingPolynomial p;
    p.form = MatchingPolynomial::Form::defect;
    p.k = c.k;
    p.n = c.n;
    p.coeffs.assign(c.n + 1, BigInt(0));
    for (std::size_t i = 0; i < c.counts.size(); ++i) {
        int power = c.n - c.k * static_cast<int>(i);
        p.coeffs[power] = (i % 2 == 0) ? c.counts[i] : BigInt(-c.counts[i]);
    }
    return p;
}

MatchingPolynomial generating_polynomial(const MatchCoeffs& c) {
    MatchingPolynomial p;
    p.form = MatchingPolynomial::Form::generating;
    p.k = c.k;
    p.n = c.n;
    p.coeffs = c.counts;
    return p;
}

MatchingPolynomial matching_polynomial(const Hypergraph& h, const CountOptions& opts) {
    return matching_polynomial(match_coeffs(h, opts));
}

MatchingPolynomial generating_polynomial(const Hypergraph& h, const CountOptions& opts) {
    return generating_polynomial(match_coeffs(h, opts));
}

Probability prob_avoid(const Hypergraph& h, const std::vector<Vertex>& avoid,
                       const std::vector<Vertex>& given, const CountOptions& opts) {
    for (Vertex w : avoid)
        for (Vertex u : given)
            if (w == u)
                fail(errc::disjointness_violated,
                     "vertex " + std::to_string(w) + " in both avoid and given sets");

    Hypergraph conditioned;
    std::vector<Vertex> mapped_avoid;
    if (given.empty()) {
        conditioned = h;
        mapped_avoid = avoid;
    } else {
        DeletionResult del = delete_vertices(h, given);
        conditioned = std::move(del.graph);
        for (Vertex w : avoid) {
            if (w < 0 || w >= h.n)
                fail(errc::unknown_vertex, "vertex " + std::to_string(w));
            mapped_avoid.push_back(del.old_to_new[w]);
        }
    }
    BigInt den = match_coeffs(conditioned, opts).total();
    BigInt num = match_coeffs(delete_vertices(conditioned, mapped_avoid).graph, opts).total();
    Probability p;
    p.value = Rational(num, den);
    p.value.canonicalize();
    p.provenance = "N(H-given-avoid)/N(H-given) = " + num.get_str() + "/" + den.get_str();
    return p;
}

Rational avg_matching_size(const Hypergraph& h, const CountOptions& opts) {
    MatchCoeffs c = match_coeffs(h, opts);
    BigInt num = 0;
    for (std::size_t i = 0; i < c.counts.size(); ++i)
        num += BigInt(static_cast<long>(i)) * c.counts[i];
    Rational avg(num, c.total());
    avg.canonicalize();
    return avg;
}

namespace {

class GmpRng {
public:
    explicit GmpRng(std::uint64_t seed) {
        gmp_randinit_mt(state_);
        gmp_randseed_ui(state_, static_cast<unsigned long>(seed));
    }
    ~GmpRng() { gmp_randclear(state_); }
    GmpRng(const GmpRng&) = delete;
    GmpRng& operator=(const GmpRng&) = delete;

    /// uniform integer in [0, bound)
    BigInt below(const BigInt& bound) {
        BigInt r;
        mpz_urandomm(r.get_mpz_t(), state_, bound.get_mpz_t());
        return r;
    }

private:
    gmp_randstate_t state_;
};

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

template <class Ops>
class ExactSampler {
public:
    using Mask = typename Ops::Mask;

    ExactSampler(const Hypergraph& h, const CountOptions& opts) : engine_(h, opts) {}

    Matching sample(std::uint64_t seed) {
        GmpRng rng(seed);
        Mask residual = Ops::full(engine_.m);
        Matching out;
        while (!Ops::is_empty(residual)) {
            int e = Ops::lowest(residual);
            const BigInt& n_res = total(residual);
            Mask included_state = Ops::andnot(residual, engine_.conflict[e]);
            const BigInt& n_inc = total(included_state);
            if (rng.below(n_res) < n_inc) {
                out.edge_indices.push_back(e);
                residual = included_state;
            } else {
                Ops::clear(residual, e);
            }
        }
        return out;
    }

private:
    const BigInt& total(const Mask& s) {
        auto it = cache_.find(s);
        if (it != cache_.end())
            return it->second;
        engine_.nodes = 0; // budget applies per counting call
        BigInt t = poly_total(engine_.count(s, 0));
        return cache_.emplace(s, std::move(t)).first->second;
    }

    Engine<Ops> engine_;
    std::unordered_map<Mask, BigInt, MaskHash<Ops>> cache_;
};

} // namespace

Matching sample_matching_exact(const Hypergraph& h, std::uint64_t seed,
                               const CountOptions& opts) {
    if (h.edge_count() <= 64) {
        ExactSampler<Ops64> s(h, opts);
        return s.sample(seed);
    }
    ExactSampler<OpsDyn> s(h, opts);
    return s.sample(seed);
}

std::vector<Matching> sample_matchings_exact(const Hypergraph& h, std::size_t count,
                                             std::uint64_t seed, const CountOptions& opts) {
    std::vector<Matching> out(count);
    if (h.edge_count() <= 64) {
#pragma omp parallel
        {
            ExactSampler<Ops64> sampler(h, opts);
#pragma omp for schedule(static)
            for (long i = 0; i < static_cast<long>(count); ++i)
                out[i] = sampler.sample(splitmix64(seed ^ (i + 1)));
        }
    } else {
        ExactSampler<OpsDyn> sampler(h, opts);
        for (std::size_t i = 0; i < count; ++i)
            out[i] = sampler.sample(splitmix64(seed ^ (i + 1)));
    }
    return out;
}

McEstimate mc_estimate_avoid(const Hypergraph& h, Vertex v, std::uint64_t steps,
                             std::size_t samples, std::uint64_t seed) {
    if (v < 0 || v >= h.n)
        fail(errc::unknown_vertex, "vertex " + std::to_string(v));
    if (steps == 0 || samples == 0)
        fail(errc::domain_error, "steps and samples must be positive");

    McEstimate r;
    r.samples = samples;
    int m = h.edge_count();
    if (m == 0) {
        r.estimate = 1.0;
        r.stderr_est = 0.0;
        return r;
    }

    std::mt19937_64 rng(seed);
    std::vector<char> in_matching(m, 0);
    std::vector<char> covered(h.n, 0);

    auto step_chain = [&]() {
        int e = static_cast<int>(rng() % m);
        bool coin = rng() & 1;
        if (in_matching[e]) {
            if (coin) {
                in_matching[e] = 0;
                for (Vertex w : h.edges[e])
                    covered[w] = 0;
            }
        } else {
            bool addable = true;
            for (Vertex w : h.edges[e])
                if (covered[w]) {
                    addable = false;
                    break;
                }
            if (addable && coin) {
                in_matching[e] = 1;
                for (Vertex w : h.edges[e])
                    covered[w] = 1;
            }
        }
    };

    std::uint64_t burn = steps / 2;
    for (std::uint64_t i = 0; i < burn; ++i)
        step_chain();

    std::uint64_t remaining = steps - burn;
    std::uint64_t stride = std::max<std::uint64_t>(1, remaining / samples);
    std::vector<char> hits(samples, 0);
    for (std::size_t i = 0; i < samples; ++i) {
        for (std::uint64_t s = 0; s < stride; ++s)
            step_chain();
        hits[i] = !covered[v];
    }
    r.chain_steps = burn + stride * samples;

    double mean = 0;
    for (char hit : hits)
        mean += hit;
    mean /= static_cast<double>(samples);
    r.estimate = mean;

    std::size_t batches = std::min<std::size_t>(25, samples);
    std::size_t per = samples / batches;
    double var = 0;
    for (std::size_t b = 0; b < batches; ++b) {
        double bm = 0;
        for (std::size_t i = b * per; i < (b + 1) * per; ++i)
            bm += hits[i];
        bm /= static_cast<double>(per);
        var += (bm - mean) * (bm - mean);
    }
    var /= static_cast<double>(batches > 1 ? batches - 1 : 1);
    r.stderr_est = std::sqrt(var / static_cast<double>(batches));
    return r;
}

} // namespace hypermatch
