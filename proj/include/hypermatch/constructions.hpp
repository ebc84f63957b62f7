#pragma once

#include <cstdint>

#include "hypermatch/dynamics.hpp"
#include "hypermatch/hypergraph.hpp"
#include "hypermatch/numeric.hpp"

namespace hypermatch::construct {

struct ExtendableGraph {
    Hypergraph graph;
    Vertex head = -1;
    int k = 2;
    int d = 1;
};

/// d-regular linear k-graph: k copies of the (d-1)-regular graph plus a
/// perfect matching taking one vertex from each copy.  k^d vertices.
Hypergraph regular_linear(int k, int d, std::uint64_t max_vertices = 10'000'000);

/// Head-extension operator: (d-1)(k-1) disjoint copies of F plus a fresh
/// head joined to the copies' heads in groups of k-1.  With strict=true the
/// input must be exactly d-extendable; otherwise any designated vertex of
/// degree <= d-1 is accepted (identity-testing mode).
ExtendableGraph s_extend(const ExtendableGraph& f, bool strict = false);

/// Smallest-n d-extendable linear k-graph with n <= max_n, by canonical
/// backtracking over edge sets.  Deterministic; throws NotFound.
ExtendableGraph extendable_search(int k, int d, int max_n);

/// The recursive (kl+1)-extendable construction built from regular layers
/// and hub gluing; output is machine-validated and the call fails with
/// ConstructionAmbiguous if the validation does not pass.
ExtendableGraph extendable_paper(int k, int ell, std::uint64_t max_vertices = 10'000'000);

ExtendableGraph tower_build(const ExtendableGraph& f, int levels,
                            std::uint64_t max_vertices = 10'000'000);

struct TowerStats {
    int k = 3;
    int d = 2;
    std::vector<Rational> levels; // p_0 .. p_L under p_{i+1} = g_d(p_i)
    int alpha_side = 0;           // +1 above alpha, -1 below, 0 inside enclosure
    dynamics::Enclosure alpha;
    bool three = false;
    dynamics::Enclosure beta, gamma; // valid iff three
    bool even_to_beta = true;        // which attractor the even levels chase
    std::vector<Rational> even_gap;  // distance of p_{2i} to its attractor enclosure
    std::vector<Rational> odd_gap;   // distance of p_{2i+1} to its attractor enclosure
};

/// Exact head-probability trajectory p_{i+1} = 1/(1+(d-1)p_i^{k-1}) with
/// attractor-side flags and distances to certified enclosures.  Throws
/// RationalBlowup when denominators pass den_bit_budget (the float
/// trajectory in dynamics::iterate_map is the fallback).
TowerStats tower_stats(int k, int d, const Rational& p0, int levels,
                       std::size_t den_bit_budget = 1u << 22, int prec = 128);

struct CounterexampleStats {
    int k = 3;
    int d = 2;
    int tower_level = -1; // 2l+1 when known
    Rational p;           // head probability of H0
    Rational p_center;    // 1 / (1 + d p^{k-1})
    Rational p_head;      // p (1 + (d-1) p^{k-1}) / (1 + d p^{k-1})
    Rational epsilon;
    bool center_ok = false; // p_center > 1 - (1+eps)/d^{k-2}
    bool head_ok = false;   // p_head  < (1+eps)/(d+1)
    BigInt h_vertices = 0;  // of the virtual H when base sizes are supplied
    BigInt h_edges = 0;
};

CounterexampleStats counterexample_stats(int k, int d, const Rational& p,
                                         const Rational& epsilon, int tower_level = -1,
                                         const BigInt& base_vertices = BigInt(0),
                                         const BigInt& base_edges = BigInt(0));

/// Vertex/edge counts of the level-`levels` tower over a base of the given size.
std::pair<BigInt, BigInt> tower_size(int k, int d, int levels, const BigInt& base_vertices,
                                     const BigInt& base_edges);

struct GapSearch {
    int d_first_certified = 0; // smallest d with three certified fixed points
    int d = 0;                 // smallest d passing the whole gap pipeline
    int levels = 0;            // L with p_{2L}, p_{2L+1} within tol of beta/gamma
    TowerStats tower;
    CounterexampleStats stats;
    dynamics::FixedPoints fixed_points;
};

/// Scans d upward for the smallest value where (a) three fixed points
/// certify, (b) the exact tower from p0 reaches within tol of both
/// attractor enclosures before the rational-size probe budget, and (c) the
/// epsilon gap inequalities certify at the reached odd-level probability.
GapSearch find_gap_d(int k, const Rational& p0, const Rational& epsilon, const Rational& tol,
                     int prec = 96, int max_levels = 64, int d_limit = 512);

/// Same pipeline at one fixed d; levels < 0 in the result marks a tower that
/// cannot reach tol before the probe budget.
GapSearch gap_at_d(int k, int d, const Rational& p0, const Rational& epsilon,
                   const Rational& tol, int prec = 96, int max_levels = 64);

/// 1 / (1 + sum_i prod_j factors[i][j]) for exact factor lists in [0,1].
Rational components_join_prob(const std::vector<std::vector<Rational>>& factor_lists);

struct CounterexampleGraph {
    Hypergraph graph;
    Vertex center = -1;
    Vertex first_copy_head = -1; // head of copy (1,1)
};

/// Explicit tiny-analog counterexample: d(k-1) disjoint copies of h0 plus a
/// center vertex joined to the copies' heads by d edges.
CounterexampleGraph build_counterexample(const ExtendableGraph& h0, int d,
                                         std::uint64_t max_vertices = 10'000'000);

} // namespace hypermatch::construct
