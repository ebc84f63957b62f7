#pragma once

#include <cstdint>
#include <vector>

#include "hypermatch/hypergraph.hpp"
#include "hypermatch/numeric.hpp"

namespace hypermatch {

struct CountOptions {
    std::uint64_t budget = 100'000'000ULL; // recursion node limit
    bool memoize = false;                  // off by default (exponential memory)
    bool parallel = false;                 // OpenMP task recursion
    int task_depth = 5;                    // spawn tasks while depth < task_depth
};

/// p(H, 0..floor(n/k)) as arbitrary-precision integers.
struct MatchCoeffs {
    int k = 2;
    int n = 0;
    SizePoly counts;

    BigInt total() const { return poly_total(counts); }
};

/// Exact matching counts by size, via pivot-edge branching with
/// connected-component splitting.  Throws BudgetExceeded past the node limit.
MatchCoeffs match_coeffs(const Hypergraph& h, const CountOptions& opts = {});

struct MatchingPolynomial {
    enum class Form { defect, generating };
    Form form = Form::defect;
    int k = 2;
    int n = 0;
    std::vector<BigInt> coeffs; // coeffs[i] = coefficient of x^i

    bool operator==(const MatchingPolynomial&) const = default;
};

MatchingPolynomial matching_polynomial(const MatchCoeffs& c);
MatchingPolynomial generating_polynomial(const MatchCoeffs& c);
MatchingPolynomial matching_polynomial(const Hypergraph& h, const CountOptions& opts = {});
MatchingPolynomial generating_polynomial(const Hypergraph& h, const CountOptions& opts = {});

struct Probability {
    Rational value;
    std::string provenance;
};

/// P_H(avoid | given) = N(H - given - avoid) / N(H - given), exact.
Probability prob_avoid(const Hypergraph& h, const std::vector<Vertex>& avoid,
                       const std::vector<Vertex>& given = {},
                       const CountOptions& opts = {});

Rational avg_matching_size(const Hypergraph& h, const CountOptions& opts = {});

struct Matching {
    std::vector<int> edge_indices; // sorted ascending
    bool operator==(const Matching&) const = default;
};

/// Exact uniform sample over all matchings of H (self-reducible chain over
/// edges in canonical order).  Deterministic for a fixed seed.
Matching sample_matching_exact(const Hypergraph& h, std::uint64_t seed,
                               const CountOptions& opts = {});

/// Batch sampler; per-index derived seeds make the result independent of
/// thread count and schedule.
std::vector<Matching> sample_matchings_exact(const Hypergraph& h, std::size_t count,
                                             std::uint64_t seed,
                                             const CountOptions& opts = {});

struct McEstimate {
    double estimate = 0.0;
    double stderr_est = 0.0;
    std::uint64_t chain_steps = 0;
    std::size_t samples = 0;
};

/// Lazy Glauber chain over matchings; reports the fraction of sampled states
/// avoiding v with a batch-means standard error.  Always returns an estimate.
McEstimate mc_estimate_avoid(const Hypergraph& h, Vertex v, std::uint64_t steps,
                             std::size_t samples, std::uint64_t seed);

} // namespace hypermatch
