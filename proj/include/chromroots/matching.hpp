#pragma once

#include "chromroots/bigint.hpp"
#include "chromroots/graph.hpp"
#include "chromroots/polynomial.hpp"

#include <vector>

namespace chromroots {

/// m_k(G) for k = 0..floor(n/2).
struct MatchingCounts {
  int order = 0;
  std::vector<BigInt> m;
};

struct MatchingOptions {
  /// Largest order handled by the subset DP (complete graphs use a closed form).
  int max_order = 26;
};

MatchingCounts matching_counts(const Graph& g, const MatchingOptions& opts = {});
/// n! / (2^k k! (n-2k)!) for each k.
MatchingCounts complete_matching_counts(int n);

/// sum (-1)^k m_k x^(n-2k)
IntPolynomial matching_poly(const MatchingCounts& mc);
/// sum (-1)^k m_k x^(n-k)
IntPolynomial modified_matching_poly(const MatchingCounts& mc);
inline IntPolynomial matching_poly(const Graph& g) { return matching_poly(matching_counts(g)); }
inline IntPolynomial modified_matching_poly(const Graph& g) { return modified_matching_poly(matching_counts(g)); }

/// Probabilists' Hermite polynomial He_n.
IntPolynomial hermite_poly(int n);

}  // namespace chromroots
