#pragma once

#include "chromroots/bigint.hpp"
#include "chromroots/graph.hpp"

#include "json.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace chromroots {

inline constexpr int kCatalogMaxOrder = 7;
inline constexpr int kExpansionMaxK = 4;

/// Connected graphs of order 1..max_order, canonical forms, ordered by order
/// then enumeration position.
std::vector<Graph> connected_catalog(int max_order);

/// Number of adjacency-preserving maps V(T) -> V(H). Requires v(T) <= 7 and
/// v(H) <= 64.
BigInt hom_count(const Graph& t, const Graph& h);

struct ExpansionTerm {
  Graph graph;
  std::string graph6;
  Rational c;
};

/// p_k(H) = sum over terms of (-1)^(k-1) k c_k(T) hom(T, H).
struct HomExpansion {
  int k = 0;
  std::vector<ExpansionTerm> terms;

  Rational evaluate(const Graph& h) const;
  const ExpansionTerm* find(const Graph& t) const;
};

class ExpansionSolveError : public std::runtime_error {
 public:
  ExpansionSolveError(const std::string& what, std::vector<std::string> deficient)
      : std::runtime_error(what), deficient_(std::move(deficient)) {}
  /// graph6 codes of catalog members without a pivot (empty if inconsistent).
  const std::vector<std::string>& deficient() const { return deficient_; }

 private:
  std::vector<std::string> deficient_;
};

/// p_k of the chromatic roots of h, via Newton's identities.
Rational chromatic_power_sum(const Graph& h, int k);

/// Exact solve over the catalog of order <= k+1 by fraction-free elimination.
HomExpansion solve_ck(int k, const std::vector<Graph>& samples);

/// All connected graphs of order <= k+2 plus 20 seeded random graphs of
/// order <= 10.
std::vector<Graph> default_solve_samples(int k, const RngSpec& rng);
/// `count` random graphs of order <= 10 whose classes are not in `exclude`.
std::vector<Graph> holdout_graphs(int count, const RngSpec& rng, const std::vector<Graph>& exclude);

struct VerificationReport {
  bool pass = true;
  int checked = 0;
  std::vector<std::string> failures;
};

VerificationReport verify_expansion(const HomExpansion& e, const std::vector<Graph>& holdout);

nlohmann::json to_json(const HomExpansion& e);
HomExpansion expansion_from_json(const nlohmann::json& j);

}  // namespace chromroots
