#pragma once

#include "chromroots/bigint.hpp"
#include "chromroots/graph.hpp"
#include "chromroots/polynomial.hpp"

#include <cstddef>
#include <list>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace chromroots {

/// LRU memo of chromatic polynomials keyed by canonical code. Not thread
/// safe; use one per worker.
class ChromaticCache {
 public:
  explicit ChromaticCache(std::size_t capacity = 1U << 16) : capacity_(capacity) {}
  const IntPolynomial* find(const std::string& key);
  void insert(const std::string& key, IntPolynomial value);
  std::size_t size() const { return map_.size(); }
  std::size_t hits() const { return hits_; }

 private:
  using Entry = std::pair<std::string, IntPolynomial>;
  std::size_t capacity_;
  std::size_t hits_ = 0;
  std::list<Entry> order_;
  std::unordered_map<std::string, std::list<Entry>::iterator> map_;
};

struct ChromaticOptions {
  /// Components larger than this that are not paths, trees, cycles or
  /// cliques are rejected unless allow_large is set.
  int max_order = 16;
  bool allow_large = false;
  /// Memoize subproblems with at most this many vertices.
  int memo_max_order = 16;
  ChromaticCache* cache = nullptr;
};

/// P(G, x) by deletion-contraction with closed-form shortcuts.
IntPolynomial chromatic_poly(const Graph& g, const ChromaticOptions& opts = {});

/// ip(G, k) for k = 0..n: partitions into k nonempty independent sets.
std::vector<BigInt> ip_counts(const Graph& g);
/// Coefficients of p in the falling-factorial basis x(x-1)...(x-k+1).
std::vector<BigInt> falling_factorial_coefficients(const IntPolynomial& p);

/// P(G, C n)^(1/n) / n. C <= 8 is outside the range with a known limit and is only
/// accepted with `force` (a warning is printed).
double coloring_rate(const Graph& g, double c, bool force = false);
double coloring_rate(const IntPolynomial& chromatic, int n, double c, bool force = false);

/// C^C / (e (C-1)^(C-1)), the complete-graph limit of coloring_rate.
double complete_graph_rate_limit(double c);

}  // namespace chromroots
