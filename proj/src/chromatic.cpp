#include "chromroots/chromatic.hpp"
#include "chromroots/canonical.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace chromroots {

const IntPolynomial* ChromaticCache::find(const std::string& key) {
  auto it = map_.find(key);
  if (it == map_.end()) return nullptr;
  order_.splice(order_.begin(), order_, it->second);
  ++hits_;
  return &it->second->second;
}

void ChromaticCache::insert(const std::string& key, IntPolynomial value) {
  if (capacity_ == 0 || map_.count(key)) return;
  order_.emplace_front(key, std::move(value));
  map_.emplace(key, order_.begin());
  if (map_.size() > capacity_) {
    map_.erase(order_.back().first);
    order_.pop_back();
  }
}

namespace {

using Mask = std::uint64_t;
using Adj = std::array<Mask, kMaskOrder>;

IntPolynomial cycle_poly(int k) {
  // (x-1)^k + (-1)^k (x-1)
  IntPolynomial xm1 = IntPolynomial::linear(1);
  IntPolynomial r = pow(xm1, k);
  if (k % 2 == 0) r += xm1;
  else r -= xm1;
  return r;
}

IntPolynomial tree_poly(int k) { return IntPolynomial::monomial(1) * pow(IntPolynomial::linear(1), k - 1); }

class Solver {
 public:
  Solver(const ChromaticOptions& opts, ChromaticCache& cache) : opts_(opts), cache_(cache) {}

  IntPolynomial solve(Adj adj, Mask alive) {
    IntPolynomial factor = IntPolynomial::constant(1);
    // Strip simplicial vertices: P(G) = (x - d) P(G - v) when N(v) is a clique.
    bool stripped = true;
    while (stripped && alive) {
      stripped = false;
      for (Mask m = alive; m; m &= m - 1) {
        const int v = std::countr_zero(m);
        const Mask nb = adj[v] & alive;
        if (!is_clique(adj, nb)) continue;
        factor *= IntPolynomial::linear(std::popcount(nb));
        alive &= ~(Mask{1} << v);
        stripped = true;
      }
    }
    if (!alive) return factor;

    const int k = std::popcount(alive);
    int edges2 = 0;
    bool all_degree_two = true;
    for (Mask m = alive; m; m &= m - 1) {
      const int d = std::popcount(adj[std::countr_zero(m)] & alive);
      edges2 += d;
      all_degree_two = all_degree_two && d == 2;
    }
    if (edges2 == 0) return factor * IntPolynomial::monomial(k);

    const Mask comp = component_of(adj, alive);
    if (comp != alive) {
      IntPolynomial r = solve(adj, comp);
      r *= solve(adj, alive & ~comp);
      return factor * r;
    }
    if (all_degree_two) return factor * cycle_poly(k);

    std::string key;
    if (k <= opts_.memo_max_order) {
      key = canonical_form(to_graph(adj, alive)).bytes;
      if (const auto* hit = cache_.find(key)) return factor * *hit;
    }

    // Branch on an edge inside the densest neighbourhood.
    int u = -1, best_u = -1;
    for (Mask m = alive; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const Mask nb = adj[v] & alive;
      int inside = 0;
      for (Mask w = nb; w; w &= w - 1) inside += std::popcount(adj[std::countr_zero(w)] & nb);
      if (inside > best_u) {
        best_u = inside;
        u = v;
      }
    }
    const Mask nu = adj[u] & alive;
    int w = -1, best_w = -1;
    for (Mask m = nu; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      const int common = std::popcount(adj[v] & nu);
      if (common > best_w) {
        best_w = common;
        w = v;
      }
    }

    Adj deleted = adj;
    deleted[u] &= ~(Mask{1} << w);
    deleted[w] &= ~(Mask{1} << u);

    // Contract w into u.
    Adj contracted = deleted;
    const Mask merged = (deleted[u] | deleted[w]) & alive & ~(Mask{1} << u) & ~(Mask{1} << w);
    contracted[u] = merged;
    for (Mask m = alive; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      contracted[v] &= ~(Mask{1} << w);
      if ((merged >> v) & 1U) contracted[v] |= Mask{1} << u;
    }
    const Mask alive_contracted = alive & ~(Mask{1} << w);

    IntPolynomial r = solve(deleted, alive);
    r -= solve(contracted, alive_contracted);
    if (!key.empty()) cache_.insert(key, r);
    return factor * r;
  }

 private:
  static bool is_clique(const Adj& adj, Mask set) {
    for (Mask m = set; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      if ((adj[v] & set) != (set & ~(Mask{1} << v))) return false;
    }
    return true;
  }

  static Mask component_of(const Adj& adj, Mask alive) {
    Mask seen = alive & (~alive + 1);
    Mask frontier = seen;
    while (frontier) {
      Mask next = 0;
      for (Mask m = frontier; m; m &= m - 1) next |= adj[std::countr_zero(m)];
      next &= alive & ~seen;
      seen |= next;
      frontier = next;
    }
    return seen;
  }

  static Graph to_graph(const Adj& adj, Mask alive) {
    std::vector<int> index(kMaskOrder, -1);
    int k = 0;
    for (Mask m = alive; m; m &= m - 1) index[std::countr_zero(m)] = k++;
    std::vector<Mask> masks(static_cast<std::size_t>(k), 0);
    for (Mask m = alive; m; m &= m - 1) {
      const int v = std::countr_zero(m);
      for (Mask n = adj[v] & alive; n; n &= n - 1) masks[index[v]] |= Mask{1} << index[std::countr_zero(n)];
    }
    return Graph::from_masks(masks);
  }

  const ChromaticOptions& opts_;
  ChromaticCache& cache_;
};

bool is_complete(const Graph& g) {
  const auto n = static_cast<std::size_t>(g.order());
  return g.edge_count() == n * (n - 1) / 2;
}

bool is_cycle(const Graph& g) {
  if (g.order() < 3) return false;
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) != 2) return false;
  return true;  // callers pass connected components
}

IntPolynomial component_poly(const Graph& c, const ChromaticOptions& opts, ChromaticCache& cache) {
  const int k = c.order();
  if (k == 1) return IntPolynomial::monomial(1);
  if (c.edge_count() == static_cast<std::size_t>(k - 1)) return tree_poly(k);
  if (is_complete(c)) return IntPolynomial::falling_factorial(k);
  if (is_cycle(c)) return cycle_poly(k);
  if (k > kMaskOrder) throw std::invalid_argument("chromatic_poly: component of order " + std::to_string(k) + " exceeds 64");
  if (k > opts.max_order) {
    if (!opts.allow_large)
      throw std::invalid_argument("chromatic_poly: component of order " + std::to_string(k) + " exceeds cap " +
                                  std::to_string(opts.max_order));
    std::cerr << "warning: chromatic_poly on order " << k << " above cap " << opts.max_order << "\n";
  }
  Adj adj{};
  for (int v = 0; v < k; ++v) adj[v] = c.mask(v);
  const Mask alive = (k == 64) ? ~Mask{0} : ((Mask{1} << k) - 1);
  return Solver(opts, cache).solve(adj, alive);
}

}  // namespace

IntPolynomial chromatic_poly(const Graph& g, const ChromaticOptions& opts) {
  ChromaticCache local(opts.cache ? 0 : (1U << 14));
  ChromaticCache& cache = opts.cache ? *opts.cache : local;
  IntPolynomial out = IntPolynomial::constant(1);
  for (const auto& comp : g.components()) out *= component_poly(g.induced(comp), opts, cache);
  return out;
}

std::vector<BigInt> falling_factorial_coefficients(const IntPolynomial& p) {
  // Newton forward differences at 0: a_k = (Delta^k p)(0) / k!.
  const int d = std::max(p.degree(), 0);
  std::vector<BigInt> values(static_cast<std::size_t>(d) + 1);
  for (int t = 0; t <= d; ++t) values[t] = p.evaluate(BigInt(t));
  std::vector<BigInt> out(static_cast<std::size_t>(d) + 1);
  BigInt fact = 1;
  for (int k = 0; k <= d; ++k) {
    if (k > 0) fact *= k;
    if (values[0] % fact != 0) throw std::logic_error("falling factorial coefficient is not integral");
    out[k] = values[0] / fact;
    for (int i = 0; i + k < d; ++i) values[i] = values[i + 1] - values[i];
  }
  return out;
}

std::vector<BigInt> ip_counts(const Graph& g) {
  if (g.order() > 12) throw std::invalid_argument("ip_counts supports order <= 12");
  auto out = falling_factorial_coefficients(chromatic_poly(g));
  out.resize(static_cast<std::size_t>(g.order()) + 1);
  return out;
}

double coloring_rate(const IntPolynomial& chromatic, int n, double c, bool force) {
  if (n < 1) throw std::invalid_argument("coloring_rate needs n >= 1");
  if (!(c > 8.0)) {
    if (!force) throw std::invalid_argument("coloring_rate requires C > 8");
    std::cerr << "warning: coloring_rate with C = " << c << " <= 8\n";
  }
  const Rational point = Rational(c) * n;
  const Rational value = chromatic.evaluate(point);
  if (value <= 0) throw std::domain_error("chromatic polynomial is not positive at C*n");
  const double log_value =
      log_abs(boost::multiprecision::numerator(value)) - log_abs(boost::multiprecision::denominator(value));
  const double root = std::exp(log_value / n);
  // Exact n-th powers (edgeless graphs at integral C n) give an exact rate.
  if (boost::multiprecision::denominator(value) == 1 && root < 0x1.0p52) {
    const BigInt r(static_cast<long long>(std::llround(root)));
    if (boost::multiprecision::pow(r, static_cast<unsigned>(n)) == boost::multiprecision::numerator(value))
      return static_cast<double>(std::llround(root)) / n;
  }
  return root / n;
}

double coloring_rate(const Graph& g, double c, bool force) {
  return coloring_rate(chromatic_poly(g), g.order(), c, force);
}

double complete_graph_rate_limit(double c) {
  return std::exp(c * std::log(c) - 1.0 - (c - 1.0) * std::log(c - 1.0));
}

}  // namespace chromroots
