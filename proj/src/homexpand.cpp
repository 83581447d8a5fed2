#include "chromroots/homexpand.hpp"
#include "chromroots/canonical.hpp"
#include "chromroots/chromatic.hpp"
#include "chromroots/enumerate.hpp"
#include "chromroots/graph6.hpp"
#include "chromroots/newton.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace chromroots {

std::vector<Graph> connected_catalog(int max_order) {
  if (max_order < 1 || max_order > kCatalogMaxOrder)
    throw std::invalid_argument("catalog order must be in 1.." + std::to_string(kCatalogMaxOrder));
  std::vector<Graph> out;
  for (int n = 1; n <= max_order; ++n)
    for (auto& g : enumerate_connected(n)) out.push_back(std::move(g));
  return out;
}

namespace {

struct HomCounter {
  std::vector<int> order;
  std::vector<std::uint64_t> back;  // earlier neighbours in `order`, as bit positions
  std::vector<std::uint64_t> h;
  std::uint64_t all = 0;
  std::vector<int> image;

  std::uint64_t run(std::size_t depth) {
    std::uint64_t cand = all;
    for (std::uint64_t b = back[depth]; b; b &= b - 1) cand &= h[image[std::countr_zero(b)]];
    if (depth + 1 == order.size()) return static_cast<std::uint64_t>(std::popcount(cand));
    std::uint64_t total = 0;
    for (; cand; cand &= cand - 1) {
      image[depth] = std::countr_zero(cand);
      total += run(depth + 1);
    }
    return total;
  }
};

}  // namespace

BigInt hom_count(const Graph& t, const Graph& h) {
  if (t.order() > kCatalogMaxOrder) throw std::invalid_argument("hom_count pattern order above 7");
  if (h.order() > 64) throw std::invalid_argument("hom_count target order above 64");
  if (t.order() == 0) return 1;
  if (h.order() == 0) return 0;

  // BFS order so every non-root vertex has an earlier neighbour.
  const int k = t.order();
  std::vector<int> order, pos(static_cast<std::size_t>(k), -1);
  for (int s = 0; s < k; ++s) {
    if (pos[s] >= 0) continue;
    pos[s] = static_cast<int>(order.size());
    order.push_back(s);
    for (std::size_t q = order.size() - 1; q < order.size(); ++q)
      for (int v = 0; v < k; ++v)
        if (t.has_edge(order[q], v) && pos[v] < 0) {
          pos[v] = static_cast<int>(order.size());
          order.push_back(v);
        }
  }
  HomCounter c;
  c.order = order;
  c.back.assign(order.size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (t.has_edge(order[i], order[j])) c.back[i] |= std::uint64_t{1} << j;
  c.h = h.masks();
  c.all = h.order() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << h.order()) - 1;
  c.image.assign(order.size(), 0);
  return BigInt(c.run(0));
}

namespace {

Rational sign_k(int k) { return Rational((k % 2 == 1) ? k : -k); }

}  // namespace

Rational HomExpansion::evaluate(const Graph& h) const {
  Rational sum = 0;
  for (const auto& t : terms)
    if (t.c != 0) sum += t.c * Rational(hom_count(t.graph, h));
  return sum * sign_k(k);
}

const ExpansionTerm* HomExpansion::find(const Graph& t) const {
  const auto code = write_graph6(canonical_labeling(t).canonical_graph());
  for (const auto& term : terms)
    if (term.graph6 == code) return &term;
  return nullptr;
}

Rational chromatic_power_sum(const Graph& h, int k) {
  if (k < 1) throw std::invalid_argument("power sum index must be positive");
  if (h.order() == 0) return 0;
  return power_sums_from_coeffs(chromatic_poly(h), k)[static_cast<std::size_t>(k - 1)];
}

HomExpansion solve_ck(int k, const std::vector<Graph>& samples) {
  if (k < 1 || k > kExpansionMaxK) throw std::invalid_argument("solve_ck supports 1 <= k <= 4");
  const auto catalog = connected_catalog(k + 1);
  const std::size_t cols = catalog.size();
  const std::size_t rows = samples.size();

  std::vector<std::vector<BigInt>> a(rows, std::vector<BigInt>(cols + 1));
  std::vector<BigInt> denom(rows, 1);
  for (std::size_t i = 0; i < rows; ++i) {
    const Rational pk = chromatic_power_sum(samples[i], k);
    // Power sums of a monic integer polynomial are integers.
    if (denominator(pk) != 1) throw std::logic_error("non-integral power sum");
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = hom_count(catalog[j], samples[i]);
    a[i][cols] = numerator(pk);
  }

  // Fraction-free (Bareiss) row echelon form.
  std::vector<std::size_t> pivot_col;
  std::vector<std::string> deficient;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = r;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) {
      deficient.push_back(write_graph6(catalog[c]));
      continue;
    }
    std::swap(a[p], a[r]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j <= cols; ++j) a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) / prev;
      a[i][c] = 0;
    }
    prev = a[r][c];
    pivot_col.push_back(c);
    ++r;
  }
  if (!deficient.empty()) {
    std::string names;
    for (const auto& d : deficient) names += (names.empty() ? "" : ", ") + d;
    throw ExpansionSolveError("sample set leaves catalog members undetermined: " + names, deficient);
  }
  for (std::size_t i = r; i < rows; ++i)
    if (a[i][cols] != 0)
      throw ExpansionSolveError("inconsistent system at sample " + write_graph6(samples[i]), {});

  std::vector<Rational> x(cols);
  for (std::size_t i = r; i-- > 0;) {
    const std::size_t c = pivot_col[i];
    Rational s(a[i][cols]);
    for (std::size_t j = c + 1; j < cols; ++j) s -= Rational(a[i][j]) * x[j];
    x[c] = s / Rational(a[i][c]);
  }

  HomExpansion e;
  e.k = k;
  for (std::size_t j = 0; j < cols; ++j)
    e.terms.push_back({catalog[j], write_graph6(catalog[j]), x[j] / sign_k(k)});
  return e;
}

namespace {

Graph random_small(const RngSpec& rng, std::uint64_t index, int min_order) {
  const int n = min_order + static_cast<int>(index % static_cast<std::uint64_t>(11 - min_order));
  const double p = 0.15 + 0.1 * static_cast<double>((index * 7) % 8);
  return gen_er(n, p, rng.derive(index));
}

}  // namespace

std::vector<Graph> default_solve_samples(int k, const RngSpec& rng) {
  if (k < 1 || k > kExpansionMaxK) throw std::invalid_argument("solve_ck supports 1 <= k <= 4");
  auto out = connected_catalog(std::min(k + 2, kCatalogMaxOrder));
  for (std::uint64_t i = 0; i < 20; ++i) out.push_back(random_small(rng, i, 4));
  return out;
}

std::vector<Graph> holdout_graphs(int count, const RngSpec& rng, const std::vector<Graph>& exclude) {
  std::set<CanonicalCode> seen;
  for (const auto& g : exclude) seen.insert(canonical_form(g));
  std::vector<Graph> out;
  const RngSpec stream = rng.derive(0x484f4c44ULL);
  for (std::uint64_t i = 0; static_cast<int>(out.size()) < count; ++i) {
    Graph g = random_small(stream, i, 3);
    if (seen.insert(canonical_form(g)).second) out.push_back(std::move(g));
  }
  return out;
}

VerificationReport verify_expansion(const HomExpansion& e, const std::vector<Graph>& holdout) {
  VerificationReport r;
  for (const auto& h : holdout) {
    ++r.checked;
    if (e.evaluate(h) != chromatic_power_sum(h, e.k)) {
      r.pass = false;
      r.failures.push_back(write_graph6(h));
    }
  }
  return r;
}

nlohmann::json to_json(const HomExpansion& e) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& t : e.terms) terms.push_back({{"graph6", t.graph6}, {"c", to_fraction_string(t.c)}});
  return {{"k", e.k}, {"terms", terms}};
}

HomExpansion expansion_from_json(const nlohmann::json& j) {
  HomExpansion e;
  e.k = j.at("k").get<int>();
  for (const auto& t : j.at("terms")) {
    const auto code = t.at("graph6").get<std::string>();
    e.terms.push_back({parse_graph6(code), code, parse_fraction(t.at("c").get<std::string>())});
  }
  return e;
}

}  // namespace chromroots
