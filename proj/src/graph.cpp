#include "chromroots/graph.hpp"
#include "chromroots/bigint.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace chromroots {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

void check_vertex(const Graph& g, int v) {
  if (v < 0 || v >= g.order()) throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
}

}  // namespace

double uniform01(std::mt19937_64& eng) {
  return static_cast<double>(eng() >> 11) * 0x1.0p-53;
}

std::mt19937_64 engine_for(const RngSpec& rng) {
  std::uint64_t s = rng.seed;
  std::seed_seq seq{static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s)),
                    static_cast<std::uint32_t>(splitmix64(s)), static_cast<std::uint32_t>(splitmix64(s))};
  return std::mt19937_64(seq);
}

Rational parse_fraction(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) return Rational(BigInt(text));
  return Rational(BigInt(text.substr(0, slash)), BigInt(text.substr(slash + 1)));
}

double log_abs(const BigInt& v) {
  BigInt a = abs(v);
  if (a == 0) return -INFINITY;
  const auto bits = boost::multiprecision::msb(a) + 1;
  if (bits <= 60) return std::log(a.convert_to<double>());
  const auto shift = bits - 60;
  a >>= shift;
  return std::log(a.convert_to<double>()) + static_cast<double>(shift) * std::log(2.0);
}

Graph::Graph(int n) : n_(n), words_(static_cast<std::size_t>((n + 63) / 64)) {
  if (n < 0) throw std::invalid_argument("negative order");
  rows_.assign(static_cast<std::size_t>(n) * words_, 0);
}

Graph Graph::from_masks(std::span<const std::uint64_t> masks) {
  if (masks.size() > static_cast<std::size_t>(kMaskOrder)) throw std::invalid_argument("from_masks: order > 64");
  const int n = static_cast<int>(masks.size());
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if ((masks[i] >> j) & 1U) b.add_edge(i, j);
  return b.build();
}

void Graph::set_edge(int i, int j, bool on) {
  auto flip = [&](int a, int b) {
    auto& w = rows_[static_cast<std::size_t>(a) * words_ + static_cast<std::size_t>(b / 64)];
    const std::uint64_t bit = std::uint64_t{1} << (b % 64);
    w = on ? (w | bit) : (w & ~bit);
  };
  flip(i, j);
  flip(j, i);
}

bool Graph::has_edge(int i, int j) const {
  return (rows_[static_cast<std::size_t>(i) * words_ + static_cast<std::size_t>(j / 64)] >> (j % 64)) & 1U;
}

int Graph::degree(int v) const {
  int d = 0;
  for (std::size_t w = 0; w < words_; ++w) d += std::popcount(rows_[static_cast<std::size_t>(v) * words_ + w]);
  return d;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (auto w : rows_) total += static_cast<std::size_t>(std::popcount(w));
  return total / 2;
}

int Graph::max_degree() const {
  int d = 0;
  for (int v = 0; v < n_; ++v) d = std::max(d, degree(v));
  return d;
}

std::vector<int> Graph::degrees() const {
  std::vector<int> d(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) d[v] = degree(v);
  return d;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < n_; ++i)
    for (int j = i + 1; j < n_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

std::vector<std::vector<int>> Graph::components() const {
  std::vector<int> comp(static_cast<std::size_t>(n_), -1);
  std::vector<std::vector<int>> out;
  std::vector<int> stack;
  for (int s = 0; s < n_; ++s) {
    if (comp[s] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    comp[s] = id;
    stack.push_back(s);
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      out[id].push_back(v);
      for (int u = 0; u < n_; ++u) {
        if (comp[u] < 0 && has_edge(v, u)) {
          comp[u] = id;
          stack.push_back(u);
        }
      }
    }
    std::sort(out[id].begin(), out[id].end());
  }
  return out;
}

bool Graph::is_connected() const { return n_ <= 1 || components().size() == 1; }

Graph Graph::induced(std::span<const int> vertices) const {
  GraphBuilder b(static_cast<int>(vertices.size()));
  for (std::size_t a = 0; a < vertices.size(); ++a)
    for (std::size_t c = a + 1; c < vertices.size(); ++c)
      if (has_edge(vertices[a], vertices[c])) b.add_edge(static_cast<int>(a), static_cast<int>(c));
  return b.build();
}

Graph Graph::relabeled(std::span<const int> perm) const {
  GraphBuilder b(n_);
  for (const auto& [i, j] : edges()) b.add_edge(perm[i], perm[j]);
  return b.build();
}

std::vector<std::uint64_t> Graph::masks() const {
  if (n_ > kMaskOrder) throw std::invalid_argument("masks: order > 64");
  std::vector<std::uint64_t> out(static_cast<std::size_t>(n_));
  for (int v = 0; v < n_; ++v) out[v] = mask(v);
  return out;
}

GraphBuilder& GraphBuilder::add_edge(int i, int j) {
  check_vertex(g_, i);
  check_vertex(g_, j);
  if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
  g_.set_edge(i, j, true);
  return *this;
}

GraphBuilder& GraphBuilder::remove_edge(int i, int j) {
  check_vertex(g_, i);
  check_vertex(g_, j);
  if (i != j) g_.set_edge(i, j, false);
  return *this;
}

Graph disjoint_union(const Graph& a, const Graph& b) {
  GraphBuilder out(a.order() + b.order());
  for (const auto& [i, j] : a.edges()) out.add_edge(i, j);
  for (const auto& [i, j] : b.edges()) out.add_edge(a.order() + i, a.order() + j);
  return out.build();
}

Graph complement(const Graph& g) {
  GraphBuilder out(g.order());
  for (int i = 0; i < g.order(); ++i)
    for (int j = i + 1; j < g.order(); ++j)
      if (!g.has_edge(i, j)) out.add_edge(i, j);
  return out.build();
}

Graph gen_empty(int n) { return Graph(n); }

Graph gen_path(int n) {
  if (n < 1) throw std::invalid_argument("path needs n >= 1");
  GraphBuilder b(n);
  for (int i = 0; i + 1 < n; ++i) b.add_edge(i, i + 1);
  return b.build();
}

Graph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("cycle needs n >= 3");
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i) b.add_edge(i, (i + 1) % n);
  return b.build();
}

Graph gen_complete(int n) {
  if (n < 1) throw std::invalid_argument("complete graph needs n >= 1");
  GraphBuilder b(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) b.add_edge(i, j);
  return b.build();
}

Graph gen_complete_bipartite(int a, int b) {
  if (a < 1 || b < 1) throw std::invalid_argument("complete bipartite graph needs a, b >= 1");
  GraphBuilder g(a + b);
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) g.add_edge(i, a + j);
  return g.build();
}

RngSpec RngSpec::derive(std::uint64_t index) const {
  std::uint64_t s = seed ^ (0xd1b54a32d192ed03ULL * (index + 1));
  return RngSpec{splitmix64(s), algorithm_id};
}

Graph gen_er(int n, double p, const RngSpec& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
  return sample_graphon(StepGraphon::constant(p), n, rng);
}

StepGraphon::StepGraphon(std::vector<std::vector<double>> values, std::vector<double> weights)
    : values_(std::move(values)), weights_(std::move(weights)) {
  const std::size_t k = weights_.size();
  if (k == 0) throw std::invalid_argument("graphon needs at least one block");
  if (values_.size() != k) throw std::invalid_argument("graphon value matrix must be k x k");
  double total = 0.0;
  for (std::size_t a = 0; a < k; ++a) {
    if (values_[a].size() != k) throw std::invalid_argument("graphon value matrix must be k x k");
    if (weights_[a] < 0.0) throw std::invalid_argument("negative block weight");
    total += weights_[a];
    for (std::size_t b = 0; b < k; ++b) {
      const double v = values_[a][b];
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("graphon value outside [0,1]");
      if (v != values_[b][a]) throw std::invalid_argument("graphon values must be symmetric");
    }
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("block weights must sum to 1");
}

StepGraphon StepGraphon::constant(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("edge probability outside [0,1]");
  return StepGraphon({{p}}, {1.0});
}

Graph sample_graphon(const StepGraphon& w, int n, const RngSpec& rng) {
  if (n < 0) throw std::invalid_argument("negative order");
  auto eng = engine_for(rng);
  std::vector<int> block(static_cast<std::size_t>(n), 0);
  if (w.blocks() > 1) {
    for (int v = 0; v < n; ++v) {
      const double u = uniform01(eng);
      double acc = 0.0;
      int b = w.blocks() - 1;
      for (int c = 0; c < w.blocks(); ++c) {
        acc += w.weights()[c];
        if (u < acc) {
          b = c;
          break;
        }
      }
      block[v] = b;
    }
  }
  GraphBuilder g(n);
  // Column-major over the upper triangle, matching graph6 bit order.
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i)
      if (uniform01(eng) < w.value(block[i], block[j])) g.add_edge(i, j);
  return g.build();
}

int EdgeAddition::max_increase() const {
  return degree_increase.empty() ? 0 : *std::max_element(degree_increase.begin(), degree_increase.end());
}

EdgeAddition add_edges(const Graph& g, std::span<const std::pair<int, int>> pairs) {
  GraphBuilder b(g);
  std::vector<int> inc(static_cast<std::size_t>(g.order()), 0);
  for (const auto& [i, j] : pairs) {
    if (i < 0 || j < 0 || i >= g.order() || j >= g.order())
      throw std::out_of_range("edge (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    if (i == j) throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    if (b.has_edge(i, j)) continue;
    b.add_edge(i, j);
    ++inc[i];
    ++inc[j];
  }
  return {b.build(), std::move(inc)};
}

}  // namespace chromroots
