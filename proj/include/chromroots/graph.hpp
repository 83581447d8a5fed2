#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace chromroots {

/// Order above which the bitmask fast paths are unavailable.
inline constexpr int kMaskOrder = 64;

/// Simple undirected graph on vertices 0..n-1 stored as packed adjacency rows.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int n);

  /// Builds a graph from 64-bit adjacency masks (n <= 64).
  static Graph from_masks(std::span<const std::uint64_t> masks);

  int order() const { return n_; }
  std::size_t edge_count() const;
  bool has_edge(int i, int j) const;
  int degree(int v) const;
  int max_degree() const;
  std::vector<int> degrees() const;
  std::vector<std::pair<int, int>> edges() const;

  bool is_connected() const;
  /// Vertex sets of connected components, each sorted ascending.
  std::vector<std::vector<int>> components() const;
  Graph induced(std::span<const int> vertices) const;
  /// Relabels so that vertex v becomes perm[v].
  Graph relabeled(std::span<const int> perm) const;

  /// Row v as a 64-bit mask; requires order() <= 64.
  std::uint64_t mask(int v) const { return rows_[static_cast<std::size_t>(v) * words_]; }
  std::vector<std::uint64_t> masks() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.rows_ == b.rows_;
  }

 private:
  friend class GraphBuilder;
  void set_edge(int i, int j, bool on);

  int n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> rows_;
};

/// Mutable construction; Graph values stay immutable once built.
class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : g_(n) {}
  explicit GraphBuilder(Graph g) : g_(std::move(g)) {}
  GraphBuilder& add_edge(int i, int j);
  GraphBuilder& remove_edge(int i, int j);
  bool has_edge(int i, int j) const { return g_.has_edge(i, j); }
  int order() const { return g_.order(); }
  Graph build() const { return g_; }

 private:
  Graph g_;
};

Graph disjoint_union(const Graph& a, const Graph& b);
Graph complement(const Graph& g);

Graph gen_empty(int n);
Graph gen_path(int n);
Graph gen_cycle(int n);
Graph gen_complete(int n);
Graph gen_complete_bipartite(int a, int b);

/// Seed plus a named generator; identical specs give bit-identical samples.
struct RngSpec {
  std::uint64_t seed = 0;
  std::string algorithm_id = "splitmix64/mt19937_64";

  /// Independent stream for sample `index`, so results do not depend on
  /// the order in which samples are drawn.
  RngSpec derive(std::uint64_t index) const;
};

std::mt19937_64 engine_for(const RngSpec& rng);
/// 53-bit uniform in [0,1); avoids implementation-defined distributions.
double uniform01(std::mt19937_64& eng);

Graph gen_er(int n, double p, const RngSpec& rng);

/// Symmetric k x k block graphon with block weights summing to one.
class StepGraphon {
 public:
  StepGraphon(std::vector<std::vector<double>> values, std::vector<double> weights);
  static StepGraphon constant(double p);

  int blocks() const { return static_cast<int>(weights_.size()); }
  double value(int a, int b) const { return values_[a][b]; }
  const std::vector<double>& weights() const { return weights_; }

 private:
  std::vector<std::vector<double>> values_;
  std::vector<double> weights_;
};

Graph sample_graphon(const StepGraphon& w, int n, const RngSpec& rng);

struct EdgeAddition {
  Graph graph;
  std::vector<int> degree_increase;
  int max_increase() const;
};

EdgeAddition add_edges(const Graph& g, std::span<const std::pair<int, int>> pairs);

}  // namespace chromroots
