#include "chromroots/canonical.hpp"
#include "chromroots/graph6.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace chromroots {

namespace {

using Bits = unsigned __int128;

struct Refiner {
  const std::vector<std::uint64_t>& adj;
  int n;

  // Iterates to the coarsest equitable refinement of `colors`.
  void refine(std::vector<int>& colors) const {
    int k = count_colors(colors);
    std::vector<std::vector<int>> key(static_cast<std::size_t>(n));
    std::vector<int> order(static_cast<std::size_t>(n));
    while (k < n) {
      for (int v = 0; v < n; ++v) {
        auto& kv = key[v];
        kv.assign(static_cast<std::size_t>(k) + 1, 0);
        kv[0] = colors[v];
        for (std::uint64_t m = adj[v]; m; m &= m - 1) ++kv[1 + colors[std::countr_zero(m)]];
      }
      std::iota(order.begin(), order.end(), 0);
      std::sort(order.begin(), order.end(), [&](int a, int b) { return key[a] < key[b]; });
      int next = 0;
      for (int i = 0; i < n; ++i) {
        if (i > 0 && key[order[i]] != key[order[i - 1]]) ++next;
        colors[order[i]] = next;
      }
      if (next + 1 == k) break;
      k = next + 1;
    }
  }

  static int count_colors(const std::vector<int>& colors) {
    return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
  }
};

struct Search {
  Search(const std::vector<std::uint64_t>& a, int order) : adj(a), n(order) {}

  const std::vector<std::uint64_t>& adj;
  int n;
  Refiner refiner{adj, n};

  bool have_best = false;
  Bits best_code = 0;
  std::vector<int> best_label;  // vertex -> position
  std::vector<int> first_label;
  Bits first_code = 0;
  std::vector<std::vector<int>> automorphisms;

  Bits code_of(const std::vector<int>& label) const {
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) inv[label[v]] = v;
    Bits code = 0;
    for (int j = 1; j < n; ++j)
      for (int i = 0; i < j; ++i) code = (code << 1) | ((adj[inv[i]] >> inv[j]) & 1U);
    return code;
  }

  void record_automorphism(const std::vector<int>& from, const std::vector<int>& to) {
    // Vertex v sits at position from[v] in one leaf; the vertex at that
    // position in the other leaf is its image.
    std::vector<int> inv(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) inv[to[v]] = v;
    std::vector<int> gamma(static_cast<std::size_t>(n));
    bool identity = true;
    for (int v = 0; v < n; ++v) {
      gamma[v] = inv[from[v]];
      identity = identity && gamma[v] == v;
    }
    if (!identity) automorphisms.push_back(std::move(gamma));
  }

  void leaf(const std::vector<int>& colors) {
    const Bits code = code_of(colors);
    if (!have_best) {
      have_best = true;
      best_code = first_code = code;
      best_label = first_label = colors;
      return;
    }
    if (code == first_code) {
      record_automorphism(colors, first_label);
    } else if (code == best_code) {
      record_automorphism(colors, best_label);
    } else if (code < best_code) {
      best_code = code;
      best_label = colors;
    }
  }

  // Orbit representatives under discovered automorphisms fixing `path`.
  std::vector<int> orbit_roots(const std::vector<int>& path) const {
    std::vector<int> parent(static_cast<std::size_t>(n));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& g : automorphisms) {
      bool fixes = std::all_of(path.begin(), path.end(), [&](int v) { return g[v] == v; });
      if (!fixes) continue;
      for (int v = 0; v < n; ++v) {
        const int a = find(v), b = find(g[v]);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
      }
    }
    for (int v = 0; v < n; ++v) parent[v] = find(v);
    return parent;
  }

  void descend(std::vector<int> colors, std::vector<int>& path) {
    refiner.refine(colors);
    const int k = Refiner::count_colors(colors);
    if (k == n) {
      leaf(colors);
      return;
    }
    // Target: first non-singleton cell in colour order.
    std::vector<int> size(static_cast<std::size_t>(k), 0);
    for (int c : colors) ++size[c];
    int target = 0;
    while (size[target] == 1) ++target;

    std::vector<int> explored;
    for (int w = 0; w < n; ++w) {
      if (colors[w] != target) continue;
      const auto roots = orbit_roots(path);
      if (std::any_of(explored.begin(), explored.end(), [&](int e) { return roots[e] == roots[w]; })) continue;
      explored.push_back(w);
      std::vector<int> child = colors;
      for (int v = 0; v < n; ++v)
        if (child[v] > target || (child[v] == target && v != w)) ++child[v];
      path.push_back(w);
      descend(std::move(child), path);
      path.pop_back();
    }
  }
};

}  // namespace

std::vector<int> refine_colors(const Graph& g, std::vector<int> colors) {
  const auto adj = g.masks();
  Refiner{adj, g.order()}.refine(colors);
  return colors;
}

Graph CanonicalLabeling::canonical_graph() const { return parse_graph6(code.bytes); }

CanonicalLabeling canonical_labeling(const Graph& g) {
  const int n = g.order();
  if (n > kCanonicalMaxOrder)
    throw std::invalid_argument("canonical form supports order <= " + std::to_string(kCanonicalMaxOrder));
  CanonicalLabeling out;
  if (n == 0) {
    out.code.bytes = write_graph6(g);
    return out;
  }
  const auto adj = g.masks();
  Search s(adj, n);
  std::vector<int> path;
  s.descend(std::vector<int>(static_cast<std::size_t>(n), 0), path);
  out.labeling = s.best_label;
  out.code.bytes = write_graph6(g.relabeled(out.labeling));
  out.automorphisms = std::move(s.automorphisms);
  return out;
}

CanonicalCode canonical_form(const Graph& g) { return canonical_labeling(g).code; }

}  // namespace chromroots
