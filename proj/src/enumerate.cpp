#include "chromroots/enumerate.hpp"
#include "chromroots/canonical.hpp"
#include "chromroots/graph6.hpp"
#include "chromroots/parallel.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <set>
#include <stdexcept>

namespace chromroots {

namespace {

bool connected_without(const std::vector<std::uint64_t>& adj, std::uint64_t alive) {
  if (alive == 0) return true;
  std::uint64_t seen = alive & (~alive + 1);
  std::uint64_t frontier = seen;
  while (frontier) {
    std::uint64_t next = 0;
    for (std::uint64_t m = frontier; m; m &= m - 1) next |= adj[std::countr_zero(m)];
    next &= alive & ~seen;
    seen |= next;
    frontier = next;
  }
  return seen == alive;
}

Graph delete_vertex(const Graph& g, int v) {
  std::vector<int> keep;
  for (int u = 0; u < g.order(); ++u)
    if (u != v) keep.push_back(u);
  return g.induced(keep);
}

bool same_orbit(const CanonicalLabeling& cl, int a, int b, int n) {
  std::vector<int> parent(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) parent[v] = v;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& gamma : cl.automorphisms)
    for (int v = 0; v < n; ++v) parent[find(v)] = find(gamma[v]);
  return find(a) == find(b);
}

constexpr std::size_t kBatch = 512;

}  // namespace

std::vector<Graph> connected_children(const Graph& parent) {
  const int p = parent.order();
  const int n = p + 1;
  if (n > kEnumerateMaxOrder) throw std::invalid_argument("enumeration supports order <= 10");
  const auto base = parent.masks();
  const std::uint64_t all = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);

  std::vector<Graph> out;
  std::set<std::string> seen;
  std::vector<std::uint64_t> adj(static_cast<std::size_t>(n));
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << p); ++subset) {
    for (int u = 0; u < p; ++u) adj[u] = base[u] | (((subset >> u) & 1U) << p);
    adj[p] = subset;
    const int new_degree = std::popcount(subset);

    // Canonical deletion vertex: a non-cut vertex of minimum degree, ties
    // broken by the largest canonical position.
    int min_degree = n;
    std::vector<int> candidates;
    for (int u = 0; u < n; ++u) {
      const int d = std::popcount(adj[u]);
      if (d > min_degree) continue;
      if (!connected_without(adj, all & ~(std::uint64_t{1} << u))) continue;
      if (d < min_degree) {
        min_degree = d;
        candidates.clear();
      }
      candidates.push_back(u);
    }
    if (new_degree != min_degree) continue;

    const Graph child = Graph::from_masks(adj);
    const auto cl = canonical_labeling(child);
    const int m = *std::max_element(candidates.begin(), candidates.end(),
                                    [&](int a, int b) { return cl.labeling[a] < cl.labeling[b]; });
    bool accept = (m == p) || same_orbit(cl, m, p, n);
    if (!accept) accept = canonical_form(delete_vertex(child, m)) == canonical_form(delete_vertex(child, p));
    if (!accept) continue;
    if (!seen.insert(cl.code.bytes).second) continue;
    out.push_back(cl.canonical_graph());
  }
  return out;
}

ConnectedStream::ConnectedStream(int n, int workers) : n_(n), workers_(workers) {
  if (n < 1 || n > kEnumerateMaxOrder) throw std::invalid_argument("enumeration order must be in 1..10");
  if (n == 1) {
    parents_.clear();
  } else {
    parents_ = enumerate_connected(n - 1, workers);
  }
}

void ConnectedStream::visit(std::size_t first_parent, const Visitor& visitor) const {
  if (n_ == 1) {
    // The single-vertex graph has no parent; treat it as parent index 0.
    if (first_parent == 0) {
      const Graph k1(1);
      visitor(0, std::span<const Graph>(&k1, 1));
    }
    return;
  }
  for (std::size_t start = first_parent; start < parents_.size(); start += kBatch) {
    const std::size_t count = std::min(kBatch, parents_.size() - start);
    auto batch = parallel_map(count, workers_, [&](std::size_t i) { return connected_children(parents_[start + i]); });
    for (std::size_t i = 0; i < count; ++i)
      if (!visitor(start + i, batch[i])) return;
  }
}

std::vector<Graph> enumerate_connected(int n, int workers) {
  ConnectedStream stream(n, workers);
  std::vector<Graph> out;
  stream.visit(0, [&](std::size_t, std::span<const Graph> children) {
    out.insert(out.end(), children.begin(), children.end());
    return true;
  });
  return out;
}

std::vector<Graph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<Graph> out;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    out.push_back(parse_graph6(line));
  }
  return out;
}

}  // namespace chromroots
