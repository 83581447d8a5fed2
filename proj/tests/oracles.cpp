#include "oracles.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>

namespace oracle {

Graph labeled_graph(int n, std::uint64_t bits) {
  chromroots::GraphBuilder b(n);
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++bit)
      if (bits >> bit & 1) b.add_edge(i, j);
  return b.build();
}

std::string brute_canonical(const Graph& g) {
  const int n = g.order();
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string s;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) s += g.has_edge(perm[i], perm[j]) ? '1' : '0';
    if (best.empty() || s < best) best = s;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return std::to_string(n) + ":" + best;
}

std::vector<Graph> all_classes(int n) {
  std::map<std::string, Graph> seen;
  const std::uint64_t total = std::uint64_t{1} << (n * (n - 1) / 2);
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Graph g = labeled_graph(n, bits);
    seen.emplace(brute_canonical(g), g);
  }
  std::vector<Graph> out;
  for (auto& [k, g] : seen) out.push_back(g);
  return out;
}

namespace {

std::uint64_t color_rec(const Graph& g, int t, int v, std::vector<int>& col) {
  if (v == g.order()) return 1;
  std::uint64_t total = 0;
  for (int c = 0; c < t; ++c) {
    bool ok = true;
    for (int u = 0; u < v && ok; ++u) ok = !(g.has_edge(u, v) && col[u] == c);
    if (!ok) continue;
    col[v] = c;
    total += color_rec(g, t, v + 1, col);
  }
  return total;
}

void partition_rec(const Graph& g, int v, int blocks, std::vector<int>& label, std::vector<std::uint64_t>& out) {
  if (v == g.order()) {
    ++out[static_cast<std::size_t>(blocks)];
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    bool ok = true;
    for (int u = 0; u < v && ok; ++u) ok = !(label[u] == b && g.has_edge(u, v));
    if (!ok) continue;
    label[v] = b;
    partition_rec(g, v + 1, std::max(blocks, b + 1), label, out);
  }
}

void matching_rec(const std::vector<std::pair<int, int>>& edges, std::size_t i, std::uint64_t used, int k,
                  std::vector<std::uint64_t>& out) {
  if (i == edges.size()) {
    ++out[static_cast<std::size_t>(k)];
    return;
  }
  matching_rec(edges, i + 1, used, k, out);
  const auto [u, v] = edges[i];
  const std::uint64_t m = (std::uint64_t{1} << u) | (std::uint64_t{1} << v);
  if (!(used & m)) matching_rec(edges, i + 1, used | m, k + 1, out);
}

}  // namespace

std::uint64_t count_colorings(const Graph& g, int t) {
  std::vector<int> col(static_cast<std::size_t>(g.order()), -1);
  return color_rec(g, t, 0, col);
}

std::vector<std::uint64_t> independent_partitions(const Graph& g) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(g.order()) + 1, 0);
  std::vector<int> label(static_cast<std::size_t>(g.order()), -1);
  partition_rec(g, 0, 0, label, out);
  return out;
}

std::vector<std::uint64_t> count_matchings(const Graph& g) {
  std::vector<std::uint64_t> out(static_cast<std::size_t>(g.order() / 2) + 1, 0);
  matching_rec(g.edges(), 0, 0, 0, out);
  return out;
}

std::uint64_t brute_hom(const Graph& t, const Graph& h) {
  const int k = t.order(), n = h.order();
  std::vector<int> f(static_cast<std::size_t>(k), 0);
  std::uint64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& [a, b] : t.edges()) ok = ok && h.has_edge(f[a], f[b]);
    count += ok;
    int i = 0;
    while (i < k && ++f[i] == n) f[i++] = 0;
    if (i == k) break;
  }
  return count;
}

std::uint64_t triangles(const Graph& g) {
  std::uint64_t t = 0;
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b)
      for (int c = b + 1; c < g.order(); ++c) t += g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c);
  return t;
}

double brute_bottleneck(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b) {
  std::vector<int> perm(a.size());
  std::iota(perm.begin(), perm.end(), 0);
  double best = std::numeric_limits<double>::infinity();
  do {
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[perm[i]]));
    best = std::min(best, worst);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

double simpson(const std::function<double(double)>& f, double a, double b, int intervals) {
  if (intervals % 2) ++intervals;
  const double h = (b - a) / intervals;
  double s = f(a) + f(b);
  for (int i = 1; i < intervals; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return s * h / 3.0;
}

}  // namespace oracle
