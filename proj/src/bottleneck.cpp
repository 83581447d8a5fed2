#include "chromroots/bottleneck.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace chromroots {

namespace {

// Hopcroft-Karp on the bipartite graph {(i, j) : dist[i][j] <= threshold}.
class Matcher {
 public:
  Matcher(const std::vector<std::vector<double>>& dist, double threshold)
      : n_(static_cast<int>(dist.size())), adj_(dist.size()) {
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j)
        if (dist[i][j] <= threshold) adj_[i].push_back(j);
  }

  int run() {
    match_l_.assign(static_cast<std::size_t>(n_), -1);
    match_r_.assign(static_cast<std::size_t>(n_), -1);
    int size = 0;
    while (bfs())
      for (int u = 0; u < n_; ++u)
        if (match_l_[u] < 0 && dfs(u)) ++size;
    return size;
  }

  const std::vector<int>& left() const { return match_l_; }

 private:
  bool bfs() {
    dist_.assign(static_cast<std::size_t>(n_), -1);
    std::queue<int> q;
    for (int u = 0; u < n_; ++u)
      if (match_l_[u] < 0) {
        dist_[u] = 0;
        q.push(u);
      }
    bool found = false;
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        const int w = match_r_[v];
        if (w < 0) found = true;
        else if (dist_[w] < 0) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(int u) {
    for (int v : adj_[u]) {
      const int w = match_r_[v];
      if (w < 0 || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = -1;
    return false;
  }

  int n_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> match_l_, match_r_, dist_;
};

}  // namespace

BottleneckResult bottleneck_displacement(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw std::invalid_argument("bottleneck_displacement needs equal-size multisets");
  const std::size_t n = a.size();
  if (n == 0) return {};
  std::vector<std::vector<double>> dist(n, std::vector<double>(n));
  std::vector<double> values;
  values.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) values.push_back(dist[i][j] = std::abs(a[i] - b[j]));
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());

  std::size_t lo = 0, hi = values.size() - 1;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (Matcher(dist, values[mid]).run() == static_cast<int>(n)) hi = mid;
    else lo = mid + 1;
  }
  Matcher m(dist, values[lo]);
  m.run();
  return {values[lo], m.left()};
}

BottleneckResult bottleneck_displacement(const RootMeasure& a, const RootMeasure& b) {
  if (a.scale != b.scale) throw std::invalid_argument("bottleneck_displacement needs equal scales");
  return bottleneck_displacement(a.points, b.points);
}

}  // namespace chromroots
