#include "chromroots/measures.hpp"
#include "chromroots/chromatic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace chromroots {

RootMeasure measure_from_roots(const RootSet& rs, std::string source) {
  return RootMeasure{rs.points(), 1.0, std::move(source)};
}

RootMeasure chromatic_measure(const Graph& g, const RootOptions& opts) {
  if (g.order() == 0) throw std::invalid_argument("chromatic measure of the empty graph is undefined");
  return measure_from_roots(find_roots(chromatic_poly(g), opts), "chromatic");
}

RootMeasure rescale(const RootMeasure& m, double factor) {
  if (!(factor > 0)) throw std::invalid_argument("rescale factor must be positive");
  RootMeasure out = m;
  for (auto& z : out.points) z /= factor;
  out.scale = m.scale * factor;
  return out;
}

Complex holomorphic_moment(const RootMeasure& m, int k) {
  if (k < 0) throw std::invalid_argument("moment index must be non-negative");
  if (m.points.empty()) throw std::invalid_argument("moment of an empty measure");
  Complex sum = 0;
  for (const auto& z : m.points) {
    Complex zk = 1;
    for (int i = 0; i < k; ++i) zk *= z;
    sum += zk;
  }
  return sum / static_cast<double>(m.points.size());
}

std::vector<Complex> holomorphic_moments(const RootMeasure& m, int k_max) {
  std::vector<Complex> out;
  for (int k = 0; k <= k_max; ++k) out.push_back(holomorphic_moment(m, k));
  return out;
}

double moment_distance(const RootMeasure& a, const RootMeasure& b, int k_max) {
  double d = 0;
  for (int k = 1; k <= k_max; ++k) d = std::max(d, std::abs(holomorphic_moment(a, k) - holomorphic_moment(b, k)));
  return d;
}

DenseRootReport dense_root_check(const Graph& g, double delta, const RootSet& chromatic_roots) {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive");
  const double n = g.order();
  DenseRootReport r;
  const double edges = static_cast<double>(g.edge_count());
  r.edge_ok = edges >= delta * n * n * (1.0 - 1e-12);
  r.epsilon = delta / 9.0;
  r.threshold = r.epsilon * n;
  const double lo = delta * n / 9.0;
  const double hi = 8.0 * n;
  for (const auto& z : chromatic_roots.points()) {
    if (std::abs(z) >= r.threshold) ++r.count_modulus;
    if (z.real() >= lo && z.real() <= hi) ++r.count_real_part;
  }
  r.pass = !r.edge_ok || (r.count_modulus >= r.threshold && r.count_real_part >= r.threshold);
  return r;
}

DenseRootReport dense_root_check(const Graph& g, double delta) {
  if (g.order() == 0) throw std::invalid_argument("dense_root_check needs a nonempty graph");
  return dense_root_check(g, delta, find_roots(chromatic_poly(g)));
}

}  // namespace chromroots
