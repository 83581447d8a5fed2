#pragma once

#include "chromroots/graph.hpp"
#include "chromroots/roots.hpp"

#include <string>
#include <vector>

namespace chromroots {

/// Uniform probability measure on a multiset of complex points. `scale` is
/// the divisor already applied to the original roots.
struct RootMeasure {
  std::vector<Complex> points;
  double scale = 1.0;
  std::string source;
};

RootMeasure measure_from_roots(const RootSet& rs, std::string source);
/// mu_G: roots of the chromatic polynomial, scale 1.
RootMeasure chromatic_measure(const Graph& g, const RootOptions& opts = {});
/// Divides every point by `factor` (> 0) and records it in the scale.
RootMeasure rescale(const RootMeasure& m, double factor);

Complex holomorphic_moment(const RootMeasure& m, int k);
std::vector<Complex> holomorphic_moments(const RootMeasure& m, int k_max);
/// sup over 1 <= k <= k_max of the moment difference.
double moment_distance(const RootMeasure& a, const RootMeasure& b, int k_max);

struct DenseRootReport {
  bool edge_ok = false;
  double epsilon = 0.0;
  /// epsilon * n, both the required count and the modulus threshold.
  double threshold = 0.0;
  int count_modulus = 0;
  int count_real_part = 0;
  bool pass = false;
};

/// With epsilon = delta / 9: at least epsilon n roots of modulus >= epsilon n,
/// and at least epsilon n roots with real part in [delta n / 9, 8 n]. Graphs
/// with fewer than delta n^2 edges pass vacuously with edge_ok = false.
DenseRootReport dense_root_check(const Graph& g, double delta, const RootSet& chromatic_roots);
DenseRootReport dense_root_check(const Graph& g, double delta);

}  // namespace chromroots
