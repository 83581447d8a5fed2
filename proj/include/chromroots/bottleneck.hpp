#pragma once

#include "chromroots/measures.hpp"

#include <span>
#include <vector>

namespace chromroots {

struct BottleneckResult {
  double value = 0.0;
  /// assignment[i] = index in the second multiset matched to point i.
  std::vector<int> assignment;
};

/// Minimum over bijections of the largest displacement |a_i - b_pi(i)|.
BottleneckResult bottleneck_displacement(std::span<const Complex> a, std::span<const Complex> b);
/// Requires equal sizes and equal scales.
BottleneckResult bottleneck_displacement(const RootMeasure& a, const RootMeasure& b);

}  // namespace chromroots
