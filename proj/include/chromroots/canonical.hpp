#pragma once

#include "chromroots/graph.hpp"

#include <compare>
#include <string>
#include <vector>

namespace chromroots {

inline constexpr int kCanonicalMaxOrder = 16;

/// graph6 string of the canonically relabeled graph; equal iff isomorphic.
struct CanonicalCode {
  std::string bytes;
  friend auto operator<=>(const CanonicalCode&, const CanonicalCode&) = default;
};

struct CanonicalLabeling {
  CanonicalCode code;
  /// labeling[v] is the canonical position of vertex v.
  std::vector<int> labeling;
  /// Automorphisms discovered during the search (as vertex maps).
  std::vector<std::vector<int>> automorphisms;
  Graph canonical_graph() const;
};

CanonicalLabeling canonical_labeling(const Graph& g);
CanonicalCode canonical_form(const Graph& g);

/// Stable colour refinement starting from the given ordered colouring.
/// Colours are renumbered 0..k-1 in an isomorphism-invariant order.
std::vector<int> refine_colors(const Graph& g, std::vector<int> colors);

}  // namespace chromroots
