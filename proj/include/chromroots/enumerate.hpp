#pragma once

#include "chromroots/graph.hpp"

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace chromroots {

inline constexpr int kEnumerateMaxOrder = 10;

/// Children of a connected parent under canonical augmentation: one new
/// vertex joined to a nonempty subset, kept only when deleting the child's
/// canonical deletion vertex gives back the parent's class. Returned graphs
/// are canonically labeled, in a fixed order.
std::vector<Graph> connected_children(const Graph& parent);

/// Ordered stream of connected graphs of order n, one per isomorphism class.
/// Position is (parent index, child index); the stream can resume from any
/// parent index.
class ConnectedStream {
 public:
  explicit ConnectedStream(int n, int workers = 1);

  int order() const { return n_; }
  std::size_t parent_count() const { return parents_.size(); }

  /// Visitor receives (parent index, children of that parent) in parent
  /// order. Returning false stops the stream.
  using Visitor = std::function<bool(std::size_t, std::span<const Graph>)>;
  void visit(std::size_t first_parent, const Visitor& visitor) const;

 private:
  int n_;
  int workers_;
  std::vector<Graph> parents_;
};

std::vector<Graph> enumerate_connected(int n, int workers = 1);

/// Reads a file of graph6 lines (blank lines ignored).
std::vector<Graph> read_graph6_file(const std::string& path);

}  // namespace chromroots
