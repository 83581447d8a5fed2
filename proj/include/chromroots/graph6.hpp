#pragma once

#include "chromroots/graph.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace chromroots {

class Graph6Error : public std::runtime_error {
 public:
  Graph6Error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at byte " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

/// Decodes one graph6 line (an optional ">>graph6<<" header and trailing
/// newline are accepted).
Graph parse_graph6(std::string_view text);
std::string write_graph6(const Graph& g);

}  // namespace chromroots
