#include "chromroots/graph6.hpp"

namespace chromroots {

namespace {
constexpr std::string_view kHeader = ">>graph6<<";
constexpr std::size_t kMaxOrder = 1U << 18;  // largest order with a 4-byte size field
}  // namespace

Graph parse_graph6(std::string_view text) {
  std::size_t base = 0;
  if (text.starts_with(kHeader)) {
    text.remove_prefix(kHeader.size());
    base = kHeader.size();
  }
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r')) text.remove_suffix(1);
  if (text.empty()) throw Graph6Error("empty graph6 string", base);

  auto byte = [&](std::size_t i) -> int {
    const int c = static_cast<unsigned char>(text[i]);
    if (c < 63 || c > 126) throw Graph6Error("byte outside printable graph6 range", base + i);
    return c - 63;
  };

  std::size_t pos = 0;
  std::size_t n = 0;
  if (byte(0) < 63) {
    n = static_cast<std::size_t>(byte(0));
    pos = 1;
  } else if (text.size() >= 2 && byte(1) == 63) {
    if (text.size() < 8) throw Graph6Error("truncated size field", base + text.size());
    for (std::size_t i = 2; i < 8; ++i) n = (n << 6) | static_cast<std::size_t>(byte(i));
    if (n < 258048) throw Graph6Error("non-canonical size field", base);
    pos = 8;
  } else {
    if (text.size() < 4) throw Graph6Error("truncated size field", base + text.size());
    n = (static_cast<std::size_t>(byte(1)) << 12) | (static_cast<std::size_t>(byte(2)) << 6) |
        static_cast<std::size_t>(byte(3));
    if (n < 63) throw Graph6Error("non-canonical size field", base);
    pos = 4;
  }
  if (n > kMaxOrder) throw Graph6Error("order too large", base);

  const std::size_t bits = n * (n - (n > 0 ? 1 : 0)) / 2;
  const std::size_t bytes = (bits + 5) / 6;
  if (text.size() < pos + bytes) throw Graph6Error("truncated adjacency data", base + text.size());
  if (text.size() > pos + bytes) throw Graph6Error("trailing garbage", base + pos + bytes);

  GraphBuilder g(static_cast<int>(n));
  std::size_t k = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i, ++k) {
      const int v = byte(pos + k / 6);
      if ((v >> (5 - k % 6)) & 1) g.add_edge(static_cast<int>(i), static_cast<int>(j));
    }
  }
  if (k % 6 != 0) {
    const std::size_t last = pos + bytes - 1;
    const int pad_mask = (1 << (6 - k % 6)) - 1;
    if (byte(last) & pad_mask) throw Graph6Error("nonzero padding bits", base + last);
  }
  for (std::size_t i = pos; i < pos + bytes; ++i) byte(i);
  return g.build();
}

std::string write_graph6(const Graph& g) {
  const std::size_t n = static_cast<std::size_t>(g.order());
  std::string out;
  if (n < 63) {
    out.push_back(static_cast<char>(n + 63));
  } else if (n >= 258048) {
    out.append(2, static_cast<char>(126));
    for (int shift = 30; shift >= 0; shift -= 6) out.push_back(static_cast<char>(((n >> shift) & 63) + 63));
  } else {
    out.push_back(static_cast<char>(126));
    out.push_back(static_cast<char>(((n >> 12) & 63) + 63));
    out.push_back(static_cast<char>(((n >> 6) & 63) + 63));
    out.push_back(static_cast<char>((n & 63) + 63));
  }
  int acc = 0;
  int filled = 0;
  for (std::size_t j = 1; j < n; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.has_edge(static_cast<int>(i), static_cast<int>(j)) ? 1 : 0);
      if (++filled == 6) {
        out.push_back(static_cast<char>(acc + 63));
        acc = 0;
        filled = 0;
      }
    }
  }
  if (filled > 0) out.push_back(static_cast<char>((acc << (6 - filled)) + 63));
  return out;
}

}  // namespace chromroots
