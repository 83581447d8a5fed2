#include "chromroots/matching.hpp"

#include <bit>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace chromroots {

namespace {

using Mask = std::uint64_t;

struct Overflow {};

void add_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src, std::size_t shift) {
  for (std::size_t k = 0; k + shift < dst.size() && k < src.size(); ++k)
    if (__builtin_add_overflow(dst[k + shift], src[k], &dst[k + shift])) throw Overflow{};
}

void add_into(std::vector<BigInt>& dst, const std::vector<BigInt>& src, std::size_t shift) {
  for (std::size_t k = 0; k + shift < dst.size() && k < src.size(); ++k) dst[k + shift] += src[k];
}

// Layered DP over vertices in index order. A state is the set of
// not-yet-processed vertices that are still unmatched; vertex i is either
// left unmatched or matched to a later neighbour.
template <class Count>
std::vector<Count> matching_dp(const std::vector<Mask>& adj) {
  const int n = static_cast<int>(adj.size());
  const std::size_t width = static_cast<std::size_t>(n / 2) + 1;
  const Mask all = (n == 64) ? ~Mask{0} : ((Mask{1} << n) - 1);
  std::unordered_map<Mask, std::vector<Count>> layer;
  layer[all] = std::vector<Count>(width, Count(0));
  layer[all][0] = Count(1);
  for (int i = 0; i < n; ++i) {
    const Mask bit = Mask{1} << i;
    std::unordered_map<Mask, std::vector<Count>> next;
    next.reserve(layer.size() * 2);
    auto slot = [&](Mask key) -> std::vector<Count>& {
      auto [it, inserted] = next.try_emplace(key);
      if (inserted) it->second.assign(width, Count(0));
      return it->second;
    };
    for (const auto& [mask, counts] : layer) {
      const Mask rest = mask & ~bit;
      add_into(slot(rest), counts, 0);
      if (!(mask & bit)) continue;
      for (Mask nb = adj[i] & rest; nb; nb &= nb - 1) add_into(slot(rest & ~(nb & (~nb + 1))), counts, 1);
    }
    layer = std::move(next);
  }
  return layer.at(0);
}

}  // namespace

MatchingCounts complete_matching_counts(int n) {
  if (n < 0) throw std::invalid_argument("negative order");
  MatchingCounts mc{n, {}};
  // m_{k+1} = m_k * (n-2k)(n-2k-1) / (2(k+1))
  BigInt m = 1;
  for (int k = 0; 2 * k <= n; ++k) {
    mc.m.push_back(m);
    m = m * (n - 2 * k) * (n - 2 * k - 1) / (2 * (k + 1));
  }
  return mc;
}

MatchingCounts matching_counts(const Graph& g, const MatchingOptions& opts) {
  const int n = g.order();
  const auto edges = g.edge_count();
  if (edges == static_cast<std::size_t>(n) * static_cast<std::size_t>(std::max(n - 1, 0)) / 2)
    return complete_matching_counts(n);
  if (n > opts.max_order || n > kMaskOrder)
    throw std::invalid_argument("matching_counts: order " + std::to_string(n) + " exceeds cap " +
                                std::to_string(opts.max_order));
  const auto adj = g.masks();
  MatchingCounts mc{n, {}};
  try {
    for (auto v : matching_dp<std::uint64_t>(adj)) mc.m.emplace_back(v);
  } catch (const Overflow&) {
    mc.m = matching_dp<BigInt>(adj);
  }
  return mc;
}

IntPolynomial matching_poly(const MatchingCounts& mc) {
  std::vector<BigInt> c(static_cast<std::size_t>(mc.order) + 1);
  for (std::size_t k = 0; k < mc.m.size(); ++k) c[mc.order - 2 * k] = (k % 2 ? -mc.m[k] : mc.m[k]);
  return IntPolynomial(std::move(c));
}

IntPolynomial modified_matching_poly(const MatchingCounts& mc) {
  std::vector<BigInt> c(static_cast<std::size_t>(mc.order) + 1);
  for (std::size_t k = 0; k < mc.m.size(); ++k) c[mc.order - k] = (k % 2 ? -mc.m[k] : mc.m[k]);
  return IntPolynomial(std::move(c));
}

IntPolynomial hermite_poly(int n) {
  if (n < 0) throw std::invalid_argument("hermite_poly needs n >= 0");
  IntPolynomial prev = IntPolynomial::constant(1);
  if (n == 0) return prev;
  IntPolynomial cur = IntPolynomial::monomial(1);
  const IntPolynomial x = IntPolynomial::monomial(1);
  for (int k = 2; k <= n; ++k) {
    IntPolynomial next = x * cur - prev * BigInt(k - 1);
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

}  // namespace chromroots
