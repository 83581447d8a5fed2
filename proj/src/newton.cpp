#include "chromroots/newton.hpp"

#include <stdexcept>

namespace chromroots {

std::vector<Rational> power_sums_from_elementary(std::span<const Rational> e, int k_max) {
  auto elem = [&](int i) -> Rational { return i <= static_cast<int>(e.size()) ? e[i - 1] : Rational(0); };
  std::vector<Rational> p(static_cast<std::size_t>(k_max) + 1);
  for (int k = 1; k <= k_max; ++k) {
    // p_k = sum_{i<k} (-1)^(i-1) e_i p_{k-i} + (-1)^(k-1) k e_k
    Rational acc = (k % 2 ? 1 : -1) * Rational(k) * elem(k);
    for (int i = 1; i < k; ++i) {
      const Rational term = elem(i) * p[k - i];
      acc += (i % 2 ? term : -term);
    }
    p[k] = acc;
  }
  return {p.begin() + 1, p.end()};
}

std::vector<Rational> power_sums_from_coeffs(const IntPolynomial& p, int k_max) {
  if (!p.is_monic()) throw std::invalid_argument("power_sums_from_coeffs requires a monic polynomial");
  const int d = p.degree();
  std::vector<Rational> e(static_cast<std::size_t>(d));
  for (int i = 1; i <= d; ++i) {
    const BigInt c = p.coeff(d - i);
    e[i - 1] = Rational(i % 2 ? -c : c);
  }
  return power_sums_from_elementary(e, k_max);
}

}  // namespace chromroots
