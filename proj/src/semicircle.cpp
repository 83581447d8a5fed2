#include "chromroots/semicircle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

namespace chromroots {

SemicircleRef::SemicircleRef(double p) : p_(p), radius_(2.0 * std::sqrt(p)) {
  if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("semicircle parameter p must be in (0,1]");
}

double SemicircleRef::density(double x) const {
  if (std::abs(x) >= radius_) return 0.0;
  return std::sqrt(4.0 * p_ - x * x) / (2.0 * std::numbers::pi * p_);
}

double SemicircleRef::cdf(double x) const {
  if (x <= -radius_) return 0.0;
  if (x >= radius_) return 1.0;
  const double t = x / std::sqrt(p_);
  return 0.5 + t * std::sqrt(4.0 - t * t) / (4.0 * std::numbers::pi) + std::asin(t / 2.0) / std::numbers::pi;
}

double catalan(int k) {
  double c = 1.0;
  for (int i = 0; i < k; ++i) c = c * 2.0 * (2.0 * i + 1.0) / (i + 2.0);
  return c;
}

double SemicircleRef::moment(int k) const {
  if (k < 0) throw std::invalid_argument("moment index must be non-negative");
  if (k % 2) return 0.0;
  return std::pow(p_, k / 2) * catalan(k / 2);
}

double ks_distance(std::span<const double> points, const SemicircleRef& ref) {
  if (points.empty()) throw std::invalid_argument("ks_distance of an empty sample");
  std::vector<double> x(points.begin(), points.end());
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size();) {
    std::size_t j = i;
    while (j < x.size() && x[j] == x[i]) ++j;
    const double f = ref.cdf(x[i]);
    d = std::max({d, std::abs(f - static_cast<double>(i) / n), std::abs(f - static_cast<double>(j) / n)});
    i = j;
  }
  return d;
}

double ks_distance(const RootMeasure& m, const SemicircleRef& ref, double imag_tol) {
  std::vector<double> re;
  re.reserve(m.points.size());
  for (const auto& z : m.points) {
    if (std::abs(z.imag()) > imag_tol * (1.0 + std::abs(z))) throw std::invalid_argument("ks_distance needs real points");
    re.push_back(z.real());
  }
  return ks_distance(re, ref);
}

}  // namespace chromroots
