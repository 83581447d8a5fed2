#pragma once

#include "chromroots/measures.hpp"

#include <span>

namespace chromroots {

/// SC_p: the radius-2 semicircle law pushed forward by x -> sqrt(p) x.
class SemicircleRef {
 public:
  explicit SemicircleRef(double p);

  double p() const { return p_; }
  double radius() const { return radius_; }
  double density(double x) const;
  double cdf(double x) const;
  /// Odd moments vanish; moment 2k is p^k Catalan(k).
  double moment(int k) const;

 private:
  double p_;
  double radius_;
};

inline SemicircleRef semicircle(double p) { return SemicircleRef(p); }
inline double sc_cdf(const SemicircleRef& ref, double x) { return ref.cdf(x); }
inline double sc_moment(const SemicircleRef& ref, int k) { return ref.moment(k); }

double catalan(int k);

/// Kolmogorov-Smirnov distance between the empirical CDF of real points and
/// the reference CDF, evaluated at every jump.
double ks_distance(std::span<const double> points, const SemicircleRef& ref);
/// Rejects measures whose points are not real within imag_tol (1 + |z|).
double ks_distance(const RootMeasure& m, const SemicircleRef& ref, double imag_tol = kDefaultImagTol);

}  // namespace chromroots
