#pragma once

#include "chromroots/polynomial.hpp"

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace chromroots {

using Complex = std::complex<double>;

inline constexpr double kDefaultRootTol = 1e-10;
inline constexpr double kDefaultImagTol = 1e-8;

struct Root {
  Complex z;
  int multiplicity = 1;
  /// Radius of an isolating disk around z known to hold this root; zero for
  /// roots found exactly.
  double radius = 0.0;
};

/// All complex roots of an integer polynomial, grouped by multiplicity.
struct RootSet {
  std::vector<Root> roots;
  /// Largest backward error |f(z)| / sum |f_i||z|^i over the numerically
  /// solved square-free factors f.
  double residual_bound = 0.0;
  /// Largest isolating-disk radius.
  double error_bound = 0.0;
  std::string method;
  double tol = kDefaultRootTol;

  /// Expanded multiset, each root repeated by multiplicity.
  std::vector<Complex> points() const;
  int size() const;
};

struct RootOptions {
  double tol = kDefaultRootTol;
  int max_iterations = 600;
};

class RootFindingError : public std::runtime_error {
 public:
  RootFindingError(const std::string& what, std::vector<Complex> best, double residual)
      : std::runtime_error(what), best_iterate(std::move(best)), residual(residual) {}
  std::vector<Complex> best_iterate;
  double residual;
};

/// Roots with multiplicity. Zero and small integer roots are split off
/// exactly, the rest is deflated into square-free factors and solved by
/// Aberth-Ehrlich iteration with increasing working precision until every
/// root sits in a disjoint isolating disk of radius <= tol * max(1, |z|).
RootSet find_roots(const IntPolynomial& p, const RootOptions& opts = {});

class NonRealRootError : public std::runtime_error {
 public:
  NonRealRootError(const std::string& what, Complex root) : std::runtime_error(what), root(root) {}
  Complex root;
};

/// Real parts sorted ascending, after checking |Im z| <= imag_tol (1 + |z|)
/// for every root.
std::vector<double> certify_real(const RootSet& rs, double imag_tol = kDefaultImagTol);

}  // namespace chromroots
