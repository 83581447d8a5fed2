#pragma once

#include "chromroots/bigint.hpp"

#include "json.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

namespace chromroots {

/// Univariate polynomial with exact integer coefficients, stored low to high.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<BigInt> coeffs);
  IntPolynomial(std::initializer_list<long long> coeffs);

  static IntPolynomial constant(const BigInt& c);
  static IntPolynomial monomial(int power, const BigInt& c = 1);
  /// x - root
  static IntPolynomial linear(const BigInt& root);
  /// x(x-1)...(x-k+1)
  static IntPolynomial falling_factorial(int k);

  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }
  const BigInt& leading() const { return coeffs_.back(); }
  /// Coefficient of x^i (zero beyond the degree).
  BigInt coeff(int i) const;
  const std::vector<BigInt>& coeffs() const { return coeffs_; }

  BigInt evaluate(const BigInt& x) const;
  Rational evaluate(const Rational& x) const;
  IntPolynomial derivative() const;
  /// Multiplicity of 0 as a root.
  int trailing_zeros() const;
  /// p(x) / x^k; requires the low k coefficients to be zero.
  IntPolynomial shift_down(int k) const;

  IntPolynomial& operator+=(const IntPolynomial& o);
  IntPolynomial& operator-=(const IntPolynomial& o);
  IntPolynomial& operator*=(const IntPolynomial& o);
  IntPolynomial& operator*=(const BigInt& c);
  friend IntPolynomial operator+(IntPolynomial a, const IntPolynomial& b) { return a += b; }
  friend IntPolynomial operator-(IntPolynomial a, const IntPolynomial& b) { return a -= b; }
  friend IntPolynomial operator*(IntPolynomial a, const IntPolynomial& b) { return a *= b; }
  friend IntPolynomial operator*(IntPolynomial a, const BigInt& c) { return a *= c; }
  IntPolynomial operator-() const;
  friend bool operator==(const IntPolynomial&, const IntPolynomial&) = default;

  std::string to_string() const;

 private:
  void trim();
  std::vector<BigInt> coeffs_;
};

IntPolynomial pow(IntPolynomial base, int e);

BigInt content(const IntPolynomial& p);
/// p / content(p) with a positive leading coefficient.
IntPolynomial primitive_part(const IntPolynomial& p);
/// Quotient a / b in Q[x], scaled to its primitive part; throws if b does not divide a.
IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b);
/// Primitive gcd over Z[x] (positive leading coefficient).
IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b);

/// Divides by (x - r) when r is a root; returns false otherwise.
bool divide_by_root(IntPolynomial& p, const BigInt& r);

/// Square-free factors f_i (primitive, pairwise coprime) with multiplicities
/// i such that p = c * prod f_i^i.
std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p);

/// {"degree": d, "coeffs": ["c0", "c1", ...]} with decimal strings.
nlohmann::json to_json(const IntPolynomial& p);
IntPolynomial polynomial_from_json(const nlohmann::json& j);

}  // namespace chromroots
