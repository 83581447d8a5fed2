#include "chromroots/polynomial.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <stdexcept>

namespace chromroots {

IntPolynomial::IntPolynomial(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

IntPolynomial::IntPolynomial(std::initializer_list<long long> coeffs) {
  for (long long c : coeffs) coeffs_.emplace_back(c);
  trim();
}

IntPolynomial IntPolynomial::constant(const BigInt& c) { return IntPolynomial(std::vector<BigInt>{c}); }

IntPolynomial IntPolynomial::monomial(int power, const BigInt& c) {
  std::vector<BigInt> v(static_cast<std::size_t>(power) + 1);
  v.back() = c;
  return IntPolynomial(std::move(v));
}

IntPolynomial IntPolynomial::linear(const BigInt& root) { return IntPolynomial(std::vector<BigInt>{-root, 1}); }

IntPolynomial IntPolynomial::falling_factorial(int k) {
  IntPolynomial out = constant(1);
  for (int i = 0; i < k; ++i) out *= linear(i);
  return out;
}

void IntPolynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

BigInt IntPolynomial::coeff(int i) const {
  if (i < 0 || i > degree()) return 0;
  return coeffs_[static_cast<std::size_t>(i)];
}

BigInt IntPolynomial::evaluate(const BigInt& x) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Rational IntPolynomial::evaluate(const Rational& x) const {
  // Horner over the common denominator: sum c_i num^i den^(d-i) / den^d.
  const BigInt num = boost::multiprecision::numerator(x);
  const BigInt den = boost::multiprecision::denominator(x);
  BigInt acc = 0;
  BigInt den_power = 1;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * num + *it * den_power;
    den_power *= den;
  }
  // acc carries den^deg, den_power carries den^(deg+1).
  return coeffs_.empty() ? Rational(0) : Rational(acc * den, den_power);
}

IntPolynomial IntPolynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<BigInt> d(coeffs_.size() - 1);
  for (std::size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = coeffs_[i] * static_cast<long long>(i);
  return IntPolynomial(std::move(d));
}

int IntPolynomial::trailing_zeros() const {
  int k = 0;
  while (k <= degree() && coeffs_[static_cast<std::size_t>(k)] == 0) ++k;
  return k;
}

IntPolynomial IntPolynomial::shift_down(int k) const {
  if (k > trailing_zeros()) throw std::invalid_argument("shift_down: nonzero low coefficients");
  if (k == 0) return *this;
  return IntPolynomial(std::vector<BigInt>(coeffs_.begin() + k, coeffs_.end()));
}

IntPolynomial& IntPolynomial::operator+=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator-=(const IntPolynomial& o) {
  if (o.coeffs_.size() > coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t i = 0; i < o.coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const IntPolynomial& o) {
  if (is_zero() || o.is_zero()) {
    coeffs_.clear();
    return *this;
  }
  std::vector<BigInt> r(coeffs_.size() + o.coeffs_.size() - 1);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < o.coeffs_.size(); ++j) r[i + j] += coeffs_[i] * o.coeffs_[j];
  }
  coeffs_ = std::move(r);
  trim();
  return *this;
}

IntPolynomial& IntPolynomial::operator*=(const BigInt& c) {
  for (auto& x : coeffs_) x *= c;
  trim();
  return *this;
}

IntPolynomial IntPolynomial::operator-() const {
  IntPolynomial r = *this;
  for (auto& x : r.coeffs_) x = -x;
  return r;
}

std::string IntPolynomial::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const BigInt& c = coeffs_[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    const BigInt a = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1 || i == 0) os << a;
    if (i >= 1) os << "x";
    if (i >= 2) os << "^" << i;
  }
  return os.str();
}

IntPolynomial pow(IntPolynomial base, int e) {
  IntPolynomial r = IntPolynomial::constant(1);
  while (e > 0) {
    if (e & 1) r *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return r;
}

BigInt content(const IntPolynomial& p) {
  BigInt g = 0;
  for (const auto& c : p.coeffs()) {
    g = boost::multiprecision::gcd(g, c);
    if (g == 1) break;
  }
  return abs(g);
}

IntPolynomial primitive_part(const IntPolynomial& p) {
  if (p.is_zero()) return p;
  BigInt c = content(p);
  if (p.leading() < 0) c = -c;
  std::vector<BigInt> v = p.coeffs();
  for (auto& x : v) x /= c;
  return IntPolynomial(std::move(v));
}

namespace {

// lc(b)^(deg a - deg b + 1) * a = q * b + r
std::pair<IntPolynomial, IntPolynomial> pseudo_divide(const IntPolynomial& a, const IntPolynomial& b) {
  if (b.is_zero()) throw std::invalid_argument("division by zero polynomial");
  std::vector<BigInt> r = a.coeffs();
  const int db = b.degree();
  const int da = a.degree();
  if (da < db) return {IntPolynomial{}, a};
  std::vector<BigInt> q(static_cast<std::size_t>(da - db) + 1);
  const BigInt& lb = b.leading();
  for (int k = da; k >= db; --k) {
    const BigInt lead = r[static_cast<std::size_t>(k)];
    for (auto& x : q) x *= lb;
    q[static_cast<std::size_t>(k - db)] += lead;
    for (auto& x : r) x *= lb;
    for (int i = 0; i <= db; ++i) r[static_cast<std::size_t>(k - db + i)] -= lead * b.coeffs()[static_cast<std::size_t>(i)];
  }
  return {IntPolynomial(std::move(q)), IntPolynomial(std::move(r))};
}

}  // namespace

IntPolynomial exact_quotient(const IntPolynomial& a, const IntPolynomial& b) {
  auto [q, r] = pseudo_divide(a, b);
  if (!r.is_zero()) throw std::invalid_argument("exact_quotient: remainder is nonzero");
  return primitive_part(q);
}

IntPolynomial gcd(const IntPolynomial& a, const IntPolynomial& b) {
  IntPolynomial x = primitive_part(a);
  IntPolynomial y = primitive_part(b);
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    auto r = primitive_part(pseudo_divide(x, y).second);
    x = std::move(y);
    y = std::move(r);
  }
  return primitive_part(x);
}

bool divide_by_root(IntPolynomial& p, const BigInt& r) {
  const int d = p.degree();
  if (d < 1) return false;
  std::vector<BigInt> q(static_cast<std::size_t>(d));
  BigInt acc = 0;
  for (int i = d; i >= 1; --i) {
    acc = acc * r + p.coeffs()[static_cast<std::size_t>(i)];
    q[static_cast<std::size_t>(i - 1)] = acc;
  }
  if (acc * r + p.coeffs()[0] != 0) return false;
  p = IntPolynomial(std::move(q));
  return true;
}

namespace {

constexpr std::uint64_t kPrime = 2305843009213693951ULL;  // 2^61 - 1

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) { return static_cast<std::uint64_t>((u128)a * b % kPrime); }

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::vector<std::uint64_t> reduce_mod(const IntPolynomial& p) {
  std::vector<std::uint64_t> out;
  for (const auto& c : p.coeffs()) {
    BigInt m = c % BigInt(kPrime);
    if (m < 0) m += kPrime;
    out.push_back(m.convert_to<std::uint64_t>());
  }
  while (!out.empty() && out.back() == 0) out.pop_back();
  return out;
}

int gcd_degree_mod(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b) {
  while (!b.empty()) {
    const std::uint64_t inv = powmod(b.back(), kPrime - 2);
    while (a.size() >= b.size()) {
      const std::uint64_t f = mulmod(a.back(), inv);
      const std::size_t off = a.size() - b.size();
      for (std::size_t i = 0; i < b.size(); ++i) a[off + i] = (a[off + i] + kPrime - mulmod(f, b[i])) % kPrime;
      while (!a.empty() && a.back() == 0) a.pop_back();
    }
    std::swap(a, b);
  }
  return static_cast<int>(a.size()) - 1;
}

// True when gcd(p, p') is certainly constant, by a modular image.
bool certainly_squarefree(const IntPolynomial& p) {
  const auto pm = reduce_mod(p);
  const auto dm = reduce_mod(p.derivative());
  if (static_cast<int>(pm.size()) - 1 != p.degree()) return false;
  if (static_cast<int>(dm.size()) - 1 != p.degree() - 1) return false;
  return gcd_degree_mod(pm, dm) == 0;
}

IntPolynomial radical(const IntPolynomial& p) {
  if (p.degree() <= 1 || certainly_squarefree(p)) return primitive_part(p);
  return exact_quotient(p, gcd(p, p.derivative()));
}

}  // namespace

std::vector<std::pair<IntPolynomial, int>> squarefree_decomposition(const IntPolynomial& p) {
  std::vector<std::pair<IntPolynomial, int>> out;
  if (p.degree() < 1) return out;
  if (certainly_squarefree(p)) {
    out.emplace_back(primitive_part(p), 1);
    return out;
  }
  // rad(f_{i-1}) / rad(f_i) collects the factors of multiplicity exactly i,
  // where f_0 = p and f_i = gcd(f_{i-1}, f_{i-1}').
  IntPolynomial current = primitive_part(p);
  IntPolynomial rad_current = radical(current);
  int mult = 1;
  while (current.degree() >= 1) {
    IntPolynomial next = gcd(current, current.derivative());
    IntPolynomial rad_next = next.degree() >= 1 ? radical(next) : IntPolynomial::constant(1);
    IntPolynomial factor = exact_quotient(rad_current, rad_next);
    if (factor.degree() >= 1) out.emplace_back(std::move(factor), mult);
    current = std::move(next);
    rad_current = std::move(rad_next);
    ++mult;
  }
  return out;
}

nlohmann::json to_json(const IntPolynomial& p) {
  nlohmann::json coeffs = nlohmann::json::array();
  for (const auto& c : p.coeffs()) coeffs.push_back(c.str());
  return {{"degree", p.degree()}, {"coeffs", coeffs}};
}

IntPolynomial polynomial_from_json(const nlohmann::json& j) {
  std::vector<BigInt> c;
  for (const auto& s : j.at("coeffs")) c.emplace_back(s.get<std::string>());
  IntPolynomial p(std::move(c));
  if (p.degree() != j.at("degree").get<int>()) throw std::invalid_argument("polynomial JSON: degree mismatch");
  return p;
}

}  // namespace chromroots
