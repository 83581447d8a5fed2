#include "chromroots/roots.hpp"

#include <Eigen/Eigenvalues>
#include <boost/multiprecision/mpfr.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace chromroots {

namespace {

namespace mp = boost::multiprecision;

template <unsigned Digits>
using Mpfr = mp::number<mp::mpfr_float_backend<Digits>, mp::et_off>;

template <class R>
struct Cx {
  R re{0};
  R im{0};
};

template <class R>
Cx<R> operator+(const Cx<R>& a, const Cx<R>& b) { return {a.re + b.re, a.im + b.im}; }
template <class R>
Cx<R> operator-(const Cx<R>& a, const Cx<R>& b) { return {a.re - b.re, a.im - b.im}; }
template <class R>
Cx<R> operator*(const Cx<R>& a, const Cx<R>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <class R>
Cx<R> operator/(const Cx<R>& a, const Cx<R>& b) {
  const R d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
template <class R>
R norm(const Cx<R>& a) {
  using std::sqrt;
  return sqrt(a.re * a.re + a.im * a.im);
}

template <class R>
struct Precision;
template <>
struct Precision<double> {
  static constexpr int bits = 53;
  static constexpr const char* name = "double";
};
template <unsigned D>
struct Precision<Mpfr<D>> {
  static constexpr int bits = static_cast<int>(D * 3.3219280948873623) + 2;
  static constexpr const char* name = "mpfr";
};

// Coefficients of f(s y) / 2^E as (mantissa, exponent) pairs.
struct ScaledCoeffs {
  std::vector<double> mant;
  std::vector<long> expo;
  std::vector<BigInt> exact;
  long scale_log2 = 0;
};

void mant_exp(const BigInt& a, double& m, long& e) {
  if (a == 0) {
    m = 0.0;
    e = 0;
    return;
  }
  BigInt v = abs(a);
  const long bits = static_cast<long>(mp::msb(v)) + 1;
  long shift = 0;
  if (bits > 60) {
    shift = bits - 60;
    v >>= shift;
  }
  int fe = 0;
  m = std::frexp(v.convert_to<double>(), &fe);
  if (a < 0) m = -m;
  e = shift + fe;
}

ScaledCoeffs scale_coeffs(const IntPolynomial& f) {
  ScaledCoeffs sc;
  const int d = f.degree();
  sc.exact = f.coeffs();
  sc.mant.resize(static_cast<std::size_t>(d) + 1);
  sc.expo.resize(static_cast<std::size_t>(d) + 1);
  for (int i = 0; i <= d; ++i) mant_exp(sc.exact[i], sc.mant[i], sc.expo[i]);
  // Scale by a power of two near the geometric mean of the root moduli.
  const double log2_ratio = (log_abs(sc.exact[0]) - log_abs(sc.exact[d])) / std::log(2.0);
  sc.scale_log2 = std::lround(log2_ratio / d);
  long top = std::numeric_limits<long>::min();
  for (int i = 0; i <= d; ++i)
    if (sc.mant[i] != 0.0) top = std::max(top, sc.expo[i] + i * sc.scale_log2);
  for (int i = 0; i <= d; ++i) sc.expo[i] += i * sc.scale_log2 - top;
  return sc;
}

template <class R>
std::vector<R> coeffs_as(const ScaledCoeffs& sc) {
  std::vector<R> out(sc.mant.size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    if constexpr (std::is_same_v<R, double>) {
      out[i] = std::ldexp(sc.mant[i], static_cast<int>(std::clamp<long>(sc.expo[i], -2000, 2000)));
    } else {
      // Exact integer, then an exact power-of-two shift.
      const long shift = sc.expo[i] - (sc.exact[i] == 0 ? 0 : static_cast<long>(mp::msb(abs(sc.exact[i]))) + 1);
      R v(sc.exact[i]);
      out[i] = mp::ldexp(v, static_cast<int>(shift));
    }
  }
  return out;
}

template <class R>
R ldexp_r(const R& x, int e) {
  if constexpr (std::is_same_v<R, double>) return std::ldexp(x, e);
  else return mp::ldexp(x, e);
}

template <class R>
struct Eval {
  Cx<R> value;
  Cx<R> deriv;
  R abs_sum;  // sum |b_i| |y|^i
};

template <class R>
Eval<R> horner(const std::vector<R>& b, const Cx<R>& y) {
  using std::abs;
  const int d = static_cast<int>(b.size()) - 1;
  Cx<R> p{b[d], R(0)};
  Cx<R> dp{R(0), R(0)};
  const R ay = norm(y);
  R s = abs(b[d]);
  for (int i = d - 1; i >= 0; --i) {
    dp = dp * y + p;
    p = p * y + Cx<R>{b[i], R(0)};
    s = s * ay + abs(b[i]);
  }
  return {p, dp, s};
}

template <class R>
struct StageOutcome {
  std::vector<Cx<R>> y;
  std::vector<double> radius;  // y-domain
  bool converged = false;      // Aberth corrections settled
  int unsettled = 0;
  bool certified = false;      // disjoint disks within tolerance
  double backward = 0.0;
};

template <class R>
StageOutcome<R> aberth_stage(const std::vector<R>& b, std::vector<Cx<R>> y, double tol, double scale,
                             int max_iterations) {
  using std::abs;
  const int d = static_cast<int>(b.size()) - 1;
  const R u = ldexp_r(R(1), -Precision<R>::bits + 1);
  const R gamma = R(4 * (d + 2)) * u;
  std::vector<bool> done(static_cast<std::size_t>(d), false);
  StageOutcome<R> out;
  int remaining = d;
  for (int it = 0; it < max_iterations && remaining > 0; ++it) {
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      const auto e = horner(b, y[i]);
      const R pn = norm(e.value);
      if (pn <= R(2) * gamma * e.abs_sum) {
        done[i] = true;
        --remaining;
        continue;
      }
      if (norm(e.deriv) == 0) {
        y[i] = y[i] + Cx<R>{ldexp_r(R(1), -20), ldexp_r(R(1), -21)};
        continue;
      }
      const Cx<R> ratio = e.value / e.deriv;
      Cx<R> sum{R(0), R(0)};
      for (int j = 0; j < d; ++j)
        if (j != i) sum = sum + Cx<R>{R(1), R(0)} / (y[i] - y[j]);
      const Cx<R> w = ratio / (Cx<R>{R(1), R(0)} - ratio * sum);
      using std::isfinite;
      if (!isfinite(w.re) || !isfinite(w.im)) continue;
      y[i] = y[i] - w;
      if (norm(w) <= R(8) * u * norm(y[i])) {
        done[i] = true;
        --remaining;
      }
    }
  }
  out.converged = remaining == 0;
  out.unsettled = remaining;

  // Inclusion disks: radius d (|f(y)| + err) / (|b_d| prod |y_i - y_j|).
  out.radius.assign(static_cast<std::size_t>(d), 0.0);
  bool finite = true;
  for (int i = 0; i < d; ++i) {
    const auto e = horner(b, y[i]);
    const R err = gamma * e.abs_sum;
    R denom = abs(b[d]);
    for (int j = 0; j < d; ++j)
      if (j != i) denom *= norm(y[i] - y[j]);
    const R r = R(d) * (norm(e.value) + err) / denom * (R(1) + R(4 * d) * u);
    out.radius[i] = static_cast<double>(r);
    if (e.abs_sum > 0) out.backward = std::max(out.backward, static_cast<double>(norm(e.value) / e.abs_sum));
    finite = finite && std::isfinite(out.radius[i]) && std::isfinite(static_cast<double>(y[i].re)) &&
             std::isfinite(static_cast<double>(y[i].im));
  }
  bool ok = finite;
  for (int i = 0; ok && i < d; ++i) {
    const double mag = std::max(1.0 / scale, std::hypot(static_cast<double>(y[i].re), static_cast<double>(y[i].im)));
    if (out.radius[i] > tol * mag) ok = false;
    for (int j = i + 1; ok && j < d; ++j) {
      const double dist = static_cast<double>(norm(y[i] - y[j]));
      if (dist <= out.radius[i] + out.radius[j]) ok = false;
    }
  }
  out.certified = ok;
  out.y = std::move(y);
  return out;
}

template <class To, class From>
std::vector<Cx<To>> convert(const std::vector<Cx<From>>& v) {
  std::vector<Cx<To>> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = {static_cast<To>(v[i].re), static_cast<To>(v[i].im)};
  return out;
}

std::vector<Cx<double>> circle_start(int d) {
  std::vector<Cx<double>> y(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    const double t = 2.0 * std::numbers::pi * k / d + 0.4;
    y[k] = {std::cos(t), std::sin(t)};
  }
  return y;
}

// Replaces non-finite or duplicate start points by points on the unit circle.
std::vector<Cx<double>> sanitized(std::vector<Cx<double>> y) {
  const auto fallback = circle_start(static_cast<int>(y.size()));
  for (std::size_t i = 0; i < y.size(); ++i) {
    bool bad = !std::isfinite(y[i].re) || !std::isfinite(y[i].im);
    for (std::size_t j = 0; !bad && j < i; ++j) bad = y[i].re == y[j].re && y[i].im == y[j].im;
    if (bad) y[i] = fallback[i];
  }
  return y;
}

std::vector<Cx<double>> companion_start(const std::vector<double>& b) {
  const int d = static_cast<int>(b.size()) - 1;
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(d, d);
  for (int i = 1; i < d; ++i) c(i, i - 1) = 1.0;
  for (int i = 0; i < d; ++i) c(i, d - 1) = -b[i] / b[d];
  Eigen::EigenSolver<Eigen::MatrixXd> es(c, false);
  std::vector<Cx<double>> y(static_cast<std::size_t>(d));
  if (es.info() != Eigen::Success) return circle_start(d);
  for (int i = 0; i < d; ++i) {
    const auto ev = es.eigenvalues()[i];
    y[i] = {std::isfinite(ev.real()) ? ev.real() : 1.0, std::isfinite(ev.imag()) ? ev.imag() : 0.0};
  }
  return y;
}

struct FactorRoots {
  std::vector<Complex> z;
  std::vector<double> radius;
  double backward = 0.0;
  std::string method;
};

template <class R>
FactorRoots finish(const StageOutcome<R>& s, double scale, const std::string& method) {
  FactorRoots fr;
  fr.method = method;
  fr.backward = s.backward;
  for (std::size_t i = 0; i < s.y.size(); ++i) {
    fr.z.emplace_back(static_cast<double>(s.y[i].re) * scale, static_cast<double>(s.y[i].im) * scale);
    // Rounding to double adds at most one ulp of |z|.
    fr.radius.push_back(s.radius[i] * scale + std::abs(fr.z.back()) * 0x1.0p-52);
  }
  return fr;
}

template <class R>
std::vector<Complex> to_points(const std::vector<Cx<R>>& y, double scale) {
  std::vector<Complex> out;
  for (const auto& v : y) out.emplace_back(static_cast<double>(v.re) * scale, static_cast<double>(v.im) * scale);
  return out;
}

template <class R, class Prev>
bool try_stage(const ScaledCoeffs& sc, std::vector<Cx<Prev>>& current, double tol, double scale, int max_it,
               FactorRoots& result, std::vector<Complex>& best, double& best_backward) {
  const auto b = coeffs_as<R>(sc);
  auto s = aberth_stage<R>(b, convert<R>(current), tol, scale, max_it);
  best = to_points(s.y, scale);
  best_backward = s.backward;
  if (s.certified) {
    std::ostringstream m;
    m << "aberth/" << Precision<R>::name << Precision<R>::bits;
    result = finish(s, scale, m.str());
    return true;
  }
  current = convert<Prev>(s.y);
  return false;
}

FactorRoots solve_squarefree(const IntPolynomial& f, const RootOptions& opts) {
  const int d = f.degree();
  FactorRoots fr;
  if (d == 1) {
    const Rational r(-f.coeff(0), f.coeff(1));
    const double z = r.convert_to<double>();
    fr.z.push_back(z);
    fr.radius.push_back(std::abs(z) * 0x1.0p-52);
    fr.method = "exact";
    return fr;
  }
  const ScaledCoeffs sc = scale_coeffs(f);
  const double scale = std::ldexp(1.0, static_cast<int>(sc.scale_log2));
  std::vector<Complex> best;
  double best_backward = INFINITY;

  // Double precision first, with the coefficients kept inside double range.
  std::vector<Cx<double>> start = circle_start(d);
  bool companion_used = false;
  const auto bd = coeffs_as<double>(sc);
  bool double_ok = std::all_of(bd.begin(), bd.end(), [](double v) { return std::isfinite(v); });
  if (double_ok) {
    auto s = aberth_stage<double>(bd, start, opts.tol, scale, opts.max_iterations);
    best = to_points(s.y, scale);
    best_backward = s.backward;
    if (s.certified) return finish(s, scale, "aberth/double53");
    if (2 * s.unsettled > d) {
      // Stalled: restart from companion-matrix eigenvalues.
      auto c = aberth_stage<double>(bd, sanitized(companion_start(bd)), opts.tol, scale, opts.max_iterations);
      if (c.certified) return finish(c, scale, "companion+aberth/double53");
      if (c.unsettled < s.unsettled) {
        s = std::move(c);
        companion_used = true;
      }
    }
    start = sanitized(s.y);
  }

  std::vector<Cx<Mpfr<40>>> cur40 = convert<Mpfr<40>>(start);
  bool ok = try_stage<Mpfr<40>>(sc, cur40, opts.tol, scale, opts.max_iterations, fr, best, best_backward);
  std::vector<Cx<Mpfr<80>>> cur80 = convert<Mpfr<80>>(cur40);
  if (!ok) ok = try_stage<Mpfr<80>>(sc, cur80, opts.tol, scale, opts.max_iterations, fr, best, best_backward);
  std::vector<Cx<Mpfr<160>>> cur160 = convert<Mpfr<160>>(cur80);
  if (!ok) ok = try_stage<Mpfr<160>>(sc, cur160, opts.tol, scale, opts.max_iterations, fr, best, best_backward);
  std::vector<Cx<Mpfr<320>>> cur320 = convert<Mpfr<320>>(cur160);
  if (!ok) ok = try_stage<Mpfr<320>>(sc, cur320, opts.tol, scale, opts.max_iterations, fr, best, best_backward);
  if (!ok) {
    std::ostringstream m;
    m << "root finding did not converge for degree " << d << " factor (backward error " << best_backward << ")";
    throw RootFindingError(m.str(), best, best_backward);
  }
  if (companion_used) fr.method = "companion+" + fr.method;
  return fr;
}

}  // namespace

std::vector<Complex> RootSet::points() const {
  std::vector<Complex> out;
  for (const auto& r : roots) out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.z);
  return out;
}

int RootSet::size() const {
  int n = 0;
  for (const auto& r : roots) n += r.multiplicity;
  return n;
}

RootSet find_roots(const IntPolynomial& p, const RootOptions& opts) {
  if (p.degree() < 1) throw std::invalid_argument("find_roots needs degree >= 1");
  if (!(opts.tol > 0)) throw std::invalid_argument("find_roots needs tol > 0");
  RootSet rs;
  rs.tol = opts.tol;
  std::vector<std::string> methods;

  const int zeros = p.trailing_zeros();
  if (zeros > 0) rs.roots.push_back({Complex(0.0, 0.0), zeros, 0.0});
  IntPolynomial rest = p.shift_down(zeros);

  // Small integer roots, found exactly by synthetic division.
  const int bound = std::max(rest.degree(), 2);
  for (int mag = 1; mag <= bound && rest.degree() >= 1; ++mag) {
    for (int r : {mag, -mag}) {
      if (rest.coeff(0) % r != 0) continue;
      int mult = 0;
      while (rest.degree() >= 1 && divide_by_root(rest, r)) ++mult;
      if (mult > 0) rs.roots.push_back({Complex(r, 0.0), mult, 0.0});
    }
  }
  if (!rs.roots.empty()) methods.push_back("exact");

  if (rest.degree() >= 1) {
    for (const auto& [factor, mult] : squarefree_decomposition(rest)) {
      const FactorRoots fr = solve_squarefree(factor, opts);
      for (std::size_t i = 0; i < fr.z.size(); ++i) rs.roots.push_back({fr.z[i], mult, fr.radius[i]});
      rs.residual_bound = std::max(rs.residual_bound, fr.backward);
      if (std::find(methods.begin(), methods.end(), fr.method) == methods.end()) methods.push_back(fr.method);
    }
  }
  for (const auto& r : rs.roots) rs.error_bound = std::max(rs.error_bound, r.radius);
  for (std::size_t i = 0; i < methods.size(); ++i) rs.method += (i ? "," : "") + methods[i];
  std::sort(rs.roots.begin(), rs.roots.end(), [](const Root& a, const Root& b) {
    if (a.z.real() != b.z.real()) return a.z.real() < b.z.real();
    return a.z.imag() < b.z.imag();
  });
  return rs;
}

std::vector<double> certify_real(const RootSet& rs, double imag_tol) {
  std::vector<double> out;
  for (const auto& r : rs.roots) {
    if (std::abs(r.z.imag()) > imag_tol * (1.0 + std::abs(r.z))) {
      std::ostringstream m;
      m.precision(17);
      m << "root " << r.z.real() << (r.z.imag() < 0 ? " - " : " + ") << std::abs(r.z.imag()) << "i is not real";
      throw NonRealRootError(m.str(), r.z);
    }
    out.insert(out.end(), static_cast<std::size_t>(r.multiplicity), r.z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chromroots
