#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chromroots/bottleneck.hpp"
#include "chromroots/chromatic.hpp"
#include "chromroots/enumerate.hpp"
#include "chromroots/matching.hpp"
#include "chromroots/measures.hpp"
#include "chromroots/newton.hpp"
#include "chromroots/semicircle.hpp"
#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <random>

using namespace chromroots;

TEST_CASE("rescaled measure of K_3") {
  const RootMeasure nu = rescale(chromatic_measure(gen_complete(3)), 3);
  REQUIRE(nu.points.size() == 3);
  CHECK(std::abs(nu.points[0]) <= 1e-15);
  CHECK(nu.points[1].real() == doctest::Approx(1.0 / 3));
  CHECK(nu.points[2].real() == doctest::Approx(2.0 / 3));
  CHECK(nu.scale == 3);
  CHECK(holomorphic_moment(nu, 0) == Complex(1, 0));
  CHECK(holomorphic_moment(nu, 1).real() == doctest::Approx(1.0 / 3));
  CHECK(holomorphic_moment(nu, 2).real() == doctest::Approx(5.0 / 27));
  CHECK(oracle::triangles(gen_complete(3)) == 1);  // p_2 = m + 2t = 5
}

TEST_CASE("path measure sits on 0 and 1") {
  const RootMeasure mu = chromatic_measure(gen_path(12));
  int zeros = 0, ones = 0;
  for (const auto& z : mu.points) {
    zeros += std::abs(z) == 0;
    ones += std::abs(z - 1.0) == 0;
  }
  CHECK(zeros == 1);
  CHECK(ones == 11);
}

TEST_CASE("rescale validation and identity") {
  const RootMeasure mu = chromatic_measure(gen_cycle(6));
  const RootMeasure same = rescale(mu, 1);
  CHECK(same.points == mu.points);
  CHECK_THROWS(rescale(mu, 0));
  CHECK_THROWS(rescale(mu, -2));
  CHECK_THROWS(holomorphic_moment(mu, -1));
}

TEST_CASE("moments agree with Newton power sums") {
  const RngSpec rng{101};
  for (std::uint64_t i = 0; i < 200; ++i) {
    const int n = 3 + static_cast<int>(i % 10);
    const Graph g = gen_er(n, 0.5, rng.derive(i));
    const IntPolynomial p = chromatic_poly(g);
    const RootMeasure nu = rescale(measure_from_roots(find_roots(p), "chromatic"), n);
    const auto ps = power_sums_from_coeffs(p, 6);
    for (int k = 1; k <= 6; ++k) {
      const double exact = ps[k - 1].convert_to<double>() / std::pow(n, k + 1);
      CHECK(std::abs(holomorphic_moment(nu, k) - exact) <= 1e-8 * (1 + std::abs(exact)));
    }
    for (const auto& z : nu.points) CHECK(std::abs(z) <= 8.0);
  }
}

TEST_CASE("semicircle reference") {
  const SemicircleRef sc1(1.0);
  CHECK(sc1.moment(2) == 1);
  CHECK(sc1.moment(4) == 2);
  CHECK(sc1.moment(6) == 5);
  CHECK(sc1.moment(3) == 0);
  CHECK(SemicircleRef(0.25).moment(2) == doctest::Approx(0.25));
  CHECK(SemicircleRef(0.3).radius() == doctest::Approx(2 * std::sqrt(0.3)));
  for (double p : {0.1, 0.3, 0.7, 1.0}) {
    const SemicircleRef ref(p);
    const double r = ref.radius();
    CHECK(ref.cdf(-r) == 0);
    CHECK(ref.cdf(0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(ref.cdf(r) == 1);
    CHECK(ref.cdf(-10) == 0);
    CHECK(ref.cdf(10) == 1);
    CHECK(oracle::simpson([&](double x) { return ref.density(x); }, -r, r, 200000) == doctest::Approx(1).epsilon(1e-6));
    for (int k = 1; k <= 3; ++k) {
      // integral of x^(2k) dF = integral of 2k x^(2k-1) (1[x>0] - F(x)) dx, from the CDF only.
      const double m = oracle::simpson([&](double x) { return 2 * k * std::pow(x, 2 * k - 1) * ((x > 0) - ref.cdf(x)); },
                                       -r, r, 400000);
      CHECK(m == doctest::Approx(ref.moment(2 * k)).epsilon(1e-6));
    }
    double prev = 0;
    for (int i = 0; i <= 1000; ++i) {
      const double f = ref.cdf(-r - 0.1 + (2 * r + 0.2) * i / 1000.0);
      CHECK(f >= prev);
      prev = f;
    }
  }
  CHECK_THROWS(SemicircleRef(0));
  CHECK_THROWS(SemicircleRef(1.5));
}

TEST_CASE("Kolmogorov-Smirnov distance") {
  const SemicircleRef sc1(1.0);
  const int n = 400;
  std::vector<double> q;
  for (int i = 1; i <= n; ++i) {
    // Bisection for the (i - 1/2)/n quantile.
    double lo = -2, hi = 2;
    for (int it = 0; it < 100; ++it) {
      const double mid = (lo + hi) / 2;
      (sc1.cdf(mid) < (i - 0.5) / n ? lo : hi) = mid;
    }
    q.push_back((lo + hi) / 2);
  }
  CHECK(ks_distance(q, sc1) <= 1.0 / n + 1e-9);
  const std::vector<double> zero{0.0};
  CHECK(ks_distance(zero, sc1) == doctest::Approx(0.5));
  RootMeasure complex_pts{{Complex(0, 1)}, 1, "test"};
  CHECK_THROWS(ks_distance(complex_pts, sc1));
  const RootMeasure lambda = rescale(measure_from_roots(find_roots(hermite_poly(200)), "matching"), std::sqrt(200.0));
  CHECK(ks_distance(lambda, sc1) <= 0.05);
}

TEST_CASE("bottleneck displacement") {
  const RootMeasure p3 = chromatic_measure(gen_path(3));
  const RootMeasure k3 = chromatic_measure(gen_complete(3));
  const auto r = bottleneck_displacement(p3, k3);
  CHECK(r.value == doctest::Approx(1));
  CHECK(bottleneck_displacement(k3, k3).value == 0);
  std::vector<Complex> shifted = k3.points;
  for (auto& z : shifted) z += Complex(0.3, -0.4);
  CHECK(bottleneck_displacement(k3.points, shifted).value == doctest::Approx(0.5));
  CHECK_THROWS(bottleneck_displacement(p3, rescale(k3, 3)));
  CHECK_THROWS(bottleneck_displacement(p3, chromatic_measure(gen_path(4))));

  std::mt19937_64 eng(4);
  std::uniform_real_distribution<double> u(-2, 2);
  for (int t = 0; t < 150; ++t) {
    const std::size_t n = 1 + static_cast<std::size_t>(t % 7);
    std::vector<Complex> a, b, c;
    for (std::size_t i = 0; i < n; ++i) {
      a.emplace_back(u(eng), u(eng));
      b.emplace_back(u(eng), u(eng));
      c.emplace_back(u(eng), u(eng));
    }
    const auto ab = bottleneck_displacement(a, b);
    CHECK(ab.value == doctest::Approx(oracle::brute_bottleneck(a, b)).epsilon(1e-14));
    double worst = 0;
    for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, std::abs(a[i] - b[static_cast<std::size_t>(ab.assignment[i])]));
    CHECK(worst == ab.value);
    CHECK(bottleneck_displacement(b, a).value == ab.value);
    CHECK(ab.value <= bottleneck_displacement(a, c).value + bottleneck_displacement(c, b).value + 1e-15);
  }
}

TEST_CASE("dense graph root counts") {
  const auto k8 = dense_root_check(gen_complete(8), 0.25);
  CHECK(k8.edge_ok);
  CHECK(k8.epsilon == doctest::Approx(1.0 / 36));
  CHECK(k8.count_modulus == 7);
  CHECK(k8.pass);
  const auto empty = dense_root_check(gen_empty(6), 0.1);
  CHECK_FALSE(empty.edge_ok);
  CHECK(empty.pass);
  CHECK_THROWS(dense_root_check(gen_complete(4), 0));
  for (const auto& g : enumerate_connected(6)) {
    const double delta = static_cast<double>(g.edge_count()) / 36.0;
    const auto r = dense_root_check(g, delta);
    CHECK(r.edge_ok);
    CHECK(r.pass);
  }
}

TEST_CASE("graphon sequence probe (reported only)") {
  const StepGraphon w({{0.8, 0.2}, {0.2, 0.5}}, {0.5, 0.5});
  const RngSpec rng{314};
  for (int n : {8, 10, 12}) {
    const RootMeasure a = rescale(chromatic_measure(sample_graphon(w, n, rng.derive(2 * n))), n);
    const RootMeasure b = rescale(chromatic_measure(sample_graphon(w, n, rng.derive(2 * n + 1))), n);
    const RootMeasure c = rescale(chromatic_measure(sample_graphon(w, n + 2, rng.derive(2 * n + 2))), n + 2);
    MESSAGE("n=" << n << " same-order bottleneck " << bottleneck_displacement(a, b).value
                 << ", moment distance to n+2 (k<=6) " << moment_distance(a, c, 6));
  }
}
