#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "chromroots/chromatic.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>

using namespace chromroots;

namespace {

IntPolynomial x_minus(long long r) { return IntPolynomial::linear(r); }

}  // namespace

TEST_CASE("small examples") {
  CHECK(chromatic_poly(gen_complete(3)) == IntPolynomial({0, 2, -3, 1}));
  CHECK(chromatic_poly(gen_cycle(4)) == IntPolynomial({0, -3, 6, -4, 1}));
  CHECK(chromatic_poly(gen_complete_bipartite(3, 3)) == IntPolynomial({0, -31, 78, -75, 36, -9, 1}));
  CHECK(chromatic_poly(Graph(1)) == IntPolynomial({0, 1}));
  CHECK(chromatic_poly(Graph(0)) == IntPolynomial({1}));
  CHECK(chromatic_poly(gen_empty(4)) == IntPolynomial::monomial(4));
}

TEST_CASE("matches brute-force colouring counts on every class up to order 5") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& g : oracle::all_classes(n)) {
      const IntPolynomial p = chromatic_poly(g);
      for (int t = 0; t <= 5; ++t) CHECK(p.evaluate(BigInt(t)) == BigInt(oracle::count_colorings(g, t)));
    }
}

TEST_CASE("random graphs up to order 9 against brute force") {
  const RngSpec rng{12};
  for (std::uint64_t i = 0; i < 60; ++i) {
    const Graph g = gen_er(6 + static_cast<int>(i % 4), 0.5, rng.derive(i));
    const IntPolynomial p = chromatic_poly(g);
    for (int t = 0; t <= 4; ++t) CHECK(p.evaluate(BigInt(t)) == BigInt(oracle::count_colorings(g, t)));
  }
}

TEST_CASE("closed forms beyond the general order cap") {
  const int n = 40;
  CHECK(chromatic_poly(gen_path(n)) == IntPolynomial::monomial(1) * pow(x_minus(1), n - 1));
  CHECK(chromatic_poly(gen_complete(25)) == IntPolynomial::falling_factorial(25));
  const IntPolynomial cyc = pow(x_minus(1), n) + x_minus(1);  // (x-1)^n + (-1)^n (x-1), n even
  CHECK(chromatic_poly(gen_cycle(n)) == cyc);
  CHECK(chromatic_poly(gen_complete_bipartite(1, 30)) == IntPolynomial::monomial(1) * pow(x_minus(1), 30));
  CHECK_THROWS(chromatic_poly(gen_er(24, 0.5, RngSpec{1})));
}

TEST_CASE("multiplicative over disjoint unions") {
  const RngSpec rng{4};
  for (std::uint64_t i = 0; i < 20; ++i) {
    const Graph a = gen_er(5, 0.5, rng.derive(2 * i));
    const Graph b = gen_er(6, 0.4, rng.derive(2 * i + 1));
    CHECK(chromatic_poly(disjoint_union(a, b)) == chromatic_poly(a) * chromatic_poly(b));
  }
}

TEST_CASE("deletion-contraction identity") {
  const RngSpec rng{21};
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Graph g = gen_er(8, 0.5, rng.derive(i));
    if (g.edge_count() == 0) continue;
    const auto [u, v] = g.edges().front();
    GraphBuilder del(g);
    del.remove_edge(u, v);
    // Contract v into u, dropping v.
    std::vector<int> keep;
    for (int w = 0; w < g.order(); ++w)
      if (w != v) keep.push_back(w);
    GraphBuilder con(g.order() - 1);
    auto idx = [&](int w) { return static_cast<int>(std::find(keep.begin(), keep.end(), w) - keep.begin()); };
    for (const auto& [a, b] : g.edges()) {
      const int a2 = a == v ? u : a, b2 = b == v ? u : b;
      if (a2 != b2) con.add_edge(idx(a2), idx(b2));
    }
    CHECK(chromatic_poly(g) == chromatic_poly(del.build()) - chromatic_poly(con.build()));
  }
}

TEST_CASE("structural coefficient facts") {
  const RngSpec rng{33};
  for (std::uint64_t i = 0; i < 40; ++i) {
    const Graph g = gen_er(9, 0.45, rng.derive(i));
    const IntPolynomial p = chromatic_poly(g);
    CHECK(p.degree() == 9);
    CHECK(p.is_monic());
    CHECK(p.coeff(8) == -BigInt(g.edge_count()));
    // Signs alternate (zeros allowed only below the lowest term).
    for (int k = p.trailing_zeros(); k <= 9; ++k) {
      const BigInt c = p.coeff(k);
      CHECK(c != 0);
      CHECK(((9 - k) % 2 == 0) == (c > 0));
    }
  }
}

TEST_CASE("independent partitions and the falling factorial basis") {
  const RngSpec rng{8};
  for (std::uint64_t i = 0; i < 30; ++i) {
    const Graph g = gen_er(7, 0.4, rng.derive(i));
    const auto ip = ip_counts(g);
    const auto brute = oracle::independent_partitions(g);
    REQUIRE(ip.size() == brute.size());
    for (std::size_t k = 0; k < ip.size(); ++k) CHECK(ip[k] == BigInt(brute[k]));
    const auto ff = falling_factorial_coefficients(chromatic_poly(g));
    for (std::size_t k = 0; k < ip.size(); ++k) CHECK(ff[k] == ip[k]);
  }
}

TEST_CASE("memo cache is used and does not change results") {
  ChromaticCache cache(1024);
  ChromaticOptions opts;
  opts.cache = &cache;
  const Graph g = gen_er(12, 0.5, RngSpec{77});
  const IntPolynomial a = chromatic_poly(g, opts);
  const IntPolynomial b = chromatic_poly(g, opts);
  CHECK(a == b);
  CHECK(a == chromatic_poly(g));
  CHECK(cache.hits() > 0);
}

TEST_CASE("colouring rate") {
  CHECK(coloring_rate(gen_complete(3), 9.0) == doctest::Approx(std::cbrt(17550.0) / 3.0).epsilon(1e-12));
  CHECK(coloring_rate(gen_complete(3), 9.0) == doctest::Approx(8.6615).epsilon(1e-4));
  CHECK(std::abs(coloring_rate(gen_complete(30), 9.0) - complete_graph_rate_limit(9.0)) <= 0.15);
  CHECK(complete_graph_rate_limit(9.0) == doctest::Approx(std::pow(9.0, 9) / (std::exp(1.0) * std::pow(8.0, 8))));
  for (int n = 1; n <= 12; ++n) CHECK(coloring_rate(gen_empty(n), 9.0) == 9.0);
  CHECK_THROWS(coloring_rate(gen_complete(3), 8.0));
  CHECK(coloring_rate(gen_complete(3), 8.0, true) > 0);
}
