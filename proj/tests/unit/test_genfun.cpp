#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "shapegen/automaton.hpp"
#include "shapegen/error.hpp"
#include "shapegen/genfun.hpp"
#include "shapegen/parser.hpp"

using namespace shapegen;

namespace {

Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}

const Regex& pulse() {
  static const Regex r = parse_regex("(A . B . C . (D . E | F))+ . A");
  return r;
}

std::vector<long> as_longs(const std::vector<BigInt>& v) {
  std::vector<long> out;
  for (const auto& x : v) out.push_back(x.get_si());
  return out;
}

}  // namespace

TEST_SUITE("genfun") {
  TEST_CASE("pulse generating function") {
    const auto g = generating_function(pulse());
    CHECK(g.num() == P({0, 0, 0, 0, 0, 1, 1}));
    CHECK(g.den() == P({1, 0, 0, 0, -1, -1}));
  }

  TEST_CASE("base rules") {
    CHECK(generating_function(re::epsilon()) == RationalFunction::constant(1));
    CHECK(generating_function(re::atom("A")).num() == P({0, 1}));
    CHECK(generating_function(parse_regex("A | B")).num() == P({0, 2}));
    const auto star = generating_function(parse_regex("A*"));
    CHECK(star.num() == P({1}));
    CHECK(star.den() == P({1, -1}));
    CHECK(as_longs(taylor_coefficients(star, 4)) == std::vector<long>{1, 1, 1, 1, 1});
    CHECK(as_longs(taylor_coefficients(RationalFunction::constant(1), 3)) == std::vector<long>{1, 0, 0, 0});
  }

  TEST_CASE("pulse Taylor coefficients match brute-force counts") {
    const auto c = as_longs(taylor_coefficients(generating_function(pulse()), 12));
    CHECK(c == std::vector<long>{0, 0, 0, 0, 0, 1, 1, 0, 0, 1, 2, 1, 0});
    const auto lang = oracle::derivations(pulse(), 12);
    REQUIRE(lang);
    const auto counts = oracle::counts_by_length(*lang, 12);
    for (std::size_t n = 0; n <= 12; ++n) CHECK(static_cast<long>(counts[n]) == c[n]);
  }

  TEST_CASE("convergence radius") {
    CHECK(convergence_radius(generating_function(pulse())) == doctest::Approx(0.85667).epsilon(1e-4 / 0.85667));
    CHECK(convergence_radius(generating_function(parse_regex("A*"))) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isinf(convergence_radius(generating_function(parse_regex("A . B")))));
    // 1/(1 - 2z): radius 1/2
    CHECK(convergence_radius(generating_function(parse_regex("(A | B)*"))) == doctest::Approx(0.5).epsilon(1e-12));
  }

  TEST_CASE("radius is a root of the denominator to 1e-12") {
    const auto g = generating_function(pulse());
    const double r = convergence_radius(g);
    // 1 - z^4 - z^5 changes sign across [r - 1e-12, r + 1e-12]
    CHECK(g.den().evaluate(r - 1e-12) > 0.0);
    CHECK(g.den().evaluate(r + 1e-12) < 0.0);
  }

  TEST_CASE("mean length function") {
    const auto n = mean_length_function(generating_function(pulse()));
    // (5 + 6z - z^4 - 2z^5 - z^6) / (1 + z - z^4 - 2z^5 - z^6)
    CHECK(n.num() == P({5, 6, 0, 0, -1, -2, -1}));
    CHECK(n.den() == P({1, 1, 0, 0, -1, -2, -1}));
    CHECK(n.evaluate(0.0) == doctest::Approx(5.0));
    const auto geo = mean_length_function(generating_function(parse_regex("A*")));
    CHECK(geo.num() == P({0, 1}));
    CHECK(geo.den() == P({1, -1}));
  }

  TEST_CASE("tuning the pulse to mean length 15") {
    const auto g = generating_function(pulse());
    const TunedParams t = tune_z(g, 15.0);
    CHECK(t.z == doctest::Approx(0.78631).epsilon(1e-4 / 0.78631));
    CHECK(t.rconv == doctest::Approx(0.85667).epsilon(1e-4));
    CHECK(std::abs(mean_length_function(g).evaluate(t.z) - 15.0) < 1e-6);
    CHECK(std::abs(t.mean_length_at_z - 15.0) < 1e-9);
    // root polynomial proportional to -10 - 9z + 14z^4 + 28z^5 + 14z^6
    const Polynomial root = mean_length_root_polynomial(mean_length_function(g), Rational(15));
    const Polynomial expected = P({-10, -9, 0, 0, 14, 28, 14});
    REQUIRE(root.degree() == expected.degree());
    const Rational k = root.leading() / expected.leading();
    CHECK(root == k * expected);
    CHECK(std::abs(root.evaluate(t.z)) < 1e-9);
  }

  TEST_CASE("tuning edge cases") {
    const auto g = generating_function(pulse());
    CHECK(tune_z(g, 5.0).z == 0.0);
    CHECK_THROWS_WITH_AS(tune_z(g, 4.0), doctest::Contains("unreachable mean length"), DomainError);
    // finite language: N(z) tends to the longest word length
    const auto fin = generating_function(parse_regex("A | A . B"));
    CHECK(tune_z(fin, 1.5).z > 0.0);
    CHECK_THROWS_WITH_AS(tune_z(fin, 2.5), doctest::Contains("unreachable mean length"), DomainError);
    for (double target : {5.5, 8.0, 30.0, 200.0}) {
      const auto t = tune_z(g, target);
      CHECK(std::abs(mean_length_function(g).evaluate(t.z) - target) < 1e-6);
      CHECK(t.z < t.rconv);
    }
  }

  TEST_CASE("positivity and N >= shortest length on (0, Rconv)") {
    const auto g = generating_function(pulse());
    const auto n = mean_length_function(g);
    const double r = convergence_radius(g);
    for (int i = 1; i < 200; ++i) {
      const double z = r * i / 200.0;
      CHECK(g.evaluate(z) > 0.0);
      CHECK(n.evaluate(z) >= 5.0 - 1e-12);
    }
  }

  TEST_CASE("counting oracle on random unambiguous regexes") {
    Rng rng(101);
    int tested = 0;
    while (tested < 40) {
      const Regex r = oracle::random_regex(rng, 4, 4);
      if (check_ambiguity(r).ambiguous) continue;
      const auto lang = oracle::derivations(r, 10);
      if (!lang) continue;
      CAPTURE(print_regex(r));
      const auto counts = oracle::counts_by_length(*lang, 10);
      const auto c = taylor_coefficients(generating_function(r), 10);
      for (std::size_t n = 0; n <= 10; ++n) CHECK(c[n] == BigInt(static_cast<unsigned long>(counts[n])));
      ++tested;
    }
  }

  TEST_CASE("reduction preserves values") {
    Rng rng(7);
    const auto g = generating_function(parse_regex("(A . B | A)* . (B | eps)"));
    const double r = std::min(1.0, convergence_radius(g));
    // unreduced form of the same function: num*h / den*h with h = 1 + z
    const Polynomial h = P({1, 1});
    for (int i = 0; i < 100; ++i) {
      const double z = rng.uniform() * r;
      const double raw = (g.num() * h).evaluate(z) / (g.den() * h).evaluate(z);
      CHECK(g.evaluate(z) == doctest::Approx(raw).epsilon(1e-12));
    }
  }

  TEST_CASE("nullable star is rejected") {
    CHECK_THROWS_AS(generating_function(re::star(re::star(re::atom("A")))), ParseError);
  }
}
