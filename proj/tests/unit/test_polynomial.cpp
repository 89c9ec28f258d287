#include <doctest.h>

#include "shapegen/error.hpp"
#include "shapegen/polynomial.hpp"

using namespace shapegen;

namespace {
Polynomial P(std::initializer_list<long> c) {
  std::vector<Rational> v;
  for (long x : c) v.emplace_back(x);
  return Polynomial(v);
}
}  // namespace

TEST_SUITE("polynomial") {
  TEST_CASE("normalisation strips trailing zeros") {
    CHECK(P({1, 2, 0, 0}).degree() == 1);
    CHECK(P({0, 0}).is_zero());
    CHECK(P({}).degree() == Polynomial::minus_infinity);
  }

  TEST_CASE("arithmetic") {
    const auto a = P({1, 1});   // 1 + z
    const auto b = P({1, -1});  // 1 - z
    CHECK(a * b == P({1, 0, -1}));
    CHECK(a + b == P({2}));
    CHECK(a - a == Polynomial());
    CHECK(P({0, 0, 3}).derivative() == P({0, 6}));
    CHECK(a.evaluate(2.0) == doctest::Approx(3.0));
    CHECK(a.evaluate(Rational(1, 3)) == Rational(4, 3));
  }

  TEST_CASE("divmod and gcd") {
    const auto a = P({-1, 0, 1});  // z^2 - 1
    const auto b = P({1, 1});
    auto [q, r] = Polynomial::divmod(a, b);
    CHECK(q == P({-1, 1}));
    CHECK(r.is_zero());
    CHECK(gcd(a, P({-1, 1}) * P({2, 1})) == P({-1, 1}));
    CHECK(gcd(P({1, 1}), P({2, 1})) == P({1}));
  }

  TEST_CASE("rational functions reduce and normalise den(0) = 1") {
    const RationalFunction f(P({0, 2, 2}), P({2, 2}));  // 2z(1+z) / 2(1+z)
    CHECK(f.num() == P({0, 1}));
    CHECK(f.den() == P({1}));
    const RationalFunction g(P({1}), P({2, -2}));
    CHECK(g.den() == P({1, -1}));
    CHECK(g.num().coefficient(0) == Rational(1, 2));
    CHECK_THROWS_AS(RationalFunction(P({1}), Polynomial()), DomainError);
  }

  TEST_CASE("rational function derivative") {
    const RationalFunction g(P({1}), P({1, -1}));  // 1/(1-z)
    const auto d = g.derivative();                  // 1/(1-z)^2
    CHECK(d.num() == P({1}));
    CHECK(d.den() == P({1, -2, 1}));
    CHECK((g * g) == d);
  }
}
