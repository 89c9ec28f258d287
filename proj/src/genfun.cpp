#include "shapegen/genfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "shapegen/error.hpp"
#include "shapegen/format.hpp"

namespace shapegen {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

int sign(const Rational& x) { return sgn(x); }

// Sturm sequence of a square-free polynomial.
std::vector<Polynomial> sturm_chain(const Polynomial& p) {
  std::vector<Polynomial> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    Polynomial r = Polynomial::divmod(chain[chain.size() - 2], chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(-r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

int sign_changes(const std::vector<int>& signs) {
  int changes = 0;
  int prev = 0;
  for (int s : signs) {
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

int variations_at(const std::vector<Polynomial>& chain, const Rational& x) {
  std::vector<int> signs;
  signs.reserve(chain.size());
  for (const auto& p : chain) signs.push_back(sign(p.evaluate(x)));
  return sign_changes(signs);
}

int variations_at_infinity(const std::vector<Polynomial>& chain) {
  std::vector<int> signs;
  for (const auto& p : chain) signs.push_back(sign(p.leading()));
  return sign_changes(signs);
}

}  // namespace

RationalFunction generating_function(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::epsilon: return RationalFunction::constant(1);
    case RegexNode::Kind::atom:
      return RationalFunction(Polynomial::monomial(1, 1), Polynomial::constant(1));
    case RegexNode::Kind::cat: return generating_function(r->left) * generating_function(r->right);
    case RegexNode::Kind::alt: return generating_function(r->left) + generating_function(r->right);
    case RegexNode::Kind::star: {
      if (nullable(r->left)) throw ParseError("nullable star argument");
      RationalFunction inner = generating_function(r->left);
      return (RationalFunction::constant(1) - inner).reciprocal();
    }
  }
  return {};
}

std::vector<BigInt> taylor_coefficients(const RationalFunction& g, std::size_t n) {
  const Polynomial& p = g.num();
  const Polynomial& q = g.den();
  const int dq = q.degree();
  std::vector<Rational> c(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational acc = p.coefficient(k);
    for (int j = 1; j <= dq && static_cast<std::size_t>(j) <= k; ++j) acc -= q.coefficient(j) * c[k - j];
    c[k] = acc;
  }
  std::vector<BigInt> out;
  out.reserve(c.size());
  for (const auto& x : c) {
    if (x.get_den() != 1) throw DomainError("non-integral series coefficient " + x.get_str());
    out.push_back(x.get_num());
  }
  return out;
}

double convergence_radius(const RationalFunction& g) {
  const Polynomial& den = g.den();
  if (den.degree() <= 0) return kInf;
  Polynomial square_free = Polynomial::divmod(den, gcd(den, den.derivative())).first;
  std::vector<Polynomial> chain = sturm_chain(square_free);

  const int at_zero = variations_at(chain, Rational(0));
  if (at_zero - variations_at_infinity(chain) == 0) return kInf;
  auto roots_up_to = [&](const Rational& x) { return at_zero - variations_at(chain, x); };

  Rational lo = 0;
  Rational hi = 1;
  while (roots_up_to(hi) == 0) {
    lo = hi;
    hi *= 2;
  }
  // Invariant: no root in (0, lo], at least one root in (lo, hi].
  const Rational tol(BigInt(1), BigInt(1) << 42);
  while (hi - lo > tol) {
    Rational mid = (lo + hi) / 2;
    if (roots_up_to(mid) > 0) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  if (square_free.evaluate(hi) == 0) return hi.get_d();
  Rational mid = (lo + hi) / 2;
  return mid.get_d();
}

RationalFunction mean_length_function(const RationalFunction& g) {
  const Polynomial& p = g.num();
  const Polynomial& q = g.den();
  if (p.is_zero()) throw DomainError("mean length of the empty language");
  Polynomial z = Polynomial::monomial(1, 1);
  return RationalFunction(z * (p.derivative() * q - p * q.derivative()), p * q);
}

Polynomial mean_length_root_polynomial(const RationalFunction& mean_length, const Rational& target) {
  return target * mean_length.den() - mean_length.num();
}

TunedParams tune_z(const RationalFunction& g, double target_mean) {
  RationalFunction n_of_z = mean_length_function(g);
  const double shortest_len = n_of_z.evaluate(0.0);
  const double rconv = convergence_radius(g);
  if (!(target_mean >= shortest_len - 1e-12))
    throw DomainError("unreachable mean length " + shortest(target_mean) + ": below the shortest word length " +
                      shortest(shortest_len));
  if (target_mean <= shortest_len + 1e-12) return {0.0, rconv, shortest_len};

  double upper;
  if (std::isfinite(rconv)) {
    upper = rconv * (1.0 - 1e-9);
  } else {
    upper = 1.0;
    while (n_of_z.evaluate(upper) < target_mean && upper < 1e12) upper *= 2.0;
  }
  if (!(n_of_z.evaluate(upper) >= target_mean))
    throw DomainError("unreachable mean length " + shortest(target_mean) + ": supremum on [0, Rconv) is " +
                      shortest(n_of_z.evaluate(upper)));

  constexpr int kGrid = 1000;
  double prev = n_of_z.evaluate(0.0);
  for (int k = 1; k <= kGrid; ++k) {
    double z = upper * k / kGrid;
    double cur = n_of_z.evaluate(z);
    if (cur < prev - 1e-9 * std::max(1.0, std::abs(prev)))
      throw DomainError("mean length is not monotone on [0, Rconv): N(" + shortest(z) + ") < N(previous grid point)");
    prev = cur;
  }

  double lo = 0.0;
  double hi = upper;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (n_of_z.evaluate(mid) < target_mean) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  double z = (target_mean - n_of_z.evaluate(lo) <= n_of_z.evaluate(hi) - target_mean) ? lo : hi;
  return {z, rconv, n_of_z.evaluate(z)};
}

}  // namespace shapegen
