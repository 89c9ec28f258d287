#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

namespace shapegen {

using Rational = mpq_class;
using BigInt = mpz_class;

/// Dense univariate polynomial in z with exact rational coefficients
/// (index = degree, trailing zeros stripped).
class Polynomial {
 public:
  /// Degree of the zero polynomial.
  static constexpr int minus_infinity = std::numeric_limits<int>::min();

  Polynomial() = default;
  explicit Polynomial(std::vector<Rational> coefficients);
  static Polynomial constant(const Rational& c);
  static Polynomial monomial(const Rational& c, std::size_t degree);

  bool is_zero() const { return coeffs_.empty(); }
  int degree() const { return is_zero() ? minus_infinity : static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Rational>& coefficients() const { return coeffs_; }
  Rational coefficient(std::size_t i) const { return i < coeffs_.size() ? coeffs_[i] : Rational(0); }
  const Rational& leading() const { return coeffs_.back(); }

  Polynomial derivative() const;
  Polynomial monic() const;
  double evaluate(double z) const;
  Rational evaluate(const Rational& z) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Rational& c, const Polynomial& p);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.coeffs_ == b.coeffs_; }

  /// Euclidean division: a = q*b + r with deg r < deg b. `b` must be nonzero.
  static std::pair<Polynomial, Polynomial> divmod(const Polynomial& a, const Polynomial& b);

  std::string to_string() const;

 private:
  void normalize();
  std::vector<Rational> coeffs_;
};

/// Monic greatest common divisor (zero if both are zero).
Polynomial gcd(Polynomial a, Polynomial b);

/// num/den, gcd-reduced and scaled so that den(0) = 1.
class RationalFunction {
 public:
  RationalFunction() : num_(Polynomial::constant(0)), den_(Polynomial::constant(1)) {}
  /// Throws DomainError when den is zero or when den(0) = 0 after reduction.
  RationalFunction(Polynomial num, Polynomial den);
  static RationalFunction constant(const Rational& c);

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }

  double evaluate(double z) const;
  RationalFunction derivative() const;
  /// 1/f; f must not be the zero function.
  RationalFunction reciprocal() const;

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  Polynomial num_;
  Polynomial den_;
};

}  // namespace shapegen
