#pragma once

#include <cstddef>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/polynomial.hpp"

namespace shapegen {

/// g(z) = sum over words w of z^|w|, built bottom-up: eps -> 1, atom -> z,
/// concat -> product, union -> sum, star -> 1/(1 - g_inner). The regex must be
/// unambiguous for the coefficients to count words (they count derivations
/// otherwise). Throws ParseError on a nullable star argument.
RationalFunction generating_function(const Regex& r);

/// First n+1 power-series coefficients, via the linear recurrence given by
/// the denominator. Requires den(0) = 1 (guaranteed by RationalFunction).
std::vector<BigInt> taylor_coefficients(const RationalFunction& g, std::size_t n);

/// Smallest positive real root of the denominator, +infinity if there is
/// none. Located by doubling scan and bisection on a Sturm sequence of the
/// square-free part (absolute tolerance 1e-12).
double convergence_radius(const RationalFunction& g);

/// N(z) = z g'(z) / g(z), the mean word length of the Boltzmann model.
RationalFunction mean_length_function(const RationalFunction& g);

/// target*q(z) - p(z) for N = p/q; its root in [0, Rconv) is the tuned z.
Polynomial mean_length_root_polynomial(const RationalFunction& mean_length, const Rational& target);

struct TunedParams {
  double z = 0.0;
  double rconv = 0.0;  // +infinity for finite languages
  double mean_length_at_z = 0.0;
};

/// Solves N(z) = target on [0, Rconv) by bisection. A 1000-point pre-scan
/// checks that N is nondecreasing there. Throws DomainError for targets below
/// the shortest word length or beyond the reachable supremum, and when the
/// monotonicity scan fails.
TunedParams tune_z(const RationalFunction& g, double target_mean);

}  // namespace shapegen
