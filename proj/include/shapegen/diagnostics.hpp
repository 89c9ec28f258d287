#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"
#include "shapegen/polynomial.hpp"

namespace shapegen {

/// Streaming summary of sampled words.
struct WordStats {
  static constexpr std::size_t frequency_cap = 10'000;

  std::uint64_t count = 0;
  std::map<std::size_t, std::uint64_t> length_histogram;
  /// Per-word counts; words first seen after `frequency_cap` distinct ones
  /// are only counted in `untracked`.
  std::map<std::vector<std::string>, std::uint64_t> frequency;
  std::uint64_t untracked = 0;

  void add(const std::vector<std::string>& word);
  void merge(const WordStats& other);
  /// sum n * hist(n) / count; 0 when empty.
  double mean() const;
  /// Population variance of the length; 0 when empty.
  double variance() const;
};

template <class Range>
WordStats word_stats(const Range& words) {
  WordStats s;
  for (const auto& w : words) s.add(w);
  return s;
}

struct ChiSquare {
  bool skipped = false;
  std::string notice;
  double statistic = 0.0;
  std::size_t dof = 0;
  double p_value = 1.0;
};

/// Upper tail P(X >= x) of a chi-square distribution.
double chi_square_p(double statistic, std::size_t dof);

/// Chi-square test of `observed` against `expected` counts (same size).
ChiSquare chi_square(std::span<const double> observed, std::span<const double> expected);

/// Uniformity of the observed words of length n over the exact set of such
/// words in L(r). Skipped (with a notice) when the language has fewer than
/// two words of that length. DomainError when an expected count is below 5
/// or the frequency map was truncated.
ChiSquare same_length_test(const WordStats& stats, const Regex& r, std::size_t n);

/// Observed length histogram against c_n z^n / g(z). Lengths with expected
/// count below 5 are pooled into one bin.
ChiSquare length_law_test(const WordStats& stats, const RationalFunction& g, double z);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

/// One-sample statistic against a continuous CDF.
double ks_statistic(std::vector<double> a, const std::function<double(double)>& cdf);

/// Asymptotic 1% critical value 1.628 sqrt((n + m) / (n m)).
double ks_critical_1pct(std::size_t n, std::size_t m);

/// P(K > lambda) for the Kolmogorov distribution,
/// 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2).
double kolmogorov_p(double lambda);

}  // namespace shapegen
