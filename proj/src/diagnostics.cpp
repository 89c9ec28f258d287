#include "shapegen/diagnostics.hpp"

#include <algorithm>
#include <boost/math/distributions/chi_squared.hpp>
#include <cmath>

#include "shapegen/automaton.hpp"
#include "shapegen/error.hpp"
#include "shapegen/genfun.hpp"

namespace shapegen {

void WordStats::add(const std::vector<std::string>& word) {
  ++count;
  ++length_histogram[word.size()];
  if (auto it = frequency.find(word); it != frequency.end()) {
    ++it->second;
  } else if (frequency.size() < frequency_cap) {
    frequency.emplace(word, 1);
  } else {
    ++untracked;
  }
}

void WordStats::merge(const WordStats& o) {
  count += o.count;
  for (const auto& [n, c] : o.length_histogram) length_histogram[n] += c;
  untracked += o.untracked;
  for (const auto& [w, c] : o.frequency) {
    if (auto it = frequency.find(w); it != frequency.end()) {
      it->second += c;
    } else if (frequency.size() < frequency_cap) {
      frequency.emplace(w, c);
    } else {
      untracked += c;
    }
  }
}

double WordStats::mean() const {
  if (count == 0) return 0.0;
  long double sum = 0;
  for (const auto& [n, c] : length_histogram) sum += static_cast<long double>(n) * c;
  return static_cast<double>(sum / count);
}

double WordStats::variance() const {
  if (count == 0) return 0.0;
  const double m = mean();
  long double sum = 0;
  for (const auto& [n, c] : length_histogram) sum += (n - m) * (n - m) * static_cast<long double>(c);
  return static_cast<double>(sum / count);
}

double chi_square_p(double statistic, std::size_t dof) {
  if (dof == 0) return 1.0;
  if (!(statistic > 0.0)) return 1.0;
  if (!std::isfinite(statistic)) return 0.0;
  boost::math::chi_squared dist(static_cast<double>(dof));
  return boost::math::cdf(boost::math::complement(dist, statistic));
}

ChiSquare chi_square(std::span<const double> observed, std::span<const double> expected) {
  if (observed.size() != expected.size()) throw DomainError("chi-square: size mismatch");
  ChiSquare out;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double d = observed[i] - expected[i];
    out.statistic += d * d / expected[i];
  }
  out.dof = observed.empty() ? 0 : observed.size() - 1;
  out.p_value = chi_square_p(out.statistic, out.dof);
  return out;
}

ChiSquare same_length_test(const WordStats& stats, const Regex& r, std::size_t n) {
  const auto words = words_of_length(r, n);
  if (words.size() < 2) {
    ChiSquare out;
    out.skipped = true;
    out.notice = "language has " + std::to_string(words.size()) + " word(s) of length " + std::to_string(n) +
                 "; same-length test skipped";
    return out;
  }
  if (stats.untracked > 0) throw DomainError("word frequency map was truncated; cannot test same-length uniformity");
  std::vector<double> observed;
  double total = 0.0;
  for (const auto& w : words) {
    auto it = stats.frequency.find(w);
    observed.push_back(it == stats.frequency.end() ? 0.0 : static_cast<double>(it->second));
    total += observed.back();
  }
  const double e = total / static_cast<double>(words.size());
  if (e < 5.0)
    throw DomainError("insufficient data: expected count " + std::to_string(e) + " per word of length " +
                      std::to_string(n) + " is below 5");
  const std::vector<double> expected(words.size(), e);
  return chi_square(observed, expected);
}

ChiSquare length_law_test(const WordStats& stats, const RationalFunction& g, double z) {
  if (stats.count == 0) throw DomainError("insufficient data: no words");
  const double gz = g.evaluate(z);
  const double total = static_cast<double>(stats.count);
  std::size_t max_len = stats.length_histogram.empty() ? 0 : stats.length_histogram.rbegin()->first;
  max_len = std::max<std::size_t>(max_len, 64);
  // Extend until the remaining mass is negligible (or a hard cap).
  std::vector<BigInt> c;
  double mass = 0.0;
  for (;;) {
    c = taylor_coefficients(g, max_len);
    mass = 0.0;
    for (std::size_t n = 0; n <= max_len; ++n) mass += c[n].get_d() * std::pow(z, static_cast<double>(n)) / gz;
    if (mass > 1.0 - 1e-9 || max_len >= 4096) break;
    max_len *= 2;
  }
  std::vector<double> observed, expected;
  double rest_observed = total;
  double rest_expected = total;
  for (std::size_t n = 0; n <= max_len; ++n) {
    const double e = total * c[n].get_d() * std::pow(z, static_cast<double>(n)) / gz;
    if (e < 5.0) continue;
    auto it = stats.length_histogram.find(n);
    const double o = it == stats.length_histogram.end() ? 0.0 : static_cast<double>(it->second);
    observed.push_back(o);
    expected.push_back(e);
    rest_observed -= o;
    rest_expected -= e;
  }
  if (rest_expected >= 5.0 || rest_observed > 0.5) {
    observed.push_back(rest_observed);
    expected.push_back(std::max(rest_expected, 1e-300));
  }
  if (observed.size() < 2) {
    ChiSquare out;
    out.skipped = true;
    out.notice = "fewer than two length bins with expected count >= 5";
    return out;
  }
  return chi_square(observed, expected);
}

double ks_statistic(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw DomainError("insufficient data: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    d = std::max(d, std::abs(i / na - j / nb));
  }
  return d;
}

double ks_statistic(std::vector<double> a, const std::function<double(double)>& cdf) {
  if (a.empty()) throw DomainError("insufficient data: empty sample");
  std::sort(a.begin(), a.end());
  const double n = static_cast<double>(a.size());
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double f = cdf(a[i]);
    d = std::max({d, (i + 1) / n - f, f - i / n});
  }
  return d;
}

double ks_critical_1pct(std::size_t n, std::size_t m) {
  const double nn = static_cast<double>(n);
  const double mm = static_cast<double>(m);
  return 1.628 * std::sqrt((nn + mm) / (nn * mm));
}

double kolmogorov_p(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 0.2) return 1.0;  // series converges slowly; P is 1 to double precision
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    const double term = std::exp(-2.0 * k * k * lambda * lambda);
    sum += (k % 2 ? 1.0 : -1.0) * term;
    if (term < 1e-17) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

}  // namespace shapegen
