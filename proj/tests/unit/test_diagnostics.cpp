#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "oracles.hpp"
#include "shapegen/diagnostics.hpp"
#include "shapegen/error.hpp"
#include "shapegen/parser.hpp"

using namespace shapegen;

TEST_SUITE("diagnostics") {
  TEST_CASE("word stats") {
    WordStats empty;
    CHECK(empty.count == 0);
    CHECK(empty.mean() == 0.0);

    WordStats same;
    for (int i = 0; i < 10; ++i) same.add(oracle::word("AB"));
    CHECK(same.variance() == 0.0);
    CHECK(same.length_histogram.size() == 1);

    const std::vector<oracle::Word> ws{oracle::word("A"), oracle::word("AB"), oracle::word("ABC"), oracle::word("AB")};
    const WordStats s = word_stats(ws);
    CHECK(s.count == 4);
    CHECK(s.mean() == 2.0);
    CHECK(s.variance() == 0.5);
    CHECK(s.frequency.at(oracle::word("AB")) == 2);
  }

  TEST_CASE("merge equals streaming") {
    Rng rng(1);
    WordStats all, a, b;
    for (int i = 0; i < 1000; ++i) {
      oracle::Word w(rng.index(6), "A");
      all.add(w);
      (i % 3 ? a : b).add(w);
    }
    a.merge(b);
    CHECK(a.count == all.count);
    CHECK(a.length_histogram == all.length_histogram);
    CHECK(a.frequency == all.frequency);
  }

  TEST_CASE("frequency cap") {
    WordStats s;
    for (std::size_t i = 0; i < WordStats::frequency_cap + 5; ++i) s.add({std::to_string(i)});
    CHECK(s.frequency.size() == WordStats::frequency_cap);
    CHECK(s.untracked == 5);
    CHECK(s.count == WordStats::frequency_cap + 5);
  }

  TEST_CASE("chi-square tail") {
    CHECK(chi_square_p(3.841458820694124, 1) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi_square_p(5.991464547107979, 2) == doctest::Approx(0.05).epsilon(1e-6));
    CHECK(chi_square_p(0.0, 3) == 1.0);
  }

  TEST_CASE("same-length test") {
    const Regex pulse = parse_regex("(A . B . C . (D . E | F))+ . A");
    WordStats fair;
    for (int i = 0; i < 500; ++i) {
      fair.add(oracle::word("ABCDEABCFA"));
      fair.add(oracle::word("ABCFABCDEA"));
    }
    CHECK(same_length_test(fair, pulse, 10).p_value > 0.99);

    WordStats biased;
    for (int i = 0; i < 500; ++i) biased.add(oracle::word(i % 3 ? "ABCDEABCFA" : "ABCFABCDEA"));
    CHECK(same_length_test(biased, pulse, 10).p_value < 0.01);

    const auto single = same_length_test(fair, pulse, 5);
    CHECK(single.skipped);
    CHECK(single.notice.find("skipped") != std::string::npos);

    WordStats few;
    few.add(oracle::word("ABCDEABCFA"));
    CHECK_THROWS_WITH_AS(same_length_test(few, pulse, 10), doctest::Contains("insufficient data"), DomainError);
  }

  TEST_CASE("p-values of uniform input are uniform") {
    // 100 seeds of truly uniform choices between 4 words; the p-values
    // should pass a Kolmogorov test against U(0, 1) at 5%.
    const Regex r = parse_regex("(A | B) . (A | B)");
    std::vector<double> ps;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      Rng rng(seed);
      WordStats s;
      for (int i = 0; i < 400; ++i) {
        oracle::Word w{rng.uniform() < 0.5 ? "A" : "B", rng.uniform() < 0.5 ? "A" : "B"};
        s.add(w);
      }
      ps.push_back(same_length_test(s, r, 2).p_value);
    }
    const double d = ks_statistic(ps, [](double x) { return std::clamp(x, 0.0, 1.0); });
    CHECK(kolmogorov_p(d * std::sqrt(100.0)) > 0.05);
  }

  TEST_CASE("Kolmogorov-Smirnov helpers") {
    CHECK(ks_statistic(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3}) == 0.0);
    CHECK(ks_statistic(std::vector<double>{1, 2}, std::vector<double>{3, 4}) == 1.0);
    CHECK(ks_statistic(std::vector<double>{0.5}, [](double x) { return x; }) == 0.5);
    CHECK(ks_critical_1pct(100, 100) == doctest::Approx(1.628 * std::sqrt(0.02)));
    CHECK(kolmogorov_p(1.3581) == doctest::Approx(0.05).epsilon(1e-3));
    CHECK(kolmogorov_p(1.6276) == doctest::Approx(0.01).epsilon(2e-3));
    CHECK(kolmogorov_p(0.0) == 1.0);
  }
}
