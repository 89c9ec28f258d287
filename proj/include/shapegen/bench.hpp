#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "shapegen/param_space.hpp"
#include "shapegen/point_sampler.hpp"

namespace shapegen {

/// c2^2 < sum x_i^2 < c1^2 inside the box (-c, c)^n.
struct RingSpec {
  std::size_t n = 2;
  double c1 = 1.0;
  double c2 = 0.9;
  double c = 1.0;
};

/// DomainError unless n >= 1 and c >= c1 > c2 >= 0.
ParamSpace make_ring_space(const RingSpec& r);

/// Volume of the n-ball of radius r.
double ball_volume(std::size_t n, double r);

/// vol(ring) / vol(box).
double ring_volume_ratio(const RingSpec& r);

struct BenchOptions {
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  /// Rejection is skipped above this dimension.
  std::size_t rejection_max_dims = 3;
  std::uint64_t max_rejection_trials = 10'000'000;
  PsoConfig pso{};
};

struct BenchResult {
  Variant variant = Variant::hr_shrink;
  std::size_t repeat = 0;
  std::size_t samples = 0;  // emitted; 0 on failure
  double wall_time = 0.0;   // seconds, initialization included
  double acceptance_rate = 0.0;
  std::uint64_t proposals = 0;
  std::uint64_t accepted = 0;
  std::string status = "ok";  // ok | init_failed | chain_failed | skipped
  std::string message;
  std::vector<Valuation> points;  // kept only when requested
};

struct BenchSummary {
  Variant variant = Variant::hr_shrink;
  std::size_t ok_repeats = 0;
  double mean_acceptance = 0.0;
  double sd_acceptance = 0.0;
  double mean_time = 0.0;
  double sd_time = 0.0;
};

/// Every (variant, repeat) cell with seeds derived from `seed`. Failures are
/// recorded in the cell's status rather than thrown.
std::vector<BenchResult> run_bench(const RingSpec& r, const std::vector<Variant>& variants, std::size_t samples,
                                   std::size_t repeats, std::uint64_t seed, const BenchOptions& opts = {},
                                   bool keep_points = false);

/// Mean and sample standard deviation over the successful repeats, one entry
/// per variant in first-appearance order.
std::vector<BenchSummary> summarize(const std::vector<BenchResult>& results);

std::string bench_csv(const RingSpec& r, const std::vector<BenchResult>& results);
std::string bench_json(const RingSpec& r, const std::vector<BenchResult>& results);

struct UniformityReport {
  double angular_p = -1.0;  // 2-D only: chi-square over equal-angle bins
  double radius_ks = 0.0;   // against the analytic radius CDF
  double radius_p = 1.0;
  std::vector<double> per_dim_ks;  // against the reference sample
  double ks_critical = 0.0;        // 1% critical value for per_dim_ks
};

/// Needs at least 10 * bins samples. `reference` is typically a rejection
/// run on the same ring; per_dim_ks is left empty when it is.
UniformityReport uniformity_report(const std::vector<Valuation>& samples, const RingSpec& r, std::size_t bins,
                                   const std::vector<Valuation>& reference = {});

}  // namespace shapegen
