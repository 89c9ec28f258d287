#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "shapegen/error.hpp"
#include "shapegen/initializer.hpp"
#include "shapegen/param_space.hpp"
#include "shapegen/rng.hpp"

namespace shapegen {

enum class Variant { rejection, hr, hr_shrink, cdhr, cdhr_shrink };

std::string_view name(Variant v);
/// Accepts the names printed by name(); DomainError otherwise.
Variant parse_variant(std::string_view s);
inline bool shrinking(Variant v) { return v == Variant::hr_shrink || v == Variant::cdhr_shrink; }

struct SamplerConfig {
  Variant variant = Variant::hr_shrink;
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  std::size_t max_line_rejects = 100'000;
  std::uint64_t max_rejection_trials = 10'000'000;
  std::uint64_t seed = 0;
};

struct ChainStats {
  std::uint64_t proposals = 0;        // points tested for membership
  std::uint64_t accepted = 0;         // proposals that became the next state
  std::uint64_t line_rejections = 0;  // hit-and-run proposals rejected on the line
  double wall_time = 0.0;             // seconds

  double acceptance_rate() const { return proposals ? static_cast<double>(accepted) / proposals : 0.0; }
  ChainStats& operator+=(const ChainStats& o);
};

/// A step could not produce a point: rejection ran out of trials or a line
/// exhausted max_line_rejects.
class ChainError : public Error {
 public:
  ChainError(const std::string& message, ChainStats stats) : Error(message), stats_(stats) {}
  const ChainStats& stats() const noexcept { return stats_; }

 private:
  ChainStats stats_;
};

/// Uniform point of the box conditioned on membership.
Valuation rejection_sample(const ParamSpace& space, Rng& rng, ChainStats& stats,
                           std::uint64_t max_trials = 10'000'000);

/// [r_min, r_max] such that x + r theta lies in the box exactly for r in it.
/// DomainError when x is not strictly inside.
Interval line_box_intersection(std::span<const Interval> box, std::span<const double> x,
                               std::span<const double> theta);

/// Observer of every line proposal: step index, the current interval and
/// whether the proposal was accepted.
using LineTrace = std::function<void(std::uint64_t step, double r, const Interval& interval, bool accepted)>;

/// A single hit-and-run chain (or, for the rejection variant, a stream of
/// independent rejection draws). Keeps its state across calls so a chain can
/// be continued.
class Chain {
 public:
  /// `x0` must be in the space; a coordinate on the box boundary is moved
  /// 1e-12 of the box width inward. Ignored for the rejection variant.
  Chain(const ParamSpace& space, SamplerConfig cfg, Valuation x0);

  /// One transition; returns the new state.
  const Valuation& step();

  /// Burn-in (on the first call only), then `count` states, each after
  /// `thin` transitions.
  std::vector<Valuation> sample(std::size_t count);

  const Valuation& current() const { return x_; }
  std::uint64_t step_index() const { return step_; }
  const ChainStats& stats() const { return stats_; }
  const SamplerConfig& config() const { return cfg_; }
  void set_trace(LineTrace trace) { trace_ = std::move(trace); }

 private:
  void direction();

  const ParamSpace* space_;
  SamplerConfig cfg_;
  Rng rng_;
  Valuation x_;
  Valuation theta_;
  Valuation candidate_;
  std::uint64_t step_ = 0;
  bool burned_in_ = false;
  ChainStats stats_;
  LineTrace trace_;
};

struct ChainResult {
  std::vector<Valuation> samples;
  ChainStats stats;
};

/// Initial point from `init` (PSO with default settings and seed cfg.seed
/// when null), then Chain::sample(count). Initialization errors propagate.
ChainResult run_chain(const ParamSpace& space, const SamplerConfig& cfg, std::size_t count,
                      Initializer* init = nullptr);

}  // namespace shapegen
