#include "shapegen/point_sampler.hpp"

#include <chrono>
#include <cmath>
#include <limits>

namespace shapegen {
namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

}  // namespace

std::string_view name(Variant v) {
  switch (v) {
    case Variant::rejection: return "rejection";
    case Variant::hr: return "hr";
    case Variant::hr_shrink: return "hr_shrink";
    case Variant::cdhr: return "cdhr";
    case Variant::cdhr_shrink: return "cdhr_shrink";
  }
  return "?";
}

Variant parse_variant(std::string_view s) {
  for (Variant v : {Variant::rejection, Variant::hr, Variant::hr_shrink, Variant::cdhr, Variant::cdhr_shrink})
    if (name(v) == s) return v;
  throw DomainError("unknown sampler variant '" + std::string(s) +
                    "' (expected rejection, hr, hr_shrink, cdhr or cdhr_shrink)");
}

ChainStats& ChainStats::operator+=(const ChainStats& o) {
  proposals += o.proposals;
  accepted += o.accepted;
  line_rejections += o.line_rejections;
  wall_time += o.wall_time;
  return *this;
}

Valuation rejection_sample(const ParamSpace& space, Rng& rng, ChainStats& stats, std::uint64_t max_trials) {
  const auto& box = space.box();
  Valuation x(space.dimension());
  for (std::uint64_t trial = 0; trial < max_trials; ++trial) {
    for (std::size_t d = 0; d < x.size(); ++d) x[d] = rng.uniform(box[d].lo, box[d].hi);
    ++stats.proposals;
    if (space.contains(x)) {
      ++stats.accepted;
      return x;
    }
  }
  throw ChainError("acceptance too low: no point found in " + std::to_string(max_trials) + " rejection trials", stats);
}

Interval line_box_intersection(std::span<const Interval> box, std::span<const double> x,
                               std::span<const double> theta) {
  if (box.size() != x.size() || x.size() != theta.size()) throw DomainError("dimension mismatch in line intersection");
  Interval r{-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  for (std::size_t d = 0; d < x.size(); ++d) {
    if (!(box[d].lo < x[d] && x[d] < box[d].hi)) throw DomainError("point is not strictly inside the box");
    if (theta[d] == 0.0) continue;
    const double t1 = (box[d].lo - x[d]) / theta[d];
    const double t2 = (box[d].hi - x[d]) / theta[d];
    r.lo = std::max(r.lo, std::min(t1, t2));
    r.hi = std::min(r.hi, std::max(t1, t2));
  }
  return r;
}

Chain::Chain(const ParamSpace& space, SamplerConfig cfg, Valuation x0)
    : space_(&space), cfg_(cfg), rng_(cfg.seed), x_(std::move(x0)) {
  if (cfg_.thin == 0) throw DomainError("thin must be at least 1");
  if (cfg_.variant == Variant::rejection) {
    x_.assign(space.dimension(), 0.0);
    return;
  }
  if (x_.size() != space.dimension()) throw DomainError("initial point has the wrong dimension");
  const auto& box = space.box();
  // points on the box boundary (as PSO may return) move just inside
  for (std::size_t d = 0; d < x_.size(); ++d) {
    if (x_[d] < box[d].lo || x_[d] > box[d].hi) throw DomainError("initial point is outside the box");
    const double nudge = 1e-12 * box[d].width();
    if (x_[d] == box[d].lo) x_[d] = box[d].lo + nudge;
    if (x_[d] == box[d].hi) x_[d] = box[d].hi - nudge;
  }
  if (!space.contains(x_)) throw DomainError("initial point is not in the space");
  theta_.resize(x_.size());
}

void Chain::direction() {
  const std::size_t n = x_.size();
  if (cfg_.variant == Variant::cdhr || cfg_.variant == Variant::cdhr_shrink) {
    std::fill(theta_.begin(), theta_.end(), 0.0);
    theta_[rng_.index(n)] = 1.0;
    return;
  }
  double norm = 0.0;
  do {
    norm = 0.0;
    for (auto& t : theta_) {
      t = rng_.normal();
      norm += t * t;
    }
  } while (norm == 0.0);
  norm = std::sqrt(norm);
  for (auto& t : theta_) t /= norm;
}

const Valuation& Chain::step() {
  if (cfg_.variant == Variant::rejection) {
    x_ = rejection_sample(*space_, rng_, stats_, cfg_.max_rejection_trials);
    ++step_;
    return x_;
  }
  if (x_.empty()) {
    ++step_;
    return x_;
  }
  direction();
  Interval line = line_box_intersection(space_->box(), x_, theta_);
  const bool shrink = shrinking(cfg_.variant);
  candidate_.resize(x_.size());
  for (std::size_t tries = 0; tries < cfg_.max_line_rejects; ++tries) {
    const double r = rng_.uniform(line.lo, line.hi);
    for (std::size_t d = 0; d < x_.size(); ++d) candidate_[d] = x_[d] + r * theta_[d];
    ++stats_.proposals;
    const bool ok = space_->contains(candidate_);
    if (trace_) trace_(step_, r, line, ok);
    if (ok) {
      ++stats_.accepted;
      x_.swap(candidate_);
      ++step_;
      return x_;
    }
    ++stats_.line_rejections;
    if (shrink) (r < 0.0 ? line.lo : line.hi) = r;
  }
  throw ChainError("no point accepted on the line after " + std::to_string(cfg_.max_line_rejects) +
                       " proposals (step " + std::to_string(step_) + ")",
                   stats_);
}

std::vector<Valuation> Chain::sample(std::size_t count) {
  const auto t0 = Clock::now();
  std::vector<Valuation> out;
  out.reserve(count);
  try {
    if (!burned_in_) {
      if (cfg_.variant != Variant::rejection)
        for (std::size_t i = 0; i < cfg_.burn_in; ++i) step();
      burned_in_ = true;
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t steps = cfg_.variant == Variant::rejection ? 1 : cfg_.thin;
      for (std::size_t i = 0; i < steps; ++i) step();
      out.push_back(x_);
    }
  } catch (...) {
    stats_.wall_time += seconds_since(t0);
    throw;
  }
  stats_.wall_time += seconds_since(t0);
  return out;
}

ChainResult run_chain(const ParamSpace& space, const SamplerConfig& cfg, std::size_t count, Initializer* init) {
  if (count == 0) throw DomainError("count must be at least 1");
  Valuation x0;
  if (cfg.variant != Variant::rejection) {
    if (init) {
      x0 = init->find(space);
    } else {
      PsoConfig pso;
      pso.seed = derive_seed(cfg.seed, seed_stream::pso);
      x0 = find_initial(space, pso);
    }
  }
  Chain chain(space, cfg, std::move(x0));
  ChainResult res;
  res.samples = chain.sample(count);
  res.stats = chain.stats();
  return res;
}

}  // namespace shapegen
