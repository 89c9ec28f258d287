#include "shapegen/initializer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "shapegen/format.hpp"

namespace shapegen {

InitializationError::InitializationError(const std::string& message, double best_penalty, Valuation best_point)
    : Error(message), best_penalty_(best_penalty), best_point_(std::move(best_point)) {}

Swarm make_swarm(const ParamSpace& space, std::size_t size, Rng& rng, bool centre_first) {
  const auto& box = space.box();
  const std::size_t n = space.dimension();
  Swarm s;
  s.global_best_penalty = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < size; ++i) {
    Valuation x(n), v(n);
    for (std::size_t d = 0; d < n; ++d) {
      const double w = box[d].width();
      x[d] = centre_first && i == 0 ? box[d].lo + 0.5 * w : rng.uniform(box[d].lo, box[d].hi);
      v[d] = rng.uniform(-w, w);
    }
    const double p = space.penalty(x);
    s.position.push_back(x);
    s.velocity.push_back(std::move(v));
    s.best_position.push_back(x);
    s.best_penalty.push_back(p);
    if (p < s.global_best_penalty || s.global_best.empty()) {
      s.global_best_penalty = p;
      s.global_best = std::move(x);
    }
  }
  return s;
}

void pso_iterate(Swarm& s, const ParamSpace& space, const PsoConfig& cfg, Rng& rng) {
  const auto& box = space.box();
  for (std::size_t i = 0; i < s.position.size(); ++i) {
    auto& x = s.position[i];
    auto& v = s.velocity[i];
    for (std::size_t d = 0; d < x.size(); ++d) {
      const double r1 = rng.uniform();
      const double r2 = rng.uniform();
      v[d] = cfg.inertia * v[d] + cfg.cognitive_scale * r1 * (s.best_position[i][d] - x[d]) +
             cfg.social_scale * r2 * (s.global_best[d] - x[d]);
      x[d] = std::clamp(x[d] + v[d], box[d].lo, box[d].hi);
    }
    const double p = space.penalty(x);
    if (p < s.best_penalty[i]) {
      s.best_penalty[i] = p;
      s.best_position[i] = x;
    }
    if (p < s.global_best_penalty) {
      s.global_best_penalty = p;
      s.global_best = x;
    }
  }
}

namespace {

// (1+1)-ES minimising `f` over points accepted by `admissible`.
template <class F, class A>
double local_search(const ParamSpace& space, Valuation& x, std::size_t evaluations, Rng& rng, F f, A admissible) {
  const auto& box = space.box();
  double fx = f(x);
  double sigma = 0.1;
  const double grow = 1.5;
  const double shrink = std::pow(grow, -0.25);
  Valuation y(x.size());
  for (std::size_t k = 0; k < evaluations && fx > 0.0 && sigma > 1e-13; ++k) {
    for (std::size_t d = 0; d < x.size(); ++d)
      y[d] = std::clamp(x[d] + sigma * box[d].width() * rng.normal(), box[d].lo, box[d].hi);
    const double fy = f(y);
    if (fy <= fx && admissible(y)) {
      x.swap(y);
      fx = fy;
      sigma = std::min(sigma * grow, 1.0);
    } else {
      sigma *= shrink;
    }
  }
  return fx;
}

}  // namespace

double polish(const ParamSpace& space, Valuation& x, std::size_t evaluations, Rng& rng) {
  return local_search(
      space, x, evaluations, rng, [&](const Valuation& v) { return space.penalty(v); },
      [](const Valuation&) { return true; });
}

double centre(const ParamSpace& space, Valuation& x, double margin, std::size_t evaluations, Rng& rng) {
  return local_search(
      space, x, evaluations, rng, [&](const Valuation& v) { return space.penalty(v, margin); },
      [&](const Valuation& v) { return space.contains(v); });
}

Valuation find_initial(const ParamSpace& space, const PsoConfig& cfg, PsoTrace* trace) {
  if (cfg.swarm_size < 2) throw DomainError("swarm size must be at least 2");
  if (space.dimension() == 0) {
    if (space.contains(Valuation{})) return {};
    throw InitializationError("initialization failed: the space has no free dimension and its constraint is false",
                              space.penalty(Valuation{}), {});
  }
  PsoTrace local;
  PsoTrace& t = trace ? *trace : local;
  Rng rng(cfg.seed);
  auto inward = [&](Valuation x) {
    if (cfg.interior_margin > 0.0 && cfg.polish_evaluations > 0)
      centre(space, x, cfg.interior_margin * space.epsilon(), cfg.polish_evaluations, rng);
    return x;
  };
  double best = std::numeric_limits<double>::infinity();
  Valuation argmin;
  for (std::size_t attempt = 0; attempt <= cfg.restarts; ++attempt) {
    ++t.attempts;
    Swarm s = make_swarm(space, cfg.swarm_size, rng, attempt == 0);
    t.evaluations += cfg.swarm_size;
    for (std::size_t it = 0; s.global_best_penalty > 0.0 && it < cfg.max_iterations; ++it) {
      pso_iterate(s, space, cfg, rng);
      t.evaluations += cfg.swarm_size;
      t.global_best_history.push_back(s.global_best_penalty);
    }
    if (s.global_best_penalty == 0.0) return inward(s.global_best);
    if (cfg.polish_evaluations > 0) {
      s.global_best_penalty = polish(space, s.global_best, cfg.polish_evaluations, rng);
      t.evaluations += cfg.polish_evaluations;
      if (s.global_best_penalty == 0.0) return inward(s.global_best);
    }
    if (s.global_best_penalty < best) {
      best = s.global_best_penalty;
      argmin = s.global_best;
    }
  }
  throw InitializationError("initialization failed after " + std::to_string(cfg.restarts + 1) +
                                " swarms; best penalty " + shortest(best),
                            best, argmin);
}

}  // namespace shapegen
