#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "shapegen/error.hpp"
#include "shapegen/param_space.hpp"
#include "shapegen/rng.hpp"

namespace shapegen {

struct PsoConfig {
  std::size_t swarm_size = 10;
  std::size_t max_iterations = 10;
  double inertia = 0.5;
  double cognitive_scale = 0.5;
  double social_scale = 0.5;
  std::size_t restarts = 20;
  /// Budget of the local search run from the swarm's best point when the
  /// swarm itself ends above penalty 0; 0 disables it.
  std::size_t polish_evaluations = 20'000;
  /// Once a point of the space is found, a local search moves it (staying
  /// inside) until it is also inside the space shrunk by this fraction of
  /// epsilon, so that it does not sit on the edge of an equality band.
  /// Gives up after polish_evaluations steps; 0 disables it.
  double interior_margin = 0.5;
  std::uint64_t seed = 0;
};

/// No point of the space was found. Carries the best point seen.
class InitializationError : public Error {
 public:
  InitializationError(const std::string& message, double best_penalty, Valuation best_point);
  double best_penalty() const noexcept { return best_penalty_; }
  const Valuation& best_point() const noexcept { return best_point_; }

 private:
  double best_penalty_;
  Valuation best_point_;
};

/// Source of a starting point X0 inside a space. Alternatives (a constraint
/// solver, a user-supplied point) plug in here.
class Initializer {
 public:
  virtual ~Initializer() = default;
  /// Returns v with space.contains(v); throws InitializationError otherwise.
  virtual Valuation find(const ParamSpace& space) = 0;
};

struct Swarm {
  std::vector<Valuation> position;
  std::vector<Valuation> velocity;
  std::vector<Valuation> best_position;
  std::vector<double> best_penalty;
  Valuation global_best;
  double global_best_penalty = 0.0;
};

/// Fresh swarm: uniform positions in the box (particle 0 at the box centre
/// when `centre_first`), velocities uniform in +-(hi - lo).
Swarm make_swarm(const ParamSpace& space, std::size_t size, Rng& rng, bool centre_first = false);

/// v <- w v + c1 r1 (pbest - x) + c2 r2 (gbest - x); x <- clamp(x + v), with
/// r1, r2 uniform per coordinate. Updates personal and global bests.
void pso_iterate(Swarm& swarm, const ParamSpace& space, const PsoConfig& cfg, Rng& rng);

/// (1+1) evolution strategy on the penalty from `x` (modified in place):
/// Gaussian steps scaled by the box widths, step size adapted by the 1/5
/// success rule, positions clamped to the box. Returns the final penalty;
/// stops early at 0.
double polish(const ParamSpace& space, Valuation& x, std::size_t evaluations, Rng& rng);

/// Same search on penalty(x, margin), accepting only steps that stay inside
/// the space. `x` must be inside. Returns the final margin penalty.
double centre(const ParamSpace& space, Valuation& x, double margin, std::size_t evaluations, Rng& rng);

struct PsoTrace {
  std::size_t attempts = 0;
  std::size_t evaluations = 0;
  std::vector<double> global_best_history;  // one entry per iteration, all attempts
};

/// Particle swarm minimisation of the penalty, stopping at the first point of
/// penalty 0, which is then moved inward by centre(). Each swarm that ends
/// above 0 is followed by polish() from its best point; up to `restarts`
/// fresh swarms follow the first. Throws InitializationError with the best
/// penalty and its argmin.
Valuation find_initial(const ParamSpace& space, const PsoConfig& cfg, PsoTrace* trace = nullptr);

class PsoInitializer : public Initializer {
 public:
  explicit PsoInitializer(PsoConfig cfg) : cfg_(cfg) {}
  Valuation find(const ParamSpace& space) override { return find_initial(space, cfg_); }

 private:
  PsoConfig cfg_;
};

}  // namespace shapegen
