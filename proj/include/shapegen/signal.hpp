#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"

namespace shapegen {

/// Sampled piecewise signal on [0, total_duration).
struct Signal {
  std::string variable = "x";
  std::vector<double> t;
  std::vector<double> x;
  double total_duration = 0.0;
  std::vector<double> boundaries;  // segment start times, then the total duration

  std::size_t size() const { return t.size(); }
};

/// lin: a t + b; exp: a + b e^{c t}; sin: a sin(b t + c) + e. `params`
/// excludes the duration.
double evaluate_shape(ShapeKind kind, std::span<const double> params, double t);

struct RenderOptions {
  double dt = 0.01;
  /// Shift each segment by a constant so it starts where the previous one
  /// ends (equivalent to overwriting the segment's additive offset).
  bool project_continuity = false;
};

/// Concatenates the atoms of `word`, each evaluated in local time on
/// [0, d). Samples lie on the global grid k*dt plus every segment start.
/// Durations are summed exactly. Throws DomainError for a nonpositive
/// duration, an unknown atom or a missing parameter value.
Signal render(const ShapeExpr& e, std::span<const std::string> word, const std::map<std::string, double>& valuation,
              const RenderOptions& opts = {});

/// |left limit of segment i at its end - value of segment i+1 at 0| for each
/// internal boundary, evaluated analytically.
std::vector<double> boundary_jumps(const ShapeExpr& e, std::span<const std::string> word,
                                   const std::map<std::string, double>& valuation);

/// Header `t,<variable>`, times with 9 significant digits, values in
/// shortest round-trip form.
std::string to_csv(const Signal& s);

/// {"word": [...], "valuation": {...}, "samples": [[t, x], ...]}.
std::string to_json(const Signal& s, std::span<const std::string> word,
                    const std::map<std::string, double>& valuation);

}  // namespace shapegen
