#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shapegen/ast.hpp"

namespace shapegen {

inline constexpr double default_epsilon = 1e-3;

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double width() const { return hi - lo; }
};

/// Valuation of the free dimensions of a ParamSpace, in dims() order.
using Valuation = std::vector<double>;

/// Executable form of a constraint.
///
/// Top-level conjuncts `p == c` with c constant pin p. A top-level `p == e`
/// where p has no interval clause and e does not (transitively) mention p
/// defines p := e. Both remove p from the sampled dimensions. Every other
/// equality is relaxed to |lhs - rhs| < epsilon. Interval clauses stay in the
/// predicate (open) and their intersection per parameter forms the box.
class ParamSpace {
 public:
  std::size_t dimension() const { return dims_.size(); }
  const std::vector<std::string>& dims() const { return dims_; }
  /// Every parameter, free or eliminated.
  const std::vector<std::string>& parameters() const { return params_; }
  const std::vector<Interval>& box() const { return box_; }
  double epsilon() const { return epsilon_; }

  /// Constant pins, by name.
  std::map<std::string, double> pinned() const;
  /// Definitional substitutions in evaluation order, as (name, expression).
  std::vector<std::pair<std::string, Arith>> definitions() const;

  /// Relaxed membership. Strict comparisons exclude the boundary; NaN from
  /// an overflowing exp compares false. Throws DomainError on a dimension
  /// mismatch.
  bool contains(std::span<const double> v) const;

  /// 0 exactly when contains(v); otherwise the summed violation margins,
  /// with disjunctions contributing their smallest branch.
  double penalty(std::span<const double> v) const;

  /// Penalty of the set shrunk by `margin`: comparisons must hold with at
  /// least that much room and relaxed equalities within epsilon - margin.
  /// Interval clauses are not tightened (the box handles them).
  double penalty(std::span<const double> v, double margin) const;

  /// Values of parameters() with pins and definitions reinstated.
  std::vector<double> full_valuation(std::span<const double> v) const;
  std::map<std::string, double> named_valuation(std::span<const double> v) const;

 private:
  friend ParamSpace compile(const Constraint&, double, const std::vector<std::string>&);

  struct Expr {
    ArithNode::Kind kind;
    double value = 0.0;
    std::size_t slot = 0;
    int exponent = 0;
    std::size_t lhs = 0;
    std::size_t rhs = 0;
  };
  struct Cond {
    enum class Kind { constant, conj, disj, cmp, relaxed_eq, in } kind;
    bool value = true;
    CmpOp op = CmpOp::lt;
    std::size_t lhs = 0;  // Expr index, or Cond index for conj / disj
    std::size_t rhs = 0;
    std::size_t slot = 0;
    double lo = 0.0;
    double hi = 0.0;
  };
  struct Definition {
    std::size_t slot;
    std::size_t expr;
    Arith source;
  };

  double eval(std::size_t e, std::span<const double> full) const;
  bool holds(std::size_t c, std::span<const double> full) const;
  double violation(std::size_t c, std::span<const double> full, double margin = 0.0) const;
  void check_size(std::size_t n) const;
  void fill(std::span<const double> v, std::vector<double>& full) const;

  std::vector<std::string> params_;
  std::vector<std::string> dims_;
  std::vector<std::size_t> dim_slot_;
  std::vector<Interval> box_;
  double epsilon_ = default_epsilon;
  std::vector<std::pair<std::size_t, double>> pins_;
  std::vector<Definition> defs_;  // topologically ordered
  std::vector<Expr> exprs_;
  std::vector<Cond> conds_;
  std::size_t root_ = 0;
  bool identity_layout_ = false;  // dims == params, no copy needed
};

/// Compiles `gamma` with equality half-width `eps` > 0. `order` fixes the
/// parameter order (parameters missing from it are appended in order of
/// appearance). Throws DomainError on unbounded free parameters,
/// contradictory pins and empty intervals.
ParamSpace compile(const Constraint& gamma, double eps = default_epsilon, const std::vector<std::string>& order = {});

/// Uses the spec's declared parameter order and its `epsilon` statement
/// unless `eps` overrides it.
ParamSpace compile(const ShapeExpr& e, std::optional<double> eps = std::nullopt);

/// Evaluates the original constraint over named values with equalities
/// relaxed to |lhs - rhs| < eps. Independent of compile(); used to re-check
/// valuations. Throws DomainError for a missing parameter.
bool satisfies_relaxed(const Constraint& gamma, const std::map<std::string, double>& values, double eps);

/// Evaluates arithmetic over named values (DomainError when one is missing).
double evaluate(const Arith& a, const std::map<std::string, double>& values);

}  // namespace shapegen
