#include "shapegen/param_space.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>
#include <set>
#include <unordered_map>

#include "shapegen/error.hpp"
#include "shapegen/format.hpp"

namespace shapegen {
namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

bool has_params(const Arith& a) {
  std::vector<std::string> ps;
  collect_params(a, ps);
  return !ps.empty();
}

double constant_value(const Arith& a) { return evaluate(a, {}); }

bool compare(CmpOp op, double l, double r) {
  switch (op) {
    case CmpOp::lt: return l < r;
    case CmpOp::le: return l <= r;
    case CmpOp::gt: return l > r;
    case CmpOp::ge: return l >= r;
    case CmpOp::eq: return l == r;
  }
  return false;
}

// Violation margin of a comparison known not to hold.
double margin(CmpOp op, double l, double r) {
  switch (op) {
    case CmpOp::lt:
    case CmpOp::le: return l - r;
    case CmpOp::gt:
    case CmpOp::ge: return r - l;
    case CmpOp::eq: return std::abs(l - r);
  }
  return inf;
}

// Any violated atom contributes a strictly positive amount, so a total of 0
// means every atom holds.
double positive(double m) {
  if (std::isnan(m)) return inf;
  return std::max(m, DBL_MIN);
}

}  // namespace

double evaluate(const Arith& a, const std::map<std::string, double>& values) {
  switch (a->kind) {
    case ArithNode::Kind::number: return a->value;
    case ArithNode::Kind::param: {
      auto it = values.find(a->name);
      if (it == values.end()) throw DomainError("no value for parameter '" + a->name + "'");
      return it->second;
    }
    case ArithNode::Kind::add: return evaluate(a->lhs, values) + evaluate(a->rhs, values);
    case ArithNode::Kind::sub: return evaluate(a->lhs, values) - evaluate(a->rhs, values);
    case ArithNode::Kind::mul: return evaluate(a->lhs, values) * evaluate(a->rhs, values);
    case ArithNode::Kind::neg: return -evaluate(a->lhs, values);
    case ArithNode::Kind::pow: return std::pow(evaluate(a->lhs, values), a->exponent);
    case ArithNode::Kind::exp: return std::exp(evaluate(a->lhs, values));
  }
  return 0.0;
}

bool satisfies_relaxed(const Constraint& c, const std::map<std::string, double>& values, double eps) {
  switch (c->kind) {
    case ConstraintNode::Kind::conj:
      return satisfies_relaxed(c->lhs, values, eps) && satisfies_relaxed(c->rhs, values, eps);
    case ConstraintNode::Kind::disj:
      return satisfies_relaxed(c->lhs, values, eps) || satisfies_relaxed(c->rhs, values, eps);
    case ConstraintNode::Kind::in: {
      const double v = evaluate(ar::param(c->param), values);
      return c->lo < v && v < c->hi;
    }
    case ConstraintNode::Kind::cmp: {
      const double l = evaluate(c->left, values);
      const double r = evaluate(c->right, values);
      if (c->op == CmpOp::eq) return std::abs(l - r) < eps;
      return compare(c->op, l, r);
    }
  }
  return false;
}

ParamSpace compile(const Constraint& gamma, double eps, const std::vector<std::string>& order) {
  if (!(eps > 0.0) || !std::isfinite(eps)) throw DomainError("epsilon must be a positive finite number");
  ParamSpace s;
  s.epsilon_ = eps;
  s.params_ = order;
  const std::vector<std::string> mentioned = gamma ? params_of(gamma) : std::vector<std::string>{};
  for (const auto& p : mentioned)
    if (std::find(s.params_.begin(), s.params_.end(), p) == s.params_.end()) s.params_.push_back(p);
  std::unordered_map<std::string, std::size_t> slot;
  for (std::size_t i = 0; i < s.params_.size(); ++i) slot.emplace(s.params_[i], i);

  const auto parts = gamma ? conjuncts(gamma) : std::vector<Constraint>{};
  std::vector<bool> consumed(parts.size(), false);
  bool always_false = false;

  // Constant conjuncts fold away.
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!params_of(parts[i]).empty()) continue;
    consumed[i] = true;
    if (!satisfies_relaxed(parts[i], {}, eps)) always_false = true;
  }

  auto lone_param = [](const Arith& a) -> const std::string* {
    return a->kind == ArithNode::Kind::param ? &a->name : nullptr;
  };

  // Pins.
  std::map<std::string, double> pins;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& c = parts[i];
    if (consumed[i] || c->kind != ConstraintNode::Kind::cmp || c->op != CmpOp::eq) continue;
    const std::string* name = nullptr;
    Arith value_expr;
    if (lone_param(c->left) && !has_params(c->right)) {
      name = lone_param(c->left);
      value_expr = c->right;
    } else if (lone_param(c->right) && !has_params(c->left)) {
      name = lone_param(c->right);
      value_expr = c->left;
    }
    if (!name) continue;
    const double v = constant_value(value_expr);
    if (!std::isfinite(v)) throw DomainError("parameter '" + *name + "' is pinned to a non-finite value");
    auto [it, fresh] = pins.emplace(*name, v);
    if (!fresh && it->second != v)
      throw DomainError("contradictory pins for '" + *name + "': " + shortest(it->second) + " and " + shortest(v));
    consumed[i] = true;
  }

  // Interval clauses, intersected per parameter.
  std::map<std::string, Interval> intervals;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& c = parts[i];
    if (consumed[i] || c->kind != ConstraintNode::Kind::in) continue;
    auto [it, fresh] = intervals.emplace(c->param, Interval{c->lo, c->hi});
    if (!fresh) it->second = {std::max(it->second.lo, c->lo), std::min(it->second.hi, c->hi)};
    if (auto pin = pins.find(c->param); pin != pins.end()) {
      if (!(c->lo < pin->second && pin->second < c->hi))
        throw DomainError("contradictory pins for '" + c->param + "': " + shortest(pin->second) +
                          " lies outside (" + shortest(c->lo) + ", " + shortest(c->hi) + ")");
      consumed[i] = true;
    }
  }

  // Definitions p := e for box-less parameters, skipping any that would be
  // circular once earlier definitions are expanded.
  std::map<std::string, Arith> defined;
  std::function<void(const Arith&, std::set<std::string>&)> expand = [&](const Arith& a, std::set<std::string>& out) {
    std::vector<std::string> ps;
    collect_params(a, ps);
    for (const auto& p : ps) {
      if (!out.insert(p).second) continue;
      if (auto d = defined.find(p); d != defined.end()) expand(d->second, out);
    }
  };
  std::vector<std::string> definition_order;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const auto& c = parts[i];
    if (consumed[i] || c->kind != ConstraintNode::Kind::cmp || c->op != CmpOp::eq) continue;
    for (int side = 0; side < 2; ++side) {
      const Arith& target = side == 0 ? c->left : c->right;
      const Arith& body = side == 0 ? c->right : c->left;
      const std::string* name = lone_param(target);
      if (!name || pins.count(*name) || defined.count(*name) || intervals.count(*name)) continue;
      std::set<std::string> deps;
      expand(body, deps);
      if (deps.count(*name)) continue;
      defined.emplace(*name, body);
      definition_order.push_back(*name);
      consumed[i] = true;
      break;
    }
  }

  // Free dimensions and their box.
  for (std::size_t i = 0; i < s.params_.size(); ++i) {
    const auto& p = s.params_[i];
    if (pins.count(p) || defined.count(p)) continue;
    auto it = intervals.find(p);
    if (it == intervals.end()) throw DomainError("unbounded parameter '" + p + "' (no interval clause)");
    if (!(it->second.lo < it->second.hi) || !std::isfinite(it->second.lo) || !std::isfinite(it->second.hi))
      throw DomainError("empty interval for parameter '" + p + "': (" + shortest(it->second.lo) + ", " +
                        shortest(it->second.hi) + ")");
    s.dims_.push_back(p);
    s.dim_slot_.push_back(i);
    s.box_.push_back(it->second);
  }
  s.identity_layout_ = s.dims_.size() == s.params_.size();
  for (const auto& [name, v] : pins) s.pins_.emplace_back(slot.at(name), v);

  std::function<std::size_t(const Arith&)> lower = [&](const Arith& a) -> std::size_t {
    ParamSpace::Expr e{a->kind};
    switch (a->kind) {
      case ArithNode::Kind::number: e.value = a->value; break;
      case ArithNode::Kind::param: e.slot = slot.at(a->name); break;
      case ArithNode::Kind::add:
      case ArithNode::Kind::sub:
      case ArithNode::Kind::mul:
        e.lhs = lower(a->lhs);
        e.rhs = lower(a->rhs);
        break;
      case ArithNode::Kind::pow:
        e.exponent = a->exponent;
        e.lhs = lower(a->lhs);
        break;
      case ArithNode::Kind::neg:
      case ArithNode::Kind::exp: e.lhs = lower(a->lhs); break;
    }
    s.exprs_.push_back(e);
    return s.exprs_.size() - 1;
  };

  // Definitions in dependency order.
  std::set<std::string> placed;
  std::function<void(const std::string&)> place = [&](const std::string& name) {
    if (placed.count(name)) return;
    placed.insert(name);
    std::vector<std::string> ps;
    collect_params(defined.at(name), ps);
    for (const auto& p : ps)
      if (defined.count(p)) place(p);
    s.defs_.push_back({slot.at(name), lower(defined.at(name)), defined.at(name)});
  };
  for (const auto& name : definition_order) place(name);

  using Cond = ParamSpace::Cond;
  std::function<std::size_t(const Constraint&)> lower_cond = [&](const Constraint& c) -> std::size_t {
    Cond out{Cond::Kind::constant};
    switch (c->kind) {
      case ConstraintNode::Kind::conj:
      case ConstraintNode::Kind::disj:
        out.kind = c->kind == ConstraintNode::Kind::conj ? Cond::Kind::conj : Cond::Kind::disj;
        out.lhs = lower_cond(c->lhs);
        out.rhs = lower_cond(c->rhs);
        break;
      case ConstraintNode::Kind::in:
        out.kind = Cond::Kind::in;
        out.slot = slot.at(c->param);
        out.lo = c->lo;
        out.hi = c->hi;
        break;
      case ConstraintNode::Kind::cmp:
        out.kind = c->op == CmpOp::eq ? Cond::Kind::relaxed_eq : Cond::Kind::cmp;
        out.op = c->op;
        out.lhs = lower(c->left);
        out.rhs = lower(c->right);
        break;
    }
    s.conds_.push_back(out);
    return s.conds_.size() - 1;
  };

  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < parts.size(); ++i)
    if (!consumed[i]) kept.push_back(lower_cond(parts[i]));
  if (always_false) {
    s.conds_.push_back({Cond::Kind::constant, false});
    kept.insert(kept.begin(), s.conds_.size() - 1);
  }
  if (kept.empty()) {
    s.conds_.push_back({Cond::Kind::constant, true});
    s.root_ = s.conds_.size() - 1;
  } else {
    s.root_ = kept[0];
    for (std::size_t i = 1; i < kept.size(); ++i) {
      Cond c{Cond::Kind::conj};
      c.lhs = s.root_;
      c.rhs = kept[i];
      s.conds_.push_back(c);
      s.root_ = s.conds_.size() - 1;
    }
  }
  return s;
}

ParamSpace compile(const ShapeExpr& e, std::optional<double> eps) {
  return compile(e.constraint, eps.value_or(e.epsilon.value_or(default_epsilon)), e.parameters());
}

std::map<std::string, double> ParamSpace::pinned() const {
  std::map<std::string, double> out;
  for (const auto& [slot, v] : pins_) out.emplace(params_[slot], v);
  return out;
}

std::vector<std::pair<std::string, Arith>> ParamSpace::definitions() const {
  std::vector<std::pair<std::string, Arith>> out;
  for (const auto& d : defs_) out.emplace_back(params_[d.slot], d.source);
  return out;
}

double ParamSpace::eval(std::size_t i, std::span<const double> full) const {
  const Expr& e = exprs_[i];
  switch (e.kind) {
    case ArithNode::Kind::number: return e.value;
    case ArithNode::Kind::param: return full[e.slot];
    case ArithNode::Kind::add: return eval(e.lhs, full) + eval(e.rhs, full);
    case ArithNode::Kind::sub: return eval(e.lhs, full) - eval(e.rhs, full);
    case ArithNode::Kind::mul: return eval(e.lhs, full) * eval(e.rhs, full);
    case ArithNode::Kind::neg: return -eval(e.lhs, full);
    case ArithNode::Kind::pow: {
      const double x = eval(e.lhs, full);
      return e.exponent == 2 ? x * x : std::pow(x, e.exponent);
    }
    case ArithNode::Kind::exp: return std::exp(eval(e.lhs, full));
  }
  return 0.0;
}

bool ParamSpace::holds(std::size_t i, std::span<const double> full) const {
  const Cond& c = conds_[i];
  switch (c.kind) {
    case Cond::Kind::constant: return c.value;
    case Cond::Kind::conj: return holds(c.lhs, full) && holds(c.rhs, full);
    case Cond::Kind::disj: return holds(c.lhs, full) || holds(c.rhs, full);
    case Cond::Kind::in: return c.lo < full[c.slot] && full[c.slot] < c.hi;
    case Cond::Kind::cmp: return compare(c.op, eval(c.lhs, full), eval(c.rhs, full));
    case Cond::Kind::relaxed_eq: return std::abs(eval(c.lhs, full) - eval(c.rhs, full)) < epsilon_;
  }
  return false;
}

double ParamSpace::violation(std::size_t i, std::span<const double> full, double margin) const {
  const Cond& c = conds_[i];
  switch (c.kind) {
    case Cond::Kind::constant: return c.value ? 0.0 : 1.0;
    case Cond::Kind::conj: return violation(c.lhs, full, margin) + violation(c.rhs, full, margin);
    case Cond::Kind::disj: return std::min(violation(c.lhs, full, margin), violation(c.rhs, full, margin));
    case Cond::Kind::in: {
      const double x = full[c.slot];
      if (c.lo < x && x < c.hi) return 0.0;
      return positive(x <= c.lo ? c.lo - x : x - c.hi);
    }
    case Cond::Kind::cmp: {
      const double l = eval(c.lhs, full);
      const double r = eval(c.rhs, full);
      if (margin == 0.0) return compare(c.op, l, r) ? 0.0 : positive(shapegen::margin(c.op, l, r));
      const double m = shapegen::margin(c.op, l, r) + margin;
      return m < 0.0 ? 0.0 : positive(m);
    }
    case Cond::Kind::relaxed_eq: {
      const double d = std::abs(eval(c.lhs, full) - eval(c.rhs, full));
      return d < epsilon_ - margin ? 0.0 : positive(d - (epsilon_ - margin));
    }
  }
  return inf;
}

void ParamSpace::check_size(std::size_t n) const {
  if (n != dims_.size())
    throw DomainError("valuation has " + std::to_string(n) + " values, space has " + std::to_string(dims_.size()) +
                      " dimensions");
}

void ParamSpace::fill(std::span<const double> v, std::vector<double>& full) const {
  check_size(v.size());
  full.assign(params_.size(), 0.0);
  for (std::size_t i = 0; i < v.size(); ++i) full[dim_slot_[i]] = v[i];
  for (const auto& [slot, value] : pins_) full[slot] = value;
  for (const auto& d : defs_) full[d.slot] = eval(d.expr, full);
}

bool ParamSpace::contains(std::span<const double> v) const {
  if (identity_layout_) {
    check_size(v.size());
    return holds(root_, v);
  }
  std::vector<double> full;
  fill(v, full);
  return holds(root_, full);
}

double ParamSpace::penalty(std::span<const double> v) const {
  if (identity_layout_) {
    check_size(v.size());
    return violation(root_, v);
  }
  std::vector<double> full;
  fill(v, full);
  return violation(root_, full);
}

double ParamSpace::penalty(std::span<const double> v, double margin) const {
  if (identity_layout_) {
    check_size(v.size());
    return violation(root_, v, margin);
  }
  std::vector<double> full;
  fill(v, full);
  return violation(root_, full, margin);
}

std::vector<double> ParamSpace::full_valuation(std::span<const double> v) const {
  std::vector<double> full;
  fill(v, full);
  return full;
}

std::map<std::string, double> ParamSpace::named_valuation(std::span<const double> v) const {
  const auto full = full_valuation(v);
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < params_.size(); ++i) out.emplace(params_[i], full[i]);
  return out;
}

}  // namespace shapegen
