#include "shapegen/ast.hpp"

#include <algorithm>
#include <limits>
#include <utility>

#include "shapegen/error.hpp"

namespace shapegen {

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line == 0 ? message
                      : std::to_string(line) + ":" + std::to_string(column) + ": " + message),
      detail_(message),
      line_(line),
      column_(column) {}

std::string_view keyword(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::linear: return "lin";
    case ShapeKind::exponential: return "exp";
    case ShapeKind::sinusoid: return "sin";
  }
  return "?";
}

std::size_t parameter_count(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::linear: return 2;
    case ShapeKind::exponential: return 3;
    case ShapeKind::sinusoid: return 4;
  }
  return 0;
}

namespace {

std::size_t saturating_sum(std::size_t a, std::size_t b) {
  return a > std::numeric_limits<std::size_t>::max() - b ? std::numeric_limits<std::size_t>::max()
                                                         : a + b;
}

Regex make_regex(RegexNode::Kind kind, std::string atom, Regex l, Regex r) {
  std::size_t size = 1;
  if (l) size = saturating_sum(size, l->size);
  if (r) size = saturating_sum(size, r->size);
  return std::make_shared<const RegexNode>(
      RegexNode{kind, std::move(atom), std::move(l), std::move(r), size});
}

}  // namespace

namespace re {
Regex epsilon() { return make_regex(RegexNode::Kind::epsilon, {}, nullptr, nullptr); }
Regex atom(std::string name) { return make_regex(RegexNode::Kind::atom, std::move(name), nullptr, nullptr); }
Regex alt(Regex l, Regex r) { return make_regex(RegexNode::Kind::alt, {}, std::move(l), std::move(r)); }
Regex cat(Regex l, Regex r) { return make_regex(RegexNode::Kind::cat, {}, std::move(l), std::move(r)); }
Regex star(Regex inner) { return make_regex(RegexNode::Kind::star, {}, std::move(inner), nullptr); }
Regex plus(Regex inner) { return cat(inner, star(inner)); }
}  // namespace re

bool equal(const Regex& a, const Regex& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case RegexNode::Kind::epsilon: return true;
    case RegexNode::Kind::atom: return a->atom == b->atom;
    case RegexNode::Kind::star: return equal(a->left, b->left);
    case RegexNode::Kind::alt:
    case RegexNode::Kind::cat: return equal(a->left, b->left) && equal(a->right, b->right);
  }
  return false;
}

bool nullable(const Regex& r) {
  switch (r->kind) {
    case RegexNode::Kind::epsilon:
    case RegexNode::Kind::star: return true;
    case RegexNode::Kind::atom: return false;
    case RegexNode::Kind::alt: return nullable(r->left) || nullable(r->right);
    case RegexNode::Kind::cat: return nullable(r->left) && nullable(r->right);
  }
  return false;
}

namespace {
void collect_atoms(const Regex& r, std::vector<std::string>& out) {
  if (r->kind == RegexNode::Kind::atom) {
    if (std::find(out.begin(), out.end(), r->atom) == out.end()) out.push_back(r->atom);
    return;
  }
  if (r->left) collect_atoms(r->left, out);
  if (r->right) collect_atoms(r->right, out);
}
}  // namespace

std::vector<std::string> atoms_of(const Regex& r) {
  std::vector<std::string> out;
  collect_atoms(r, out);
  return out;
}

// ---------------------------------------------------------------------------

namespace {
Arith make_arith(ArithNode::Kind kind, Arith l = nullptr, Arith r = nullptr) {
  ArithNode node{kind};
  node.lhs = std::move(l);
  node.rhs = std::move(r);
  return std::make_shared<const ArithNode>(std::move(node));
}
}  // namespace

namespace ar {
Arith number(double v) {
  ArithNode node{ArithNode::Kind::number};
  node.value = v;
  return std::make_shared<const ArithNode>(std::move(node));
}
Arith param(std::string name) {
  ArithNode node{ArithNode::Kind::param};
  node.name = std::move(name);
  return std::make_shared<const ArithNode>(std::move(node));
}
Arith add(Arith l, Arith r) { return make_arith(ArithNode::Kind::add, std::move(l), std::move(r)); }
Arith sub(Arith l, Arith r) { return make_arith(ArithNode::Kind::sub, std::move(l), std::move(r)); }
Arith mul(Arith l, Arith r) { return make_arith(ArithNode::Kind::mul, std::move(l), std::move(r)); }
Arith neg(Arith x) { return make_arith(ArithNode::Kind::neg, std::move(x)); }
Arith pow(Arith base, int exponent) {
  ArithNode node{ArithNode::Kind::pow};
  node.lhs = std::move(base);
  node.exponent = exponent;
  return std::make_shared<const ArithNode>(std::move(node));
}
Arith exp(Arith x) { return make_arith(ArithNode::Kind::exp, std::move(x)); }
}  // namespace ar

bool equal(const Arith& a, const Arith& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ArithNode::Kind::number: return a->value == b->value;
    case ArithNode::Kind::param: return a->name == b->name;
    case ArithNode::Kind::pow: return a->exponent == b->exponent && equal(a->lhs, b->lhs);
    case ArithNode::Kind::neg:
    case ArithNode::Kind::exp: return equal(a->lhs, b->lhs);
    case ArithNode::Kind::add:
    case ArithNode::Kind::sub:
    case ArithNode::Kind::mul: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
  }
  return false;
}

void collect_params(const Arith& a, std::vector<std::string>& out) {
  if (a->kind == ArithNode::Kind::param) {
    if (std::find(out.begin(), out.end(), a->name) == out.end()) out.push_back(a->name);
    return;
  }
  if (a->lhs) collect_params(a->lhs, out);
  if (a->rhs) collect_params(a->rhs, out);
}

// ---------------------------------------------------------------------------

std::string_view symbol(CmpOp op) {
  switch (op) {
    case CmpOp::lt: return "<";
    case CmpOp::le: return "<=";
    case CmpOp::gt: return ">";
    case CmpOp::ge: return ">=";
    case CmpOp::eq: return "==";
  }
  return "?";
}

namespace cs {
Constraint conj(Constraint l, Constraint r) {
  ConstraintNode node{ConstraintNode::Kind::conj};
  node.lhs = std::move(l);
  node.rhs = std::move(r);
  return std::make_shared<const ConstraintNode>(std::move(node));
}
Constraint disj(Constraint l, Constraint r) {
  ConstraintNode node{ConstraintNode::Kind::disj};
  node.lhs = std::move(l);
  node.rhs = std::move(r);
  return std::make_shared<const ConstraintNode>(std::move(node));
}
Constraint cmp(CmpOp op, Arith l, Arith r) {
  ConstraintNode node{ConstraintNode::Kind::cmp};
  node.op = op;
  node.left = std::move(l);
  node.right = std::move(r);
  return std::make_shared<const ConstraintNode>(std::move(node));
}
Constraint in(std::string param, double lo, double hi) {
  ConstraintNode node{ConstraintNode::Kind::in};
  node.param = std::move(param);
  node.lo = lo;
  node.hi = hi;
  return std::make_shared<const ConstraintNode>(std::move(node));
}
Constraint all_of(const std::vector<Constraint>& parts) {
  Constraint acc = parts.at(0);
  for (std::size_t i = 1; i < parts.size(); ++i) acc = conj(acc, parts[i]);
  return acc;
}
}  // namespace cs

bool equal(const Constraint& a, const Constraint& b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ConstraintNode::Kind::conj:
    case ConstraintNode::Kind::disj: return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
    case ConstraintNode::Kind::cmp:
      return a->op == b->op && equal(a->left, b->left) && equal(a->right, b->right);
    case ConstraintNode::Kind::in: return a->param == b->param && a->lo == b->lo && a->hi == b->hi;
  }
  return false;
}

namespace {
void collect_constraint_params(const Constraint& c, std::vector<std::string>& out) {
  switch (c->kind) {
    case ConstraintNode::Kind::conj:
    case ConstraintNode::Kind::disj:
      collect_constraint_params(c->lhs, out);
      collect_constraint_params(c->rhs, out);
      break;
    case ConstraintNode::Kind::cmp:
      collect_params(c->left, out);
      collect_params(c->right, out);
      break;
    case ConstraintNode::Kind::in:
      if (std::find(out.begin(), out.end(), c->param) == out.end()) out.push_back(c->param);
      break;
  }
}

void collect_conjuncts(const Constraint& c, std::vector<Constraint>& out) {
  if (c->kind == ConstraintNode::Kind::conj) {
    collect_conjuncts(c->lhs, out);
    collect_conjuncts(c->rhs, out);
  } else {
    out.push_back(c);
  }
}
}  // namespace

std::vector<std::string> params_of(const Constraint& c) {
  std::vector<std::string> out;
  collect_constraint_params(c, out);
  return out;
}

std::vector<Constraint> conjuncts(const Constraint& c) {
  std::vector<Constraint> out;
  collect_conjuncts(c, out);
  return out;
}

// ---------------------------------------------------------------------------

const AtomicShapeDecl* ShapeExpr::find(std::string_view atom) const {
  for (const auto& d : decls)
    if (d.name == atom) return &d;
  return nullptr;
}

std::vector<std::string> ShapeExpr::parameters() const {
  std::vector<std::string> out;
  auto push = [&](const std::string& p) {
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (const auto& d : decls) {
    for (const auto& p : d.params) push(p);
    push(d.duration);
  }
  if (constraint)
    for (const auto& p : params_of(constraint)) push(p);
  return out;
}

bool operator==(const ShapeExpr& a, const ShapeExpr& b) {
  if (a.decls != b.decls || a.epsilon != b.epsilon) return false;
  if (!equal(a.regex, b.regex)) return false;
  if (static_cast<bool>(a.constraint) != static_cast<bool>(b.constraint)) return false;
  return !a.constraint || equal(a.constraint, b.constraint);
}

}  // namespace shapegen
