#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace shapegen {

enum class ShapeKind { linear, exponential, sinusoid };

/// Keyword used in spec files: "lin", "exp" or "sin".
std::string_view keyword(ShapeKind kind);

/// Number of shape parameters excluding the duration (2, 3 or 4).
std::size_t parameter_count(ShapeKind kind);

/// `shape A = lin(a, b, d);`: `params` holds everything but the trailing
/// duration parameter.
struct AtomicShapeDecl {
  std::string name;
  ShapeKind kind = ShapeKind::linear;
  std::vector<std::string> params;
  std::string duration;

  bool operator==(const AtomicShapeDecl&) const = default;
};

// ---------------------------------------------------------------------------
// Regular expressions over atom names. Nodes are immutable and shared.

struct RegexNode;
using Regex = std::shared_ptr<const RegexNode>;

struct RegexNode {
  enum class Kind { epsilon, atom, alt, cat, star };

  Kind kind;
  std::string atom{};
  Regex left{};
  Regex right{};
  std::size_t size = 1;  // tree size, shared subtrees counted per occurrence
};

namespace re {
Regex epsilon();
Regex atom(std::string name);
Regex alt(Regex l, Regex r);
Regex cat(Regex l, Regex r);
Regex star(Regex inner);
/// Kleene plus, desugared to cat(inner, star(inner)).
Regex plus(Regex inner);
}  // namespace re

bool equal(const Regex& a, const Regex& b);
bool nullable(const Regex& r);
/// Distinct atom names in first-occurrence order.
std::vector<std::string> atoms_of(const Regex& r);

// ---------------------------------------------------------------------------
// Arithmetic over parameters: + - * unary minus, integer powers, exp().

struct ArithNode;
using Arith = std::shared_ptr<const ArithNode>;

struct ArithNode {
  enum class Kind { number, param, add, sub, mul, neg, pow, exp };

  Kind kind;
  double value = 0.0;
  std::string name{};
  int exponent = 0;
  Arith lhs{};
  Arith rhs{};
};

namespace ar {
Arith number(double v);
Arith param(std::string name);
Arith add(Arith l, Arith r);
Arith sub(Arith l, Arith r);
Arith mul(Arith l, Arith r);
Arith neg(Arith x);
Arith pow(Arith base, int exponent);
Arith exp(Arith x);
}  // namespace ar

bool equal(const Arith& a, const Arith& b);
void collect_params(const Arith& a, std::vector<std::string>& out);

// ---------------------------------------------------------------------------
// Boolean constraints.

enum class CmpOp { lt, le, gt, ge, eq };
std::string_view symbol(CmpOp op);

struct ConstraintNode;
using Constraint = std::shared_ptr<const ConstraintNode>;

struct ConstraintNode {
  enum class Kind { conj, disj, cmp, in };

  Kind kind;
  Constraint lhs{};  // conj / disj
  Constraint rhs{};
  CmpOp op = CmpOp::lt;  // cmp
  Arith left{};
  Arith right{};
  std::string param{};  // in: lo < param < hi
  double lo = 0.0;
  double hi = 0.0;
};

namespace cs {
Constraint conj(Constraint l, Constraint r);
Constraint disj(Constraint l, Constraint r);
Constraint cmp(CmpOp op, Arith l, Arith r);
Constraint in(std::string param, double lo, double hi);
/// Left-folded conjunction; `parts` must be non-empty.
Constraint all_of(const std::vector<Constraint>& parts);
}  // namespace cs

bool equal(const Constraint& a, const Constraint& b);
/// Parameters in first-occurrence order, without duplicates.
std::vector<std::string> params_of(const Constraint& c);
/// Top-level conjuncts, left to right.
std::vector<Constraint> conjuncts(const Constraint& c);

// ---------------------------------------------------------------------------

/// A shape expression `regex : constraint` with its atom declarations.
struct ShapeExpr {
  std::vector<AtomicShapeDecl> decls;
  Regex regex;
  Constraint constraint;
  std::optional<double> epsilon;  // per-spec equality relaxation, if given

  const AtomicShapeDecl* find(std::string_view atom) const;
  /// Declared parameters in declaration order followed by constraint-only ones.
  std::vector<std::string> parameters() const;
};

bool operator==(const ShapeExpr& a, const ShapeExpr& b);

}  // namespace shapegen
