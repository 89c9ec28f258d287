#pragma once

#include <string>
#include <string_view>

#include "shapegen/ast.hpp"

namespace shapegen {

/// Parses and validates the `.sexp` text format:
///
///     shape A = lin(a1, b1, d1);        # exp(a, b, c, d), sin(a, b, c, e, d)
///     expr = (A . B)* . A | A;          # '.' concat, '|' union, '*', '+', eps
///     constraint = a1 == 0 && b1 in (4, 10) && ...;
///     epsilon = 1e-3;                   # optional
///
/// Throws ParseError on lexical/syntax errors (with line:col), undeclared
/// atoms, duplicate parameters, nullable star arguments and unbounded
/// parameters. Kleene plus is desugared.
ShapeExpr parse_spec(std::string_view text);

/// Canonical text form; parse_spec(print_spec(e)) == e.
std::string print_spec(const ShapeExpr& e);

std::string print_regex(const Regex& r);
std::string print_arith(const Arith& a);
std::string print_constraint(const Constraint& c);

/// Parses a bare regex over atom names (no declarations or validation).
Regex parse_regex(std::string_view text);

/// Parses a bare constraint expression.
Constraint parse_constraint(std::string_view text);

}  // namespace shapegen
