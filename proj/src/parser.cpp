#include "shapegen/parser.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "shapegen/error.hpp"
#include "shapegen/format.hpp"

namespace shapegen {
namespace {

enum class Tok {
  ident, number, assign, semi, comma, lparen, rparen, dot, bar, star, plus, minus, caret,
  and_, or_, lt, le, gt, ge, eq, end
};

struct Token {
  Tok kind;
  std::string text;
  double number = 0.0;
  std::size_t line = 0;
  std::size_t column = 0;
};

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char ch = src[i];
    if (std::isspace(static_cast<unsigned char>(ch))) {
      advance(1);
      continue;
    }
    if (ch == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    Token t{Tok::end, {}, 0.0, line, col};
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      t.kind = Tok::ident;
      t.text = std::string(src.substr(i, j - i));
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.' && j + 1 < src.size() &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        std::size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      t.kind = Tok::number;
      t.text = std::string(src.substr(i, j - i));
      t.number = std::strtod(t.text.c_str(), nullptr);
      advance(j - i);
      out.push_back(std::move(t));
      continue;
    }
    auto two = [&](char a, char b) { return ch == a && i + 1 < src.size() && src[i + 1] == b; };
    std::size_t len = 1;
    if (two('&', '&')) {
      t.kind = Tok::and_, len = 2;
    } else if (two('|', '|')) {
      t.kind = Tok::or_, len = 2;
    } else if (two('<', '=')) {
      t.kind = Tok::le, len = 2;
    } else if (two('>', '=')) {
      t.kind = Tok::ge, len = 2;
    } else if (two('=', '=')) {
      t.kind = Tok::eq, len = 2;
    } else {
      switch (ch) {
        case '=': t.kind = Tok::assign; break;
        case ';': t.kind = Tok::semi; break;
        case ',': t.kind = Tok::comma; break;
        case '(': t.kind = Tok::lparen; break;
        case ')': t.kind = Tok::rparen; break;
        case '.': t.kind = Tok::dot; break;
        case '|': t.kind = Tok::bar; break;
        case '*': t.kind = Tok::star; break;
        case '+': t.kind = Tok::plus; break;
        case '-': t.kind = Tok::minus; break;
        case '^': t.kind = Tok::caret; break;
        case '<': t.kind = Tok::lt; break;
        case '>': t.kind = Tok::gt; break;
        default:
          throw ParseError(std::string("unexpected character '") + ch + "'", line, col);
      }
    }
    t.text = std::string(src.substr(i, len));
    advance(len);
    out.push_back(std::move(t));
  }
  out.push_back(Token{Tok::end, "<end of input>", 0.0, line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  ShapeExpr spec() {
    ShapeExpr e;
    bool have_expr = false;
    while (!at(Tok::end)) {
      const Token& head = expect(Tok::ident, "statement keyword");
      if (head.text == "shape") {
        e.decls.push_back(shape_decl());
      } else if (head.text == "expr") {
        if (have_expr) fail(head, "duplicate 'expr' statement");
        expect(Tok::assign, "'='");
        e.regex = regex();
        have_expr = true;
      } else if (head.text == "constraint") {
        if (e.constraint) fail(head, "duplicate 'constraint' statement");
        expect(Tok::assign, "'='");
        e.constraint = disjunction();
      } else if (head.text == "epsilon") {
        if (e.epsilon) fail(head, "duplicate 'epsilon' statement");
        expect(Tok::assign, "'='");
        const Token& num = expect(Tok::number, "number");
        if (!(num.number > 0.0)) fail(num, "epsilon must be positive");
        e.epsilon = num.number;
      } else {
        fail(head, "unknown statement '" + head.text + "'");
      }
      expect(Tok::semi, "';'");
    }
    if (!have_expr) throw ParseError("missing 'expr' statement", peek().line, peek().column);
    return e;
  }

  Regex regex() {
    Regex acc = concatenation();
    while (accept(Tok::bar)) acc = re::alt(acc, concatenation());
    return acc;
  }

  Constraint disjunction() {
    Constraint acc = conjunction();
    while (accept(Tok::or_)) acc = cs::disj(acc, conjunction());
    return acc;
  }

  Arith arith() {
    Arith acc = term();
    for (;;) {
      if (accept(Tok::plus)) {
        acc = ar::add(acc, term());
      } else if (accept(Tok::minus)) {
        acc = ar::sub(acc, term());
      } else {
        return acc;
      }
    }
  }

  void finish() {
    if (!at(Tok::end)) fail(peek(), "unexpected '" + peek().text + "'");
  }

 private:
  AtomicShapeDecl shape_decl() {
    AtomicShapeDecl d;
    const Token& name = expect(Tok::ident, "shape name");
    check_identifier(name);
    d.name = name.text;
    expect(Tok::assign, "'='");
    const Token& kind = expect(Tok::ident, "shape kind (lin, exp, sin)");
    if (kind.text == "lin") {
      d.kind = ShapeKind::linear;
    } else if (kind.text == "exp") {
      d.kind = ShapeKind::exponential;
    } else if (kind.text == "sin") {
      d.kind = ShapeKind::sinusoid;
    } else {
      fail(kind, "unknown shape kind '" + kind.text + "'");
    }
    expect(Tok::lparen, "'('");
    std::vector<std::string> params;
    do {
      const Token& p = expect(Tok::ident, "parameter name");
      check_identifier(p);
      if (std::find(params.begin(), params.end(), p.text) != params.end())
        fail(p, "duplicate parameter '" + p.text + "'");
      params.push_back(p.text);
    } while (accept(Tok::comma));
    expect(Tok::rparen, "')'");
    std::size_t want = parameter_count(d.kind) + 1;
    if (params.size() != want)
      fail(kind, std::string(keyword(d.kind)) + " takes " + std::to_string(want) + " parameters, got " +
                     std::to_string(params.size()));
    d.duration = params.back();
    params.pop_back();
    d.params = std::move(params);
    return d;
  }

  Regex concatenation() {
    Regex acc = postfix();
    while (accept(Tok::dot)) acc = re::cat(acc, postfix());
    return acc;
  }

  Regex postfix() {
    Regex acc = regex_primary();
    for (;;) {
      if (accept(Tok::star)) {
        acc = re::star(acc);
      } else if (accept(Tok::plus)) {
        acc = re::plus(acc);
      } else {
        return acc;
      }
    }
  }

  Regex regex_primary() {
    if (accept(Tok::lparen)) {
      Regex inner = regex();
      expect(Tok::rparen, "')'");
      return inner;
    }
    const Token& t = expect(Tok::ident, "atom name, 'eps' or '('");
    if (t.text == "eps") return re::epsilon();
    return re::atom(t.text);
  }

  Constraint conjunction() {
    Constraint acc = constraint_primary();
    while (accept(Tok::and_)) acc = cs::conj(acc, constraint_primary());
    return acc;
  }

  Constraint constraint_primary() {
    if (at(Tok::ident) && toks_[pos_ + 1].kind == Tok::ident && toks_[pos_ + 1].text == "in") {
      std::string param = next().text;
      next();
      expect(Tok::lparen, "'('");
      double lo = signed_number();
      expect(Tok::comma, "','");
      double hi = signed_number();
      expect(Tok::rparen, "')'");
      return cs::in(std::move(param), lo, hi);
    }
    if (at(Tok::lparen)) {
      // Either an arithmetic comparison starting with '(' or a grouped
      // boolean expression; try the comparison first.
      std::size_t save = pos_;
      try {
        return comparison();
      } catch (const ParseError&) {
        pos_ = save;
      }
      next();
      Constraint inner = disjunction();
      expect(Tok::rparen, "')'");
      return inner;
    }
    return comparison();
  }

  Constraint comparison() {
    Arith l = arith();
    const Token& op = next();
    CmpOp cmp;
    switch (op.kind) {
      case Tok::lt: cmp = CmpOp::lt; break;
      case Tok::le: cmp = CmpOp::le; break;
      case Tok::gt: cmp = CmpOp::gt; break;
      case Tok::ge: cmp = CmpOp::ge; break;
      case Tok::eq: cmp = CmpOp::eq; break;
      default: fail(op, "expected comparison operator, got '" + op.text + "'");
    }
    return cs::cmp(cmp, std::move(l), arith());
  }

  double signed_number() {
    bool negative = accept(Tok::minus);
    const Token& num = expect(Tok::number, "number");
    return negative ? -num.number : num.number;
  }

  Arith term() {
    Arith acc = unary();
    while (accept(Tok::star)) acc = ar::mul(acc, unary());
    return acc;
  }

  Arith unary() {
    if (accept(Tok::minus)) {
      // A literal directly after '-' folds into a negative number unless it is
      // the base of a power (-3^2 is -(3^2)).
      if (at(Tok::number) && toks_[pos_ + 1].kind != Tok::caret) return ar::number(-next().number);
      return ar::neg(unary());
    }
    return power();
  }

  Arith power() {
    Arith base = arith_primary();
    if (accept(Tok::caret)) {
      bool negative = accept(Tok::minus);
      const Token& e = expect(Tok::number, "integer exponent");
      if (e.text.find_first_not_of("0123456789") != std::string::npos)
        fail(e, "exponent must be an integer");
      int exponent = std::atoi(e.text.c_str());
      return ar::pow(std::move(base), negative ? -exponent : exponent);
    }
    return base;
  }

  Arith arith_primary() {
    if (at(Tok::number)) return ar::number(next().number);
    if (accept(Tok::lparen)) {
      Arith inner = arith();
      expect(Tok::rparen, "')'");
      return inner;
    }
    const Token& t = expect(Tok::ident, "number, parameter, exp(...) or '('");
    if (t.text == "exp" && at(Tok::lparen)) {
      next();
      Arith inner = arith();
      expect(Tok::rparen, "')'");
      return ar::exp(std::move(inner));
    }
    check_identifier(t);
    return ar::param(t.text);
  }

  void check_identifier(const Token& t) {
    static const std::set<std::string> reserved = {"shape", "expr", "constraint", "epsilon", "eps", "in"};
    if (reserved.count(t.text)) fail(t, "'" + t.text + "' is reserved");
  }

  const Token& peek() const { return toks_[pos_]; }
  bool at(Tok k) const { return toks_[pos_].kind == k; }
  const Token& next() {
    const Token& t = toks_[pos_];
    if (t.kind != Tok::end) ++pos_;
    return t;
  }
  bool accept(Tok k) {
    if (!at(k)) return false;
    ++pos_;
    return true;
  }
  const Token& expect(Tok k, const std::string& what) {
    if (!at(k)) fail(peek(), "expected " + what + ", got '" + peek().text + "'");
    return next();
  }
  [[noreturn]] static void fail(const Token& t, const std::string& message) {
    throw ParseError(message, t.line, t.column);
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

void check_regex(const Regex& r, const ShapeExpr& e) {
  switch (r->kind) {
    case RegexNode::Kind::atom:
      if (!e.find(r->atom)) throw ParseError("undeclared atom '" + r->atom + "'");
      return;
    case RegexNode::Kind::star:
      if (nullable(r->left)) throw ParseError("nullable star argument");
      check_regex(r->left, e);
      return;
    case RegexNode::Kind::alt:
    case RegexNode::Kind::cat:
      check_regex(r->left, e);
      check_regex(r->right, e);
      return;
    case RegexNode::Kind::epsilon: return;
  }
}

bool is_param(const Arith& a, const std::string& name) {
  return a->kind == ArithNode::Kind::param && a->name == name;
}

// A parameter is bounded when a top-level conjunct gives it an interval, pins
// it, or defines it by an equality with the parameter alone on one side.
bool is_bounded(const std::string& p, const std::vector<Constraint>& top) {
  for (const auto& c : top) {
    if (c->kind == ConstraintNode::Kind::in && c->param == p) return true;
    if (c->kind == ConstraintNode::Kind::cmp && c->op == CmpOp::eq) {
      if (is_param(c->left, p) || is_param(c->right, p)) return true;
    }
  }
  return false;
}

void validate(const ShapeExpr& e) {
  std::set<std::string> names;
  for (const auto& d : e.decls)
    if (!names.insert(d.name).second) throw ParseError("duplicate shape '" + d.name + "'");
  check_regex(e.regex, e);

  std::vector<Constraint> top;
  if (e.constraint) top = conjuncts(e.constraint);
  for (const auto& name : atoms_of(e.regex)) {
    const AtomicShapeDecl& d = *e.find(name);
    std::vector<std::string> ps = d.params;
    ps.push_back(d.duration);
    for (const auto& p : ps)
      if (!is_bounded(p, top)) throw ParseError("unbounded parameter '" + p + "' (no interval clause)");
  }
}

// ---------------------------------------------------------------------------
// Printing. Precedences mirror the grammar so that re-parsing rebuilds the
// same tree shape.

void print_regex_into(const Regex& r, int ctx, std::string& out) {
  int prec = 0;
  switch (r->kind) {
    case RegexNode::Kind::alt: prec = 0; break;
    case RegexNode::Kind::cat: prec = 1; break;
    default: prec = 2; break;
  }
  bool is_plus = r->kind == RegexNode::Kind::cat && r->right->kind == RegexNode::Kind::star &&
                 equal(r->left, r->right->left);
  if (is_plus) prec = 2;
  bool parens = prec < ctx;
  if (parens) out += '(';
  if (is_plus) {
    print_regex_into(r->left, 3, out);
    out += '+';
  } else {
    switch (r->kind) {
      case RegexNode::Kind::epsilon: out += "eps"; break;
      case RegexNode::Kind::atom: out += r->atom; break;
      case RegexNode::Kind::alt:
        print_regex_into(r->left, 0, out);
        out += " | ";
        print_regex_into(r->right, 1, out);
        break;
      case RegexNode::Kind::cat:
        print_regex_into(r->left, 1, out);
        out += " . ";
        print_regex_into(r->right, 2, out);
        break;
      case RegexNode::Kind::star:
        print_regex_into(r->left, 3, out);
        out += '*';
        break;
    }
  }
  if (parens) out += ')';
}

int arith_prec(const Arith& a) {
  switch (a->kind) {
    case ArithNode::Kind::add:
    case ArithNode::Kind::sub: return 1;
    case ArithNode::Kind::mul: return 2;
    case ArithNode::Kind::neg: return 3;
    case ArithNode::Kind::pow: return 4;
    case ArithNode::Kind::number: return a->value < 0 || std::signbit(a->value) ? 3 : 5;
    default: return 5;
  }
}

void print_arith_into(const Arith& a, int ctx, std::string& out) {
  bool parens = arith_prec(a) < ctx;
  if (parens) out += '(';
  switch (a->kind) {
    case ArithNode::Kind::number: out += shortest(a->value); break;
    case ArithNode::Kind::param: out += a->name; break;
    case ArithNode::Kind::add:
    case ArithNode::Kind::sub:
      print_arith_into(a->lhs, 1, out);
      out += a->kind == ArithNode::Kind::add ? " + " : " - ";
      print_arith_into(a->rhs, 2, out);
      break;
    case ArithNode::Kind::mul:
      print_arith_into(a->lhs, 2, out);
      out += " * ";
      print_arith_into(a->rhs, 3, out);
      break;
    case ArithNode::Kind::neg:
      out += '-';
      // '-' followed by a literal would fold into a negative number.
      print_arith_into(a->lhs, a->lhs->kind == ArithNode::Kind::number ? 6 : 3, out);
      break;
    case ArithNode::Kind::pow:
      print_arith_into(a->lhs, 5, out);
      out += '^';
      out += std::to_string(a->exponent);
      break;
    case ArithNode::Kind::exp:
      out += "exp(";
      print_arith_into(a->lhs, 0, out);
      out += ')';
      break;
  }
  if (parens) out += ')';
}

void print_constraint_into(const Constraint& c, int ctx, std::string& out) {
  int prec = c->kind == ConstraintNode::Kind::disj ? 0 : c->kind == ConstraintNode::Kind::conj ? 1 : 2;
  bool parens = prec < ctx;
  if (parens) out += '(';
  switch (c->kind) {
    case ConstraintNode::Kind::disj:
      print_constraint_into(c->lhs, 0, out);
      out += " || ";
      print_constraint_into(c->rhs, 1, out);
      break;
    case ConstraintNode::Kind::conj:
      print_constraint_into(c->lhs, 1, out);
      out += " && ";
      print_constraint_into(c->rhs, 2, out);
      break;
    case ConstraintNode::Kind::cmp:
      print_arith_into(c->left, 0, out);
      out += ' ';
      out += symbol(c->op);
      out += ' ';
      print_arith_into(c->right, 0, out);
      break;
    case ConstraintNode::Kind::in:
      out += c->param + " in (" + shortest(c->lo) + ", " + shortest(c->hi) + ")";
      break;
  }
  if (parens) out += ')';
}

}  // namespace

ShapeExpr parse_spec(std::string_view text) {
  Parser p(lex(text));
  ShapeExpr e = p.spec();
  validate(e);
  return e;
}

Regex parse_regex(std::string_view text) {
  Parser p(lex(text));
  Regex r = p.regex();
  p.finish();
  return r;
}

Constraint parse_constraint(std::string_view text) {
  Parser p(lex(text));
  Constraint c = p.disjunction();
  p.finish();
  return c;
}

std::string print_regex(const Regex& r) {
  std::string out;
  print_regex_into(r, 0, out);
  return out;
}

std::string print_arith(const Arith& a) {
  std::string out;
  print_arith_into(a, 0, out);
  return out;
}

std::string print_constraint(const Constraint& c) {
  std::string out;
  print_constraint_into(c, 0, out);
  return out;
}

std::string print_spec(const ShapeExpr& e) {
  std::ostringstream os;
  for (const auto& d : e.decls) {
    os << "shape " << d.name << " = " << keyword(d.kind) << '(';
    for (const auto& p : d.params) os << p << ", ";
    os << d.duration << ");\n";
  }
  os << "expr = " << print_regex(e.regex) << ";\n";
  if (e.constraint) os << "constraint = " << print_constraint(e.constraint) << ";\n";
  if (e.epsilon) os << "epsilon = " << shortest(*e.epsilon) << ";\n";
  return os.str();
}

}  // namespace shapegen
