#include <doctest.h>

#include <string>

#include "oracles.hpp"
#include "shapegen/error.hpp"
#include "shapegen/parser.hpp"
#include "shapegen/pipeline.hpp"

using namespace shapegen;

namespace {

std::string spec(const std::string& name) { return read_file(std::string(SHAPEGEN_SPEC_DIR) + "/" + name); }

std::string parse_error_of(const std::string& text) {
  try {
    parse_spec(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("parser") {
  TEST_CASE("pulse spec") {
    const ShapeExpr e = parse_spec(spec("pulse.sexp"));
    REQUIRE(e.decls.size() == 6);
    CHECK(e.decls[0].name == "A");
    CHECK(e.decls[0].kind == ShapeKind::linear);
    CHECK(e.decls[0].params == std::vector<std::string>{"a1", "b1"});
    CHECK(e.decls[0].duration == "d1");
    // (A.B.C.(D.E|F))+ . A  ==  cat(cat(x, star(x)), A)
    REQUIRE(e.regex->kind == RegexNode::Kind::cat);
    CHECK(e.regex->right->kind == RegexNode::Kind::atom);
    CHECK(e.regex->right->atom == "A");
    const Regex& plus = e.regex->left;
    REQUIRE(plus->kind == RegexNode::Kind::cat);
    REQUIRE(plus->right->kind == RegexNode::Kind::star);
    CHECK(equal(plus->left, plus->right->left));
    CHECK(equal(plus->left, parse_regex("A . B . C . (D . E | F)")));
    CHECK(e.epsilon == 1e-3);
    CHECK(e.parameters().size() == 18);
  }

  TEST_CASE("single linear atom") {
    const ShapeExpr e = parse_spec("shape A = lin(a, b, d);\nexpr = A;\nconstraint = a in (0,1) && b in (0,1) && d in (1,2);");
    CHECK(e.regex->kind == RegexNode::Kind::atom);
    CHECK(e.find("A")->params.size() + 1 == 3);
  }

  TEST_CASE("exp and sin arities") {
    const ShapeExpr e = parse_spec(
        "shape B = exp(a, b, c, d);\nshape S = sin(a2, b2, c2, e2, d2);\nexpr = B | S;\n"
        "constraint = a in (0,1) && b in (0,1) && c in (0,1) && d in (1,2) && a2 in (0,1) && b2 in (0,1)"
        " && c2 in (0,1) && e2 in (0,1) && d2 in (1,2);");
    CHECK(e.find("B")->kind == ShapeKind::exponential);
    CHECK(e.find("B")->params.size() == 3);
    CHECK(e.find("S")->params.size() == 4);
    CHECK(parse_error_of("shape A = lin(a, d);\nexpr = A;").find("lin takes 3 parameters, got 2") != std::string::npos);
  }

  TEST_CASE("precedence: star over concat over union") {
    CHECK(equal(parse_regex("A . B* | C"),
                re::alt(re::cat(re::atom("A"), re::star(re::atom("B"))), re::atom("C"))));
    CHECK(equal(parse_regex("A+"), re::cat(re::atom("A"), re::star(re::atom("A")))));
    CHECK(parse_regex("eps")->kind == RegexNode::Kind::epsilon);
  }

  TEST_CASE("errors") {
    CHECK(parse_error_of("shape A = lin(a, b, d);\nexpr = (A*)*;\nconstraint = a in (0,1) && b in (0,1) && d in (0,1);")
              .find("nullable star argument") != std::string::npos);
    CHECK(parse_error_of("shape A = lin(a, b, d);\nexpr = A . B;\nconstraint = a in (0,1) && b in (0,1) && d in (0,1);")
              .find("undeclared atom 'B'") != std::string::npos);
    CHECK(parse_error_of("shape A = lin(a, a, d);\nexpr = A;").find("duplicate parameter") != std::string::npos);
    CHECK(parse_error_of("shape A = lin(a, b, d);\nexpr = A;\nconstraint = a in (0,1) && d in (0,1);")
              .find("unbounded parameter 'b'") != std::string::npos);
    CHECK(parse_error_of("shape A = lin(a, b, d);\nshape A = lin(x, y, z);\nexpr = A;").find("duplicate shape") !=
          std::string::npos);
  }

  TEST_CASE("syntax errors carry line:col") {
    try {
      parse_spec("shape A = lin(a, b, d);\nexpr = A . ;\n");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 12);
      CHECK(std::string(e.what()).rfind("2:12:", 0) == 0);
    }
    try {
      parse_spec("expr = A $ B;");
      FAIL("no error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 1);
      CHECK(e.column() == 10);
    }
  }

  TEST_CASE("round trip of the shipped specs") {
    for (const char* name : {"pulse.sexp", "ecg.sexp", "ring2d.sexp", "ring3d.sexp"}) {
      CAPTURE(name);
      const ShapeExpr e = parse_spec(spec(name));
      const std::string printed = print_spec(e);
      CHECK(parse_spec(printed) == e);
      CHECK(print_spec(parse_spec(printed)) == printed);
    }
  }

  TEST_CASE("epsilon prints as eps") {
    CHECK(print_regex(re::epsilon()) == "eps");
  }

  TEST_CASE("round trip of tricky arithmetic") {
    for (const char* text : {"-(3) < a - (b - c)", "a^2 + -b^-2 >= exp(-a * (b + 1))", "(a < 1 || b > 2) && c == -1e-3",
                             "-a^2 <= 2 * -3", "a in (-1, 1) || (b < 0 && c > 0)"}) {
      CAPTURE(text);
      const Constraint c = parse_constraint(text);
      CHECK(equal(parse_constraint(print_constraint(c)), c));
    }
  }

  TEST_CASE("round trip of random regexes") {
    Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      const Regex r = oracle::random_regex(rng, 4, 4);
      CHECK(equal(parse_regex(print_regex(r)), r));
    }
  }
}
