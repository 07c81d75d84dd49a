#include <catch2/catch_amalgamated.hpp>

#include "jetcalc/parse.hpp"

using namespace jetcalc;

TEST_CASE("variety files") {
  SECTION("the count surface with p = 2") {
    auto spec = parse_variety(
        "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a");
    CHECK(spec.field->str() == "Fp(2)(a)");
    CHECK(spec.ctx->names() == std::vector<std::string>{"x", "y", "z"});
    REQUIRE(spec.gens.size() == 1);
    CHECK(spec.gens[0].str() == "x^2 + y*z^2 + a");
  }

  SECTION("the cusp") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    CHECK(spec.field->str() == "QQ");
    REQUIRE(spec.gens.size() == 1);
  }

  SECTION("a truncated generator reports line 3") {
    try {
      parse_variety("field: QQ\nvars: x\ngens: x^2 +");
      FAIL("expected a ParseError");
    } catch (const ParseError& e) {
      CHECK(e.line() == 3);
    }
  }

  SECTION("parse -> print -> parse round-trips to the same structure") {
    auto spec = parse_variety(
        "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a\ncodim: 1");
    auto again = parse_variety(spec.str());
    CHECK(again.field->equals(*spec.field));
    CHECK(again.ctx->equals(*spec.ctx));
    REQUIRE(again.gens.size() == spec.gens.size());
    for (std::size_t i = 0; i < spec.gens.size(); ++i)
      CHECK(again.gens[i] == spec.gens[i]);
    CHECK(again.codim == spec.codim);
    CHECK(again.str() == spec.str());
  }

  SECTION("comments, blank lines, continuations, empty gens") {
    auto spec = parse_variety(
        "# affine plane\nfield: QQ\n\nvars: u v\ngens:\n");
    CHECK(spec.gens.empty());
    auto two = parse_variety(
        "field: QQ\nvars: x y\ngens: y^2 - x^3,\n      2*y - x  # tangent");
    CHECK(two.gens.size() == 2);
  }

  SECTION("missing keys and duplicates are rejected") {
    CHECK_THROWS_AS(parse_variety("vars: x\ngens: x"), ParseError);
    CHECK_THROWS_AS(parse_variety("field: QQ\ngens: 1"), ParseError);
    CHECK_THROWS_AS(
        parse_variety("field: QQ\nfield: QQ\nvars: x\ngens:"), ParseError);
  }

  SECTION("jet-name and generator collisions are rejected") {
    CHECK_THROWS_AS(parse_variety("field: QQ\nvars: x x1\ngens:"),
                    ParseError);
    CHECK_THROWS_AS(parse_variety("field: Fp(2)(a)\nvars: a y\ngens:"),
                    ParseError);
  }
}

TEST_CASE("field grammar") {
  for (const std::string s :
       {"QQ", "Fp(5)", "Fp(2)(a)", "Fp(2)(a)[x0]/(x0^2-a)",
        "QQ[i]/(i^2+1)", "QQ(s)", "Fp(3)(a)"}) {
    FieldPtr f = parse_field(s);
    FieldPtr again = parse_field(f->str());
    INFO(s << " printed as " << f->str());
    CHECK(again->equals(*f));
  }

  CHECK_THROWS_AS(parse_field("Fp(4)"), ParseError);  // not prime
  CHECK_THROWS_AS(parse_field("Zp(5)"), ParseError);
  CHECK_THROWS_AS(parse_field("QQ(s)(s)"), ParseError);  // name reuse
  CHECK_THROWS_AS(parse_field("QQ[v]/(2)"), ParseError);  // constant modulus
}

TEST_CASE("element grammar round trips") {
  auto F5s = parse_field("Fp(5)(s)");
  for (const std::string s :
       {"0", "1", "s", "1/s", "(s+1)/s", "(s^2 + 2*s + 1)/(s^3 + 4)",
        "4*s^2 + 2"}) {
    FieldElement e = parse_element(s, F5s);
    CHECK(parse_element(e.str(), F5s) == e);
  }
  auto E = parse_field("Fp(2)(a)[x0]/(x0^2-a)");
  for (const std::string s : {"x0", "a*x0 + 1", "x0/a", "(a+1)*x0"}) {
    FieldElement e = parse_element(s, E);
    CHECK(parse_element(e.str(), E) == e);
  }
  auto QQ = FieldDescriptor::rationals();
  CHECK(parse_element("-7/3", QQ) == QQ->from_rational(mpq_class(-7, 3)));
  CHECK_THROWS_AS(parse_element("x", QQ), ParseError);
  CHECK_THROWS_AS(parse_element("1/0", QQ), ParseError);
}

TEST_CASE("arc coefficient specs") {
  auto QQ = FieldDescriptor::rationals();
  auto arcs = parse_arc_coefficients("x=(1,1); y=(3/2)", QQ);
  REQUIRE(arcs.size() == 2);
  CHECK(arcs["x"].size() == 2);
  CHECK(arcs["y"].size() == 1);
  CHECK(arcs["y"][0] == QQ->from_rational(mpq_class(3, 2)));

  auto F2a = parse_field("Fp(2)(a)");
  auto witness = parse_arc_coefficients("x=(0,0); y=(a,0); z=(1,0)", F2a);
  CHECK(witness["y"][0] == *F2a->named_generator("a"));

  CHECK_THROWS_AS(parse_arc_coefficients("x=(1); x=(2)", QQ), ParseError);
  CHECK_THROWS_AS(parse_arc_coefficients("x=1,2", QQ), ParseError);
}

TEST_CASE("polynomial parse errors carry locations") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x"});
  try {
    parse_polynomial("x^2 + y", ctx, QQ);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 7);
  }
  CHECK_THROWS_AS(parse_polynomial("x/(x+1)", ctx, QQ), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^", ctx, QQ), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x", ctx, QQ), ParseError);
}
