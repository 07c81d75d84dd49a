#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <random>

#include "jetcalc/groebner.hpp"
#include "jetcalc/jet.hpp"
#include "jetcalc/parse.hpp"

using namespace jetcalc;

namespace {

Polynomial random_poly(std::mt19937_64& rng, const ContextPtr& ctx,
                       const FieldPtr& field, int max_degree, int terms) {
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m(ctx->size());
    int budget = static_cast<int>(rng() % (max_degree + 1));
    for (int d = 0; d < budget; ++d) m.bump(rng() % ctx->size(), 1);
    FieldElement c =
        field->from_integer(static_cast<long long>(rng() % 9) - 4);
    if (!c.is_zero()) out.push_back({std::move(m), std::move(c)});
  }
  return Polynomial::from_terms(ctx, field, std::move(out));
}

std::vector<std::string> basis_strings(const GroebnerBasis& G) {
  std::vector<std::string> out;
  for (const auto& g : G.basis()) out.push_back(g.str());
  return out;
}

}  // namespace

TEST_CASE("reduced Groebner bases") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };
  auto lex = MonomialOrder::lex(ctx);

  SECTION("{x+y, y} reduces to {x, y}") {
    GroebnerBasis G =
        buchberger_reduced(Ideal(ctx, QQ, {P("x+y"), P("y")}), lex);
    CHECK(basis_strings(G) == std::vector<std::string>{"x", "y"});
    CHECK(groebner_confluent(G));
    CHECK(groebner_reduced_form(G));
  }

  SECTION("{x*y - 1, y^2 - 1} under lex x > y") {
    Ideal I(ctx, QQ, {P("x*y-1"), P("y^2-1")});
    GroebnerBasis G = buchberger_reduced(I, lex);
    CHECK(basis_strings(G) == std::vector<std::string>{"x - y", "y^2 - 1"});
    // containment both ways against the hand computation
    GroebnerBasis H =
        buchberger_reduced(Ideal(ctx, QQ, {P("x-y"), P("y^2-1")}), lex);
    for (const auto& g : G.basis()) CHECK(ideal_member(g, H));
    for (const auto& h : H.basis()) CHECK(ideal_member(h, G));
    CHECK(groebner_confluent(G));
  }

  SECTION("a single generator is its own reduced basis") {
    GroebnerBasis G = buchberger_reduced(Ideal(ctx, QQ, {P("x^2-1")}), lex);
    CHECK(basis_strings(G) == std::vector<std::string>{"x^2 - 1"});
  }

  SECTION("the step limit guards against blowups") {
    Ideal I(ctx, QQ, {P("x^3*y - x"), P("x*y^3 - y"), P("x^2 + y^2 - 1")});
    CHECK_THROWS_AS(buchberger_reduced(I, lex, {2}), StepLimitExceeded);
  }
}

TEST_CASE("normal forms") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };
  auto lex = MonomialOrder::lex(ctx);

  GroebnerBasis Gx = buchberger_reduced(Ideal(ctx, QQ, {P("x")}), lex);
  CHECK(normal_form(P("x^2"), Gx).is_zero());
  CHECK(normal_form(P("y"), Gx) == P("y"));

  GroebnerBasis Gs = buchberger_reduced(Ideal(ctx, QQ, {P("x^2-y")}), lex);
  CHECK(normal_form(P("x^2+y"), Gs) == P("2*y"));

  SECTION("normal form is idempotent and a member certificate") {
    Polynomial f = P("x^3 + x*y + 1");
    Polynomial r = normal_form(f, Gs);
    CHECK(normal_form(r, Gs) == r);
    CHECK(ideal_member(f - r, Gs));
  }
}

TEST_CASE("ideal membership") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x0", "x1"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };
  // the etale-jet membership: x1 = x1(x0^2+1) - (1/2)x0(2 x0 x1)
  CHECK(ideal_member(P("x1"), Ideal(ctx, QQ, {P("x0^2+1"), P("2*x0*x1")})));
  CHECK_FALSE(ideal_member(P("x0"), Ideal(ctx, QQ, {P("x0^2")})));
  CHECK(ideal_member(P("x1"), Ideal(ctx, QQ, {P("x0"), P("x1")})));
}

TEST_CASE("radical membership by the Rabinowitsch trick") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };
  CHECK(radical_member(P("x"), Ideal(ctx, QQ, {P("x^2")})));
  CHECK_FALSE(radical_member(P("y"), Ideal(ctx, QQ, {P("x^2")})));

  auto F2a = parse_field("Fp(2)(a)");
  auto jctx = VariableContext::make({"x0", "x1"});
  auto Q2 = [&](const std::string& s) {
    return parse_polynomial(s, jctx, F2a);
  };
  CHECK(radical_member(Q2("x1"),
                       Ideal(jctx, F2a, {Q2("x0^2+a"), Q2("x1^2")})));

  SECTION("z0 is not radical for the level-1 count jets") {
    auto spec = parse_variety(
        "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a");
    JetIdeal J = jet_ideal(spec.gens, 1);
    Polynomial z0 = Polynomial::variable(
        J.jet_context(), spec.field, *J.jet_context()->index_of("z0"));
    CHECK_FALSE(radical_member(z0, J.ideal()));
  }
}

TEST_CASE("saturation") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };

  SECTION("(x*y) : x^oo = (y)") {
    Ideal sat = saturate(Ideal(ctx, QQ, {P("x*y")}), P("x"));
    REQUIRE(sat.generators().size() == 1);
    CHECK(sat.generators()[0] == P("y"));
  }

  SECTION("(x^2, x*y) : x^oo is the unit ideal") {
    // x^2 = x * x already puts 1 in the saturation
    Ideal sat = saturate(Ideal(ctx, QQ, {P("x^2"), P("x*y")}), P("x"));
    REQUIRE(sat.generators().size() == 1);
    CHECK(sat.generators()[0] == P("1"));
  }

  SECTION("the count-surface saturation contains y1") {
    auto spec = parse_variety(
        "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a");
    JetIdeal J = jet_ideal(spec.gens, 1);
    auto jc = J.jet_context();
    Polynomial z0 =
        Polynomial::variable(jc, spec.field, *jc->index_of("z0"));
    Polynomial y1 =
        Polynomial::variable(jc, spec.field, *jc->index_of("y1"));
    Ideal sat = saturate(J.ideal(), z0);
    CHECK(ideal_member(y1, sat));
  }

  SECTION("saturation laws on random data") {
    std::mt19937_64 rng(31);
    for (int t = 0; t < 8; ++t) {
      Polynomial f = random_poly(rng, ctx, QQ, 2, 2);
      if (f.is_zero()) continue;
      Polynomial g = random_poly(rng, ctx, QQ, 2, 3);
      Polynomial h = random_poly(rng, ctx, QQ, 2, 3);
      if (g.is_zero() || h.is_zero()) continue;
      Ideal I(ctx, QQ, {g, f * h});  // f*h in I, so h is in I : f^oo
      Ideal sat = saturate(I, f);
      GroebnerBasis Gsat = groebner_default(sat);
      for (const auto& gen : I.generators())
        CHECK(ideal_member(gen, Gsat));
      CHECK(ideal_member(h, Gsat));
      CHECK(ideal_equal(saturate(sat, f), sat));
    }
  }
}

TEST_CASE("elimination") {
  auto QQ = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"t", "x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, QQ); };

  SECTION("twisted parabola: eliminate t from (x - t, y - t^2)") {
    Ideal E = eliminate(Ideal(ctx, QQ, {P("x-t"), P("y-t^2")}), {"t"});
    REQUIRE(E.generators().size() == 1);
    // both containments against the expected generator
    Polynomial expected = P("y - x^2");
    CHECK(ideal_member(expected, Ideal(ctx, QQ, E.generators())));
    CHECK(ideal_member(E.generators()[0],
                       Ideal(ctx, QQ, {expected})));
  }

  SECTION("(x - 1) eliminating x is the zero ideal") {
    auto ctx2 = VariableContext::make({"x", "y"});
    Ideal E = eliminate(
        Ideal(ctx2, QQ, {parse_polynomial("x-1", ctx2, QQ)}), {"x"});
    CHECK(E.generators().empty());
  }

  SECTION("(x, y) eliminating x is (y)") {
    auto ctx2 = VariableContext::make({"x", "y"});
    auto P2 = [&](const std::string& s) {
      return parse_polynomial(s, ctx2, QQ);
    };
    Ideal E = eliminate(Ideal(ctx2, QQ, {P2("x"), P2("y")}), {"x"});
    REQUIRE(E.generators().size() == 1);
    CHECK(E.generators()[0] == P2("y"));
  }
}

TEST_CASE("Krull dimension by independent sets") {
  auto QQ = FieldDescriptor::rationals();

  SECTION("the zero ideal in six variables has dimension six") {
    auto ctx = VariableContext::make({"a", "b", "c", "d", "e", "f"});
    CHECK(krull_dimension(Ideal(ctx, QQ, {})) == 6);
  }

  SECTION("a plane curve has dimension one") {
    auto ctx = VariableContext::make({"x0", "y0"});
    CHECK(krull_dimension(Ideal(
              ctx, QQ, {parse_polynomial("y0^2 - x0^3", ctx, QQ)})) == 1);
  }

  SECTION("the level-1 cusp jets have dimension two") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    JetIdeal J = jet_ideal(spec.gens, 1);
    CHECK(krull_dimension(J.ideal()) == 2);
  }

  SECTION("the unit ideal is rejected") {
    auto ctx = VariableContext::make({"x"});
    CHECK_THROWS_AS(
        krull_dimension(Ideal(ctx, QQ, {parse_polynomial("1", ctx, QQ)})),
        UnitIdeal);
  }
}

TEST_CASE("reduced bases are canonical") {
  auto QQ = FieldDescriptor::rationals();
  auto F5 = FieldDescriptor::prime_field(5);
  auto ctx = VariableContext::make({"x", "y", "z"});
  std::mt19937_64 rng(37);

  SECTION("generator permutations yield identical bases") {
    for (int t = 0; t < 10; ++t) {
      const FieldPtr& F = t % 2 ? QQ : FieldPtr(F5);
      std::vector<Polynomial> gens;
      for (int k = 0; k < 3; ++k) {
        Polynomial p = random_poly(rng, ctx, F, 2, 3);
        if (!p.is_zero()) gens.push_back(p);
      }
      if (gens.empty()) continue;
      std::vector<Polynomial> shuffled = gens;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      auto ord = MonomialOrder::degrevlex(ctx);
      GroebnerBasis A = buchberger_reduced(Ideal(ctx, F, gens), ord);
      GroebnerBasis B = buchberger_reduced(Ideal(ctx, F, shuffled), ord);
      CHECK(basis_strings(A) == basis_strings(B));
      CHECK(groebner_confluent(A));
      CHECK(groebner_reduced_form(A));
    }
  }

  SECTION("membership verdicts agree between lex and degrevlex") {
    for (int t = 0; t < 10; ++t) {
      std::vector<Polynomial> gens;
      for (int k = 0; k < 2; ++k) {
        Polynomial p = random_poly(rng, ctx, F5, 2, 3);
        if (!p.is_zero()) gens.push_back(p);
      }
      if (gens.empty()) continue;
      Polynomial f = random_poly(rng, ctx, F5, 2, 3);
      Ideal I(ctx, F5, gens);
      bool lex_verdict =
          ideal_member(f, buchberger_reduced(I, MonomialOrder::lex(ctx)));
      bool drl_verdict = ideal_member(
          f, buchberger_reduced(I, MonomialOrder::degrevlex(ctx)));
      CHECK(lex_verdict == drl_verdict);
    }
  }
}
