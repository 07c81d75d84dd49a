#include <catch2/catch_amalgamated.hpp>

#include "jetcalc/parse.hpp"
#include "jetcalc/smooth.hpp"

using namespace jetcalc;

TEST_CASE("Jacobian matrices") {
  auto Q = FieldDescriptor::rationals();
  auto ctx = VariableContext::make({"x", "y"});
  auto P = [&](const std::string& s) { return parse_polynomial(s, ctx, Q); };

  JacobianMatrix J = jacobian_matrix({P("y^2 - x^3")});
  REQUIRE(J.rows() == 1);
  REQUIRE(J.cols() == 2);
  CHECK(J.at(0, 0) == P("-3*x^2"));
  CHECK(J.at(0, 1) == P("2*y"));

  auto F2a = parse_field("Fp(2)(a)");
  auto ctx3 = VariableContext::make({"x", "y", "z"});
  JacobianMatrix Jc = jacobian_matrix(
      {parse_polynomial("x^2 + y*z^2 - a", ctx3, F2a)});
  CHECK(Jc.at(0, 0).is_zero());
  CHECK(Jc.at(0, 1) == parse_polynomial("z^2", ctx3, F2a));
  CHECK(Jc.at(0, 2).is_zero());

  JacobianMatrix Jl = jacobian_matrix({P("x + y")});
  CHECK(Jl.at(0, 0) == P("1"));
  CHECK(Jl.at(0, 1) == P("1"));
}

TEST_CASE("non-smooth locus ideals") {
  auto Q = FieldDescriptor::rationals();

  SECTION("the count surface has nSm = V(f, z) of dimension one") {
    auto spec = parse_variety(
        "field: Fp(2)(a)\nvars: x y z\ngens: x^2 + y*z^2 - a");
    Ideal nsm = nonsmooth_ideal(spec.gens, 1);
    REQUIRE(nsm.generators().size() == 2);
    CHECK(nsm.generators()[0] == spec.gens[0]);
    CHECK(nsm.generators()[1] ==
          parse_polynomial("z^2", spec.ctx, spec.field));
    Polynomial z = Polynomial::variable(spec.ctx, spec.field, 2);
    CHECK(radical_member(z, nsm));
    CHECK(krull_dimension(nsm) == 1);
    // radical equality with (f, z), both inclusions
    Ideal fz(spec.ctx, spec.field, {spec.gens[0], z});
    for (const auto& g : nsm.generators()) CHECK(radical_member(g, fz));
    for (const auto& g : fz.generators()) CHECK(radical_member(g, nsm));
  }

  SECTION("the cusp is singular exactly at the origin") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    Ideal nsm = nonsmooth_ideal(spec.gens, 1);
    REQUIRE(nsm.generators().size() == 3);
    CHECK(nsm.generators()[1] ==
          parse_polynomial("-3*x^2", spec.ctx, Q));
    CHECK(nsm.generators()[2] == parse_polynomial("2*y", spec.ctx, Q));
    CHECK(krull_dimension(nsm) == 0);
  }

  SECTION("a smooth conic has empty non-smooth locus") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: x^2 + y^2 - 1");
    Ideal nsm = nonsmooth_ideal(spec.gens, 1);
    CHECK(ideal_member(Polynomial::constant(spec.ctx, Q->one()), nsm));
  }

  SECTION("the input equations always sit inside the result") {
    auto spec = parse_variety(
        "field: QQ\nvars: x y z\ngens: y^2 - x^3, z^2 - x*y");
    Ideal nsm = nonsmooth_ideal(spec.gens, 2);
    GroebnerBasis G = groebner_default(nsm);
    for (const auto& g : spec.gens) CHECK(ideal_member(g, G));
  }

  SECTION("bad codimension declarations are rejected") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    CHECK_THROWS_AS(nonsmooth_ideal(spec.gens, 2), BadCodim);
    CHECK_THROWS_AS(nonsmooth_ideal(spec.gens, 0), BadCodim);
    CHECK_THROWS_AS(nonsmooth_ideal({}, 1), BadCodim);
  }
}
