#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "jetcalc/field.hpp"
#include "jetcalc/parse.hpp"

using namespace jetcalc;

namespace {

FieldElement random_element(std::mt19937_64& rng, const FieldPtr& F) {
  switch (F->kind()) {
    case FieldKind::Rationals: {
      long num = static_cast<long>(rng() % 41) - 20;
      long den = 1 + static_cast<long>(rng() % 12);
      return F->from_rational(mpq_class(num, den));
    }
    case FieldKind::PrimeField:
      return F->from_integer(static_cast<long long>(rng() % F->prime()));
    case FieldKind::RationalFunctions: {
      FieldElement g = F->generator();
      FieldElement num = F->zero(), den = F->zero();
      for (int i = 0; i <= 2; ++i) {
        num += F->from_integer(static_cast<long long>(rng() % 7) - 3) *
               g.pow(i);
        den += F->from_integer(static_cast<long long>(rng() % 7) - 3) *
               g.pow(i);
      }
      if (den.is_zero()) den = F->one();
      return num / den;
    }
    case FieldKind::SimpleExtension: {
      FieldElement g = F->generator();
      FieldElement e = F->zero();
      for (std::size_t i = 0; i < F->extension_degree(); ++i)
        e += F->from_integer(static_cast<long long>(rng() % 7) - 3) * g.pow(i);
      return e;
    }
  }
  return F->zero();
}

}  // namespace

TEST_CASE("field inverses") {
  auto QQ = FieldDescriptor::rationals();
  CHECK(QQ->from_integer(2).inverse() == QQ->from_rational(mpq_class(1, 2)));

  auto F5s = parse_field("Fp(5)(s)");
  FieldElement s = *F5s->named_generator("s");
  CHECK(s.inverse() == parse_element("1/s", F5s));

  // x0 in F2(a)[x0]/(x0^2 - a): multiplying the claimed inverse back gives 1
  auto E = parse_field("Fp(2)(a)[x0]/(x0^2-a)");
  FieldElement x0 = *E->named_generator("x0");
  FieldElement inv = x0.inverse();
  CHECK(inv == parse_element("x0/a", E));
  CHECK((x0 * inv).is_one());

  CHECK_THROWS_AS(QQ->zero().inverse(), ZeroInversion);
}

TEST_CASE("inverse surfaces a reducible asserted-irreducible modulus") {
  // v^2 + 1 = (v + 1)^2 over F2, so v + 1 has no inverse
  auto F2 = FieldDescriptor::prime_field(2);
  auto E = FieldDescriptor::simple_extension(
      F2, "v", {F2->one(), F2->zero(), F2->one()});
  FieldElement v = *E->named_generator("v");
  CHECK_THROWS_AS((v + E->one()).inverse(), NonInvertible);
}

TEST_CASE("field homomorphisms") {
  auto F2s = parse_field("Fp(2)(s)");
  auto F2u = parse_field("Fp(2)(u)");
  FieldElement u = *F2u->named_generator("u");
  FieldHom h(F2s, F2u, {{"s", u * u}});

  SECTION("maps the examples") {
    CHECK(h(parse_element("s+1", F2s)) == parse_element("u^2+1", F2u));
    CHECK(h(parse_element("1/s", F2s)) == parse_element("1/u^2", F2u));
    auto QQ = FieldDescriptor::rationals();
    FieldHom id = FieldHom::identity(QQ);
    CHECK(id(QQ->from_rational(mpq_class(3, 7))) ==
          QQ->from_rational(mpq_class(3, 7)));
  }

  SECTION("is a ring map on random inputs") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 40; ++t) {
      FieldElement a = random_element(rng, F2s);
      FieldElement b = random_element(rng, F2s);
      CHECK(h(a + b) == h(a) + h(b));
      CHECK(h(a * b) == h(a) * h(b));
      CHECK(h(a - b) == h(a) - h(b));
      if (!a.is_zero()) CHECK(h(a.inverse()) == h(a).inverse());
    }
  }

  SECTION("rejects mismatched elements and characteristics") {
    auto QQ = FieldDescriptor::rationals();
    CHECK_THROWS_AS(h(QQ->one()), DescriptorMismatch);
    CHECK_THROWS_AS(FieldHom(QQ, F2u), DescriptorMismatch);
  }

  SECTION("extension generators must map to minimal polynomial roots") {
    auto E = parse_field("Fp(2)(a)[x0]/(x0^2-a)");
    std::map<std::string, FieldElement> ok{{"a", u * u}, {"x0", u}};
    CHECK_NOTHROW(FieldHom(E, F2u, ok));
    std::map<std::string, FieldElement> bad{{"a", u * u},
                                            {"x0", u + F2u->one()}};
    CHECK_THROWS_AS(FieldHom(E, F2u, bad), DescriptorMismatch);
  }
}

TEST_CASE("p-th power detection in Fp(s)") {
  auto F5s = parse_field("Fp(5)(s)");
  FieldElement s = *F5s->named_generator("s");
  CHECK(is_pth_power(s.pow(5)));
  CHECK_FALSE(is_pth_power(s));
  // (s+1)^10 / s^5 = ((s+1)^2 / s)^5
  CHECK(is_pth_power(parse_element("(s+1)^10/s^5", F5s)));

  SECTION("200 randomized p-th powers") {
    std::mt19937_64 rng(11);
    for (int t = 0; t < 200; ++t) {
      FieldElement x = random_element(rng, F5s);
      CHECK(is_pth_power(x.pow(5)));
    }
  }

  SECTION("wrong fields are rejected") {
    auto QQs = parse_field("QQ(s)");
    CHECK_THROWS_AS(is_pth_power(*QQs->named_generator("s")),
                    WrongCharacteristic);
    auto F5 = FieldDescriptor::prime_field(5);
    CHECK_THROWS_AS(is_pth_power(F5->one()), DescriptorMismatch);
  }
}

TEST_CASE("field axioms on randomized elements") {
  std::vector<FieldPtr> fields = {
      FieldDescriptor::rationals(),
      FieldDescriptor::prime_field(5),
      parse_field("Fp(5)(s)"),
      parse_field("QQ(t)"),
      parse_field("Fp(2)(a)[x0]/(x0^2-a)"),
      parse_field("QQ[i]/(i^2+1)"),
  };
  std::mt19937_64 rng(23);
  for (const auto& F : fields) {
    INFO("field " << F->str());
    for (int t = 0; t < 30; ++t) {
      FieldElement a = random_element(rng, F);
      FieldElement b = random_element(rng, F);
      FieldElement c = random_element(rng, F);
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a - a == F->zero() * a + F->zero());
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
    }
  }
}

TEST_CASE("canonical forms make equality syntactic") {
  auto F5s = parse_field("Fp(5)(s)");
  // 2(s+1)/2s reduces to (s+1)/s with monic denominator
  FieldElement lhs = parse_element("(2*s+2)/(2*s)", F5s);
  FieldElement rhs = parse_element("(s+1)/s", F5s);
  CHECK(lhs == rhs);
  CHECK(lhs.str() == rhs.str());

  auto QQ = FieldDescriptor::rationals();
  CHECK(QQ->from_rational(mpq_class(2, 4)) ==
        QQ->from_rational(mpq_class(1, 2)));

  SECTION("arithmetic across different fields is rejected") {
    auto F7 = FieldDescriptor::prime_field(7);
    CHECK_THROWS_AS(QQ->one() + F7->one(), DescriptorMismatch);
  }
}

TEST_CASE("descriptor construction checks") {
  CHECK_THROWS_AS(FieldDescriptor::prime_field(6), Error);
  auto F2 = FieldDescriptor::prime_field(2);
  auto F2a = FieldDescriptor::rational_functions(F2, "a");
  // reusing a tower generator name is ambiguous
  CHECK_THROWS_AS(FieldDescriptor::rational_functions(F2a, "a"), Error);
  // constant minimal polynomials are rejected
  CHECK_THROWS_AS(
      FieldDescriptor::simple_extension(F2, "v", {F2->one()}), Error);
  CHECK(F2a->characteristic() == 2);
  CHECK(parse_field("Fp(2)(a)[x0]/(x0^2-a)")->extension_degree() == 2);
}
