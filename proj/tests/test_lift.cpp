#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "jetcalc/lift.hpp"
#include "jetcalc/parse.hpp"

using namespace jetcalc;

namespace {

/// Independent oracle: full-grid enumeration by direct evaluation of each
/// generator at every coefficient tuple, without level-by-level pruning.
std::set<std::vector<std::uint64_t>> brute_force_jets(
    const VarietySpec& spec, std::uint64_t q, int level) {
  JetIdeal J = JetIdeal::build(spec.ctx, spec.field, spec.gens, level);
  std::size_t coords = spec.ctx->size() * (level + 1);
  std::set<std::vector<std::uint64_t>> out;
  std::vector<std::uint64_t> pt(coords, 0);
  while (true) {
    std::vector<FieldElement> vals;
    for (std::uint64_t v : pt)
      vals.push_back(spec.field->from_integer(static_cast<long long>(v)));
    bool ok = true;
    for (int i = 0; i <= level && ok; ++i)
      for (std::size_t g = 0; g < J.generator_count() && ok; ++g)
        if (!J.F(i, g).evaluate(vals).is_zero()) ok = false;
    if (ok) out.insert(pt);
    std::size_t k = 0;
    while (k < coords) {
      if (++pt[k] < q) break;
      pt[k] = 0;
      ++k;
    }
    if (k == coords) break;
  }
  return out;
}

}  // namespace

TEST_CASE("Newton-Hensel lifting") {
  SECTION("the cusp tangent lift solves 2 y0 y1 = 3 x0^2 x1") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    auto Q = spec.field;
    LiftProblem p;
    p.base_ctx = spec.ctx;
    p.field = Q;
    p.gens = spec.gens;
    p.input = {{"x", {Q->one(), Q->one()}}, {"y", {Q->one()}}};
    p.nu = 1;
    p.target_level = 1;
    p.solved = {"y"};
    TruncatedArc arc = hensel_lift(p);
    CHECK(arc.str() == "x=(1,1); y=(1,3/2)");
  }

  SECTION("the conic over F5 lifts y = t to x = 1 + 2 t^2") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: x^2 + y^2 - 1");
    auto F5 = spec.field;
    LiftProblem p;
    p.base_ctx = spec.ctx;
    p.field = F5;
    p.gens = spec.gens;
    p.input = {{"x", {F5->one()}}, {"y", {F5->zero(), F5->one()}}};
    p.nu = 1;
    p.target_level = 2;
    p.solved = {"x"};
    TruncatedArc arc = hensel_lift(p);
    CHECK(arc.str() == "x=(1,0,2); y=(0,1,0)");
    // direct check mod t^3: (1 + 2t^2)^2 + t^2 - 1 = 4t^2 + t^2 = 0 in F5
    for (const auto& v :
         evaluate_jet_point(JetIdeal::build(spec.ctx, F5, spec.gens, 2), arc))
      CHECK(v.is_zero());
  }

  SECTION("lifting at a singular center fails loudly") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    auto Q = spec.field;
    LiftProblem p;
    p.base_ctx = spec.ctx;
    p.field = Q;
    p.gens = spec.gens;
    p.input = {{"x", {Q->zero()}}, {"y", {Q->zero()}}};
    p.nu = 1;
    p.target_level = 1;
    p.solved = {"y"};
    CHECK_THROWS_AS(hensel_lift(p), SingularCenter);
  }

  SECTION("inputs that fail the residual check are rejected") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    auto Q = spec.field;
    LiftProblem p;
    p.base_ctx = spec.ctx;
    p.field = Q;
    p.gens = spec.gens;
    p.input = {{"x", {Q->one()}}, {"y", {Q->from_integer(2)}}};
    p.nu = 1;
    p.target_level = 1;
    p.solved = {"y"};
    CHECK_THROWS_AS(hensel_lift(p), ResidualNonzero);
  }

  SECTION("lift soundness on deeper cusp lifts") {
    auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    auto Q = spec.field;
    LiftProblem p;
    p.base_ctx = spec.ctx;
    p.field = Q;
    p.gens = spec.gens;
    p.input = {{"x", {Q->one(), Q->one(), Q->from_integer(2)}},
               {"y", {Q->one()}}};
    p.nu = 1;
    p.target_level = 4;
    p.solved = {"y"};
    TruncatedArc arc = hensel_lift(p);
    JetIdeal J = JetIdeal::build(spec.ctx, Q, spec.gens, 4);
    for (const auto& v : evaluate_jet_point(J, arc)) CHECK(v.is_zero());
    // agrees with the input modulo t^nu and keeps the given x data
    CHECK(arc.coefficient(0, 2) == Q->from_integer(2));
    CHECK(arc.coefficient(1, 0) == Q->one());
  }
}

TEST_CASE("jet enumeration over small prime fields") {
  SECTION("the cusp over F5 at level 0, against the brute-force oracle") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: y^2 - x^3");
    EnumeratedJets S = enumerate_jets(spec.ctx, spec.field, spec.gens, 5, 0);
    CHECK(S.points.size() == 5);
    std::set<std::vector<std::uint64_t>> expected = {
        {0, 0}, {1, 1}, {1, 4}, {4, 2}, {4, 3}};
    CHECK(S.points == expected);
    CHECK(S.points == brute_force_jets(spec, 5, 0));
  }

  SECTION("the conic over F5 at level 0 has four points") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: x^2 + y^2 - 1");
    EnumeratedJets S = enumerate_jets(spec.ctx, spec.field, spec.gens, 5, 0);
    CHECK(S.points.size() == 4);
    CHECK(S.points == brute_force_jets(spec, 5, 0));
  }

  SECTION("the zero ideal fills the whole grid") {
    auto spec = parse_variety("field: Fp(3)\nvars: x\ngens:");
    EnumeratedJets S = enumerate_jets(spec.ctx, spec.field, spec.gens, 3, 1);
    CHECK(S.points.size() == 9);
  }

  SECTION("pruned enumeration matches the oracle at level 1") {
    auto spec = parse_variety("field: Fp(3)\nvars: x y\ngens: y^2 - x^3");
    EnumeratedJets S = enumerate_jets(spec.ctx, spec.field, spec.gens, 3, 1);
    CHECK(S.points == brute_force_jets(spec, 3, 1));
  }

  SECTION("budget and field preconditions") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: y^2 - x^3");
    CHECK_THROWS_AS(
        enumerate_jets(spec.ctx, spec.field, spec.gens, 5, 10, 1000),
        BudgetExceeded);
    auto qq = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
    CHECK_THROWS_AS(enumerate_jets(qq.ctx, qq.field, qq.gens, 5, 1),
                    DescriptorMismatch);
  }
}

TEST_CASE("image truncation") {
  auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: y^2 - x^3");
  EnumeratedJets S1 = enumerate_jets(spec.ctx, spec.field, spec.gens, 5, 1);

  SECTION("truncating to the same level is the identity") {
    EnumeratedJets same = image_truncation(S1, 1);
    CHECK(same.points == S1.points);
  }

  SECTION("the image at level 0 sits inside the level-0 points") {
    EnumeratedJets S0 = enumerate_jets(spec.ctx, spec.field, spec.gens, 5, 0);
    EnumeratedJets img = image_truncation(S1, 0);
    for (const auto& pt : img.points) CHECK(S0.points.count(pt) == 1);
  }

  SECTION("deduplication happens") {
    EnumeratedJets img = image_truncation(S1, 0);
    CHECK(img.points.size() <= S1.points.size());
  }

  CHECK_THROWS_AS(image_truncation(S1, 2), LevelOutOfRange);
}

TEST_CASE("Greenberg stabilization scans") {
  SECTION("the smooth conic has constant image size 4") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: x^2 + y^2 - 1");
    GreenbergScanReport r =
        greenberg_scan(spec.ctx, spec.field, spec.gens, 5, 1, 3);
    REQUIRE(r.image_sizes.size() == 4);
    for (const auto& [m, size] : r.image_sizes) CHECK(size == 4);
    CHECK(r.stabilization_observed);
    CHECK(r.stabilization_level == 0);
    CHECK(r.a_star == 1);
  }

  SECTION("the cusp stabilizes within the scan, weakly decreasing") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: y^2 - x^3");
    GreenbergScanReport r =
        greenberg_scan(spec.ctx, spec.field, spec.gens, 5, 2, 4);
    for (std::size_t i = 1; i < r.image_sizes.size(); ++i)
      CHECK(r.image_sizes[i].second <= r.image_sizes[i - 1].second);
    CHECK(r.stabilization_observed);
    // frozen from the model: |im| = 45, 25, 21, 21 for m = 1..4
    std::vector<std::size_t> sizes;
    for (const auto& [m, size] : r.image_sizes) sizes.push_back(size);
    CHECK(sizes == std::vector<std::size_t>{45, 25, 21, 21});
  }

  SECTION("the zero ideal keeps the full grid at every level") {
    auto spec = parse_variety("field: Fp(3)\nvars: x\ngens:");
    GreenbergScanReport r =
        greenberg_scan(spec.ctx, spec.field, spec.gens, 3, 2, 4);
    for (const auto& [m, size] : r.image_sizes)
      CHECK(size == 9);  // q^nu = 3^2 for the single variable
  }

  SECTION("every Hensel-liftable point lies in the enumerated image") {
    auto spec = parse_variety("field: Fp(5)\nvars: x y\ngens: y^2 - x^3");
    auto F5 = spec.field;
    auto levels = enumerate_jet_levels(spec.ctx, F5, spec.gens, 5, 3);
    EnumeratedJets image = image_truncation(levels[3], 0);
    for (const auto& pt : levels[0].points) {
      TruncatedArc arc = levels[0].to_arc(pt, F5);
      std::vector<FieldElement> res = arc.residue_point();
      std::size_t solve = spec.ctx->size();
      for (std::size_t j = 0; j < spec.ctx->size(); ++j)
        if (!spec.gens[0].derivative(j).evaluate(res).is_zero()) {
          solve = j;
          break;
        }
      if (solve == spec.ctx->size()) continue;
      LiftProblem p;
      p.base_ctx = spec.ctx;
      p.field = F5;
      p.gens = spec.gens;
      p.input = {{"x", {arc.coefficient(0, 0)}},
                 {"y", {arc.coefficient(1, 0)}}};
      p.nu = 1;
      p.target_level = 3;
      p.solved = {spec.ctx->name(solve)};
      TruncatedArc up = hensel_lift(p);
      // lifting then truncating is the identity on the first coefficient
      CHECK(truncate_arc(up, 0) == arc);
      std::vector<std::uint64_t> flat = {up.coefficient(0, 0).residue(),
                                         up.coefficient(1, 0).residue()};
      CHECK(image.points.count(flat) == 1);
    }
  }
}
