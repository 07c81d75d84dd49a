#include <catch2/catch_amalgamated.hpp>

#include <json.hpp>

#include "jetcalc/parse.hpp"
#include "jetcalc/scenario.hpp"

using namespace jetcalc;

TEST_CASE("every registered scenario passes with defaults") {
  for (const auto& name : scenario_names()) {
    INFO("scenario " << name);
    ScenarioReport rep = run_scenario(name);
    for (const auto& c : rep.checks) {
      INFO(c.name << ": " << c.evidence);
      CHECK(c.verdict == CheckResult::Verdict::Pass);
    }
    CHECK(rep.overall());
  }
}

TEST_CASE("the count counterexample also passes with p = 3") {
  ScenarioOptions opts;
  opts.p = 3;
  CHECK(run_scenario("count-counterexample", opts).overall());
  CHECK(run_scenario("remark-inseparable-jets", opts).overall());
}

TEST_CASE("unknown scenarios are rejected") {
  CHECK_THROWS_AS(run_scenario("no-such-scenario"), UnknownScenario);
}

TEST_CASE("report rendering") {
  ScenarioReport rep = run_scenario("etale-jets");

  SECTION("text output carries the overall verdict") {
    std::string text = render_report(rep, "text");
    CHECK(text.find("OVERALL: PASS") != std::string::npos);
    CHECK(text.find("scenario: etale-jets") != std::string::npos);
  }

  SECTION("json output round-trips through a generic parser") {
    std::string json = render_report(rep, "json");
    nlohmann::json parsed = nlohmann::json::parse(json);
    CHECK(parsed["scenario"] == "etale-jets");
    CHECK(parsed["overall"] == "pass");
    REQUIRE(parsed["checks"].is_array());
    for (const auto& c : parsed["checks"]) {
      CHECK(c.contains("name"));
      CHECK(c.contains("verdict"));
      CHECK(c.contains("evidence"));
    }
  }

  SECTION("failing checks flip the overall verdict") {
    ScenarioReport fake;
    fake.scenario = "fake";
    fake.checks.push_back({"ok", CheckResult::Verdict::Pass, ""});
    fake.checks.push_back({"broken", CheckResult::Verdict::Fail, "nope"});
    CHECK_FALSE(fake.overall());
    CHECK(render_report(fake, "text").find("OVERALL: FAIL") !=
          std::string::npos);
  }
}

TEST_CASE("reports are deterministic across runs") {
  for (const auto& name : scenario_names()) {
    std::string a = render_report(run_scenario(name), "text");
    std::string b = render_report(run_scenario(name), "text");
    CHECK(a == b);
    std::string ja = render_report(run_scenario(name), "json");
    std::string jb = render_report(run_scenario(name), "json");
    CHECK(ja == jb);
  }
}

TEST_CASE("certificate polynomials in evidence strings re-parse") {
  // the separating generator printed by the cusp scenario is a polynomial
  // in the level-1 jet variables of the cusp
  ScenarioReport rep = run_scenario("kolchin-cusp-jets");
  std::string evidence;
  for (const auto& c : rep.checks)
    if (c.name == "separating-generator") evidence = c.evidence;
  REQUIRE(!evidence.empty());
  auto spec = parse_variety("field: QQ\nvars: x y\ngens: y^2 - x^3");
  JetIdeal J = jet_ideal(spec.gens, 1);
  Polynomial g = parse_polynomial(evidence, J.jet_context(), spec.field);
  CHECK_FALSE(g.is_zero());
  // and it is a genuine member of the saturation it came from
  Polynomial x0 = Polynomial::variable(J.jet_context(), spec.field,
                                       *J.jet_context()->index_of("x0"));
  CHECK(ideal_member(g, saturate(J.ideal(), x0)));
}
