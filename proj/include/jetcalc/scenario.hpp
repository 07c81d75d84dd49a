#ifndef JETCALC_SCENARIO_HPP
#define JETCALC_SCENARIO_HPP

#include <cstdint>
#include <functional>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"
#include "jetcalc/groebner.hpp"
#include "jetcalc/jet.hpp"
#include "jetcalc/lift.hpp"
#include "jetcalc/parse.hpp"
#include "jetcalc/polynomial.hpp"
#include "jetcalc/smooth.hpp"

namespace jetcalc {

struct CheckResult {
  enum class Verdict { Pass, Fail, Error };
  std::string name;
  Verdict verdict = Verdict::Error;
  std::string evidence;
};

/// A named scenario run: ordered checks with one-line evidence strings;
/// the overall verdict is the conjunction.
struct ScenarioReport {
  std::string scenario;
  std::vector<CheckResult> checks;

  bool overall() const {
    for (const auto& c : checks)
      if (c.verdict != CheckResult::Verdict::Pass) return false;
    return true;
  }
};

struct ScenarioOptions {
  int p = 2;                      // characteristic parameter
  int n = -1;                     // level parameter; -1 uses the default
  std::uint64_t seed = 20240915;  // fixed default keeps output reproducible
  std::uint64_t step_limit = 200000;
  std::uint64_t budget = 10000000;
};

inline std::string render_report(const ScenarioReport& r,
                                 const std::string& format = "text") {
  if (format == "json") {
    nlohmann::json j;
    j["scenario"] = r.scenario;
    j["checks"] = nlohmann::json::array();
    for (const auto& c : r.checks) {
      const char* v = c.verdict == CheckResult::Verdict::Pass   ? "pass"
                      : c.verdict == CheckResult::Verdict::Fail ? "fail"
                                                                : "error";
      j["checks"].push_back(
          {{"name", c.name}, {"verdict", v}, {"evidence", c.evidence}});
    }
    j["overall"] = r.overall() ? "pass" : "fail";
    return j.dump(2) + "\n";
  }
  if (format != "text") throw Error("unknown report format: " + format);
  std::string out = "scenario: " + r.scenario + "\n";
  for (const auto& c : r.checks) {
    const char* v = c.verdict == CheckResult::Verdict::Pass   ? "PASS "
                    : c.verdict == CheckResult::Verdict::Fail ? "FAIL "
                                                              : "ERROR";
    out += "  [" + std::string(v) + "] " + c.name + ": " + c.evidence + "\n";
  }
  out += std::string("OVERALL: ") + (r.overall() ? "PASS" : "FAIL") + "\n";
  return out;
}

namespace detail {

class ScenarioRun {
 public:
  explicit ScenarioRun(std::string name) { rep_.scenario = std::move(name); }

  /// Runs one named check; exceptions become error verdicts with the
  /// message as evidence.
  bool check(const std::string& name,
             const std::function<std::pair<bool, std::string>()>& body) {
    CheckResult c;
    c.name = name;
    try {
      auto [ok, evidence] = body();
      c.verdict = ok ? CheckResult::Verdict::Pass : CheckResult::Verdict::Fail;
      c.evidence = evidence;
    } catch (const std::exception& e) {
      c.verdict = CheckResult::Verdict::Error;
      c.evidence = e.what();
    }
    rep_.checks.push_back(c);
    return rep_.checks.back().verdict == CheckResult::Verdict::Pass;
  }

  ScenarioReport finish() { return rep_; }

 private:
  ScenarioReport rep_;
};

/// Small deterministic polynomial sampler for the randomized identities.
inline Polynomial random_polynomial(std::mt19937_64& rng,
                                    const ContextPtr& ctx,
                                    const FieldPtr& field, int max_degree,
                                    int terms) {
  std::vector<Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m(ctx->size());
    int budget = static_cast<int>(rng() % (max_degree + 1));
    for (int d = 0; d < budget; ++d)
      m.bump(rng() % ctx->size(), 1);
    long long c = static_cast<long long>(rng() % 9) - 4;
    FieldElement fe = field->from_integer(c);
    if (fe.is_zero()) continue;
    out.push_back({std::move(m), std::move(fe)});
  }
  return Polynomial::from_terms(ctx, field, std::move(out));
}

struct CountSurface {
  FieldPtr field;       // Fp(p)(a)
  ContextPtr ctx;       // x, y, z
  Polynomial f;         // x^p + y z^p - a
  FieldElement a;
  std::uint64_t p;
};

inline CountSurface make_count_surface(std::uint64_t p) {
  CountSurface s;
  s.p = p;
  auto Fp = FieldDescriptor::prime_field(p);
  s.field = FieldDescriptor::rational_functions(Fp, "a");
  s.a = s.field->named_generator("a").value();
  s.ctx = VariableContext::make({"x", "y", "z"});
  Polynomial x = Polynomial::variable(s.ctx, s.field, 0);
  Polynomial y = Polynomial::variable(s.ctx, s.field, 1);
  Polynomial z = Polynomial::variable(s.ctx, s.field, 2);
  s.f = x.pow(p) + y * z.pow(p) - Polynomial::constant(s.ctx, s.a);
  return s;
}

struct CuspCurve {
  FieldPtr field;
  ContextPtr ctx;  // x, y
  Polynomial f;    // y^2 - x^3
};

inline CuspCurve make_cusp(const FieldPtr& field) {
  CuspCurve c;
  c.field = field;
  c.ctx = VariableContext::make({"x", "y"});
  Polynomial x = Polynomial::variable(c.ctx, field, 0);
  Polynomial y = Polynomial::variable(c.ctx, field, 1);
  c.f = y * y - x * x * x;
  return c;
}

inline bool all_zero(const std::vector<FieldElement>& v) {
  for (const auto& e : v)
    if (!e.is_zero()) return false;
  return true;
}

// -------------------------------------------------------------------------
// Scenario bodies

inline ScenarioReport scenario_count_counterexample(
    const ScenarioOptions& opts) {
  ScenarioRun run("count-counterexample");
  GroebnerOptions gopts{opts.step_limit};
  std::uint64_t p = static_cast<std::uint64_t>(opts.p);
  CountSurface s = make_count_surface(p);
  JetIdeal J = jet_ideal({s.f}, 1);
  const ContextPtr& jc = J.jet_context();
  FieldPtr k = s.field;
  Polynomial y1 = Polynomial::variable(jc, k, *jc->index_of("y1"));
  Polynomial z0 = Polynomial::variable(jc, k, *jc->index_of("z0"));
  Ideal I = J.ideal();

  run.check("F1-form", [&]() -> std::pair<bool, std::string> {
    Polynomial expected = y1 * z0.pow(p);
    return {J.F(1, 0) == expected, "F_1 = " + J.F(1, 0).str()};
  });

  auto Fpu = FieldDescriptor::rational_functions(
      FieldDescriptor::prime_field(p), "u");
  FieldElement u = Fpu->named_generator("u").value();
  FieldHom h(k, Fpu, {{"a", u.pow(p)}});
  bool witness_ok = run.check(
      "witness-point", [&]() -> std::pair<bool, std::string> {
        TruncatedArc arc(s.ctx, Fpu, 1,
                         {{u, Fpu->zero()},
                          {Fpu->zero(), Fpu->one()},
                          {Fpu->zero(), Fpu->zero()}});
        bool ok = all_zero(evaluate_jet_point(J, h, arc));
        return {ok, "arc " + arc.str() + " over " + Fpu->str() +
                        " with a = u^" + std::to_string(p) +
                        " satisfies J_1, with y1 = 1"};
      });

  Ideal sat = saturate(I, z0, gopts);
  bool sat_ok = run.check(
      "saturation-contains-y1", [&]() -> std::pair<bool, std::string> {
        bool member = ideal_member(y1, sat, gopts);
        return {member,
                "y1 lies in J_1 : z0^oo, so the witness (y1 = 1) avoids "
                "V(J_1 : z0^oo)"};
      });

  bool unit_ok = run.check(
      "z0-unit-point", [&]() -> std::pair<bool, std::string> {
        TruncatedArc arc(s.ctx, k, 1,
                         {{k->zero(), k->zero()},
                          {s.a, k->zero()},
                          {k->one(), k->zero()}});
        bool ok = all_zero(evaluate_jet_point(J, arc));
        return {ok, "arc " + arc.str() +
                        " satisfies J_1 with z0 = 1, leaving V(J_1 + (z0))"};
      });

  run.check("two-cover-reducibility", [&]() -> std::pair<bool, std::string> {
    bool cover = true;
    for (const auto& g : sat.generators())
      if (!radical_member(z0 * g, I, gopts)) cover = false;
    bool ok = cover && witness_ok && sat_ok && unit_ok;
    return {ok,
            "V(J_1) = V(J_1 + (z0)) u V(J_1 : z0^oo), both parts proper: "
            "the level-1 jet scheme is reducible"};
  });

  run.check("claim1-nonsmooth-locus", [&]() -> std::pair<bool, std::string> {
    Ideal nsm = nonsmooth_ideal({s.f}, 1);
    int dim = krull_dimension(nsm, gopts);
    Polynomial z = Polynomial::variable(s.ctx, k, 2);
    Ideal fz(s.ctx, k, {s.f, z});
    bool radical_eq = true;
    for (const auto& g : nsm.generators())
      if (!radical_member(g, fz, gopts)) radical_eq = false;
    for (const auto& g : fz.generators())
      if (!radical_member(g, nsm, gopts)) radical_eq = false;
    bool ok = dim == 1 && radical_eq;
    return {ok, "nSm ideal (f, z^" + std::to_string(p) +
                    ") has dimension 1 and radical equal to rad(f, z)"};
  });

  return run.finish();
}

inline ScenarioReport scenario_kolchin_cusp(const ScenarioOptions& opts) {
  ScenarioRun run("kolchin-cusp-jets");
  GroebnerOptions gopts{opts.step_limit};
  CuspCurve c = make_cusp(FieldDescriptor::rationals());
  const FieldPtr& Q = c.field;
  JetIdeal J = jet_ideal({c.f}, 1);
  const ContextPtr& jc = J.jet_context();
  Ideal I = J.ideal();
  Polynomial x0 = Polynomial::variable(jc, Q, *jc->index_of("x0"));
  Polynomial y0 = Polynomial::variable(jc, Q, *jc->index_of("y0"));
  Ideal origin_fiber(jc, Q, {x0, y0});
  GroebnerBasis Gfiber = groebner_default(origin_fiber, gopts);

  run.check("origin-fiber-inside-jets", [&]() -> std::pair<bool, std::string> {
    for (const auto& g : I.generators())
      if (!ideal_member(g, Gfiber, gopts)) return {false, g.str()};
    return {true,
            "every generator of J_1 lies in (x0, y0): the fiber over the "
            "origin sits inside the jet scheme"};
  });

  Ideal M = saturate(I, x0, gopts);
  run.check("separating-generator", [&]() -> std::pair<bool, std::string> {
    for (const auto& g : M.generators())
      if (!ideal_member(g, Gfiber, gopts))
        return {true, g.str()};
    return {false, "all saturation generators vanish on the origin fiber"};
  });

  run.check("two-cover-reducibility", [&]() -> std::pair<bool, std::string> {
    bool cover = true;
    for (const auto& g : M.generators())
      if (!radical_member(x0 * g, I, gopts)) cover = false;
    // a smooth-part point outside the origin fiber
    TruncatedArc smooth(c.ctx, Q, 1,
                        {{Q->one(), Q->one()},
                         {Q->one(), Q->from_rational(mpq_class(3, 2))}});
    bool off_fiber = all_zero(evaluate_jet_point(J, smooth));
    return {cover && off_fiber,
            "V(J_1) = V(J_1 + (x0)) u V(J_1 : x0^oo) and both parts are "
            "proper: L_1(cusp) is reducible"};
  });

  run.check("shared-origin-jet", [&]() -> std::pair<bool, std::string> {
    TruncatedArc origin = constant_jet(c.ctx, Q, {c.f},
                                       {Q->zero(), Q->zero()}, 1);
    std::vector<FieldElement> pt = origin.jet_point(jc);
    for (const auto& g : M.generators())
      if (!g.evaluate(pt).is_zero())
        return {false, "saturation generator " + g.str() +
                           " misses the constant jet at the origin"};
    bool fiber_zero = x0.evaluate(pt).is_zero() && y0.evaluate(pt).is_zero();
    return {fiber_zero,
            "the constant jet at the origin lies in both parts, so the "
            "union stays connected"};
  });

  return run.finish();
}

inline ScenarioReport scenario_remark_inseparable(const ScenarioOptions& opts) {
  ScenarioRun run("remark-inseparable-jets");
  GroebnerOptions gopts{opts.step_limit};
  std::uint64_t p = static_cast<std::uint64_t>(opts.p);
  int n = opts.n < 0 ? 6 : opts.n;
  auto k = FieldDescriptor::rational_functions(
      FieldDescriptor::prime_field(p), "a");
  FieldElement a = k->named_generator("a").value();
  ContextPtr ctx = VariableContext::make({"x"});
  Polynomial f =
      Polynomial::variable(ctx, k, 0).pow(p) - Polynomial::constant(ctx, a);
  JetIdeal J = jet_ideal({f}, n);
  Ideal I = J.ideal();
  const ContextPtr& jc = J.jet_context();

  run.check("x0-stays-out-of-radical", [&]() -> std::pair<bool, std::string> {
    Polynomial x0 = Polynomial::variable(jc, k, *jc->index_of("x0"));
    bool member = radical_member(x0, I, gopts);
    return {!member,
            "x0 is not in rad(J_" + std::to_string(n) +
                "): F_0 = x0^" + std::to_string(p) + " - a keeps x0 nonzero"};
  });

  run.check("radical-pattern", [&]() -> std::pair<bool, std::string> {
    std::string in, out;
    for (int i = 0; i <= n; ++i) {
      Polynomial xi = Polynomial::variable(
          jc, k, *jc->index_of("x" + std::to_string(i)));
      bool expected = i >= 1 && static_cast<std::uint64_t>(i) * p <=
                                    static_cast<std::uint64_t>(n);
      bool got = radical_member(xi, I, gopts);
      if (got != expected)
        return {false, "x" + std::to_string(i) + " disagrees with the " +
                           "pattern 1 <= i and i*p <= n"};
      ((expected ? in : out) += " ") += "x" + std::to_string(i);
    }
    return {true, "rad(J_" + std::to_string(n) + ") contains" +
                      (in.empty() ? " none" : in) + "; excludes" + out};
  });

  return run.finish();
}

inline ScenarioReport scenario_etale_jets(const ScenarioOptions& opts) {
  ScenarioRun run("etale-jets");
  GroebnerOptions gopts{opts.step_limit};
  int n = opts.n < 0 ? 3 : opts.n;
  auto Q = FieldDescriptor::rationals();
  ContextPtr ctx = VariableContext::make({"x"});
  Polynomial f = Polynomial::variable(ctx, Q, 0).pow(2) +
                 Polynomial::constant(ctx, Q->one());
  JetIdeal J = jet_ideal({f}, n);
  GroebnerBasis G = groebner_default(J.ideal(), gopts);

  run.check("higher-jets-vanish", [&]() -> std::pair<bool, std::string> {
    std::string members;
    for (int i = 1; i <= n; ++i) {
      Polynomial xi = Polynomial::variable(
          J.jet_context(), Q, *J.jet_context()->index_of("x" + std::to_string(i)));
      if (!ideal_member(xi, G, gopts))
        return {false, "x" + std::to_string(i) + " is not in J_" +
                           std::to_string(n)};
      members += (i > 1 ? ", " : "") + std::string("x") + std::to_string(i);
    }
    return {true, "x^2+1 is etale over QQ: " + members + " lie in J_" +
                      std::to_string(n) +
                      ", so truncation to the base is one-to-one"};
  });

  return run.finish();
}

inline ScenarioReport scenario_tangent_scheme(const ScenarioOptions& opts) {
  ScenarioRun run("tangent-scheme");
  std::vector<FieldPtr> fields = {FieldDescriptor::rationals(),
                                  FieldDescriptor::prime_field(2),
                                  FieldDescriptor::prime_field(5)};
  for (const auto& field : fields) {
    std::string label =
        "F1-linearity-char-" + std::to_string(field->characteristic());
    run.check(label, [&]() -> std::pair<bool, std::string> {
      std::mt19937_64 rng(opts.seed + field->characteristic());
      ContextPtr ctx = VariableContext::make({"x", "y", "z"});
      int trials = 25;
      for (int t = 0; t < trials; ++t) {
        Polynomial g = random_polynomial(rng, ctx, field, 3, 5);
        if (g.is_zero()) continue;
        JetIdeal J = JetIdeal::build(ctx, field, {g}, 1);
        Polynomial expected =
            Polynomial::zero(J.jet_context(), field);
        for (std::size_t j = 0; j < ctx->size(); ++j) {
          Polynomial dj = J.lift_to_level_zero(g.derivative(j));
          Polynomial vj = Polynomial::variable(
              J.jet_context(), field,
              J.jet_context()->jet_var(static_cast<int>(j), 1));
          expected += dj * vj;
        }
        if (J.F(1, 0) != expected)
          return {false, "counterexample generator: " + g.str()};
      }
      return {true,
              "F_1 equals the Jacobian pairing with the level-1 variables "
              "on " + std::to_string(trials) + " random generators"};
    });
  }
  return run.finish();
}

inline ScenarioReport scenario_nilpotent_shadow(const ScenarioOptions& opts) {
  ScenarioRun run("nilpotent-shadow");
  GroebnerOptions gopts{opts.step_limit};
  int n = opts.n < 0 ? 4 : opts.n;
  auto Q = FieldDescriptor::rationals();
  ContextPtr ctx = VariableContext::make({"x"});
  Polynomial f = Polynomial::variable(ctx, Q, 0).pow(2);
  JetIdeal J = jet_ideal({f}, n);
  Ideal I = J.ideal();

  run.check("radical-pattern", [&]() -> std::pair<bool, std::string> {
    for (int i = 0; i <= n; ++i) {
      Polynomial xi = Polynomial::variable(
          J.jet_context(), Q, *J.jet_context()->index_of("x" + std::to_string(i)));
      bool expected = 2 * i <= n;
      if (radical_member(xi, I, gopts) != expected)
        return {false, "x" + std::to_string(i) + " disagrees at level " +
                           std::to_string(n)};
    }
    return {true, "x_i is nilpotent on the jets of Spec QQ[x]/(x^2) exactly "
                  "when 2i <= " + std::to_string(n)};
  });

  return run.finish();
}

inline ScenarioReport scenario_affine_fibration(const ScenarioOptions& opts) {
  ScenarioRun run("affine-fibration");
  GroebnerOptions gopts{opts.step_limit};
  auto Q = FieldDescriptor::rationals();
  static const std::vector<std::string> kNames = {"u", "v", "w"};
  run.check("jet-dimension-formula", [&]() -> std::pair<bool, std::string> {
    for (int d = 1; d <= 3; ++d) {
      ContextPtr ctx = VariableContext::make(
          std::vector<std::string>(kNames.begin(), kNames.begin() + d));
      for (int n = 0; n <= 3; ++n) {
        JetIdeal J = JetIdeal::build(ctx, Q, {}, n);
        int dim = krull_dimension(J.ideal(), gopts);
        if (dim != (n + 1) * d)
          return {false, "dim L_" + std::to_string(n) + "(A^" +
                             std::to_string(d) + ") = " + std::to_string(dim)};
      }
    }
    return {true,
            "dim L_n(A^d) = (n+1)d for all d <= 3, n <= 3 (trivial "
            "fibration over the base)"};
  });
  return run.finish();
}

inline ScenarioReport scenario_base_change(const ScenarioOptions& opts) {
  ScenarioRun run("base-change-naturality");
  (void)opts;
  std::uint64_t p = 2;
  auto F2s = FieldDescriptor::rational_functions(
      FieldDescriptor::prime_field(p), "s");
  auto F2u = FieldDescriptor::rational_functions(
      FieldDescriptor::prime_field(p), "u");
  FieldElement s = F2s->named_generator("s").value();
  FieldElement u = F2u->named_generator("u").value();
  ContextPtr ctx = VariableContext::make({"x", "y", "z"});
  Polynomial x = Polynomial::variable(ctx, F2s, 0);
  Polynomial y = Polynomial::variable(ctx, F2s, 1);
  Polynomial z = Polynomial::variable(ctx, F2s, 2);
  Polynomial f = x * x + y * z * z - Polynomial::constant(ctx, s);
  FieldHom h(F2s, F2u, {{"s", u * u}});

  run.check("square-commutes", [&]() -> std::pair<bool, std::string> {
    JetIdeal J = jet_ideal({f}, 1);
    JetIdeal mapped = base_change_ideal(J, h);
    JetIdeal recomputed = jet_ideal({f.map_coefficients(h)}, 1);
    for (int i = 0; i <= 1; ++i)
      if (mapped.F(i, 0).str() != recomputed.F(i, 0).str())
        return {false, "F_" + std::to_string(i) + " differs: " +
                           mapped.F(i, 0).str() + " vs " +
                           recomputed.F(i, 0).str()};
    return {true, "generator-by-generator: F_0 = " + mapped.F(0, 0).str() +
                      "; F_1 = " + mapped.F(1, 0).str()};
  });
  return run.finish();
}

inline ScenarioReport scenario_wedge_shadow(const ScenarioOptions& opts) {
  ScenarioRun run("wedge-shadow");
  (void)opts;
  CuspCurve c = make_cusp(FieldDescriptor::rationals());
  WedgeIdeal W = iterated_jet_ideal({c.f}, 1, 1);

  run.check("generator-count", [&]() -> std::pair<bool, std::string> {
    std::size_t count = 0;
    for (int i1 = 0; i1 <= 1; ++i1)
      for (int i2 = 0; i2 <= 1; ++i2)
        if (!W.F(i1, i2, 0).is_zero()) ++count;
    Polynomial expected = parse_polynomial("y0_0^2 - x0_0^3",
                                           W.wedge_context(), W.field());
    bool ok = count == 4 && W.F(0, 0, 0) == expected;
    return {ok, "4 generators; F_(0,0) = " + W.F(0, 0, 0).str()};
  });

  run.check("index-swap-symmetry", [&]() -> std::pair<bool, std::string> {
    std::set<std::string> original, swapped;
    for (int i1 = 0; i1 <= 1; ++i1)
      for (int i2 = 0; i2 <= 1; ++i2) {
        original.insert(W.F(i1, i2, 0).str());
        swapped.insert(W.swap_indices(W.F(i1, i2, 0)).str());
      }
    return {original == swapped,
            "relabeling (i1,i2) -> (i2,i1) maps the generator set onto "
            "itself"};
  });

  run.check("specializes-to-jets", [&]() -> std::pair<bool, std::string> {
    WedgeIdeal W0 = iterated_jet_ideal({c.f}, 1, 0);
    JetIdeal J = jet_ideal({c.f}, 1);
    for (int i1 = 0; i1 <= 1; ++i1) {
      Polynomial collapsed =
          W0.collapse_to_jet(W0.F(i1, 0, 0), J.jet_context());
      if (collapsed != J.F(i1, 0))
        return {false, "order (1,0) coefficient t1^" + std::to_string(i1) +
                           " differs from the jet ideal"};
    }
    return {true, "orders (n,0) reproduce jet_ideal(f, n) up to renaming"};
  });

  return run.finish();
}

inline ScenarioReport scenario_greenberg_scan(const ScenarioOptions& opts) {
  ScenarioRun run("greenberg-scan");
  auto F5 = FieldDescriptor::prime_field(5);

  ContextPtr cctx = VariableContext::make({"x", "y"});
  Polynomial cx = Polynomial::variable(cctx, F5, 0);
  Polynomial cy = Polynomial::variable(cctx, F5, 1);
  Polynomial conic = cx * cx + cy * cy - Polynomial::constant(cctx, F5->one());
  Polynomial cusp = cy * cy - cx * cx * cx;

  auto sizes_str = [](const GreenbergScanReport& r) {
    std::string s = "sizes";
    for (const auto& [m, n] : r.image_sizes)
      s += " [m=" + std::to_string(m) + "] " + std::to_string(n);
    return s;
  };

  run.check("conic-hensel-constant", [&]() -> std::pair<bool, std::string> {
    GreenbergScanReport r =
        greenberg_scan(cctx, F5, {conic}, 5, 1, 3, opts.budget);
    bool ok = r.stabilization_observed && r.stabilization_level == 0 &&
              r.a_star == 1;
    for (const auto& [m, n] : r.image_sizes) ok = ok && n == 4;
    return {ok, sizes_str(r) + "; smooth conic stabilizes immediately, a* = 1"};
  });

  for (int nu : {1, 2}) {
    run.check("cusp-stabilizes-nu" + std::to_string(nu),
              [&]() -> std::pair<bool, std::string> {
                GreenbergScanReport r =
                    greenberg_scan(cctx, F5, {cusp}, 5, nu, 4, opts.budget);
                bool monotone = true;
                for (std::size_t i = 1; i < r.image_sizes.size(); ++i)
                  if (r.image_sizes[i].second > r.image_sizes[i - 1].second)
                    monotone = false;
                return {monotone && r.stabilization_observed,
                        sizes_str(r) + "; stabilized from m=" +
                            std::to_string(r.stabilization_level)};
              });
  }

  run.check("hensel-cross-oracle", [&]() -> std::pair<bool, std::string> {
    for (int nu : {1, 2}) {
      auto levels = enumerate_jet_levels(cctx, F5, {cusp}, 5, 4, opts.budget);
      EnumeratedJets stable = image_truncation(levels[4], nu - 1);
      EnumeratedJets candidates = levels[static_cast<std::size_t>(nu - 1)];
      std::size_t lifted = 0;
      for (const auto& pt : candidates.points) {
        TruncatedArc arc = candidates.to_arc(pt, F5);
        std::vector<FieldElement> res = arc.residue_point();
        std::size_t solve_var = cctx->size();
        for (std::size_t j = 0; j < cctx->size(); ++j) {
          if (!cusp.derivative(j).evaluate(res).is_zero()) {
            solve_var = j;
            break;
          }
        }
        if (solve_var == cctx->size()) continue;  // singular center
        LiftProblem lp;
        lp.base_ctx = cctx;
        lp.field = F5;
        lp.gens = {cusp};
        lp.nu = nu;
        lp.target_level = 4;
        lp.solved = {cctx->name(solve_var)};
        for (std::size_t j = 0; j < cctx->size(); ++j)
          lp.input[cctx->name(j)] = arc.coords()[j];
        TruncatedArc up = hensel_lift(lp);
        // soundness plus membership of the truncation in the stable image
        std::vector<std::uint64_t> flat;
        for (int i = 0; i < nu; ++i)
          for (std::size_t j = 0; j < cctx->size(); ++j)
            flat.push_back(up.coords()[j][static_cast<std::size_t>(i)]
                               .residue());
        if (!stable.points.count(flat))
          return {false, "lifted point missing from the stable image: " +
                             arc.str()};
        ++lifted;
      }
      if (lifted == 0) return {false, "no smooth-center points found"};
    }
    return {true,
            "every Hensel-liftable smooth-center point lies in the "
            "stabilized image (nu = 1 and 2)"};
  });

  return run.finish();
}

}  // namespace detail

inline std::vector<std::string> scenario_names() {
  return {"count-counterexample", "kolchin-cusp-jets",
          "remark-inseparable-jets", "etale-jets",
          "tangent-scheme", "nilpotent-shadow",
          "affine-fibration", "base-change-naturality",
          "wedge-shadow", "greenberg-scan"};
}

/// Runs a registered scenario and returns its deterministic report.
inline ScenarioReport run_scenario(const std::string& name,
                                   const ScenarioOptions& opts = {}) {
  if (name == "count-counterexample")
    return detail::scenario_count_counterexample(opts);
  if (name == "kolchin-cusp-jets") return detail::scenario_kolchin_cusp(opts);
  if (name == "remark-inseparable-jets")
    return detail::scenario_remark_inseparable(opts);
  if (name == "etale-jets") return detail::scenario_etale_jets(opts);
  if (name == "tangent-scheme") return detail::scenario_tangent_scheme(opts);
  if (name == "nilpotent-shadow")
    return detail::scenario_nilpotent_shadow(opts);
  if (name == "affine-fibration")
    return detail::scenario_affine_fibration(opts);
  if (name == "base-change-naturality")
    return detail::scenario_base_change(opts);
  if (name == "wedge-shadow") return detail::scenario_wedge_shadow(opts);
  if (name == "greenberg-scan") return detail::scenario_greenberg_scan(opts);
  throw UnknownScenario(name);
}

}  // namespace jetcalc

#endif  // JETCALC_SCENARIO_HPP
