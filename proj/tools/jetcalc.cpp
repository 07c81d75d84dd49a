// Command-line surface for the jet-scheme toolkit: jet ideals, Groebner
// queries, Hensel lifting, finite-field enumeration, Greenberg scans, and
// the named verification scenarios. Output is deterministic; --format json
// switches every verb to a machine-readable report.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jetcalc/errors.hpp"
#include "jetcalc/groebner.hpp"
#include "jetcalc/jet.hpp"
#include "jetcalc/lift.hpp"
#include "jetcalc/parse.hpp"
#include "jetcalc/scenario.hpp"
#include "jetcalc/smooth.hpp"

namespace {

using namespace jetcalc;

constexpr int kExitPass = 0;
constexpr int kExitCheckFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitLimit = 3;

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_commas(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

struct GlobalFlags {
  std::string format = "text";
  std::uint64_t step_limit = 200000;
};

void print_generators(const std::vector<Polynomial>& gens,
                      const GlobalFlags& g, const std::string& key) {
  if (g.format == "json") {
    nlohmann::json j;
    j[key] = nlohmann::json::array();
    for (const auto& p : gens) j[key].push_back(p.str());
    std::cout << j.dump(2) << "\n";
  } else {
    if (gens.empty()) {
      std::cout << "(0)\n";
      return;
    }
    for (const auto& p : gens) std::cout << p.str() << "\n";
  }
}

int cmd_jet(const std::string& file, int order, const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  JetIdeal J = JetIdeal::build(spec.ctx, spec.field, spec.gens, order);
  if (g.format == "json") {
    nlohmann::json j;
    j["field"] = spec.field->str();
    j["level"] = order;
    j["variables"] = J.jet_context()->names();
    j["generators"] = nlohmann::json::array();
    for (int i = 0; i <= order; ++i)
      for (std::size_t k = 0; k < J.generator_count(); ++k)
        j["generators"].push_back({{"level", i},
                                   {"generator", k},
                                   {"poly", J.F(i, k).str()}});
    std::cout << j.dump(2) << "\n";
  } else {
    for (int i = 0; i <= order; ++i)
      for (std::size_t k = 0; k < J.generator_count(); ++k)
        std::cout << "F[" << i << "][" << k << "] = " << J.F(i, k).str()
                  << "\n";
  }
  return kExitPass;
}

int cmd_gb(const std::string& file, const std::string& order_name,
           const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  Ideal I(spec.ctx, spec.field, spec.gens);
  MonomialOrder ord = order_name == "lex" ? MonomialOrder::lex(spec.ctx)
                                          : MonomialOrder::degrevlex(spec.ctx);
  GroebnerBasis G = buchberger_reduced(I, ord, {g.step_limit});
  print_generators(G.basis(), g, "basis");
  return kExitPass;
}

int cmd_dim(const std::string& file, const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  int d = krull_dimension(Ideal(spec.ctx, spec.field, spec.gens),
                          {g.step_limit});
  if (g.format == "json")
    std::cout << nlohmann::json{{"dimension", d}}.dump(2) << "\n";
  else
    std::cout << d << "\n";
  return kExitPass;
}

int cmd_nsm(const std::string& file, const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  std::size_t codim = spec.codim.value_or(1);
  Ideal nsm = nonsmooth_ideal(spec.gens, codim);
  print_generators(nsm.generators(), g, "generators");
  return kExitPass;
}

int cmd_member(const std::string& poly, const std::string& file, bool radical,
               const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  Polynomial f = parse_polynomial(poly, spec.ctx, spec.field);
  Ideal I(spec.ctx, spec.field, spec.gens);
  bool member = radical ? radical_member(f, I, {g.step_limit})
                        : ideal_member(f, I, {g.step_limit});
  if (g.format == "json")
    std::cout << nlohmann::json{{"member", member}}.dump(2) << "\n";
  else
    std::cout << (member ? "true" : "false") << "\n";
  return member ? kExitPass : kExitCheckFailure;
}

int cmd_saturate(const std::string& poly, const std::string& file,
                 const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  Polynomial f = parse_polynomial(poly, spec.ctx, spec.field);
  Ideal sat = saturate(Ideal(spec.ctx, spec.field, spec.gens), f,
                       {g.step_limit});
  print_generators(sat.generators(), g, "generators");
  return kExitPass;
}

int cmd_lift(const std::string& file, const std::string& arc_spec,
             const std::string& solve, int to_level, int nu_flag,
             const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  LiftProblem p;
  p.base_ctx = spec.ctx;
  p.field = spec.field;
  p.gens = spec.gens;
  p.input = parse_arc_coefficients(arc_spec, spec.field);
  p.solved = split_commas(solve);
  p.target_level = to_level;
  if (nu_flag > 0) {
    p.nu = nu_flag;
  } else {
    // default: the solved variables are given exactly modulo t^nu
    std::size_t shortest = 0;
    bool seen = false;
    for (const auto& name : p.solved) {
      auto it = p.input.find(name);
      if (it == p.input.end())
        throw Error("solved variable " + name + " missing from --arc");
      if (!seen || it->second.size() < shortest) shortest = it->second.size();
      seen = true;
    }
    if (!seen || shortest == 0)
      throw Error("cannot infer nu from the arc; pass --nu");
    p.nu = static_cast<int>(shortest);
  }
  TruncatedArc out = hensel_lift(p);
  if (g.format == "json") {
    nlohmann::json j;
    j["nu"] = p.nu;
    j["level"] = out.level();
    j["arc"] = out.str();
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << out.str() << "\n";
  }
  return kExitPass;
}

int cmd_enumerate(const std::string& file, std::uint64_t q, int order,
                  std::uint64_t budget, const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  EnumeratedJets S =
      enumerate_jets(spec.ctx, spec.field, spec.gens, q, order, budget);
  if (g.format == "json") {
    nlohmann::json j;
    j["q"] = q;
    j["level"] = order;
    j["count"] = S.points.size();
    j["points"] = nlohmann::json::array();
    for (const auto& pt : S.points)
      j["points"].push_back(S.to_arc(pt, spec.field).str());
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << S.points.size() << " points\n";
    for (const auto& pt : S.points)
      std::cout << S.to_arc(pt, spec.field).str() << "\n";
  }
  return kExitPass;
}

int cmd_greenberg(const std::string& file, std::uint64_t q, int nu, int m_max,
                  std::uint64_t budget, const GlobalFlags& g) {
  VarietySpec spec = parse_variety(read_file(file));
  GreenbergScanReport r =
      greenberg_scan(spec.ctx, spec.field, spec.gens, q, nu, m_max, budget);
  if (g.format == "json") {
    nlohmann::json j;
    j["q"] = r.q;
    j["nu"] = r.nu;
    j["m_max"] = r.m_max;
    j["image_sizes"] = nlohmann::json::array();
    for (const auto& [m, size] : r.image_sizes)
      j["image_sizes"].push_back({{"m", m}, {"size", size}});
    j["stabilization_observed"] = r.stabilization_observed;
    j["stabilization_level"] = r.stabilization_level;
    j["a_star"] = r.a_star;
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << r.str();
  }
  return kExitPass;
}

int cmd_verify(const std::string& name, const ScenarioOptions& opts,
               const GlobalFlags& g) {
  ScenarioReport rep = run_scenario(name, opts);
  std::cout << render_report(rep, g.format);
  return rep.overall() ? kExitPass : kExitCheckFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact jet-scheme and arc-lifting toolkit"};
  app.require_subcommand(1);

  GlobalFlags flags;
  app.add_option("--format", flags.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--step-limit", flags.step_limit,
                 "Groebner pair reduction cap")
      ->capture_default_str();

  std::string file, poly, arc_spec, solve, scenario, gb_order = "degrevlex";
  int order = 1, to_level = 1, nu = 0, m_max = 3;
  std::uint64_t q = 5, budget = 10000000;
  ScenarioOptions sopts;

  auto* jet = app.add_subcommand("jet", "expand a jet ideal");
  jet->add_option("file", file)->required();
  jet->add_option("--order", order, "jet level n")->required();

  auto* gb = app.add_subcommand("gb", "reduced Groebner basis");
  gb->add_option("file", file)->required();
  gb->add_option("--order", gb_order, "monomial order")
      ->check(CLI::IsMember({"lex", "degrevlex"}));

  auto* dim = app.add_subcommand("dim", "Krull dimension of the quotient");
  dim->add_option("file", file)->required();

  auto* nsm = app.add_subcommand("nsm", "non-smooth locus ideal");
  nsm->add_option("file", file)->required();

  auto* member = app.add_subcommand("member", "ideal membership");
  member->add_option("poly", poly)->required();
  member->add_option("file", file)->required();

  auto* radical = app.add_subcommand("radical-member", "radical membership");
  radical->add_option("poly", poly)->required();
  radical->add_option("file", file)->required();

  auto* sat = app.add_subcommand("saturate", "saturation I : f^oo");
  sat->add_option("poly", poly)->required();
  sat->add_option("file", file)->required();

  auto* lift = app.add_subcommand("lift", "Newton-Hensel arc lifting");
  lift->add_option("file", file)->required();
  lift->add_option("--arc", arc_spec, "input coefficients, e.g. x=(1,1);y=(1)")
      ->required();
  lift->add_option("--solve", solve, "solved variables, comma separated")
      ->required();
  lift->add_option("--to", to_level, "target level N")->required();
  lift->add_option("--nu", nu, "input modulus (default: inferred)");

  auto* enumerate = app.add_subcommand("enumerate", "all jets over Fq");
  enumerate->add_option("file", file)->required();
  enumerate->add_option("--q", q, "finite field size (prime)")->required();
  enumerate->add_option("--order", order, "jet level n")->required();
  enumerate->add_option("--budget", budget, "grid size cap")
      ->capture_default_str();

  auto* greenberg = app.add_subcommand("greenberg", "image stabilization scan");
  greenberg->add_option("file", file)->required();
  greenberg->add_option("--q", q, "finite field size (prime)")->required();
  greenberg->add_option("--nu", nu, "target modulus")->required();
  greenberg->add_option("--max", m_max, "largest source level")->required();
  greenberg->add_option("--budget", budget, "grid size cap")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "run a named scenario");
  verify->add_option("scenario", scenario)->required();
  verify->add_option("--p", sopts.p, "characteristic parameter");
  verify->add_option("--n", sopts.n, "level parameter");
  verify->add_option("--seed", sopts.seed, "seed for randomized checks");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*jet) return cmd_jet(file, order, flags);
    if (*gb) return cmd_gb(file, gb_order, flags);
    if (*dim) return cmd_dim(file, flags);
    if (*nsm) return cmd_nsm(file, flags);
    if (*member) return cmd_member(poly, file, false, flags);
    if (*radical) return cmd_member(poly, file, true, flags);
    if (*sat) return cmd_saturate(poly, file, flags);
    if (*lift) return cmd_lift(file, arc_spec, solve, to_level, nu, flags);
    if (*enumerate) return cmd_enumerate(file, q, order, budget, flags);
    if (*greenberg) return cmd_greenberg(file, q, nu, m_max, budget, flags);
    if (*verify) {
      sopts.step_limit = flags.step_limit;
      sopts.budget = budget;
      return cmd_verify(scenario, sopts, flags);
    }
  } catch (const StepLimitExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitLimit;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
