#ifndef JETCALC_LIFT_HPP
#define JETCALC_LIFT_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"
#include "jetcalc/jet.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

namespace detail {

/// Solves M x = rhs over an exact field by Gaussian elimination with
/// first-nonzero pivoting; a singular matrix raises SingularCenter.
inline std::vector<FieldElement> solve_linear(
    std::vector<std::vector<FieldElement>> M, std::vector<FieldElement> rhs,
    const FieldPtr& field) {
  std::size_t n = M.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = n;
    for (std::size_t r = col; r < n; ++r) {
      if (!M[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot == n)
      throw SingularCenter("Jacobian minor is singular at the residue point");
    std::swap(M[col], M[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    FieldElement inv = M[col][col].inverse();
    for (std::size_t c = col; c < n; ++c) M[col][c] *= inv;
    rhs[col] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || M[r][col].is_zero()) continue;
      FieldElement f = M[r][col];
      for (std::size_t c = col; c < n; ++c) M[r][c] -= f * M[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  (void)field;
  return rhs;
}

}  // namespace detail

/// Newton-Hensel lifting data: a square solved-variable selection (one per
/// generator) whose Jacobian minor is a unit at the residue point, an input
/// arc known modulo t^nu, and a target level. Unsolved variables keep their
/// given coefficients (absent entries default to zero).
struct LiftProblem {
  ContextPtr base_ctx;
  FieldPtr field;
  std::vector<Polynomial> gens;
  std::map<std::string, std::vector<FieldElement>> input;
  int nu = 1;
  int target_level = 0;
  std::vector<std::string> solved;
};

/// Lifts the input arc to the target level by solving, level by level, the
/// linear system whose matrix is the residue Jacobian on the solved
/// variables. The output satisfies the generators modulo t^{N+1} and agrees
/// with the input modulo t^nu.
inline TruncatedArc hensel_lift(const LiftProblem& p) {
  if (p.nu < 1) throw Error("lift needs nu >= 1");
  if (p.target_level < p.nu - 1)
    throw LevelOutOfRange("target level below the input level");
  if (p.solved.size() != p.gens.size())
    throw Error("need exactly one solved variable per generator");
  if (p.gens.empty()) throw Error("lift needs at least one generator");

  std::vector<std::size_t> solved_idx;
  for (const auto& name : p.solved) {
    auto idx = p.base_ctx->index_of(name);
    if (!idx) throw UnknownVariable(name);
    if (std::find(solved_idx.begin(), solved_idx.end(), *idx) !=
        solved_idx.end())
      throw Error("solved variable listed twice: " + name);
    solved_idx.push_back(*idx);
  }

  int N = p.target_level;
  std::size_t nb = p.base_ctx->size();
  std::vector<std::vector<FieldElement>> coords(
      nb, std::vector<FieldElement>(static_cast<std::size_t>(N) + 1,
                                    p.field->zero()));
  for (std::size_t j = 0; j < nb; ++j) {
    auto it = p.input.find(p.base_ctx->name(j));
    std::size_t given = 0;
    if (it != p.input.end()) {
      for (std::size_t i = 0; i < it->second.size() &&
                              i <= static_cast<std::size_t>(N);
           ++i)
        coords[j][i] = it->second[i];
      given = it->second.size();
    }
    bool is_solved = std::find(solved_idx.begin(), solved_idx.end(), j) !=
                     solved_idx.end();
    if (given < static_cast<std::size_t>(p.nu))
      throw MissingAssignment(p.base_ctx->name(j) + " needs " +
                              std::to_string(p.nu) + " input coefficients");
    if (is_solved) {
      // coefficients of solved variables above the input modulus are
      // computed, not taken from the input
      for (std::size_t i = static_cast<std::size_t>(p.nu);
           i <= static_cast<std::size_t>(N); ++i)
        coords[j][i] = p.field->zero();
    }
  }

  // residue Jacobian on the solved variables
  std::vector<FieldElement> residue;
  for (std::size_t j = 0; j < nb; ++j) residue.push_back(coords[j][0]);
  std::vector<std::vector<FieldElement>> M;
  for (const auto& g : p.gens) {
    std::vector<FieldElement> row;
    for (std::size_t s : solved_idx)
      row.push_back(g.derivative(s).evaluate(residue));
    M.push_back(std::move(row));
  }

  JetIdeal J = JetIdeal::build(p.base_ctx, p.field, p.gens, N);
  auto jet_point = [&]() {
    TruncatedArc arc(p.base_ctx, p.field, N, coords);
    return arc.jet_point(J.jet_context());
  };

  std::vector<FieldElement> point = jet_point();
  for (int l = 0; l < p.nu; ++l)
    for (std::size_t g = 0; g < p.gens.size(); ++g)
      if (!J.F(l, g).evaluate(point).is_zero())
        throw ResidualNonzero("input arc fails generator " +
                              std::to_string(g) + " at t^" +
                              std::to_string(l));

  for (int l = p.nu; l <= N; ++l) {
    std::vector<FieldElement> rhs;
    for (std::size_t g = 0; g < p.gens.size(); ++g)
      rhs.push_back(-J.F(l, g).evaluate(point));
    std::vector<FieldElement> delta =
        detail::solve_linear(M, std::move(rhs), p.field);
    for (std::size_t s = 0; s < solved_idx.size(); ++s)
      coords[solved_idx[s]][static_cast<std::size_t>(l)] = delta[s];
    point = jet_point();
  }
  return TruncatedArc(p.base_ctx, p.field, N, std::move(coords));
}

// ---------------------------------------------------------------------------
// Exhaustive jet enumeration over small prime fields

/// The full set of level-n jet scheme points over F_q, stored as flattened
/// level-major coordinate vectors of residues.
struct EnumeratedJets {
  ContextPtr base_ctx;
  std::uint64_t q = 0;
  int level = 0;
  std::set<std::vector<std::uint64_t>> points;

  TruncatedArc to_arc(const std::vector<std::uint64_t>& pt,
                      const FieldPtr& field) const {
    std::size_t nb = base_ctx->size();
    std::vector<std::vector<FieldElement>> coords(
        nb, std::vector<FieldElement>(static_cast<std::size_t>(level) + 1,
                                      field->zero()));
    for (int i = 0; i <= level; ++i)
      for (std::size_t j = 0; j < nb; ++j)
        coords[j][static_cast<std::size_t>(i)] = field->from_integer(
            static_cast<long long>(pt[static_cast<std::size_t>(i) * nb + j]));
    return TruncatedArc(base_ctx, field, level, std::move(coords));
  }
};

namespace detail {

struct FastTerm {
  std::uint64_t coeff;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> pows;  // (var, exp)
};

struct FastPoly {
  std::vector<FastTerm> terms;

  static FastPoly compile(const Polynomial& f, std::uint64_t p) {
    FastPoly out;
    for (const auto& t : f.terms()) {
      FastTerm ft;
      ft.coeff = t.coeff.residue() % p;
      if (ft.coeff == 0) continue;
      for (std::size_t v = 0; v < f.context()->size(); ++v) {
        std::uint32_t e = t.mono.exponent(v);
        if (e)
          ft.pows.emplace_back(static_cast<std::uint32_t>(v), e);
      }
      out.terms.push_back(std::move(ft));
    }
    return out;
  }

  std::uint64_t eval(const std::vector<std::uint64_t>& pt,
                     std::uint64_t p) const {
    std::uint64_t acc = 0;
    for (const auto& t : terms) {
      std::uint64_t v = t.coeff;
      for (const auto& [var, e] : t.pows) {
        v = mulmod(v, powmod(pt[var], e, p), p);
        if (v == 0) break;
      }
      acc = addmod(acc, v, p);
    }
    return acc;
  }
};

inline void check_enumeration_budget(std::uint64_t q, std::size_t coords,
                                     std::uint64_t budget) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < coords; ++i) {
    total *= q;
    if (total > budget)
      throw BudgetExceeded("enumeration grid q^" + std::to_string(coords) +
                           " exceeds the budget of " +
                           std::to_string(budget) + " points");
  }
}

}  // namespace detail

/// Enumerates the jet scheme points over F_q level by level: level-i points
/// extend level-(i-1) points, and only F_0..F_i constrain the first i+1
/// coefficient blocks, so the search prunes as it deepens. Returns the sets
/// for every level 0..m_max.
inline std::vector<EnumeratedJets> enumerate_jet_levels(
    const ContextPtr& base_ctx, const FieldPtr& field,
    const std::vector<Polynomial>& gens, std::uint64_t q, int m_max,
    std::uint64_t budget = 10000000) {
  if (field->kind() != FieldKind::PrimeField || field->prime() != q)
    throw DescriptorMismatch(
        "enumeration needs the prime field Fp(q) as coefficient field");
  if (m_max < 0) throw LevelOutOfRange("enumeration level must be >= 0");
  std::size_t nb = base_ctx->size();
  detail::check_enumeration_budget(
      q, nb * (static_cast<std::size_t>(m_max) + 1), budget);

  JetIdeal J = JetIdeal::build(base_ctx, field, gens, m_max);
  std::vector<std::vector<detail::FastPoly>> F(m_max + 1);
  for (int i = 0; i <= m_max; ++i)
    for (std::size_t g = 0; g < gens.size(); ++g)
      F[static_cast<std::size_t>(i)].push_back(
          detail::FastPoly::compile(J.F(i, g), q));

  std::vector<EnumeratedJets> out;
  std::set<std::vector<std::uint64_t>> prev;
  prev.insert(std::vector<std::uint64_t>());
  for (int i = 0; i <= m_max; ++i) {
    EnumeratedJets level;
    level.base_ctx = base_ctx;
    level.q = q;
    level.level = i;
    for (const auto& stem : prev) {
      std::vector<std::uint64_t> pt = stem;
      pt.resize(stem.size() + nb, 0);
      // odometer over the new coefficient block
      while (true) {
        bool ok = true;
        for (const auto& f : F[static_cast<std::size_t>(i)]) {
          if (f.eval(pt, q) != 0) {
            ok = false;
            break;
          }
        }
        if (ok) level.points.insert(pt);
        std::size_t k = stem.size();
        while (k < pt.size()) {
          if (++pt[k] < q) break;
          pt[k] = 0;
          ++k;
        }
        if (k == pt.size()) break;
      }
    }
    prev = level.points;
    out.push_back(std::move(level));
  }
  return out;
}

/// All points of the level-n jet scheme over F_q.
inline EnumeratedJets enumerate_jets(const ContextPtr& base_ctx,
                                     const FieldPtr& field,
                                     const std::vector<Polynomial>& gens,
                                     std::uint64_t q, int level,
                                     std::uint64_t budget = 10000000) {
  auto levels =
      enumerate_jet_levels(base_ctx, field, gens, q, level, budget);
  return std::move(levels.back());
}

/// Truncations of every point to level n, deduplicated.
inline EnumeratedJets image_truncation(const EnumeratedJets& S, int n) {
  if (n < 0 || n > S.level)
    throw LevelOutOfRange("truncation level out of range");
  EnumeratedJets out;
  out.base_ctx = S.base_ctx;
  out.q = S.q;
  out.level = n;
  std::size_t keep = S.base_ctx->size() * (static_cast<std::size_t>(n) + 1);
  for (const auto& pt : S.points)
    out.points.insert(
        std::vector<std::uint64_t>(pt.begin(), pt.begin() + keep));
  return out;
}

// ---------------------------------------------------------------------------

/// Empirical Greenberg approximation data: cardinalities of the images of
/// the maps X(F_q[t]/t^{m+1}) -> X(F_q[t]/t^nu) for increasing source level
/// m, with the detected stabilization point. Here nu is a modulus (arcs
/// modulo t^nu), so source level m corresponds to modulus m+1; the paper's
/// constant is reported as a* with a*.nu >= m_stab + 1.
struct GreenbergScanReport {
  std::uint64_t q = 0;
  int nu = 1;
  int m_max = 0;
  std::vector<std::pair<int, std::size_t>> image_sizes;  // (m, cardinality)
  bool stabilization_observed = false;
  int stabilization_level = -1;
  int a_star = -1;

  std::string str() const {
    std::string out = "greenberg scan: q=" + std::to_string(q) +
                      " nu=" + std::to_string(nu) +
                      " m_max=" + std::to_string(m_max) + "\n";
    for (const auto& [m, size] : image_sizes)
      out += "  |im(L_" + std::to_string(m) + " -> arcs mod t^" +
             std::to_string(nu) + ")| = " + std::to_string(size) + "\n";
    if (stabilization_observed)
      out += "  stabilized from m=" + std::to_string(stabilization_level) +
             " (a* = " + std::to_string(a_star) + ", since a*.nu >= m+1)\n";
    else
      out += "  stabilization not observed within the scan\n";
    return out;
  }
};

/// Scans image cardinalities for m = nu-1 .. m_max. The sizes are weakly
/// decreasing because a level-(m+1) point truncates to a level-m point.
/// Stabilization is called observed when at least the last two sizes agree;
/// the reported a* is the smallest integer with a*.nu >= m_stab + 1.
inline GreenbergScanReport greenberg_scan(const ContextPtr& base_ctx,
                                          const FieldPtr& field,
                                          const std::vector<Polynomial>& gens,
                                          std::uint64_t q, int nu, int m_max,
                                          std::uint64_t budget = 10000000) {
  if (nu < 1) throw Error("greenberg scan needs nu >= 1");
  if (m_max < nu - 1)
    throw LevelOutOfRange("m_max must be at least nu-1");
  auto levels = enumerate_jet_levels(base_ctx, field, gens, q, m_max, budget);
  GreenbergScanReport rep;
  rep.q = q;
  rep.nu = nu;
  rep.m_max = m_max;
  for (int m = nu - 1; m <= m_max; ++m) {
    EnumeratedJets img =
        image_truncation(levels[static_cast<std::size_t>(m)], nu - 1);
    rep.image_sizes.emplace_back(m, img.points.size());
  }
  std::size_t n = rep.image_sizes.size();
  if (n >= 2 &&
      rep.image_sizes[n - 1].second == rep.image_sizes[n - 2].second) {
    rep.stabilization_observed = true;
    std::size_t first = n - 1;
    while (first > 0 &&
           rep.image_sizes[first - 1].second == rep.image_sizes[n - 1].second)
      --first;
    rep.stabilization_level = rep.image_sizes[first].first;
    rep.a_star = (rep.stabilization_level + 1 + nu - 1) / nu;
  }
  return rep;
}

}  // namespace jetcalc

#endif  // JETCALC_LIFT_HPP
