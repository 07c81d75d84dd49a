#ifndef JETCALC_GROEBNER_HPP
#define JETCALC_GROEBNER_HPP

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/context.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"
#include "jetcalc/order.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

struct GroebnerOptions {
  std::uint64_t step_limit = 200000;  // pair reduction cap, not correctness
};

/// A finitely generated ideal: a shared context, a field, and a list of
/// nonzero generators (the zero ideal has none).
class Ideal {
 public:
  Ideal() = default;

  Ideal(ContextPtr ctx, FieldPtr field, std::vector<Polynomial> gens)
      : ctx_(std::move(ctx)), field_(std::move(field)) {
    for (auto& g : gens) {
      if (!g.valid() || g.is_zero()) continue;
      check_same_context(g.context(), ctx_);
      if (!g.field()->equals(*field_))
        throw DescriptorMismatch("ideal generators over different fields");
      gens_.push_back(std::move(g));
    }
  }

  static Ideal span(const std::vector<Polynomial>& gens) {
    if (gens.empty()) throw Error("Ideal::span needs at least one generator");
    return Ideal(gens[0].context(), gens[0].field(), gens);
  }

  const ContextPtr& context() const { return ctx_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Polynomial>& generators() const { return gens_; }
  bool is_zero_ideal() const { return gens_.empty(); }

 private:
  ContextPtr ctx_;
  FieldPtr field_;
  std::vector<Polynomial> gens_;
};

namespace detail {

// Engine-internal polynomial representation: terms sorted descending under
// the active order.
using TermVec = std::vector<Term>;

inline TermVec sort_terms(const Polynomial& f, const MonomialOrder& ord) {
  TermVec t = f.terms();
  std::sort(t.begin(), t.end(), [&](const Term& a, const Term& b) {
    return ord.compare(a.mono, b.mono) > 0;
  });
  return t;
}

/// f - c * x^m * g, both term lists sorted under ord; multiplication by a
/// monomial preserves the order.
inline TermVec subtract_scaled(const TermVec& f, const FieldElement& c,
                               const Monomial& m, const TermVec& g,
                               const MonomialOrder& ord) {
  TermVec out;
  out.reserve(f.size() + g.size());
  std::size_t i = 0, j = 0;
  while (i < f.size() && j < g.size()) {
    Monomial gm = g[j].mono * m;
    int cmp = ord.compare(f[i].mono, gm);
    if (cmp > 0) {
      out.push_back(f[i++]);
    } else if (cmp < 0) {
      out.push_back({std::move(gm), -(c * g[j].coeff)});
      ++j;
    } else {
      FieldElement s = f[i].coeff - c * g[j].coeff;
      if (!s.is_zero()) out.push_back({f[i].mono, std::move(s)});
      ++i;
      ++j;
    }
  }
  for (; i < f.size(); ++i) out.push_back(f[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].mono * m, -(c * g[j].coeff)});
  return out;
}

/// Complete reduction of f modulo the basis. Result has no term divisible
/// by any basis leading term; deterministic: the largest reducible term is
/// always rewritten with the first matching basis element.
inline TermVec reduce_full(TermVec f, const std::vector<TermVec>& basis,
                           const MonomialOrder& ord, std::uint64_t& steps,
                           std::uint64_t step_limit) {
  TermVec done;  // irreducible head, descending
  while (!f.empty()) {
    const Term& lt = f.front();
    const TermVec* reducer = nullptr;
    for (const auto& g : basis) {
      if (!g.empty() && g.front().mono.divides(lt.mono)) {
        reducer = &g;
        break;
      }
    }
    if (!reducer) {
      done.push_back(lt);
      f.erase(f.begin());
      continue;
    }
    if (++steps > step_limit) throw StepLimitExceeded(step_limit);
    FieldElement c = lt.coeff / reducer->front().coeff;
    Monomial m = reducer->front().mono.quotient_into(lt.mono);
    f = subtract_scaled(f, c, m, *reducer, ord);
  }
  return done;
}

inline TermVec s_polynomial(const TermVec& f, const TermVec& g,
                            const MonomialOrder& ord) {
  Monomial l = Monomial::lcm(f.front().mono, g.front().mono);
  Monomial mf = f.front().mono.quotient_into(l);
  Monomial mg = g.front().mono.quotient_into(l);
  // (l/LT(f)) * f / lc(f)  -  (l/LT(g)) * g / lc(g)
  TermVec lhs;
  lhs.reserve(f.size());
  FieldElement inv_f = f.front().coeff.inverse();
  for (const auto& t : f) lhs.push_back({t.mono * mf, t.coeff * inv_f});
  return subtract_scaled(lhs, g.front().coeff.inverse(), mg, g, ord);
}

}  // namespace detail

/// A reduced Groebner basis: monic elements, no term of any element
/// divisible by another element's leading term, sorted descending by
/// leading monomial. Unique for a given ideal and order.
class GroebnerBasis {
 public:
  GroebnerBasis(Ideal ideal, MonomialOrder ord,
                std::vector<detail::TermVec> reduced)
      : ideal_(std::move(ideal)), ord_(std::move(ord)) {
    for (auto& tv : reduced) {
      sorted_.push_back(tv);
      basis_.push_back(Polynomial::from_terms(ideal_.context(),
                                              ideal_.field(), std::move(tv)));
    }
  }

  const Ideal& ideal() const { return ideal_; }
  const MonomialOrder& order() const { return ord_; }
  const std::vector<Polynomial>& basis() const { return basis_; }
  const std::vector<detail::TermVec>& sorted_basis() const { return sorted_; }

  bool contains_one() const {
    return sorted_.size() == 1 && sorted_[0].size() == 1 &&
           sorted_[0][0].mono.is_unit();
  }

  Monomial leading_monomial(std::size_t i) const {
    return sorted_[i].front().mono;
  }

 private:
  Ideal ideal_;
  MonomialOrder ord_;
  std::vector<Polynomial> basis_;
  std::vector<detail::TermVec> sorted_;
};

/// Buchberger's algorithm with the normal selection strategy (smallest lcm
/// under the order, ties by generator indices) and the product criterion,
/// followed by minimization and full inter-reduction. Output is the unique
/// reduced basis, so it is independent of generator order.
inline GroebnerBasis buchberger_reduced(const Ideal& I,
                                        const MonomialOrder& ord,
                                        const GroebnerOptions& opts = {}) {
  using detail::TermVec;
  check_same_context(I.context(), ord.context());
  std::uint64_t steps = 0;

  std::vector<TermVec> g;
  for (const auto& f : I.generators()) g.push_back(detail::sort_terms(f, ord));

  struct PairKey {
    Monomial lcm;
    std::size_t i, j;
  };
  auto pair_less = [&ord](const PairKey& a, const PairKey& b) {
    int c = ord.compare(a.lcm, b.lcm);
    if (c) return c < 0;  // smallest lcm first
    if (a.i != b.i) return a.i < b.i;
    return a.j < b.j;
  };
  std::set<PairKey, decltype(pair_less)> pairs(pair_less);
  auto push_pairs_for = [&](std::size_t k) {
    for (std::size_t i = 0; i < k; ++i)
      pairs.insert(
          {Monomial::lcm(g[i].front().mono, g[k].front().mono), i, k});
  };
  for (std::size_t k = 0; k < g.size(); ++k) push_pairs_for(k);

  while (!pairs.empty()) {
    PairKey p = *pairs.begin();
    pairs.erase(pairs.begin());
    const TermVec& a = g[p.i];
    const TermVec& b = g[p.j];
    if (a.front().mono.coprime_with(b.front().mono)) continue;  // product criterion
    if (++steps > opts.step_limit) throw StepLimitExceeded(opts.step_limit);
    TermVec s = detail::s_polynomial(a, b, ord);
    TermVec nf = detail::reduce_full(std::move(s), g, ord, steps,
                                     opts.step_limit);
    if (!nf.empty()) {
      g.push_back(std::move(nf));
      push_pairs_for(g.size() - 1);
    }
  }

  // minimize: drop elements whose leading term is divisible by another's
  std::vector<bool> alive(g.size(), true);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!alive[i]) continue;
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (i == j || !alive[j]) continue;
      const Monomial& li = g[i].front().mono;
      const Monomial& lj = g[j].front().mono;
      if (lj.divides(li) && (li != lj || j < i)) {
        alive[i] = false;
        break;
      }
    }
  }
  std::vector<TermVec> minimal;
  for (std::size_t i = 0; i < g.size(); ++i)
    if (alive[i]) minimal.push_back(std::move(g[i]));

  // fully inter-reduce tails and normalize to monic
  std::vector<TermVec> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<TermVec> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    TermVec r = detail::reduce_full(minimal[i], others, ord, steps,
                                    opts.step_limit);
    FieldElement inv = r.front().coeff.inverse();
    for (auto& t : r) t.coeff = t.coeff * inv;
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [&ord](const TermVec& x, const TermVec& y) {
              return ord.compare(x.front().mono, y.front().mono) > 0;
            });
  return GroebnerBasis(I, ord, std::move(reduced));
}

inline GroebnerBasis groebner_default(const Ideal& I,
                                      const GroebnerOptions& opts = {}) {
  return buchberger_reduced(I, MonomialOrder::degrevlex(I.context()), opts);
}

/// Complete normal form of f modulo G; the remainder has no term divisible
/// by any leading term of G, f - result lies in the ideal, and the map is
/// idempotent.
inline Polynomial normal_form(const Polynomial& f, const GroebnerBasis& G,
                              const GroebnerOptions& opts = {}) {
  check_same_context(f.context(), G.ideal().context());
  std::uint64_t steps = 0;
  detail::TermVec t = detail::sort_terms(f, G.order());
  detail::TermVec r = detail::reduce_full(std::move(t), G.sorted_basis(),
                                          G.order(), steps, opts.step_limit);
  return Polynomial::from_terms(f.context(), f.field(), std::move(r));
}

inline bool ideal_member(const Polynomial& f, const GroebnerBasis& G,
                         const GroebnerOptions& opts = {}) {
  return normal_form(f, G, opts).is_zero();
}

inline bool ideal_member(const Polynomial& f, const Ideal& I,
                         const GroebnerOptions& opts = {}) {
  return ideal_member(f, groebner_default(I, opts), opts);
}

/// First name in base, base0, base1, ... free in the context and not bound
/// to a field generator.
inline std::string fresh_variable_name(const ContextPtr& ctx,
                                       const FieldPtr& field,
                                       const std::string& base = "w") {
  auto taken = [&](const std::string& n) {
    return ctx->index_of(n).has_value() || (field && field->has_generator(n));
  };
  if (!taken(base)) return base;
  for (int i = 0;; ++i) {
    std::string n = base + std::to_string(i);
    if (!taken(n)) return n;
  }
}

/// Rabinowitsch test: f vanishes on V(I) iff 1 lies in I + (1 - w f).
inline bool radical_member(const Polynomial& f, const Ideal& I,
                           const GroebnerOptions& opts = {}) {
  check_same_context(f.context(), I.context());
  if (f.is_zero()) return true;
  std::string w = fresh_variable_name(I.context(), I.field());
  ContextPtr ext = VariableContext::extend(I.context(), w);
  std::vector<std::size_t> id_map(I.context()->size());
  for (std::size_t i = 0; i < id_map.size(); ++i) id_map[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& gpoly : I.generators())
    gens.push_back(gpoly.rename_variables(ext, id_map));
  Polynomial one = Polynomial::constant(ext, I.field()->one());
  Polynomial wf = Polynomial::variable(ext, I.field(), ext->size() - 1) *
                  f.rename_variables(ext, id_map);
  gens.push_back(one - wf);
  GroebnerBasis G = groebner_default(Ideal(ext, I.field(), gens), opts);
  return G.contains_one();
}

/// Elimination ideal I ∩ k[context minus vars], computed with a block order
/// that puts the eliminated variables in the outer block. The result lives
/// in the original context with the eliminated variables unused.
inline Ideal eliminate(const Ideal& I, const std::vector<std::string>& vars,
                       const GroebnerOptions& opts = {}) {
  std::vector<bool> outer(I.context()->size(), false);
  for (const auto& v : vars) {
    auto idx = I.context()->index_of(v);
    if (!idx) throw UnknownVariable(v);
    outer[*idx] = true;
  }
  MonomialOrder ord = MonomialOrder::block_elimination(I.context(), outer);
  GroebnerBasis G = buchberger_reduced(I, ord, opts);
  std::vector<Polynomial> kept;
  for (const auto& gpoly : G.basis()) {
    bool free = true;
    for (const auto& t : gpoly.terms())
      for (std::size_t i = 0; i < outer.size() && free; ++i)
        if (outer[i] && t.mono.exponent(i) > 0) free = false;
    if (free) kept.push_back(gpoly);
  }
  return Ideal(I.context(), I.field(), std::move(kept));
}

/// Saturation I : f^∞ via elimination of w from I + (1 - w f); the result
/// is returned through the elimination ideal's reduced basis.
inline Ideal saturate(const Ideal& I, const Polynomial& f,
                      const GroebnerOptions& opts = {}) {
  check_same_context(f.context(), I.context());
  if (f.is_zero()) throw Error("saturation by the zero polynomial");
  std::string w = fresh_variable_name(I.context(), I.field());
  ContextPtr ext = VariableContext::extend(I.context(), w);
  std::vector<std::size_t> id_map(I.context()->size());
  for (std::size_t i = 0; i < id_map.size(); ++i) id_map[i] = i;
  std::vector<Polynomial> gens;
  for (const auto& gpoly : I.generators())
    gens.push_back(gpoly.rename_variables(ext, id_map));
  Polynomial one = Polynomial::constant(ext, I.field()->one());
  Polynomial wf = Polynomial::variable(ext, I.field(), ext->size() - 1) *
                  f.rename_variables(ext, id_map);
  gens.push_back(one - wf);
  Ideal extended(ext, I.field(), std::move(gens));
  Ideal elim = eliminate(extended, {w}, opts);
  // strip the unused last slot back down to the original context
  std::vector<Polynomial> back;
  std::vector<std::size_t> down(ext->size());
  for (std::size_t i = 0; i + 1 < ext->size(); ++i) down[i] = i;
  down[ext->size() - 1] = 0;  // never hit: generators are free of w
  for (const auto& gpoly : elim.generators())
    back.push_back(gpoly.rename_variables(I.context(), down));
  return Ideal(I.context(), I.field(), std::move(back));
}

/// Krull dimension of the quotient ring: the largest number of variables
/// independent modulo the leading-term ideal, found by exhaustive subset
/// search (contexts stay small at desk scale).
inline int krull_dimension(const Ideal& I, const GroebnerOptions& opts = {}) {
  std::size_t nv = I.context()->size();
  if (nv > 24)
    throw Error("dimension search supports at most 24 variables");
  GroebnerBasis G = groebner_default(I, opts);
  if (G.contains_one()) throw UnitIdeal();
  std::vector<std::uint32_t> lt_masks;
  for (std::size_t i = 0; i < G.basis().size(); ++i) {
    Monomial m = G.leading_monomial(i);
    std::uint32_t mask = 0;
    for (std::size_t v = 0; v < nv; ++v)
      if (m.exponent(v) > 0) mask |= (1u << v);
    lt_masks.push_back(mask);
  }
  int best = 0;
  for (std::uint32_t s = 0; s < (1u << nv); ++s) {
    int size = __builtin_popcount(s);
    if (size <= best) continue;
    bool independent = true;
    for (std::uint32_t m : lt_masks) {
      if ((m & ~s) == 0) {  // leading term supported inside s
        independent = false;
        break;
      }
    }
    if (independent) best = size;
  }
  return best;
}

/// Ideal equality by mutual generator membership.
inline bool ideal_equal(const Ideal& A, const Ideal& B,
                        const GroebnerOptions& opts = {}) {
  check_same_context(A.context(), B.context());
  GroebnerBasis GA = groebner_default(A, opts);
  GroebnerBasis GB = groebner_default(B, opts);
  for (const auto& g : A.generators())
    if (!ideal_member(g, GB, opts)) return false;
  for (const auto& g : B.generators())
    if (!ideal_member(g, GA, opts)) return false;
  return true;
}

/// Confluence verification pass: every S-polynomial of basis pairs reduces
/// to zero. Used by tests and the acceptance suite.
inline bool groebner_confluent(const GroebnerBasis& G,
                               const GroebnerOptions& opts = {}) {
  const auto& b = G.sorted_basis();
  std::uint64_t steps = 0;
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      detail::TermVec s = detail::s_polynomial(b[i], b[j], G.order());
      detail::TermVec nf =
          detail::reduce_full(std::move(s), b, G.order(), steps,
                              opts.step_limit);
      if (!nf.empty()) return false;
    }
  }
  return true;
}

/// Reducedness verification: monic elements, no term divisible by another
/// element's leading term.
inline bool groebner_reduced_form(const GroebnerBasis& G) {
  const auto& b = G.sorted_basis();
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (!b[i].front().coeff.is_one()) return false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (i == j) continue;
      for (const auto& t : b[i])
        if (b[j].front().mono.divides(t.mono)) return false;
    }
  }
  return true;
}

}  // namespace jetcalc

#endif  // JETCALC_GROEBNER_HPP
