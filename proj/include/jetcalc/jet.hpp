#ifndef JETCALC_JET_HPP
#define JETCALC_JET_HPP

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/context.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"
#include "jetcalc/groebner.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

namespace detail {

inline void check_jet_names_vs_field(const ContextPtr& jet_ctx,
                                     const FieldPtr& field) {
  for (std::size_t i = 0; i < jet_ctx->size(); ++i)
    if (field->has_generator(jet_ctx->name(i)))
      throw Error("jet variable " + jet_ctx->name(i) +
                  " collides with a field generator name");
}

}  // namespace detail

/// The level-n jet ideal of an affine generator set: for each generator g,
/// the coefficients F_{0,g}, ..., F_{n,g} of g(sum_i x^(i) t^i) modulo
/// t^{n+1}, in the jet variable context. Works in every characteristic.
class JetIdeal {
 public:
  static JetIdeal build(const ContextPtr& base_ctx, const FieldPtr& field,
                        std::vector<Polynomial> gens, int level) {
    if (level < 0) throw LevelOutOfRange("jet level must be >= 0");
    JetIdeal J;
    J.base_ctx_ = base_ctx;
    J.field_ = field;
    J.level_ = level;
    J.jet_ctx_ = VariableContext::make_jet(base_ctx, level);
    detail::check_jet_names_vs_field(J.jet_ctx_, field);
    std::map<std::string, std::vector<Polynomial>> assignment;
    for (std::size_t j = 0; j < base_ctx->size(); ++j) {
      std::vector<Polynomial> series;
      for (int i = 0; i <= level; ++i)
        series.push_back(Polynomial::variable(
            J.jet_ctx_, field, J.jet_ctx_->jet_var(static_cast<int>(j), i)));
      assignment.emplace(base_ctx->name(j), std::move(series));
    }
    for (auto& g : gens) {
      check_same_context(g.context(), base_ctx);
      if (!g.field()->equals(*field))
        throw DescriptorMismatch("jet generators over different fields");
      J.coeffs_.push_back(substitute_truncated(g, assignment, level));
      J.base_gens_.push_back(std::move(g));
    }
    return J;
  }

  const ContextPtr& base_context() const { return base_ctx_; }
  const ContextPtr& jet_context() const { return jet_ctx_; }
  const FieldPtr& field() const { return field_; }
  int level() const { return level_; }
  const std::vector<Polynomial>& base_generators() const { return base_gens_; }
  std::size_t generator_count() const { return base_gens_.size(); }

  /// F_{i,g}: the t^i coefficient of the expansion of generator g.
  const Polynomial& F(int i, std::size_t g) const {
    if (i < 0 || i > level_ || g >= coeffs_.size())
      throw LevelOutOfRange("jet coefficient index out of range");
    return coeffs_[g][static_cast<std::size_t>(i)];
  }

  /// All nonzero F_{i,g}, ordered by (level, generator).
  Ideal ideal() const {
    std::vector<Polynomial> gens;
    for (int i = 0; i <= level_; ++i)
      for (std::size_t g = 0; g < coeffs_.size(); ++g)
        if (!coeffs_[g][static_cast<std::size_t>(i)].is_zero())
          gens.push_back(coeffs_[g][static_cast<std::size_t>(i)]);
    return Ideal(jet_ctx_, field_, std::move(gens));
  }

  /// Base polynomial with variables renamed to their level-0 jet variables.
  Polynomial lift_to_level_zero(const Polynomial& f) const {
    check_same_context(f.context(), base_ctx_);
    std::vector<std::size_t> map(base_ctx_->size());
    for (std::size_t j = 0; j < base_ctx_->size(); ++j)
      map[j] = jet_ctx_->jet_var(static_cast<int>(j), 0);
    return f.rename_variables(jet_ctx_, map);
  }

  /// Applies h to every coefficient of every F_{i,g} (and to the base
  /// generators); no re-expansion happens, so this is an independent route
  /// from building the jet ideal of the mapped generators.
  JetIdeal base_changed(const FieldHom& h) const {
    if (!h.source()->equals(*field_))
      throw DescriptorMismatch("hom source does not match the jet ideal field");
    detail::check_jet_names_vs_field(jet_ctx_, h.target());
    JetIdeal out;
    out.base_ctx_ = base_ctx_;
    out.jet_ctx_ = jet_ctx_;
    out.field_ = h.target();
    out.level_ = level_;
    for (const auto& g : base_gens_)
      out.base_gens_.push_back(g.map_coefficients(h));
    for (const auto& row : coeffs_) {
      std::vector<Polynomial> mapped;
      for (const auto& f : row) mapped.push_back(f.map_coefficients(h));
      out.coeffs_.push_back(std::move(mapped));
    }
    return out;
  }

 private:
  friend class WedgeIdeal;
  JetIdeal() = default;

  ContextPtr base_ctx_;
  ContextPtr jet_ctx_;
  FieldPtr field_;
  int level_ = 0;
  std::vector<Polynomial> base_gens_;
  std::vector<std::vector<Polynomial>> coeffs_;  // [generator][level]
};

inline JetIdeal jet_ideal(const std::vector<Polynomial>& gens, int level) {
  if (gens.empty())
    throw Error("jet_ideal needs generators; use JetIdeal::build for empty sets");
  return JetIdeal::build(gens[0].context(), gens[0].field(), gens, level);
}

// ---------------------------------------------------------------------------

/// A point of X(K[t]/t^{n+1}): one coefficient vector of length n+1 per base
/// variable. The residue point is the vector of 0-th coefficients.
class TruncatedArc {
 public:
  TruncatedArc(ContextPtr base_ctx, FieldPtr field, int level,
               std::vector<std::vector<FieldElement>> coords)
      : base_ctx_(std::move(base_ctx)),
        field_(std::move(field)),
        level_(level),
        coords_(std::move(coords)) {
    if (level_ < 0) throw LevelOutOfRange("arc level must be >= 0");
    if (coords_.size() != base_ctx_->size())
      throw ContextMismatch("arc needs one coefficient vector per variable");
    for (const auto& vec : coords_) {
      if (vec.size() != static_cast<std::size_t>(level_) + 1)
        throw LevelOutOfRange("arc coefficient vectors must have length n+1");
      for (const auto& c : vec)
        if (!c.valid() || !c.field()->equals(*field_))
          throw FieldMismatch("arc coefficient in a different field");
    }
  }

  const ContextPtr& base_context() const { return base_ctx_; }
  const FieldPtr& field() const { return field_; }
  int level() const { return level_; }
  const std::vector<std::vector<FieldElement>>& coords() const {
    return coords_;
  }
  const FieldElement& coefficient(std::size_t var, int order) const {
    return coords_[var][static_cast<std::size_t>(order)];
  }

  std::vector<FieldElement> residue_point() const {
    std::vector<FieldElement> p;
    for (const auto& vec : coords_) p.push_back(vec[0]);
    return p;
  }

  /// Drops coefficients above index n.
  TruncatedArc truncated(int n) const {
    if (n < 0 || n > level_)
      throw LevelOutOfRange("truncation level out of range");
    std::vector<std::vector<FieldElement>> c;
    for (const auto& vec : coords_)
      c.emplace_back(vec.begin(), vec.begin() + n + 1);
    return TruncatedArc(base_ctx_, field_, n, std::move(c));
  }

  /// Flattens to an evaluation point for the matching jet context.
  std::vector<FieldElement> jet_point(const ContextPtr& jet_ctx) const {
    if (!jet_ctx->is_jet() || jet_ctx->jet_level() != level_ ||
        !jet_ctx->jet_base()->equals(*base_ctx_))
      throw ContextMismatch("arc does not match the jet context");
    std::vector<FieldElement> point(jet_ctx->size());
    for (std::size_t j = 0; j < coords_.size(); ++j)
      for (int i = 0; i <= level_; ++i)
        point[jet_ctx->jet_var(static_cast<int>(j), i)] = coords_[j][i];
    return point;
  }

  bool operator==(const TruncatedArc& o) const {
    if (level_ != o.level_ || !base_ctx_->equals(*o.base_ctx_) ||
        !field_->equals(*o.field_))
      return false;
    return coords_ == o.coords_;
  }

  std::string str() const {
    std::string out;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
      if (j) out += "; ";
      out += base_ctx_->name(j) + "=(";
      for (int i = 0; i <= level_; ++i) {
        if (i) out += ",";
        out += coords_[j][static_cast<std::size_t>(i)].str();
      }
      out += ")";
    }
    return out;
  }

 private:
  ContextPtr base_ctx_;
  FieldPtr field_;
  int level_;
  std::vector<std::vector<FieldElement>> coords_;
};

/// The constant arc at a point of the variety: 0-th coefficients equal the
/// point, all higher coefficients zero. The point must satisfy every
/// generator.
inline TruncatedArc constant_jet(const ContextPtr& base_ctx,
                                 const FieldPtr& field,
                                 const std::vector<Polynomial>& gens,
                                 const std::vector<FieldElement>& point,
                                 int level) {
  if (point.size() != base_ctx->size())
    throw ContextMismatch("point has wrong arity");
  for (const auto& g : gens) {
    FieldElement v = g.evaluate(point);
    if (!v.is_zero())
      throw PointNotOnVariety("generator " + g.str() +
                              " does not vanish at the point");
  }
  std::vector<std::vector<FieldElement>> coords;
  for (std::size_t j = 0; j < point.size(); ++j) {
    std::vector<FieldElement> vec(static_cast<std::size_t>(level) + 1,
                                  field->zero());
    vec[0] = point[j];
    coords.push_back(std::move(vec));
  }
  return TruncatedArc(base_ctx, field, level, std::move(coords));
}

inline TruncatedArc truncate_arc(const TruncatedArc& arc, int n) {
  return arc.truncated(n);
}

/// Residues of every F_{i,g} at the arc's coefficients, ordered by
/// (level, generator); the all-zero vector certifies a jet-scheme point.
inline std::vector<FieldElement> evaluate_jet_point(const JetIdeal& J,
                                                    const TruncatedArc& arc) {
  if (!arc.field()->equals(*J.field()))
    throw FieldMismatch("arc field differs; supply the field hom explicitly");
  std::vector<FieldElement> point = arc.jet_point(J.jet_context());
  std::vector<FieldElement> out;
  for (int i = 0; i <= J.level(); ++i)
    for (std::size_t g = 0; g < J.generator_count(); ++g)
      out.push_back(J.F(i, g).evaluate(point));
  return out;
}

/// Same, for an arc over an extension of J's coefficient field reached by
/// the homomorphism h.
inline std::vector<FieldElement> evaluate_jet_point(const JetIdeal& J,
                                                    const FieldHom& h,
                                                    const TruncatedArc& arc) {
  if (!h.source()->equals(*J.field()))
    throw DescriptorMismatch("hom source does not match the jet ideal field");
  if (!arc.field()->equals(*h.target()))
    throw FieldMismatch("arc does not live over the hom target");
  std::vector<FieldElement> point = arc.jet_point(J.jet_context());
  std::vector<FieldElement> out;
  for (int i = 0; i <= J.level(); ++i)
    for (std::size_t g = 0; g < J.generator_count(); ++g)
      out.push_back(J.F(i, g).map_coefficients(h).evaluate(point));
  return out;
}

// ---------------------------------------------------------------------------

/// Hasse-Schmidt route to the jet coefficients in characteristic zero (or
/// i < p): F_i = D^i(f at level 0) / i! for the derivation D with
/// D(x_j^(m)) = (m+1) x_j^(m+1). Agrees with the substitution coefficients.
inline Polynomial hs_coefficient_char0(const Polynomial& f, int i,
                                       const ContextPtr& jet_ctx) {
  if (!jet_ctx->is_jet())
    throw ContextMismatch("hs_coefficient_char0 needs a jet context");
  const ContextPtr& base = jet_ctx->jet_base();
  check_same_context(f.context(), base);
  if (i < 0 || i > jet_ctx->jet_level())
    throw LevelOutOfRange("coefficient index exceeds the jet level");
  const FieldPtr& K = f.field();
  std::uint64_t p = K->characteristic();
  if (p > 0 && static_cast<std::uint64_t>(i) >= p)
    throw CharacteristicDividesFactorial(
        "characteristic " + std::to_string(p) + " divides " +
        std::to_string(i) + "!");
  std::vector<std::size_t> map(base->size());
  for (std::size_t j = 0; j < base->size(); ++j)
    map[j] = jet_ctx->jet_var(static_cast<int>(j), 0);
  Polynomial g = f.rename_variables(jet_ctx, map);
  for (int k = 0; k < i; ++k) {
    Polynomial d = Polynomial::zero(jet_ctx, K);
    for (std::size_t v : g.support_variables()) {
      const auto& tag = jet_ctx->jet_tag(v);
      if (tag->order + 1 > jet_ctx->jet_level())
        throw LevelOutOfRange("derivation leaves the jet context");
      Polynomial next = Polynomial::variable(
          jet_ctx, K, jet_ctx->jet_var(tag->base_index, tag->order + 1));
      d += g.derivative(v) *
           next.scaled(K->from_integer(tag->order + 1));
    }
    g = std::move(d);
  }
  FieldElement fact = K->one();
  for (int k = 2; k <= i; ++k) fact *= K->from_integer(k);
  return g.scaled(fact.inverse());
}

// ---------------------------------------------------------------------------

/// Doubly-indexed jet ideal: the first expansion runs in t1 at level n1,
/// then every stage-one jet variable is expanded in t2 at level n2.
/// Generators F_{(i1,i2),g} are the t1^{i1} t2^{i2} coefficients.
class WedgeIdeal {
 public:
  static WedgeIdeal build(const ContextPtr& base_ctx, const FieldPtr& field,
                          std::vector<Polynomial> gens, int n1, int n2) {
    WedgeIdeal W;
    W.n1_ = n1;
    W.n2_ = n2;
    W.stage1_ = JetIdeal::build(base_ctx, field, std::move(gens), n1);
    W.ctx_ = VariableContext::make_jet(W.stage1_.jet_context(), n2, "_");
    detail::check_jet_names_vs_field(W.ctx_, field);
    std::map<std::string, std::vector<Polynomial>> assignment;
    const ContextPtr& s1 = W.stage1_.jet_context();
    for (std::size_t v = 0; v < s1->size(); ++v) {
      std::vector<Polynomial> series;
      for (int i2 = 0; i2 <= n2; ++i2)
        series.push_back(Polynomial::variable(
            W.ctx_, field, W.ctx_->jet_var(static_cast<int>(v), i2)));
      assignment.emplace(s1->name(v), std::move(series));
    }
    for (std::size_t g = 0; g < W.stage1_.generator_count(); ++g) {
      std::vector<std::vector<Polynomial>> rows;  // [i1][i2]
      for (int i1 = 0; i1 <= n1; ++i1)
        rows.push_back(substitute_truncated(W.stage1_.F(i1, g), assignment,
                                            n2));
      W.coeffs_.push_back(std::move(rows));
    }
    return W;
  }

  int order1() const { return n1_; }
  int order2() const { return n2_; }
  const JetIdeal& stage1() const { return stage1_; }
  const ContextPtr& wedge_context() const { return ctx_; }
  const FieldPtr& field() const { return stage1_.field(); }
  std::size_t generator_count() const { return coeffs_.size(); }

  const Polynomial& F(int i1, int i2, std::size_t g) const {
    if (i1 < 0 || i1 > n1_ || i2 < 0 || i2 > n2_ || g >= coeffs_.size())
      throw LevelOutOfRange("wedge coefficient index out of range");
    return coeffs_[g][static_cast<std::size_t>(i1)]
                  [static_cast<std::size_t>(i2)];
  }

  /// All nonzero F_{(i1,i2),g}, ordered by (i1, i2, g).
  Ideal ideal() const {
    std::vector<Polynomial> gens;
    for (int i1 = 0; i1 <= n1_; ++i1)
      for (int i2 = 0; i2 <= n2_; ++i2)
        for (std::size_t g = 0; g < coeffs_.size(); ++g) {
          const Polynomial& f = F(i1, i2, g);
          if (!f.is_zero()) gens.push_back(f);
        }
    return Ideal(ctx_, field(), std::move(gens));
  }

  /// Relabels indices (i1,i2) -> (i2,i1); defined for square orders.
  Polynomial swap_indices(const Polynomial& f) const {
    if (n1_ != n2_) throw Error("index swap needs n1 == n2");
    check_same_context(f.context(), ctx_);
    const ContextPtr& s1 = stage1_.jet_context();
    std::size_t nb = stage1_.base_context()->size();
    std::vector<std::size_t> map(ctx_->size());
    for (std::size_t v = 0; v < ctx_->size(); ++v) {
      int i2 = ctx_->jet_tag(v)->order;
      std::size_t s1_var = static_cast<std::size_t>(
          ctx_->jet_tag(v)->base_index);
      int i1 = s1->jet_tag(s1_var)->order;
      std::size_t j = static_cast<std::size_t>(
          s1->jet_tag(s1_var)->base_index);
      // target variable: stage-one var (j, i2) at second order i1
      std::size_t target_s1 =
          static_cast<std::size_t>(i2) * nb + j;
      map[v] = ctx_->jet_var(static_cast<int>(target_s1), i1);
    }
    return f.rename_variables(ctx_, map);
  }

  /// Renames a generator of a (n,0) wedge onto the plain level-n jet
  /// context (x{i}_0 -> x{i}).
  Polynomial collapse_to_jet(const Polynomial& f,
                             const ContextPtr& jet_ctx) const {
    if (n2_ != 0) throw Error("collapse needs n2 == 0");
    check_same_context(f.context(), ctx_);
    std::vector<std::size_t> map(ctx_->size());
    for (std::size_t v = 0; v < ctx_->size(); ++v)
      map[v] = static_cast<std::size_t>(ctx_->jet_tag(v)->base_index);
    return f.rename_variables(jet_ctx, map);
  }

 private:
  WedgeIdeal() = default;

  int n1_ = 0, n2_ = 0;
  JetIdeal stage1_;
  ContextPtr ctx_;
  std::vector<std::vector<std::vector<Polynomial>>> coeffs_;  // [g][i1][i2]
};

inline WedgeIdeal iterated_jet_ideal(const std::vector<Polynomial>& gens,
                                     int n1, int n2) {
  if (gens.empty())
    throw Error("iterated_jet_ideal needs generators");
  return WedgeIdeal::build(gens[0].context(), gens[0].field(), gens, n1, n2);
}

// ---------------------------------------------------------------------------

/// Applies a field homomorphism to every coefficient of a jet ideal; equals
/// the jet ideal of the mapped generators, generator by generator.
inline JetIdeal base_change_ideal(const JetIdeal& J, const FieldHom& h) {
  return J.base_changed(h);
}

}  // namespace jetcalc

#endif  // JETCALC_JET_HPP
