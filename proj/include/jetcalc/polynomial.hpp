#ifndef JETCALC_POLYNOMIAL_HPP
#define JETCALC_POLYNOMIAL_HPP

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/context.hpp"
#include "jetcalc/errors.hpp"
#include "jetcalc/field.hpp"

namespace jetcalc {

/// Exponent vector with one slot per context variable.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : e_(nvars, 0) {}
  explicit Monomial(std::vector<std::uint32_t> exps) : e_(std::move(exps)) {
    for (auto v : e_) deg_ += v;
  }

  std::size_t nvars() const { return e_.size(); }
  std::uint32_t exponent(std::size_t i) const { return e_[i]; }
  std::uint64_t degree() const { return deg_; }
  bool is_unit() const { return deg_ == 0; }

  void bump(std::size_t i, std::uint32_t by) {
    e_[i] += by;
    deg_ += by;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r = *this;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
    r.deg_ = deg_ + o.deg_;
    return r;
  }

  bool divides(const Monomial& o) const {
    if (deg_ > o.deg_) return false;
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > o.e_[i]) return false;
    return true;
  }

  /// Quotient; requires divides(o) on the caller's side.
  Monomial quotient_into(const Monomial& o) const {
    Monomial r = o;
    for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] -= e_[i];
    r.deg_ = o.deg_ - deg_;
    return r;
  }

  static Monomial lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.e_.size());
    r.deg_ = 0;
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
      r.e_[i] = std::max(a.e_[i], b.e_[i]);
      r.deg_ += r.e_[i];
    }
    return r;
  }

  bool coprime_with(const Monomial& o) const {
    for (std::size_t i = 0; i < e_.size(); ++i)
      if (e_[i] > 0 && o.e_[i] > 0) return false;
    return true;
  }

  bool operator==(const Monomial& o) const { return e_ == o.e_; }
  bool operator!=(const Monomial& o) const { return e_ != o.e_; }

  /// Canonical structural comparison: lexicographic in declaration order.
  static int lex_cmp(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e_.size(); ++i) {
      if (a.e_[i] != b.e_[i]) return a.e_[i] > b.e_[i] ? 1 : -1;
    }
    return 0;
  }

 private:
  std::vector<std::uint32_t> e_;
  std::uint64_t deg_ = 0;
};

struct Term {
  Monomial mono;
  FieldElement coeff;
};

/// Sparse exact multivariate polynomial over a variable context. Terms are
/// stored descending under the canonical lexicographic comparison, with no
/// zero coefficients, so equality is term-by-term.
class Polynomial {
 public:
  Polynomial() = default;

  static Polynomial zero(ContextPtr ctx, FieldPtr field) {
    Polynomial f;
    f.ctx_ = std::move(ctx);
    f.field_ = std::move(field);
    return f;
  }

  static Polynomial constant(ContextPtr ctx, FieldElement c) {
    Polynomial f;
    f.ctx_ = std::move(ctx);
    f.field_ = c.field();
    if (!c.is_zero()) f.terms_.push_back({Monomial(f.ctx_->size()), std::move(c)});
    return f;
  }

  static Polynomial variable(const ContextPtr& ctx, const FieldPtr& field,
                             std::size_t var) {
    if (var >= ctx->size()) throw UnknownVariable("#" + std::to_string(var));
    Polynomial f;
    f.ctx_ = ctx;
    f.field_ = field;
    Monomial m(ctx->size());
    m.bump(var, 1);
    f.terms_.push_back({std::move(m), field->one()});
    return f;
  }

  /// Normalizes an arbitrary term list: sorts, merges, drops zeros.
  static Polynomial from_terms(ContextPtr ctx, FieldPtr field,
                               std::vector<Term> terms) {
    std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) {
      return Monomial::lex_cmp(a.mono, b.mono) > 0;
    });
    Polynomial f;
    f.ctx_ = std::move(ctx);
    f.field_ = std::move(field);
    for (auto& t : terms) {
      if (!f.terms_.empty() && f.terms_.back().mono == t.mono)
        f.terms_.back().coeff += t.coeff;
      else
        f.terms_.push_back(std::move(t));
      if (!f.terms_.empty() && f.terms_.back().coeff.is_zero())
        f.terms_.pop_back();
    }
    return f;
  }

  bool valid() const { return ctx_ != nullptr; }
  const ContextPtr& context() const { return ctx_; }
  const FieldPtr& field() const { return field_; }
  const std::vector<Term>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_unit());
  }
  FieldElement constant_value() const {
    if (is_zero()) return field_->zero();
    if (!is_constant()) throw Error("polynomial is not constant");
    return terms_[0].coeff;
  }

  std::uint64_t total_degree() const {
    std::uint64_t d = 0;
    for (const auto& t : terms_) d = std::max(d, t.mono.degree());
    return d;
  }

  bool operator==(const Polynomial& o) const {
    if (!valid() || !o.valid()) return valid() == o.valid();
    if (!ctx_->equals(*o.ctx_) || !field_->equals(*o.field_)) return false;
    if (terms_.size() != o.terms_.size()) return false;
    for (std::size_t i = 0; i < terms_.size(); ++i)
      if (terms_[i].mono != o.terms_[i].mono ||
          terms_[i].coeff != o.terms_[i].coeff)
        return false;
    return true;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = -t.coeff;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r;
    r.ctx_ = ctx_;
    r.field_ = field_;
    r.terms_.reserve(terms_.size() + o.terms_.size());
    std::size_t i = 0, j = 0;
    while (i < terms_.size() && j < o.terms_.size()) {
      int c = Monomial::lex_cmp(terms_[i].mono, o.terms_[j].mono);
      if (c > 0) {
        r.terms_.push_back(terms_[i++]);
      } else if (c < 0) {
        r.terms_.push_back(o.terms_[j++]);
      } else {
        FieldElement s = terms_[i].coeff + o.terms_[j].coeff;
        if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(s)});
        ++i;
        ++j;
      }
    }
    for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
    for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check_compatible(o);
    if (is_zero() || o.is_zero()) return zero(ctx_, field_);
    auto gt = [](const Monomial& a, const Monomial& b) {
      return Monomial::lex_cmp(a, b) > 0;
    };
    std::map<Monomial, FieldElement, decltype(gt)> acc(gt);
    for (const auto& ta : terms_) {
      for (const auto& tb : o.terms_) {
        Monomial m = ta.mono * tb.mono;
        FieldElement c = ta.coeff * tb.coeff;
        auto it = acc.find(m);
        if (it == acc.end()) {
          if (!c.is_zero()) acc.emplace(std::move(m), std::move(c));
        } else {
          it->second += c;
          if (it->second.is_zero()) acc.erase(it);
        }
      }
    }
    Polynomial r;
    r.ctx_ = ctx_;
    r.field_ = field_;
    r.terms_.reserve(acc.size());
    for (auto& [m, c] : acc) r.terms_.push_back({m, c});
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  Polynomial scaled(const FieldElement& c) const {
    if (c.is_zero()) return zero(ctx_, field_);
    Polynomial r = *this;
    for (auto& t : r.terms_) t.coeff = t.coeff * c;
    return r;
  }

  Polynomial pow(std::uint64_t e) const {
    Polynomial acc = constant(ctx_, field_->one());
    Polynomial base = *this;
    while (e) {
      if (e & 1) acc = acc * base;
      base = base * base;
      e >>= 1;
    }
    return acc;
  }

  /// Formal partial derivative; in characteristic p the derivative of v^p
  /// vanishes through the coefficient map.
  Polynomial derivative(std::size_t var) const {
    if (var >= ctx_->size())
      throw UnknownVariable("#" + std::to_string(var));
    std::vector<Term> out;
    for (const auto& t : terms_) {
      std::uint32_t e = t.mono.exponent(var);
      if (e == 0) continue;
      FieldElement c =
          t.coeff * field_->from_integer(static_cast<long long>(e));
      if (c.is_zero()) continue;
      Monomial m = t.mono;
      Monomial down(ctx_->size());
      down.bump(var, 1);
      out.push_back({down.quotient_into(m), std::move(c)});
    }
    return from_terms(ctx_, field_, std::move(out));
  }

  FieldElement evaluate(const std::vector<FieldElement>& point) const {
    if (point.size() != ctx_->size())
      throw FieldMismatch("evaluation point has wrong arity");
    for (const auto& v : point)
      if (!v.valid() || !v.field()->equals(*field_))
        throw FieldMismatch("evaluation point in a different field");
    FieldElement acc = field_->zero();
    for (const auto& t : terms_) {
      FieldElement v = t.coeff;
      for (std::size_t i = 0; i < point.size(); ++i) {
        std::uint32_t e = t.mono.exponent(i);
        if (e) v = v * point[i].pow(e);
      }
      acc += v;
    }
    return acc;
  }

  /// Re-slots every variable i to var_map[i] in the target context.
  Polynomial rename_variables(const ContextPtr& target,
                              const std::vector<std::size_t>& var_map) const {
    if (var_map.size() != ctx_->size())
      throw ContextMismatch("rename map has wrong arity");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      Monomial m(target->size());
      for (std::size_t i = 0; i < ctx_->size(); ++i) {
        std::uint32_t e = t.mono.exponent(i);
        if (e) m.bump(var_map[i], e);
      }
      out.push_back({std::move(m), t.coeff});
    }
    return from_terms(target, field_, std::move(out));
  }

  /// Applies a field homomorphism to every coefficient.
  Polynomial map_coefficients(const FieldHom& h) const {
    if (!h.source()->equals(*field_))
      throw DescriptorMismatch("hom source does not match coefficient field");
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) {
      FieldElement c = h(t.coeff);
      if (!c.is_zero()) out.push_back({t.mono, std::move(c)});
    }
    return from_terms(ctx_, h.target(), std::move(out));
  }

  /// Substitutes zero for every variable with kill[i] set.
  Polynomial zero_out_variables(const std::vector<bool>& kill) const {
    std::vector<Term> out;
    for (const auto& t : terms_) {
      bool killed = false;
      for (std::size_t i = 0; i < ctx_->size() && !killed; ++i)
        if (kill[i] && t.mono.exponent(i) > 0) killed = true;
      if (!killed) out.push_back(t);
    }
    return from_terms(ctx_, field_, std::move(out));
  }

  /// Indices of variables that occur with a nonzero exponent.
  std::vector<std::size_t> support_variables() const {
    std::vector<bool> seen(ctx_->size(), false);
    for (const auto& t : terms_)
      for (std::size_t i = 0; i < ctx_->size(); ++i)
        if (t.mono.exponent(i) > 0) seen[i] = true;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < seen.size(); ++i)
      if (seen[i]) out.push_back(i);
    return out;
  }

  std::string monomial_str(const Monomial& m) const {
    std::string out;
    for (std::size_t i = 0; i < ctx_->size(); ++i) {
      std::uint32_t e = m.exponent(i);
      if (!e) continue;
      if (!out.empty()) out += "*";
      out += ctx_->name(i);
      if (e > 1) out += "^" + std::to_string(e);
    }
    return out;
  }

  std::string str() const {
    if (!valid()) return "<invalid>";
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const auto& t : terms_) {
      bool neg = t.coeff.is_negative_rational();
      FieldElement mag = neg ? -t.coeff : t.coeff;
      std::string mono = monomial_str(t.mono);
      std::string piece;
      if (mono.empty())
        piece = mag.str();
      else if (mag.is_one())
        piece = mono;
      else
        piece = detail::coeff_factor(mag.str()) + "*" + mono;
      if (first) {
        out = (neg ? "-" : "") + piece;
        first = false;
      } else {
        out += (neg ? " - " : " + ") + piece;
      }
    }
    return out;
  }

 private:
  void check_compatible(const Polynomial& o) const {
    check_same_context(ctx_, o.ctx_);
    if (!field_->equals(*o.field_))
      throw DescriptorMismatch("polynomials over different fields");
  }

  ContextPtr ctx_;
  FieldPtr field_;
  std::vector<Term> terms_;
};

inline Polynomial operator*(const FieldElement& c, const Polynomial& f) {
  return f.scaled(c);
}

/// Spec-facing free function form of the partial derivative.
inline Polynomial partial_derivative(const Polynomial& f,
                                     const std::string& var) {
  auto idx = f.context()->index_of(var);
  if (!idx) throw UnknownVariable(var);
  return f.derivative(*idx);
}

// ---------------------------------------------------------------------------
// Truncated power-series substitution

namespace detail {

/// Fixed-length coefficient vectors of polynomials, representing elements of
/// R[t]/(t^{L+1}) with R a polynomial ring; product is convolution cut at
/// the truncation level.
struct TruncSeries {
  std::vector<Polynomial> c;

  static TruncSeries zero(const ContextPtr& ctx, const FieldPtr& field,
                          int level) {
    TruncSeries s;
    s.c.assign(static_cast<std::size_t>(level) + 1,
               Polynomial::zero(ctx, field));
    return s;
  }
};

inline TruncSeries ts_add(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r = a;
  for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
  return r;
}

inline TruncSeries ts_mul(const TruncSeries& a, const TruncSeries& b) {
  TruncSeries r =
      TruncSeries::zero(a.c[0].context(), a.c[0].field(),
                        static_cast<int>(a.c.size()) - 1);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < b.c.size(); ++j) {
      if (b.c[j].is_zero()) continue;
      r.c[i + j] += a.c[i] * b.c[j];
    }
  }
  return r;
}

inline TruncSeries substitute_truncated_impl(
    const Polynomial& f,
    const std::vector<const TruncSeries*>& values,  // per source variable
    const ContextPtr& target, const FieldPtr& field, int level) {
  if (f.is_zero()) return TruncSeries::zero(target, field, level);
  // find the lowest-index variable actually present
  std::size_t nv = f.context()->size();
  std::size_t pivot = nv;
  for (const auto& t : f.terms())
    for (std::size_t i = 0; i < nv && i < pivot; ++i)
      if (t.mono.exponent(i) > 0) pivot = std::min(pivot, i);
  if (pivot == nv) {
    // constant polynomial
    TruncSeries s = TruncSeries::zero(target, field, level);
    s.c[0] = Polynomial::constant(target, f.constant_value());
    return s;
  }
  // group f = sum_d pivot^d * g_d and run Horner in the truncated ring
  std::map<std::uint32_t, std::vector<Term>> groups;
  Monomial down(nv);
  down.bump(pivot, 1);
  for (const auto& t : f.terms()) {
    std::uint32_t d = t.mono.exponent(pivot);
    Monomial m = t.mono;
    for (std::uint32_t k = 0; k < d; ++k) m = down.quotient_into(m);
    groups[d].push_back({std::move(m), t.coeff});
  }
  const TruncSeries& v = *values[pivot];
  TruncSeries acc = TruncSeries::zero(target, field, level);
  bool started = false;
  std::uint32_t prev_deg = 0;
  for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
    std::uint32_t d = it->first;
    if (started) {
      for (std::uint32_t k = d; k < prev_deg; ++k) acc = ts_mul(acc, v);
    }
    Polynomial g = Polynomial::from_terms(f.context(), f.field(),
                                          std::move(it->second));
    acc = ts_add(acc, substitute_truncated_impl(g, values, target, field,
                                                level));
    started = true;
    prev_deg = d;
  }
  for (std::uint32_t k = 0; k < prev_deg; ++k) acc = ts_mul(acc, v);
  return acc;
}

}  // namespace detail

/// Substitutes each variable of f by a truncated power series (coefficient
/// vectors of length level+1 over a common target context) and returns the
/// coefficients [F_0, ..., F_level] of the result modulo t^{level+1}.
inline std::vector<Polynomial> substitute_truncated(
    const Polynomial& f,
    const std::map<std::string, std::vector<Polynomial>>& assignment,
    int level) {
  if (level < 0) throw LevelOutOfRange("truncation level must be >= 0");
  if (assignment.empty())
    throw MissingAssignment("<empty truncated assignment>");
  const ContextPtr& target = assignment.begin()->second.at(0).context();
  const FieldPtr& field = assignment.begin()->second.at(0).field();
  if (!field->equals(*f.field()))
    throw FieldMismatch("substitution values over a different field");
  // resolve the assignment against f's context
  std::vector<detail::TruncSeries> storage;
  storage.reserve(assignment.size());
  std::vector<const detail::TruncSeries*> values(f.context()->size(), nullptr);
  for (const auto& [name, vec] : assignment) {
    if (vec.size() != static_cast<std::size_t>(level) + 1)
      throw ContextMismatch("coefficient vector for " + name +
                            " must have length level+1");
    detail::TruncSeries s;
    s.c = vec;
    for (const auto& p : s.c) {
      check_same_context(p.context(), target);
      if (!p.field()->equals(*field))
        throw FieldMismatch("mixed fields in truncated assignment");
    }
    auto idx = f.context()->index_of(name);
    if (!idx) continue;  // assignments for absent variables are allowed
    storage.push_back(std::move(s));
    values[*idx] = nullptr;  // fixed up below; vector may reallocate
  }
  // second pass to take stable pointers
  std::size_t k = 0;
  for (const auto& [name, vec] : assignment) {
    auto idx = f.context()->index_of(name);
    if (!idx) continue;
    values[*idx] = &storage[k++];
  }
  for (std::size_t i : f.support_variables())
    if (values[i] == nullptr) throw MissingAssignment(f.context()->name(i));
  detail::TruncSeries out =
      detail::substitute_truncated_impl(f, values, target, field, level);
  return out.c;
}

}  // namespace jetcalc

#endif  // JETCALC_POLYNOMIAL_HPP
