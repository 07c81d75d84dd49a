#ifndef JETCALC_FIELD_HPP
#define JETCALC_FIELD_HPP

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jetcalc/errors.hpp"

namespace jetcalc {

class FieldDescriptor;
class FieldElement;
class FieldHom;

using FieldPtr = std::shared_ptr<const FieldDescriptor>;

enum class FieldKind {
  Rationals,          // QQ
  PrimeField,         // Fp(p)
  RationalFunctions,  // base(gen)
  SimpleExtension,    // base[gen]/(m(gen))
};

namespace detail {

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d <= n / d; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::uint64_t addmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t p) {
  return (a + b) % p;
}

inline std::uint64_t submod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t p) {
  return (a + p - b) % p;
}

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b,
                            std::uint64_t p) {
  return static_cast<std::uint64_t>(
      (static_cast<unsigned __int128>(a) * b) % p);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e,
                            std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

inline std::uint64_t invmod(std::uint64_t a, std::uint64_t p) {
  if (a % p == 0) throw ZeroInversion();
  // extended Euclid on signed intermediates
  std::int64_t t0 = 0, t1 = 1;
  std::int64_t r0 = static_cast<std::int64_t>(p),
               r1 = static_cast<std::int64_t>(a % p);
  while (r1 != 0) {
    std::int64_t q = r0 / r1;
    std::int64_t r = r0 - q * r1;
    r0 = r1;
    r1 = r;
    std::int64_t t = t0 - q * t1;
    t0 = t1;
    t1 = t;
  }
  std::int64_t res = t0 % static_cast<std::int64_t>(p);
  if (res < 0) res += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(res);
}

inline bool atom_token(const std::string& s) {
  if (s.empty()) return false;
  bool digits = true, ident = true;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char c = s[i];
    if (!(c >= '0' && c <= '9')) digits = false;
    bool id_char = (c == '_') || (c >= 'a' && c <= 'z') ||
                   (c >= 'A' && c <= 'Z') ||
                   (i > 0 && c >= '0' && c <= '9');
    if (!id_char) ident = false;
  }
  return digits || ident;
}

/// Wraps a coefficient string in parentheses unless it is a bare integer or
/// a single identifier, so that printed polynomials re-parse unambiguously.
inline std::string coeff_factor(const std::string& s) {
  return atom_token(s) ? s : "(" + s + ")";
}

}  // namespace detail

/// An element of a coefficient field. Values are immutable after
/// construction and always kept in canonical form: rationals reduced with
/// positive denominator, rational functions reduced with monic denominator,
/// extension residues reduced modulo the minimal polynomial. Equality is
/// therefore syntactic.
class FieldElement {
 public:
  FieldElement() = default;  // invalid until assigned from a field factory

  bool valid() const { return field_ != nullptr; }
  const FieldPtr& field() const { return field_; }

  bool is_zero() const;
  bool is_one() const;
  bool operator==(const FieldElement& other) const;
  bool operator!=(const FieldElement& other) const { return !(*this == other); }

  FieldElement operator-() const;
  FieldElement operator+(const FieldElement& other) const;
  FieldElement operator-(const FieldElement& other) const;
  FieldElement operator*(const FieldElement& other) const;
  FieldElement operator/(const FieldElement& other) const;
  FieldElement& operator+=(const FieldElement& o) { return *this = *this + o; }
  FieldElement& operator-=(const FieldElement& o) { return *this = *this - o; }
  FieldElement& operator*=(const FieldElement& o) { return *this = *this * o; }
  FieldElement& operator/=(const FieldElement& o) { return *this = *this / o; }

  FieldElement inverse() const;
  FieldElement pow(std::uint64_t e) const;

  /// True only for negative elements of QQ; drives sign splitting when the
  /// element is printed as a polynomial coefficient.
  bool is_negative_rational() const;

  std::string str() const;

  // payload accessors (valid for the matching field kind only)
  const mpq_class& rational() const { return rat_; }
  std::uint64_t residue() const { return res_; }
  const std::vector<FieldElement>& numerator() const { return num_; }
  const std::vector<FieldElement>& denominator() const { return den_; }
  const std::vector<FieldElement>& residue_poly() const { return num_; }

 private:
  friend class FieldDescriptor;
  friend class FieldHom;

  FieldPtr field_;
  mpq_class rat_;             // Rationals
  std::uint64_t res_ = 0;     // PrimeField
  std::vector<FieldElement> num_;  // RationalFunctions numerator / extension residue
  std::vector<FieldElement> den_;  // RationalFunctions denominator (monic)
};

namespace detail {

// Dense univariate polynomials over a field, index = degree, no trailing
// zero coefficients (empty vector = 0). These back the rational-function
// and simple-extension layers of the field tower.
using UP = std::vector<FieldElement>;

inline void up_trim(UP& a) {
  while (!a.empty() && a.back().is_zero()) a.pop_back();
}

inline bool up_is_zero(const UP& a) { return a.empty(); }

inline int up_deg(const UP& a) { return static_cast<int>(a.size()) - 1; }

UP up_add(const FieldPtr& K, const UP& a, const UP& b);
UP up_neg(const UP& a);
UP up_sub(const FieldPtr& K, const UP& a, const UP& b);
UP up_mul(const FieldPtr& K, const UP& a, const UP& b);
UP up_scale(const UP& a, const FieldElement& c);
std::pair<UP, UP> up_divmod(const FieldPtr& K, UP a, const UP& b);
UP up_monic(const UP& a);
UP up_gcd_monic(const FieldPtr& K, UP a, UP b);
UP up_derivative(const FieldPtr& K, const UP& a);
FieldElement up_eval(const FieldPtr& K, const UP& a, const FieldElement& x);
std::string up_str(const UP& a, const std::string& var);

}  // namespace detail

/// Describes one layer of a tower of exact coefficient fields. Instances
/// are immutable and shared; elements keep a pointer to their descriptor.
class FieldDescriptor : public std::enable_shared_from_this<FieldDescriptor> {
 public:
  static FieldPtr rationals() {
    auto f = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    f->kind_ = FieldKind::Rationals;
    f->char_ = 0;
    return f;
  }

  static FieldPtr prime_field(std::uint64_t p) {
    if (!detail::is_prime_u64(p))
      throw Error("prime field modulus is not prime: " + std::to_string(p));
    auto f = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    f->kind_ = FieldKind::PrimeField;
    f->p_ = p;
    f->char_ = p;
    return f;
  }

  static FieldPtr rational_functions(const FieldPtr& base,
                                     const std::string& generator) {
    if (!base) throw Error("rational function field needs a base field");
    if (base->has_generator(generator))
      throw Error("generator name reused in field tower: " + generator);
    auto f = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    f->kind_ = FieldKind::RationalFunctions;
    f->base_ = base;
    f->gen_ = generator;
    f->char_ = base->characteristic();
    return f;
  }

  /// The minimal polynomial is given as a dense coefficient vector over the
  /// base field and is normalized to monic form. `certified` records whether
  /// irreducibility was certified by the caller; with an uncertified modulus
  /// a factor may surface later as a NonInvertible error.
  static FieldPtr simple_extension(const FieldPtr& base,
                                   const std::string& generator,
                                   std::vector<FieldElement> minimal,
                                   bool certified = false) {
    if (!base) throw Error("simple extension needs a base field");
    if (base->has_generator(generator))
      throw Error("generator name reused in field tower: " + generator);
    detail::up_trim(minimal);
    if (detail::up_deg(minimal) < 1)
      throw Error("extension minimal polynomial must have degree >= 1");
    for (const auto& c : minimal)
      if (!c.field()->equals(*base))
        throw DescriptorMismatch(
            "minimal polynomial coefficients must lie in the base field");
    if (!minimal.back().is_one()) {
      FieldElement inv = minimal.back().inverse();
      minimal = detail::up_scale(minimal, inv);
    }
    auto f = std::shared_ptr<FieldDescriptor>(new FieldDescriptor());
    f->kind_ = FieldKind::SimpleExtension;
    f->base_ = base;
    f->gen_ = generator;
    f->minimal_ = std::move(minimal);
    f->certified_ = certified;
    f->char_ = base->characteristic();
    return f;
  }

  FieldKind kind() const { return kind_; }
  std::uint64_t characteristic() const { return char_; }
  std::uint64_t prime() const { return p_; }
  const FieldPtr& base() const { return base_; }
  const std::string& generator_name() const { return gen_; }
  const std::vector<FieldElement>& minimal_polynomial() const {
    return minimal_;
  }
  bool irreducibility_certified() const { return certified_; }
  std::size_t extension_degree() const { return minimal_.size() - 1; }

  bool equals(const FieldDescriptor& other) const {
    if (this == &other) return true;
    if (kind_ != other.kind_ || p_ != other.p_ || gen_ != other.gen_)
      return false;
    if (static_cast<bool>(base_) != static_cast<bool>(other.base_))
      return false;
    if (base_ && !base_->equals(*other.base_)) return false;
    if (minimal_.size() != other.minimal_.size()) return false;
    for (std::size_t i = 0; i < minimal_.size(); ++i)
      if (minimal_[i] != other.minimal_[i]) return false;
    return true;
  }

  bool has_generator(const std::string& name) const {
    if ((kind_ == FieldKind::RationalFunctions ||
         kind_ == FieldKind::SimpleExtension) &&
        gen_ == name)
      return true;
    return base_ && base_->has_generator(name);
  }

  FieldElement zero() const {
    FieldElement e;
    e.field_ = shared_from_this();
    switch (kind_) {
      case FieldKind::Rationals:
      case FieldKind::PrimeField:
        break;
      case FieldKind::RationalFunctions:
        e.den_ = {base_->one()};
        break;
      case FieldKind::SimpleExtension:
        break;
    }
    return e;
  }

  FieldElement one() const { return from_integer(1); }

  FieldElement from_integer(long long n) const {
    return from_mpz(mpz_class(static_cast<long>(n)));
  }

  FieldElement from_mpz(const mpz_class& n) const {
    FieldElement e;
    e.field_ = shared_from_this();
    switch (kind_) {
      case FieldKind::Rationals:
        e.rat_ = mpq_class(n);
        break;
      case FieldKind::PrimeField: {
        mpz_class r = n % static_cast<long>(p_);
        if (r < 0) r += static_cast<long>(p_);
        e.res_ = r.get_ui();
        break;
      }
      case FieldKind::RationalFunctions: {
        FieldElement c = base_->from_mpz(n);
        if (!c.is_zero()) e.num_ = {c};
        e.den_ = {base_->one()};
        break;
      }
      case FieldKind::SimpleExtension: {
        FieldElement c = base_->from_mpz(n);
        if (!c.is_zero()) e.num_ = {c};
        break;
      }
    }
    return e;
  }

  FieldElement from_rational(const mpq_class& q) const {
    if (kind_ == FieldKind::Rationals) {
      FieldElement e;
      e.field_ = shared_from_this();
      e.rat_ = q;
      e.rat_.canonicalize();
      return e;
    }
    FieldElement num = from_mpz(q.get_num());
    FieldElement den = from_mpz(q.get_den());
    return num / den;  // throws ZeroInversion when char divides the denominator
  }

  /// The generator adjoined by this layer (the `s` of K(s) or `u` of K[u]/m).
  FieldElement generator() const {
    if (kind_ != FieldKind::RationalFunctions &&
        kind_ != FieldKind::SimpleExtension)
      throw Error("field layer has no generator");
    FieldElement e;
    e.field_ = shared_from_this();
    e.num_ = {base_->zero(), base_->one()};
    if (kind_ == FieldKind::RationalFunctions) e.den_ = {base_->one()};
    if (kind_ == FieldKind::SimpleExtension && extension_degree() == 1) {
      // degree-1 modulus: the generator reduces to a base constant
      e.num_ = {-minimal_[0]};
      detail::up_trim(e.num_);
    }
    return e;
  }

  /// Looks up a generator anywhere in the tower and embeds it upward.
  std::optional<FieldElement> named_generator(const std::string& name) const {
    if ((kind_ == FieldKind::RationalFunctions ||
         kind_ == FieldKind::SimpleExtension) &&
        gen_ == name)
      return generator();
    if (base_) {
      auto inner = base_->named_generator(name);
      if (inner) return embed(*inner);
    }
    return std::nullopt;
  }

  /// Embeds a base-field element into this layer.
  FieldElement embed(const FieldElement& base_elem) const {
    if (kind_ != FieldKind::RationalFunctions &&
        kind_ != FieldKind::SimpleExtension)
      throw DescriptorMismatch("field has no base layer to embed from");
    if (!base_elem.field()->equals(*base_))
      throw DescriptorMismatch("embed: element does not lie in the base field");
    FieldElement e;
    e.field_ = shared_from_this();
    if (!base_elem.is_zero()) e.num_ = {base_elem};
    if (kind_ == FieldKind::RationalFunctions) e.den_ = {base_->one()};
    return e;
  }

  /// Builds a canonical fraction num/den over the base field.
  FieldElement make_fraction(detail::UP num, detail::UP den) const {
    if (kind_ != FieldKind::RationalFunctions)
      throw DescriptorMismatch("make_fraction on a non-function field");
    detail::up_trim(num);
    detail::up_trim(den);
    if (detail::up_is_zero(den)) throw ZeroInversion();
    FieldElement e;
    e.field_ = shared_from_this();
    if (detail::up_is_zero(num)) {
      e.den_ = {base_->one()};
      return e;
    }
    detail::UP g = detail::up_gcd_monic(base_, num, den);
    if (detail::up_deg(g) > 0) {
      num = detail::up_divmod(base_, std::move(num), g).first;
      den = detail::up_divmod(base_, std::move(den), g).first;
    }
    if (!den.back().is_one()) {
      FieldElement inv = den.back().inverse();
      num = detail::up_scale(num, inv);
      den = detail::up_scale(den, inv);
      den.back() = base_->one();  // exact by construction
    }
    e.num_ = std::move(num);
    e.den_ = std::move(den);
    return e;
  }

  /// Builds an extension element, reducing the residue mod the minimal poly.
  FieldElement make_residue(detail::UP res) const {
    if (kind_ != FieldKind::SimpleExtension)
      throw DescriptorMismatch("make_residue on a non-extension field");
    detail::up_trim(res);
    if (detail::up_deg(res) >= static_cast<int>(extension_degree()))
      res = detail::up_divmod(base_, std::move(res), minimal_).second;
    FieldElement e;
    e.field_ = shared_from_this();
    e.num_ = std::move(res);
    return e;
  }

  std::string str() const {
    switch (kind_) {
      case FieldKind::Rationals:
        return "QQ";
      case FieldKind::PrimeField:
        return "Fp(" + std::to_string(p_) + ")";
      case FieldKind::RationalFunctions:
        return base_->str() + "(" + gen_ + ")";
      case FieldKind::SimpleExtension:
        return base_->str() + "[" + gen_ + "]/(" +
               detail::up_str(minimal_, gen_) + ")";
    }
    return {};
  }

 private:
  FieldDescriptor() = default;

  FieldKind kind_ = FieldKind::Rationals;
  std::uint64_t p_ = 0;
  std::uint64_t char_ = 0;
  FieldPtr base_;
  std::string gen_;
  std::vector<FieldElement> minimal_;
  bool certified_ = false;
};

namespace detail {

inline void check_same_field(const FieldElement& a, const FieldElement& b) {
  if (!a.valid() || !b.valid())
    throw Error("operation on uninitialized field element");
  if (a.field().get() == b.field().get()) return;
  if (!a.field()->equals(*b.field()))
    throw DescriptorMismatch("field elements live in different fields: " +
                             a.field()->str() + " vs " + b.field()->str());
}

inline UP up_add(const FieldPtr& K, const UP& a, const UP& b) {
  UP r(std::max(a.size(), b.size()), K->zero());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  up_trim(r);
  return r;
}

inline UP up_neg(const UP& a) {
  UP r = a;
  for (auto& c : r) c = -c;
  return r;
}

inline UP up_sub(const FieldPtr& K, const UP& a, const UP& b) {
  return up_add(K, a, up_neg(b));
}

inline UP up_mul(const FieldPtr& K, const UP& a, const UP& b) {
  if (up_is_zero(a) || up_is_zero(b)) return {};
  UP r(a.size() + b.size() - 1, K->zero());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  }
  up_trim(r);
  return r;
}

inline UP up_scale(const UP& a, const FieldElement& c) {
  if (c.is_zero()) return {};
  UP r = a;
  for (auto& x : r) x = x * c;
  return r;
}

inline std::pair<UP, UP> up_divmod(const FieldPtr& K, UP a, const UP& b) {
  if (up_is_zero(b)) throw ZeroInversion();
  int db = up_deg(b);
  FieldElement lead_inv = b.back().inverse();
  UP q;
  while (up_deg(a) >= db) {
    int shift = up_deg(a) - db;
    FieldElement c = a.back() * lead_inv;
    if (static_cast<int>(q.size()) < shift + 1) q.resize(shift + 1, K->zero());
    q[shift] = c;
    for (int i = 0; i <= db; ++i)
      a[shift + i] -= c * b[i];
    up_trim(a);
  }
  up_trim(q);
  return {std::move(q), std::move(a)};
}

inline UP up_monic(const UP& a) {
  if (up_is_zero(a) || a.back().is_one()) return a;
  return up_scale(a, a.back().inverse());
}

inline UP up_gcd_monic(const FieldPtr& K, UP a, UP b) {
  while (!up_is_zero(b)) {
    UP r = up_divmod(K, std::move(a), b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(a);
}

inline UP up_derivative(const FieldPtr& K, const UP& a) {
  if (a.size() <= 1) return {};
  UP r(a.size() - 1, K->zero());
  for (std::size_t i = 1; i < a.size(); ++i)
    r[i - 1] = a[i] * K->from_integer(static_cast<long long>(i));
  up_trim(r);
  return r;
}

inline FieldElement up_eval(const FieldPtr& K, const UP& a,
                            const FieldElement& x) {
  FieldElement acc = K->zero();
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

/// Inverse of `a` modulo `m` by the extended Euclidean algorithm. A
/// nontrivial gcd means the modulus was reducible.
inline UP up_inv_mod(const FieldPtr& K, const UP& a, const UP& m,
                     const std::string& field_name) {
  if (up_is_zero(a)) throw ZeroInversion();
  UP r0 = m, r1 = a;
  UP t0, t1 = {K->one()};
  while (!up_is_zero(r1)) {
    auto [q, r] = up_divmod(K, r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UP t = up_sub(K, t0, up_mul(K, q, t1));
    t0 = std::move(t1);
    t1 = std::move(t);
  }
  if (up_deg(r0) > 0)
    throw NonInvertible(
        "residue shares the factor " + up_str(r0, "#") +
        " with the minimal polynomial of " + field_name +
        "; the asserted-irreducible modulus is reducible");
  return up_scale(t0, r0.back().inverse());
}

inline std::string up_str(const UP& a, const std::string& var) {
  if (up_is_zero(a)) return "0";
  std::string out;
  bool first = true;
  for (std::size_t i = a.size(); i-- > 0;) {
    const FieldElement& c = a[i];
    if (c.is_zero()) continue;
    bool neg = c.is_negative_rational();
    FieldElement mag = neg ? -c : c;
    std::string cs = mag.str();
    std::string mono;
    if (i == 1)
      mono = var;
    else if (i > 1)
      mono = var + "^" + std::to_string(i);
    std::string piece;
    if (mono.empty())
      piece = cs;
    else if (mag.is_one())
      piece = mono;
    else
      piece = coeff_factor(cs) + "*" + mono;
    if (first) {
      out = (neg ? "-" : "") + piece;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + piece;
    }
  }
  return out;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// FieldElement operations

inline bool FieldElement::is_zero() const {
  if (!valid()) throw Error("operation on uninitialized field element");
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == 0;
    case FieldKind::PrimeField:
      return res_ == 0;
    case FieldKind::RationalFunctions:
    case FieldKind::SimpleExtension:
      return num_.empty();
  }
  return false;
}

inline bool FieldElement::is_one() const {
  if (!valid()) throw Error("operation on uninitialized field element");
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == 1;
    case FieldKind::PrimeField:
      return res_ == 1 % field_->prime();
    case FieldKind::RationalFunctions:
      return num_.size() == 1 && num_[0].is_one() && den_.size() == 1 &&
             den_[0].is_one();
    case FieldKind::SimpleExtension:
      return num_.size() == 1 && num_[0].is_one();
  }
  return false;
}

inline bool FieldElement::operator==(const FieldElement& other) const {
  if (!valid() || !other.valid()) return valid() == other.valid();
  if (!field_->equals(*other.field_)) return false;
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_ == other.rat_;
    case FieldKind::PrimeField:
      return res_ == other.res_;
    case FieldKind::RationalFunctions:
      return num_ == other.num_ && den_ == other.den_;
    case FieldKind::SimpleExtension:
      return num_ == other.num_;
  }
  return false;
}

inline FieldElement FieldElement::operator-() const {
  if (!valid()) throw Error("operation on uninitialized field element");
  FieldElement e = *this;
  switch (field_->kind()) {
    case FieldKind::Rationals:
      e.rat_ = -rat_;
      break;
    case FieldKind::PrimeField:
      e.res_ = res_ == 0 ? 0 : field_->prime() - res_;
      break;
    case FieldKind::RationalFunctions:
    case FieldKind::SimpleExtension:
      e.num_ = detail::up_neg(num_);
      break;
  }
  return e;
}

inline FieldElement FieldElement::operator+(const FieldElement& other) const {
  detail::check_same_field(*this, other);
  switch (field_->kind()) {
    case FieldKind::Rationals: {
      FieldElement e;
      e.field_ = field_;
      e.rat_ = rat_ + other.rat_;
      return e;
    }
    case FieldKind::PrimeField: {
      FieldElement e;
      e.field_ = field_;
      e.res_ = detail::addmod(res_, other.res_, field_->prime());
      return e;
    }
    case FieldKind::RationalFunctions: {
      const FieldPtr& K = field_->base();
      detail::UP n = detail::up_add(K, detail::up_mul(K, num_, other.den_),
                                    detail::up_mul(K, other.num_, den_));
      detail::UP d = detail::up_mul(K, den_, other.den_);
      return field_->make_fraction(std::move(n), std::move(d));
    }
    case FieldKind::SimpleExtension: {
      const FieldPtr& K = field_->base();
      return field_->make_residue(detail::up_add(K, num_, other.num_));
    }
  }
  throw Error("unreachable");
}

inline FieldElement FieldElement::operator-(const FieldElement& other) const {
  return *this + (-other);
}

inline FieldElement FieldElement::operator*(const FieldElement& other) const {
  detail::check_same_field(*this, other);
  switch (field_->kind()) {
    case FieldKind::Rationals: {
      FieldElement e;
      e.field_ = field_;
      e.rat_ = rat_ * other.rat_;
      return e;
    }
    case FieldKind::PrimeField: {
      FieldElement e;
      e.field_ = field_;
      e.res_ = detail::mulmod(res_, other.res_, field_->prime());
      return e;
    }
    case FieldKind::RationalFunctions: {
      const FieldPtr& K = field_->base();
      return field_->make_fraction(detail::up_mul(K, num_, other.num_),
                                   detail::up_mul(K, den_, other.den_));
    }
    case FieldKind::SimpleExtension: {
      const FieldPtr& K = field_->base();
      return field_->make_residue(detail::up_mul(K, num_, other.num_));
    }
  }
  throw Error("unreachable");
}

inline FieldElement FieldElement::inverse() const {
  if (!valid()) throw Error("operation on uninitialized field element");
  if (is_zero()) throw ZeroInversion();
  switch (field_->kind()) {
    case FieldKind::Rationals: {
      FieldElement e;
      e.field_ = field_;
      e.rat_ = 1 / rat_;
      return e;
    }
    case FieldKind::PrimeField: {
      FieldElement e;
      e.field_ = field_;
      e.res_ = detail::invmod(res_, field_->prime());
      return e;
    }
    case FieldKind::RationalFunctions:
      return field_->make_fraction(den_, num_);
    case FieldKind::SimpleExtension: {
      const FieldPtr& K = field_->base();
      detail::UP inv = detail::up_inv_mod(
          K, num_, field_->minimal_polynomial(), field_->str());
      return field_->make_residue(std::move(inv));
    }
  }
  throw Error("unreachable");
}

inline FieldElement FieldElement::operator/(const FieldElement& other) const {
  return *this * other.inverse();
}

inline FieldElement FieldElement::pow(std::uint64_t e) const {
  if (!valid()) throw Error("operation on uninitialized field element");
  FieldElement acc = field_->one();
  FieldElement base = *this;
  while (e) {
    if (e & 1) acc = acc * base;
    base = base * base;
    e >>= 1;
  }
  return acc;
}

inline bool FieldElement::is_negative_rational() const {
  return valid() && field_->kind() == FieldKind::Rationals && rat_ < 0;
}

inline std::string FieldElement::str() const {
  if (!valid()) return "<invalid>";
  switch (field_->kind()) {
    case FieldKind::Rationals:
      return rat_.get_str();
    case FieldKind::PrimeField:
      return std::to_string(res_);
    case FieldKind::RationalFunctions: {
      const std::string& g = field_->generator_name();
      if (num_.empty()) return "0";
      std::string n = detail::up_str(num_, g);
      if (den_.size() == 1 && den_[0].is_one()) return n;
      std::string d = detail::up_str(den_, g);
      auto wrap = [](const std::string& s, const detail::UP& poly) {
        std::size_t terms = 0;
        for (const auto& c : poly)
          if (!c.is_zero()) ++terms;
        return terms > 1 ? "(" + s + ")" : s;
      };
      return wrap(n, num_) + "/" + wrap(d, den_);
    }
    case FieldKind::SimpleExtension:
      return detail::up_str(num_, field_->generator_name());
  }
  return {};
}

// ---------------------------------------------------------------------------
// Field homomorphisms

/// A ring homomorphism between coefficient fields, determined by images of
/// the tower generators. Construction verifies that each minimal-polynomial
/// image vanishes in the target, so the assignment extends to a well-defined
/// map; missing images default to the target's generator of the same name.
class FieldHom {
 public:
  FieldHom(FieldPtr source, FieldPtr target,
           std::map<std::string, FieldElement> generator_images = {})
      : source_(std::move(source)),
        target_(std::move(target)),
        images_(std::move(generator_images)) {
    if (!source_ || !target_) throw Error("hom needs source and target");
    if (source_->characteristic() != target_->characteristic())
      throw DescriptorMismatch(
          "no ring map between fields of different characteristic");
    for (const auto& [name, img] : images_)
      if (!img.field()->equals(*target_))
        throw DescriptorMismatch("image of " + name +
                                 " does not lie in the target field");
    // walk the source tower bottom-up, filling defaults and checking minimal
    // polynomial images
    std::vector<const FieldDescriptor*> layers;
    for (const FieldDescriptor* f = source_.get(); f; f = f->base().get())
      layers.push_back(f);
    for (auto it = layers.rbegin(); it != layers.rend(); ++it) {
      const FieldDescriptor* layer = *it;
      if (layer->kind() != FieldKind::RationalFunctions &&
          layer->kind() != FieldKind::SimpleExtension)
        continue;
      const std::string& g = layer->generator_name();
      if (!images_.count(g)) {
        auto def = target_->named_generator(g);
        if (!def)
          throw DescriptorMismatch("no image given for tower generator " + g);
        images_.emplace(g, *def);
      }
      if (layer->kind() == FieldKind::SimpleExtension) {
        const FieldElement& img = images_.at(g);
        FieldElement acc = target_->zero();
        const auto& m = layer->minimal_polynomial();
        for (std::size_t i = m.size(); i-- > 0;)
          acc = acc * img + apply_layer(layer->base().get(), m[i]);
        if (!acc.is_zero())
          throw DescriptorMismatch(
              "minimal polynomial of " + g +
              " does not vanish at its image; not a ring map");
      }
    }
  }

  static FieldHom identity(const FieldPtr& f) { return FieldHom(f, f); }

  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }

  FieldElement operator()(const FieldElement& x) const {
    if (!x.valid() || !x.field()->equals(*source_))
      throw DescriptorMismatch("element does not lie in the hom's source");
    return apply_layer(source_.get(), x);
  }

 private:
  FieldElement apply_layer(const FieldDescriptor* layer,
                           const FieldElement& x) const {
    switch (layer->kind()) {
      case FieldKind::Rationals:
        return target_->from_rational(x.rational());
      case FieldKind::PrimeField:
        return target_->from_mpz(
            mpz_class(static_cast<unsigned long>(x.residue())));
      case FieldKind::RationalFunctions: {
        const FieldElement& img = images_.at(layer->generator_name());
        FieldElement n = eval_up(layer->base().get(), x.numerator(), img);
        FieldElement d = eval_up(layer->base().get(), x.denominator(), img);
        return n / d;
      }
      case FieldKind::SimpleExtension: {
        const FieldElement& img = images_.at(layer->generator_name());
        return eval_up(layer->base().get(), x.residue_poly(), img);
      }
    }
    throw Error("unreachable");
  }

  FieldElement eval_up(const FieldDescriptor* coeff_layer,
                       const detail::UP& poly, const FieldElement& at) const {
    FieldElement acc = target_->zero();
    for (std::size_t i = poly.size(); i-- > 0;)
      acc = acc * at + apply_layer(coeff_layer, poly[i]);
    return acc;
  }

  FieldPtr source_, target_;
  std::map<std::string, FieldElement> images_;
};

// ---------------------------------------------------------------------------

/// Decides membership in (F_p(s))^p by the derivative test on the reduced
/// fraction: d/ds x = 0 iff x is a p-th power, since F_p is perfect.
inline bool is_pth_power(const FieldElement& x) {
  if (!x.valid()) throw Error("operation on uninitialized field element");
  const FieldPtr& F = x.field();
  if (F->characteristic() == 0)
    throw WrongCharacteristic("p-th power test needs characteristic p > 0");
  if (F->kind() != FieldKind::RationalFunctions ||
      F->base()->kind() != FieldKind::PrimeField)
    throw DescriptorMismatch(
        "p-th power test is defined over Fp(s) fields only");
  const FieldPtr& K = F->base();
  detail::UP dn = detail::up_derivative(K, x.numerator());
  detail::UP dd = detail::up_derivative(K, x.denominator());
  detail::UP lhs = detail::up_sub(K, detail::up_mul(K, dn, x.denominator()),
                                  detail::up_mul(K, x.numerator(), dd));
  return detail::up_is_zero(lhs);
}

}  // namespace jetcalc

#endif  // JETCALC_FIELD_HPP
