#ifndef JETCALC_ORDER_HPP
#define JETCALC_ORDER_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "jetcalc/context.hpp"
#include "jetcalc/polynomial.hpp"

namespace jetcalc {

/// A global monomial order on a variable context: lex, degrevlex, or a
/// block elimination order (eliminated variables in the outer block under
/// degrevlex, remaining variables under the inner kind). All kinds are
/// total, multiplicative well-orders.
class MonomialOrder {
 public:
  enum class Kind { Lex, DegRevLex, Block };

  static MonomialOrder lex(const ContextPtr& ctx) {
    return MonomialOrder(ctx, Kind::Lex, {}, Kind::Lex);
  }

  static MonomialOrder degrevlex(const ContextPtr& ctx) {
    return MonomialOrder(ctx, Kind::DegRevLex, {}, Kind::DegRevLex);
  }

  static MonomialOrder block_elimination(const ContextPtr& ctx,
                                         const std::vector<bool>& outer,
                                         Kind inner = Kind::DegRevLex) {
    if (outer.size() != ctx->size())
      throw ContextMismatch("elimination mask has wrong arity");
    return MonomialOrder(ctx, Kind::Block, outer, inner);
  }

  const ContextPtr& context() const { return ctx_; }
  Kind kind() const { return kind_; }

  /// Three-way comparison: positive when a > b.
  int compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
      case Kind::Lex:
        return cmp_lex(a, b, priority_);
      case Kind::DegRevLex:
        return cmp_degrevlex(a, b, priority_);
      case Kind::Block: {
        int c = cmp_degrevlex(a, b, outer_list_);
        if (c) return c;
        return inner_ == Kind::Lex ? cmp_lex(a, b, inner_list_)
                                   : cmp_degrevlex(a, b, inner_list_);
      }
    }
    return 0;
  }

  bool greater(const Monomial& a, const Monomial& b) const {
    return compare(a, b) > 0;
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::Lex:
        return "lex";
      case Kind::DegRevLex:
        return "degrevlex";
      case Kind::Block:
        return "block";
    }
    return {};
  }

 private:
  MonomialOrder(const ContextPtr& ctx, Kind kind,
                const std::vector<bool>& outer, Kind inner)
      : ctx_(ctx), kind_(kind), inner_(inner) {
    priority_ = ctx->groebner_priority();
    if (kind_ == Kind::Block) {
      for (std::size_t v : priority_)
        (outer[v] ? outer_list_ : inner_list_).push_back(v);
    }
  }

  static int cmp_lex(const Monomial& a, const Monomial& b,
                     const std::vector<std::size_t>& vars) {
    for (std::size_t v : vars) {
      std::uint32_t ea = a.exponent(v), eb = b.exponent(v);
      if (ea != eb) return ea > eb ? 1 : -1;
    }
    return 0;
  }

  static int cmp_degrevlex(const Monomial& a, const Monomial& b,
                           const std::vector<std::size_t>& vars) {
    std::uint64_t da = 0, db = 0;
    for (std::size_t v : vars) {
      da += a.exponent(v);
      db += b.exponent(v);
    }
    if (da != db) return da > db ? 1 : -1;
    for (std::size_t i = vars.size(); i-- > 0;) {
      std::uint32_t ea = a.exponent(vars[i]), eb = b.exponent(vars[i]);
      if (ea != eb) return ea < eb ? 1 : -1;
    }
    return 0;
  }

  ContextPtr ctx_;
  Kind kind_;
  Kind inner_;
  std::vector<std::size_t> priority_;
  std::vector<std::size_t> outer_list_, inner_list_;
};

}  // namespace jetcalc

#endif  // JETCALC_ORDER_HPP
