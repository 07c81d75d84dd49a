#ifndef JETCALC_CONTEXT_HPP
#define JETCALC_CONTEXT_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetcalc/errors.hpp"

namespace jetcalc {

class VariableContext;
using ContextPtr = std::shared_ptr<const VariableContext>;

/// Marks a variable as the order-i jet coefficient of base variable j.
struct JetTag {
  int base_index = 0;
  int order = 0;
  bool operator==(const JetTag& o) const {
    return base_index == o.base_index && order == o.order;
  }
};

/// An ordered list of variable names, optionally tagged with jet structure.
/// The list order is the canonical variable order used for printing and for
/// the default term comparison.
class VariableContext : public std::enable_shared_from_this<VariableContext> {
 public:
  static ContextPtr make(std::vector<std::string> names) {
    auto c = std::shared_ptr<VariableContext>(new VariableContext());
    c->names_ = std::move(names);
    c->tags_.resize(c->names_.size());
    c->index_names();
    return c;
  }

  /// Builds the level-n jet context of `base`: one variable per (base
  /// variable j, order i), grouped level-major and named by suffixing the
  /// order (x -> x0, x1, ...). Name collisions are rejected.
  static ContextPtr make_jet(const ContextPtr& base, int level,
                             const std::string& separator = "") {
    if (!base) throw Error("jet context needs a base context");
    if (level < 0) throw LevelOutOfRange("jet level must be >= 0");
    auto c = std::shared_ptr<VariableContext>(new VariableContext());
    for (int i = 0; i <= level; ++i) {
      for (std::size_t j = 0; j < base->size(); ++j) {
        c->names_.push_back(base->name(j) + separator + std::to_string(i));
        c->tags_.push_back(JetTag{static_cast<int>(j), i});
      }
    }
    c->index_names();
    c->jet_base_ = base;
    c->jet_level_ = level;
    return c;
  }

  /// Copy of `base` with one extra untagged variable appended.
  static ContextPtr extend(const ContextPtr& base,
                           const std::string& extra_name) {
    if (!base) throw Error("extend needs a base context");
    auto c = std::shared_ptr<VariableContext>(new VariableContext());
    c->names_ = base->names_;
    c->names_.push_back(extra_name);
    c->tags_ = base->tags_;
    c->tags_.emplace_back();
    c->index_names();
    return c;
  }

  std::size_t size() const { return names_.size(); }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool is_jet() const { return jet_base_ != nullptr; }
  int jet_level() const { return jet_level_; }
  const ContextPtr& jet_base() const { return jet_base_; }
  const std::optional<JetTag>& jet_tag(std::size_t i) const {
    return tags_[i];
  }

  /// Index of the jet variable x_j^(i); jet contexts are level-major.
  std::size_t jet_var(int base_index, int order) const {
    if (!is_jet()) throw Error("jet_var on a non-jet context");
    if (order < 0 || order > jet_level_ || base_index < 0 ||
        base_index >= static_cast<int>(jet_base_->size()))
      throw LevelOutOfRange("jet variable index out of range");
    return static_cast<std::size_t>(order) * jet_base_->size() +
           static_cast<std::size_t>(base_index);
  }

  bool equals(const VariableContext& o) const {
    if (this == &o) return true;
    if (names_ != o.names_) return false;
    for (std::size_t i = 0; i < tags_.size(); ++i) {
      if (tags_[i].has_value() != o.tags_[i].has_value()) return false;
      if (tags_[i] && !(*tags_[i] == *o.tags_[i])) return false;
    }
    return true;
  }

  /// Variable priority for default monomial orders, highest first. Jet
  /// variables rank by descending jet order, ties by base index, so that
  /// high-order jet variables are cheap to eliminate; untagged variables
  /// follow in declaration order.
  std::vector<std::size_t> groebner_priority() const {
    std::vector<std::size_t> idx(size());
    for (std::size_t i = 0; i < size(); ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a,
                                                 std::size_t b) {
      bool ta = tags_[a].has_value(), tb = tags_[b].has_value();
      if (ta != tb) return ta;  // tagged before untagged
      if (!ta) return false;    // untagged keep declaration order
      if (tags_[a]->order != tags_[b]->order)
        return tags_[a]->order > tags_[b]->order;
      return tags_[a]->base_index < tags_[b]->base_index;
    });
    return idx;
  }

 private:
  VariableContext() = default;

  void index_names() {
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (names_[i].empty()) throw Error("empty variable name");
      if (!index_.emplace(names_[i], i).second)
        throw Error("duplicate variable name: " + names_[i]);
    }
  }

  std::vector<std::string> names_;
  std::vector<std::optional<JetTag>> tags_;
  std::map<std::string, std::size_t> index_;
  ContextPtr jet_base_;
  int jet_level_ = -1;
};

inline void check_same_context(const ContextPtr& a, const ContextPtr& b) {
  if (!a || !b) throw Error("operation on polynomial without context");
  if (a.get() == b.get()) return;
  if (!a->equals(*b))
    throw ContextMismatch("polynomials live in different variable contexts");
}

}  // namespace jetcalc

#endif  // JETCALC_CONTEXT_HPP
