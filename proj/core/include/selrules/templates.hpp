#pragma once

#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selrules/corpus.hpp"
#include "selrules/errors.hpp"
#include "selrules/rulegen.hpp"

namespace selrules {

/// Attribute class of an item label: the text before the first '='. A
/// label without '=' is its own class.
std::string_view item_class(std::string_view label) noexcept;

/// A set of attribute classes, or every class.
struct ClassSet {
  bool any = false;
  std::set<std::string, std::less<>> names;

  bool admits(std::string_view cls) const { return any || names.contains(cls); }
};

/// Inclusive rule template `lhs => rhs`.
///
/// The RHS matches exactly one item from `rhs`. An unstarred LHS matches
/// exactly one item from `lhs`; a starred one matches one or more items,
/// each from `lhs`.
struct RuleTemplate {
  ClassSet lhs;
  bool lhs_star = false;
  ClassSet rhs;
};

class TemplateSyntaxError : public DataError {
 public:
  TemplateSyntaxError(const std::string& what, std::size_t position)
      : DataError(what + " at position " + std::to_string(position)), position_(position) {}
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Grammar:
///   template := side "=>" side
///   side     := alts ["*"]          (no star on the right-hand side)
///   alts     := name ("|" name)* | "(" name ("|" name)* ")"
/// `any` names the universal class. Whitespace is insignificant.
RuleTemplate parse_template(std::string_view text);

/// Class names used by `tpl` that no label in `labels` belongs to.
std::vector<std::string> unknown_classes(const RuleTemplate& tpl,
                                         std::span<const std::string> labels);

bool matches(const RuleTemplate& tpl, std::span<const std::string_view> lhs_labels,
             std::string_view rhs_label);

/// Rules matching `tpl`, in input order.
RuleSet filter_rules(const RuleSet& rules, const RuleTemplate& tpl, const ItemDictionary& dict);

}  // namespace selrules
