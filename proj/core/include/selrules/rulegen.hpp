#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "selrules/counting_tree.hpp"
#include "selrules/fraction.hpp"
#include "selrules/itemset.hpp"

namespace selrules {

/// lhs => {rhs} with the counts every measure is derived from.
struct Rule {
  Itemset lhs;
  ItemId rhs = 0;
  Count count_full = 0;  // transactions containing lhs and rhs
  Count count_lhs = 0;
  std::optional<Count> count_rhs;  // unknown when {rhs} was not counted
  Count m = 0;

  Itemset itemset() const { return lhs.with(rhs); }
  friend bool operator==(const Rule&, const Rule&) = default;
};

struct RuleMeasures {
  double support = 0;
  double confidence = 0;
  std::optional<double> lift;
};

/// Throws ContractViolation if m or count_lhs is zero.
RuleMeasures measures(const Rule& rule);

struct RuleSet {
  std::vector<Rule> rules;
  Fraction minconf;
  Count m = 0;
  /// Candidates skipped for a reason worth reporting (size-1 itemsets,
  /// zero LHS counts).
  std::vector<std::string> notes;
  std::size_t candidates_evaluated = 0;

  std::size_t size() const noexcept { return rules.size(); }
  bool empty() const noexcept { return rules.empty(); }
};

/// count_full / count_lhs >= minconf, exactly.
inline bool meets_confidence(Count count_full, Count count_lhs, const Fraction& minconf) noexcept {
  return minconf.admits(count_full, count_lhs);
}

/// Canonical rule order: confidence desc, count_full desc, lhs asc, rhs asc.
void sort_rules(std::vector<Rule>& rules);

/// For every distinct Z in `family` with |Z| = k >= 2, evaluates the k
/// candidates Z \ {y} => {y} from the counts in `tree` and keeps those with
/// confidence >= minconf. The tree must be frozen and built over a family
/// containing `family`.
RuleSet generate_rules(std::span<const Itemset> family, const CountingTree& tree,
                       const Fraction& minconf);

}  // namespace selrules
