#include "selrules/rulegen.hpp"

#include <algorithm>

#include "selrules/errors.hpp"

namespace selrules {

RuleMeasures measures(const Rule& rule) {
  if (rule.m == 0) throw ContractViolation("rule measures need a non-empty database");
  if (rule.count_lhs == 0) throw ContractViolation("rule measures need a non-zero LHS count");
  RuleMeasures out;
  const auto full = static_cast<double>(rule.count_full);
  out.support = full / static_cast<double>(rule.m);
  out.confidence = full / static_cast<double>(rule.count_lhs);
  if (rule.count_rhs && *rule.count_rhs > 0)
    out.lift = (full * static_cast<double>(rule.m)) /
               (static_cast<double>(rule.count_lhs) * static_cast<double>(*rule.count_rhs));
  return out;
}

void sort_rules(std::vector<Rule>& rules) {
  std::sort(rules.begin(), rules.end(), [](const Rule& a, const Rule& b) {
    const auto lhs = static_cast<WideCount>(a.count_full) * b.count_lhs;
    const auto rhs = static_cast<WideCount>(b.count_full) * a.count_lhs;
    if (lhs != rhs) return lhs > rhs;
    if (a.count_full != b.count_full) return a.count_full > b.count_full;
    if (a.lhs != b.lhs) return a.lhs < b.lhs;
    return a.rhs < b.rhs;
  });
}

RuleSet generate_rules(std::span<const Itemset> family, const CountingTree& tree,
                       const Fraction& minconf) {
  RuleSet out;
  out.minconf = minconf;
  out.m = tree.transactions();

  for (const auto& z : deduplicated(family)) {
    if (z.size() < 2) {
      out.notes.push_back("skipped itemset of size " + std::to_string(z.size()) +
                          ": no rule with a non-empty LHS");
      continue;
    }
    const Count full = tree.query_count(z);
    for (std::size_t i = 0; i < z.size(); ++i) {
      ++out.candidates_evaluated;
      Itemset lhs = z.without_index(i);
      const Count lhs_count = tree.query_count(lhs);
      if (lhs_count == 0) {
        out.notes.push_back("skipped candidate with zero LHS count: confidence undefined");
        continue;
      }
      if (!meets_confidence(full, lhs_count, minconf)) continue;
      Rule rule;
      rule.rhs = z[i];
      rule.lhs = std::move(lhs);
      rule.count_full = full;
      rule.count_lhs = lhs_count;
      rule.count_rhs = tree.find_count(Itemset::from_sorted({rule.rhs}));
      rule.m = out.m;
      out.rules.push_back(std::move(rule));
    }
  }
  sort_rules(out.rules);
  return out;
}

}  // namespace selrules
