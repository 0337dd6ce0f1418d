#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "selrules/corpus.hpp"
#include "selrules/miner.hpp"
#include "selrules/rulegen.hpp"
#include "selrules/templates.hpp"

namespace selrules {

// Itemset file: one itemset per line. Lines written by the miner look like
// `{l1,l2,...} count support`; plain separator-delimited label lists are
// accepted on input as well. Blank and '#' lines are ignored.

void write_itemsets(std::ostream& out, const FrequentItemsets& f, const ItemDictionary& dict);
std::vector<std::vector<std::string>> read_itemset_labels(std::istream& in, char separator = ' ');

struct ResolvedFamily {
  ItemsetCollection itemsets;
  std::vector<std::string> warnings;
  std::size_t skipped = 0;
};

/// Maps label lists onto `dict`. An itemset with an unknown label (or no
/// labels at all) is skipped with a warning.
ResolvedFamily resolve_family(std::span<const std::vector<std::string>> labels,
                              const ItemDictionary& dict);

// Rule file: header `lhs,rhs,support,confidence,lift,count`, then one rule
// per line, e.g. `{a,b},{c},0.25,0.666667,,2`. Commas inside braces belong
// to the item list. `lift` is empty when unknown; `count` is count_full.

inline constexpr std::string_view kRuleHeader = "lhs,rhs,support,confidence,lift,count";

void write_rules(std::ostream& out, const RuleSet& rules, const ItemDictionary& dict);

/// One parsed line of a rule file; `line` keeps the original text.
struct RuleRecord {
  std::vector<std::string> lhs;
  std::string rhs;
  std::string line;
};

/// Throws DataError on a missing header or a malformed line.
std::vector<RuleRecord> read_rule_records(std::istream& in);
void write_rule_records(std::ostream& out, std::span<const RuleRecord> records);
std::vector<RuleRecord> filter_records(std::span<const RuleRecord> records,
                                       const RuleTemplate& tpl);

/// Shortest round-trippable-enough rendering used in every output file.
std::string format_measure(double value);

}  // namespace selrules
