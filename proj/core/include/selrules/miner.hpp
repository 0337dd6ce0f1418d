#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <vector>

#include "selrules/corpus.hpp"
#include "selrules/fraction.hpp"
#include "selrules/itemset.hpp"
#include "selrules/rulegen.hpp"

namespace selrules {

struct CountedItemset {
  Itemset itemset;
  Count count = 0;
  friend bool operator==(const CountedItemset&, const CountedItemset&) = default;
};

using CountIndex = std::unordered_map<Itemset, Count, ItemsetHash>;

/// Output of the level-wise miner, ordered by size and then
/// lexicographically by item id.
struct FrequentItemsets {
  std::vector<CountedItemset> itemsets;
  Fraction minsup;
  Count m = 0;
  std::optional<std::size_t> max_len;

  std::size_t size() const noexcept { return itemsets.size(); }
  bool empty() const noexcept { return itemsets.empty(); }
  CountIndex index() const;
  ItemsetCollection collection() const;
};

struct AprioriOptions {
  Fraction minsup{1, 2};
  std::optional<std::size_t> max_len;  // unlimited when empty
  std::optional<Itemset> item_filter;  // mine only these items when set
  std::size_t candidate_cap = 10'000'000;
};

/// Level-wise Apriori. An itemset is frequent when count / m >= minsup.
/// Throws ContractViolation for minsup outside (0, 1] or max_len == 0 and
/// ResourceExhausted when a level would exceed `candidate_cap` candidates.
FrequentItemsets apriori(const TransactionDatabase& db, const AprioriOptions& options);

/// Keeps X unless some Y in `f` with X a proper subset of Y has the same
/// count. `f` must be downward closed (any apriori output is); closedness
/// with respect to the database additionally needs an unlimited max_len.
FrequentItemsets closed_filter(const FrequentItemsets& f);

/// All single-consequent rules from every itemset in `f`, counts taken
/// from `f` itself. Throws DataError if a needed subset is missing.
RuleSet rules_from_frequent(const FrequentItemsets& f, const Fraction& minconf);

}  // namespace selrules
