#include "selrules/miner.hpp"

#include <algorithm>
#include <unordered_set>

#include "selrules/errors.hpp"

namespace selrules {

CountIndex FrequentItemsets::index() const {
  CountIndex out;
  out.reserve(itemsets.size());
  for (const auto& ci : itemsets) out.emplace(ci.itemset, ci.count);
  return out;
}

ItemsetCollection FrequentItemsets::collection() const {
  ItemsetCollection out;
  out.reserve(itemsets.size());
  for (const auto& ci : itemsets) out.push_back(ci.itemset);
  return out;
}

namespace {

// Candidates of one level, grouped by the frequent (k-1)-itemset they
// extend: candidate = parent + ext[j], with ext[j] > parent.back().
struct CandidateGroup {
  std::size_t parent = 0;
  std::vector<ItemId> ext;
  std::size_t offset = 0;  // into the level's counter array
};

std::vector<CandidateGroup> generate_candidates(const std::vector<CountedItemset>& level,
                                                std::size_t cap) {
  std::unordered_set<Itemset, ItemsetHash> known;
  known.reserve(level.size());
  for (const auto& ci : level) known.insert(ci.itemset);

  std::vector<CandidateGroup> groups;
  std::size_t total = 0;
  const std::size_t k1 = level.empty() ? 0 : level.front().itemset.size();

  auto same_prefix = [k1](const Itemset& a, const Itemset& b) {
    return std::equal(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(k1 - 1), b.begin());
  };

  std::vector<ItemId> buf;
  for (std::size_t i = 0; i < level.size(); ++i) {
    const auto& a = level[i].itemset;
    CandidateGroup group;
    group.parent = i;
    for (std::size_t j = i + 1; j < level.size() && same_prefix(a, level[j].itemset); ++j) {
      const ItemId last = level[j].itemset.items().back();
      // Prune: every (k-1)-subset must be frequent. Dropping either of the
      // last two items gives the two joined parents, which are known.
      bool ok = true;
      for (std::size_t drop = 0; ok && k1 >= 2 && drop + 1 < k1; ++drop) {
        buf.clear();
        for (std::size_t p = 0; p < k1; ++p)
          if (p != drop) buf.push_back(a[p]);
        buf.push_back(last);
        ok = known.contains(Itemset::from_sorted(buf));
      }
      if (ok) group.ext.push_back(last);
    }
    if (!group.ext.empty()) {
      group.offset = total;
      total += group.ext.size();
      if (total > cap)
        throw ResourceExhausted("candidate count for itemsets of size " + std::to_string(k1 + 1) +
                                " exceeds the cap of " + std::to_string(cap));
      groups.push_back(std::move(group));
    }
  }
  return groups;
}

}  // namespace

FrequentItemsets apriori(const TransactionDatabase& db, const AprioriOptions& options) {
  if (options.minsup.num() == 0 || options.minsup > Fraction(1, 1))
    throw ContractViolation("minsup must lie in (0, 1], got " + options.minsup.str());
  if (options.max_len && *options.max_len == 0)
    throw ContractViolation("max_len must be at least 1");

  FrequentItemsets out;
  out.minsup = options.minsup;
  out.m = db.size();
  out.max_len = options.max_len;
  const Count m = db.size();
  if (m == 0) return out;

  const std::size_t n_items = db.dictionary().size();
  std::vector<char> allowed(n_items, options.item_filter ? 0 : 1);
  if (options.item_filter)
    for (ItemId id : *options.item_filter)
      if (id < n_items) allowed[id] = 1;

  std::vector<Count> item_counts(n_items, 0);
  for (const auto& t : db.transactions())
    for (ItemId id : t)
      if (allowed[id]) ++item_counts[id];

  std::vector<CountedItemset> level;
  std::vector<char> frequent_item(n_items, 0);
  for (std::size_t id = 0; id < n_items; ++id) {
    if (allowed[id] && options.minsup.admits(item_counts[id], m)) {
      frequent_item[id] = 1;
      level.push_back({Itemset::from_sorted({static_cast<ItemId>(id)}), item_counts[id]});
    }
  }

  // Transactions projected onto frequent items; shorter than 2 never matter.
  std::vector<std::vector<ItemId>> projected;
  for (const auto& t : db.transactions()) {
    std::vector<ItemId> p;
    for (ItemId id : t)
      if (frequent_item[id]) p.push_back(id);
    if (p.size() >= 2) projected.push_back(std::move(p));
  }

  std::vector<char> mark(n_items, 0);
  std::size_t k = 1;
  while (!level.empty()) {
    out.itemsets.insert(out.itemsets.end(), level.begin(), level.end());
    if (options.max_len && k >= *options.max_len) break;

    auto groups = generate_candidates(level, options.candidate_cap);
    if (groups.empty()) break;
    const std::size_t n_cand = groups.back().offset + groups.back().ext.size();
    std::vector<Count> counts(n_cand, 0);

    // Groups are in lexicographic parent order, so groups sharing a first
    // item are contiguous.
    std::vector<std::pair<std::size_t, std::size_t>> by_first(n_items, {0, 0});
    for (std::size_t g = 0; g < groups.size(); ++g) {
      const ItemId first = level[groups[g].parent].itemset[0];
      if (by_first[first].second == 0) by_first[first].first = g;
      by_first[first].second = g + 1;
    }

    for (const auto& t : projected) {
      if (t.size() < k + 1) continue;
      for (ItemId id : t) mark[id] = 1;
      for (ItemId first : t) {
        const auto [gb, ge] = by_first[first];
        for (std::size_t g = gb; g < ge; ++g) {
          const auto& group = groups[g];
          const auto& parent = level[group.parent].itemset;
          bool contained = true;
          for (std::size_t p = 1; p < parent.size() && contained; ++p) contained = mark[parent[p]];
          if (!contained) continue;
          for (std::size_t e = 0; e < group.ext.size(); ++e)
            if (mark[group.ext[e]]) ++counts[group.offset + e];
        }
      }
      for (ItemId id : t) mark[id] = 0;
    }

    std::vector<CountedItemset> next;
    for (const auto& group : groups) {
      const auto& parent = level[group.parent].itemset;
      for (std::size_t e = 0; e < group.ext.size(); ++e) {
        const Count c = counts[group.offset + e];
        if (options.minsup.admits(c, m)) next.push_back({parent.with(group.ext[e]), c});
      }
    }
    // Parents are processed in lexicographic order and extensions ascend,
    // so `next` is already sorted.
    level = std::move(next);
    ++k;
  }
  return out;
}

FrequentItemsets closed_filter(const FrequentItemsets& f) {
  const auto index = f.index();
  std::unordered_set<Itemset, ItemsetHash> not_closed;
  // If X has a proper superset of equal count in a downward-closed family,
  // it also has one with exactly one extra item.
  for (const auto& [y, count] : f.itemsets) {
    if (y.size() < 2) continue;
    for (std::size_t i = 0; i < y.size(); ++i) {
      auto x = y.without_index(i);
      auto it = index.find(x);
      if (it != index.end() && it->second == count) not_closed.insert(std::move(x));
    }
  }
  FrequentItemsets out;
  out.minsup = f.minsup;
  out.m = f.m;
  out.max_len = f.max_len;
  for (const auto& ci : f.itemsets)
    if (!not_closed.contains(ci.itemset)) out.itemsets.push_back(ci);
  return out;
}

RuleSet rules_from_frequent(const FrequentItemsets& f, const Fraction& minconf) {
  RuleSet out;
  out.minconf = minconf;
  out.m = f.m;
  const auto index = f.index();
  auto lookup = [&](const Itemset& x) {
    auto it = index.find(x);
    if (it == index.end())
      throw DataError("frequent itemsets are not downward closed: a subset of size " +
                      std::to_string(x.size()) + " is missing");
    return it->second;
  };

  for (const auto& [z, full] : f.itemsets) {
    if (z.size() < 2) continue;
    for (std::size_t i = 0; i < z.size(); ++i) {
      ++out.candidates_evaluated;
      Itemset lhs = z.without_index(i);
      const Count lhs_count = lookup(lhs);
      if (!meets_confidence(full, lhs_count, minconf)) continue;
      Rule rule;
      rule.rhs = z[i];
      rule.lhs = std::move(lhs);
      rule.count_full = full;
      rule.count_lhs = lhs_count;
      rule.count_rhs = lookup(Itemset::from_sorted({rule.rhs}));
      rule.m = f.m;
      out.rules.push_back(std::move(rule));
    }
  }
  sort_rules(out.rules);
  return out;
}

}  // namespace selrules
