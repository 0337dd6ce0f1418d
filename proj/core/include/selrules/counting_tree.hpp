#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "selrules/corpus.hpp"
#include "selrules/itemset.hpp"

namespace selrules {

/// `z` together with every subset of `z` missing exactly one item. The
/// empty set is never materialized (its count is the transaction count).
/// Throws ContractViolation for an empty `z`.
ItemsetCollection required_subsets(const Itemset& z);

/// Prefix tree holding one counter per itemset whose support is needed to
/// generate rules for a target family.
///
/// Every root-to-node path is an itemset in dictionary order. Nodes whose
/// path is a target itemset or one of its (|Z|-1)-subsets are marked
/// required; other nodes only exist to complete prefixes. Siblings form a
/// singly linked list sorted by ascending item id, so the most frequent
/// items sit at the head of every list.
///
/// Life cycle: build() -> count_transaction()* / count_database() ->
/// freeze() -> query_count(). A frozen tree is immutable.
class CountingTree {
 public:
  /// Throws ContractViolation on an empty family or an empty itemset and
  /// DataError when an itemset uses an id >= `item_universe`.
  static CountingTree build(std::span<const Itemset> family, std::size_t item_universe);
  static CountingTree build(std::span<const Itemset> family, const ItemDictionary& dict) {
    return build(family, dict.size());
  }

  /// Adds one transaction (sorted in dictionary order): every node whose
  /// path is a subset of `t` is incremented by exactly one.
  void count_transaction(const Transaction& t);

  /// Counts every transaction of `db` once, then freezes. With
  /// `threads > 1` transactions are split into contiguous blocks counted
  /// into private copies whose counters are summed afterwards.
  void count_database(const TransactionDatabase& db, unsigned threads = 1);

  void freeze() noexcept { frozen_ = true; }
  bool frozen() const noexcept { return frozen_; }
  /// Zeroes all counters and unfreezes.
  void reset();

  /// Number of transactions counted so far (m).
  Count transactions() const noexcept { return transactions_; }

  /// Count of a required itemset; the empty itemset yields m. Throws
  /// ContractViolation if the tree is not frozen or `x` is not required.
  Count query_count(const Itemset& x) const;
  /// Like query_count but returns nullopt for itemsets that are not required.
  std::optional<Count> find_count(const Itemset& x) const;

  /// Nodes excluding the root.
  std::size_t node_count() const noexcept { return nodes_.size() - 1; }
  std::size_t required_count() const noexcept { return required_count_; }

  /// Depth-first visit in (depth-first, ascending id) order.
  using Visitor = std::function<void(const Itemset& path, Count counter, bool required)>;
  void visit(const Visitor& fn) const;

  /// Every required itemset, in the visit order.
  ItemsetCollection required_itemsets() const;

  /// One node per line: two spaces per depth level, item label, counter,
  /// and "req" or "aux".
  void dump(std::ostream& out, const ItemDictionary& dict) const;
  void dump(std::ostream& out) const;

 private:
  static constexpr std::uint32_t kNone = UINT32_MAX;

  struct Node {
    ItemId item = 0;
    std::uint32_t first_child = kNone;
    std::uint32_t next_sibling = kNone;
    bool required = false;
  };

  CountingTree() = default;

  std::uint32_t insert_path(const Itemset& path);
  std::uint32_t find_node(const Itemset& path) const;
  void count_suffix(std::uint32_t node, const ItemId* first, const ItemId* last,
                    Count* counters) const;
  void dump_impl(std::ostream& out, const std::function<void(std::ostream&, ItemId)>& label) const;

  // Structure and counters are kept apart so parallel counting can clone
  // only the counters.
  std::vector<Node> nodes_;
  std::vector<Count> counters_;
  std::size_t item_universe_ = 0;
  std::size_t required_count_ = 0;
  Count transactions_ = 0;
  bool frozen_ = false;
};

}  // namespace selrules
