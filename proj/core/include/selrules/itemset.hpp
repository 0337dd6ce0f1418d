#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace selrules {

using ItemId = std::uint32_t;
using Count = std::uint64_t;

/// A set of item ids kept strictly increasing, i.e. in dictionary order.
/// Default construction yields the empty set.
class Itemset {
 public:
  Itemset() = default;
  /// Sorts and removes duplicates.
  explicit Itemset(std::vector<ItemId> items);
  Itemset(std::initializer_list<ItemId> items);

  /// Takes ownership of an already strictly increasing sequence.
  static Itemset from_sorted(std::vector<ItemId> items);

  std::span<const ItemId> items() const noexcept { return items_; }
  std::size_t size() const noexcept { return items_.size(); }
  bool empty() const noexcept { return items_.empty(); }
  ItemId operator[](std::size_t i) const noexcept { return items_[i]; }
  auto begin() const noexcept { return items_.begin(); }
  auto end() const noexcept { return items_.end(); }

  bool contains(ItemId item) const noexcept;
  bool is_subset_of(const Itemset& other) const noexcept;
  /// This itemset with the element at `index` removed.
  Itemset without_index(std::size_t index) const;
  Itemset with(ItemId item) const;

  friend bool operator==(const Itemset&, const Itemset&) = default;
  /// Lexicographic on the id sequence.
  friend std::strong_ordering operator<=>(const Itemset& a, const Itemset& b) noexcept {
    return a.items_ <=> b.items_;
  }

 private:
  std::vector<ItemId> items_;
};

struct ItemsetHash {
  std::size_t operator()(const Itemset& s) const noexcept;
};

/// A transaction is the set of items bought together in one basket.
using Transaction = Itemset;
using ItemsetCollection = std::vector<Itemset>;

/// Sorted, duplicate-free copy of a family.
ItemsetCollection deduplicated(std::span<const Itemset> family);

}  // namespace selrules
