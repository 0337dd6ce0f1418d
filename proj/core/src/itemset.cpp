#include "selrules/itemset.hpp"

#include <algorithm>
#include <cassert>

namespace selrules {

Itemset::Itemset(std::vector<ItemId> items) : items_(std::move(items)) {
  std::sort(items_.begin(), items_.end());
  items_.erase(std::unique(items_.begin(), items_.end()), items_.end());
}

Itemset::Itemset(std::initializer_list<ItemId> items) : Itemset(std::vector<ItemId>(items)) {}

Itemset Itemset::from_sorted(std::vector<ItemId> items) {
  assert(std::adjacent_find(items.begin(), items.end(), std::greater_equal<>{}) == items.end());
  Itemset s;
  s.items_ = std::move(items);
  return s;
}

bool Itemset::contains(ItemId item) const noexcept {
  return std::binary_search(items_.begin(), items_.end(), item);
}

bool Itemset::is_subset_of(const Itemset& other) const noexcept {
  return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
}

Itemset Itemset::without_index(std::size_t index) const {
  std::vector<ItemId> out;
  out.reserve(items_.size() - 1);
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (i != index) out.push_back(items_[i]);
  return from_sorted(std::move(out));
}

Itemset Itemset::with(ItemId item) const {
  std::vector<ItemId> out(items_);
  auto pos = std::lower_bound(out.begin(), out.end(), item);
  if (pos == out.end() || *pos != item) out.insert(pos, item);
  return from_sorted(std::move(out));
}

std::size_t ItemsetHash::operator()(const Itemset& s) const noexcept {
  // FNV-1a over the ids.
  std::uint64_t h = 1469598103934665603ULL;
  for (ItemId id : s) {
    h ^= id;
    h *= 1099511628211ULL;
  }
  return static_cast<std::size_t>(h);
}

ItemsetCollection deduplicated(std::span<const Itemset> family) {
  ItemsetCollection out(family.begin(), family.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace selrules
