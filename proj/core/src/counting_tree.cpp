#include "selrules/counting_tree.hpp"

#include <algorithm>
#include <ostream>
#include <string>
#include <thread>

#include "selrules/errors.hpp"

namespace selrules {

ItemsetCollection required_subsets(const Itemset& z) {
  if (z.empty()) throw ContractViolation("empty itemset is not a valid counting target");
  ItemsetCollection out;
  out.reserve(z.size() + 1);
  out.push_back(z);
  if (z.size() >= 2)
    for (std::size_t i = 0; i < z.size(); ++i) out.push_back(z.without_index(i));
  return out;
}

CountingTree CountingTree::build(std::span<const Itemset> family, std::size_t item_universe) {
  if (family.empty()) throw ContractViolation("cannot build a counting tree for an empty family");
  CountingTree tree;
  tree.item_universe_ = item_universe;
  tree.nodes_.emplace_back();  // root

  for (const auto& z : family) {
    if (z.empty()) throw ContractViolation("empty itemset is not a valid counting target");
    if (z.items().back() >= item_universe)
      throw DataError("itemset references item id " + std::to_string(z.items().back()) +
                      " unknown to a dictionary of " + std::to_string(item_universe) + " items");
    for (const auto& path : required_subsets(z)) {
      auto& node = tree.nodes_[tree.insert_path(path)];
      if (!node.required) {
        node.required = true;
        ++tree.required_count_;
      }
    }
  }
  tree.counters_.assign(tree.nodes_.size(), 0);
  return tree;
}

std::uint32_t CountingTree::insert_path(const Itemset& path) {
  std::uint32_t parent = 0;
  for (ItemId item : path) {
    // Walk the sorted sibling list to the insertion point.
    std::uint32_t prev = kNone;
    std::uint32_t cur = nodes_[parent].first_child;
    while (cur != kNone && nodes_[cur].item < item) {
      prev = cur;
      cur = nodes_[cur].next_sibling;
    }
    if (cur != kNone && nodes_[cur].item == item) {
      parent = cur;
      continue;
    }
    const auto fresh = static_cast<std::uint32_t>(nodes_.size());
    Node node;
    node.item = item;
    node.next_sibling = cur;
    nodes_.push_back(node);
    if (prev == kNone)
      nodes_[parent].first_child = fresh;
    else
      nodes_[prev].next_sibling = fresh;
    parent = fresh;
  }
  return parent;
}

std::uint32_t CountingTree::find_node(const Itemset& path) const {
  std::uint32_t node = 0;
  for (ItemId item : path) {
    std::uint32_t cur = nodes_[node].first_child;
    while (cur != kNone && nodes_[cur].item < item) cur = nodes_[cur].next_sibling;
    if (cur == kNone || nodes_[cur].item != item) return kNone;
    node = cur;
  }
  return node;
}

// For every position i of the suffix, the child of `node` labeled t[i] (if
// any) is incremented and the remainder t[i+1..] is counted below it. Both
// the sibling list and the transaction are ascending, so the child lookups
// for all i share one merge-style walk of the list.
void CountingTree::count_suffix(std::uint32_t node, const ItemId* first, const ItemId* last,
                                Count* counters) const {
  std::uint32_t child = nodes_[node].first_child;
  while (child != kNone && first != last) {
    const Node& n = nodes_[child];
    if (n.item < *first) {
      child = n.next_sibling;
    } else if (*first < n.item) {
      ++first;
    } else {
      ++counters[child];
      ++first;
      if (n.first_child != kNone) count_suffix(child, first, last, counters);
      child = n.next_sibling;
    }
  }
}

void CountingTree::count_transaction(const Transaction& t) {
  if (frozen_) throw ContractViolation("counting into a frozen tree");
  ++transactions_;
  const auto items = t.items();
  count_suffix(0, items.data(), items.data() + items.size(), counters_.data());
}

void CountingTree::count_database(const TransactionDatabase& db, unsigned threads) {
  if (frozen_) throw ContractViolation("counting into a frozen tree");
  const auto txs = db.transactions();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(txs.size() / 1024 + 1)));

  if (threads == 1) {
    for (const auto& t : txs) {
      const auto items = t.items();
      count_suffix(0, items.data(), items.data() + items.size(), counters_.data());
    }
  } else {
    std::vector<std::vector<Count>> partial(threads, std::vector<Count>(counters_.size(), 0));
    std::vector<std::jthread> workers;
    const std::size_t block = (txs.size() + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
      workers.emplace_back([this, &partial, txs, block, w] {
        const std::size_t begin = std::min(txs.size(), w * block);
        const std::size_t end = std::min(txs.size(), begin + block);
        for (std::size_t i = begin; i < end; ++i) {
          const auto items = txs[i].items();
          count_suffix(0, items.data(), items.data() + items.size(), partial[w].data());
        }
      });
    }
    workers.clear();
    for (const auto& p : partial)
      for (std::size_t i = 0; i < p.size(); ++i) counters_[i] += p[i];
  }
  transactions_ += txs.size();
  frozen_ = true;
}

void CountingTree::reset() {
  std::fill(counters_.begin(), counters_.end(), 0);
  transactions_ = 0;
  frozen_ = false;
}

std::optional<Count> CountingTree::find_count(const Itemset& x) const {
  if (!frozen_) throw ContractViolation("querying a tree that has not been frozen");
  if (x.empty()) return transactions_;
  const auto node = find_node(x);
  if (node == kNone || !nodes_[node].required) return std::nullopt;
  return counters_[node];
}

Count CountingTree::query_count(const Itemset& x) const {
  auto c = find_count(x);
  if (!c) throw ContractViolation("itemset of size " + std::to_string(x.size()) +
                                  " was not counted by this tree");
  return *c;
}

void CountingTree::visit(const Visitor& fn) const {
  std::vector<ItemId> path;
  // Explicit stack of (node, depth).
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;
  auto push_children = [&](std::uint32_t node, std::size_t depth) {
    const auto mark = stack.size();
    for (auto c = nodes_[node].first_child; c != kNone; c = nodes_[c].next_sibling)
      stack.emplace_back(c, depth);
    std::reverse(stack.begin() + static_cast<std::ptrdiff_t>(mark), stack.end());
  };
  push_children(0, 1);
  while (!stack.empty()) {
    auto [node, depth] = stack.back();
    stack.pop_back();
    path.resize(depth - 1);
    path.push_back(nodes_[node].item);
    fn(Itemset::from_sorted(path), counters_[node], nodes_[node].required);
    push_children(node, depth + 1);
  }
}

ItemsetCollection CountingTree::required_itemsets() const {
  ItemsetCollection out;
  out.reserve(required_count_);
  visit([&](const Itemset& path, Count, bool required) {
    if (required) out.push_back(path);
  });
  return out;
}

void CountingTree::dump_impl(std::ostream& out,
                             const std::function<void(std::ostream&, ItemId)>& label) const {
  visit([&](const Itemset& path, Count counter, bool required) {
    out << std::string(2 * (path.size() - 1), ' ');
    label(out, path.items().back());
    out << ' ' << counter << ' ' << (required ? "req" : "aux") << '\n';
  });
}

void CountingTree::dump(std::ostream& out, const ItemDictionary& dict) const {
  dump_impl(out, [&](std::ostream& o, ItemId id) { o << dict.label(id); });
}

void CountingTree::dump(std::ostream& out) const {
  dump_impl(out, [](std::ostream& o, ItemId id) { o << id; });
}

}  // namespace selrules
