#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "selrules/counting_tree.hpp"
#include "selrules/errors.hpp"

using namespace selrules;

namespace {

std::set<Itemset> all_paths(const CountingTree& tree) {
  std::set<Itemset> out;
  tree.visit([&](const Itemset& p, Count, bool) { out.insert(p); });
  return out;
}

std::map<Itemset, Count> counters(const CountingTree& tree) {
  std::map<Itemset, Count> out;
  tree.visit([&](const Itemset& p, Count c, bool) { out[p] = c; });
  return out;
}

}  // namespace

TEST(RequiredSubsets, MatchesTheDefinition) {
  const auto db = oracle::example_db();
  auto sorted = [](ItemsetCollection c) {
    std::sort(c.begin(), c.end());
    return c;
  };
  auto s = [&](std::initializer_list<const char*> l) { return oracle::items(db, l); };

  EXPECT_EQ(sorted(required_subsets(s({"a", "b", "c"}))),
            sorted({s({"a", "b", "c"}), s({"a", "b"}), s({"a", "c"}), s({"b", "c"})}));
  EXPECT_EQ(required_subsets(s({"a"})), ItemsetCollection{s({"a"})});
  EXPECT_EQ(sorted(required_subsets(s({"d", "e"}))), sorted({s({"d", "e"}), s({"d"}), s({"e"})}));
  EXPECT_THROW(required_subsets(Itemset{}), ContractViolation);
}

TEST(CountingTree, BuildsTheMinimalTreeForOneItemset) {
  const auto db = oracle::example_db();
  auto s = [&](std::initializer_list<const char*> l) { return oracle::items(db, l); };
  const ItemsetCollection family{s({"a", "b", "c"})};
  const auto tree = CountingTree::build(family, db.dictionary());

  EXPECT_EQ(tree.node_count(), 6u);
  EXPECT_EQ(all_paths(tree), (std::set<Itemset>{s({"a"}), s({"a", "b"}), s({"a", "b", "c"}),
                                                s({"a", "c"}), s({"b"}), s({"b", "c"})}));
  for (const auto& [path, c] : counters(tree)) EXPECT_EQ(c, 0u);
  // {a} and {b} only complete prefixes; the rest is needed for rules.
  std::set<Itemset> required;
  tree.visit([&](const Itemset& p, Count, bool r) {
    if (r) required.insert(p);
  });
  EXPECT_EQ(required,
            (std::set<Itemset>{s({"a", "b", "c"}), s({"a", "b"}), s({"a", "c"}), s({"b", "c"})}));
}

TEST(CountingTree, SharedPrefixAndSingletonFamilies) {
  const auto db = oracle::example_db();
  auto s = [&](std::initializer_list<const char*> l) { return oracle::items(db, l); };
  const ItemsetCollection family{s({"a", "b", "c"}), s({"a", "b"})};
  const auto tree = CountingTree::build(family, db.dictionary());
  EXPECT_EQ(tree.node_count(), 6u);
  const auto req = tree.required_itemsets();
  EXPECT_NE(std::find(req.begin(), req.end(), s({"a"})), req.end());

  const ItemsetCollection single{s({"a"})};
  EXPECT_EQ(CountingTree::build(single, db.dictionary()).node_count(), 1u);
}

TEST(CountingTree, BuildErrors) {
  const ItemsetCollection none;
  EXPECT_THROW(CountingTree::build(none, 5), ContractViolation);
  const ItemsetCollection with_empty{Itemset{0}, Itemset{}};
  EXPECT_THROW(CountingTree::build(with_empty, 5), ContractViolation);
  const ItemsetCollection unknown{Itemset{1, 7}};
  EXPECT_THROW(CountingTree::build(unknown, 5), DataError);
}

TEST(CountingTree, GoldenDumpInLexicalOrder) {
  // Equal occurrence counts give a lexical dictionary, which reproduces the
  // textbook drawing of the tree for {a,b,c}.
  auto dict = ItemDictionary::from_counts({{"c", 1}, {"a", 1}, {"b", 1}});
  TransactionDatabase db(dict, {Transaction{0, 1, 2}});
  const ItemsetCollection family{Itemset{0, 1, 2}};
  auto tree = CountingTree::build(family, db.dictionary());
  std::ostringstream before;
  tree.dump(before, db.dictionary());
  EXPECT_EQ(before.str(),
            "a 0 aux\n"
            "  b 0 req\n"
            "    c 0 req\n"
            "  c 0 req\n"
            "b 0 aux\n"
            "  c 0 req\n");
  tree.count_database(db);
  std::ostringstream after;
  tree.dump(after);
  EXPECT_EQ(after.str(),
            "0 1 aux\n"
            "  1 1 req\n"
            "    2 1 req\n"
            "  2 1 req\n"
            "1 1 aux\n"
            "  2 1 req\n");
}

TEST(CountingTree, CountTransactionIncrementsEverySubsetNode) {
  const auto db = oracle::example_db();
  auto s = [&](std::initializer_list<const char*> l) { return oracle::items(db, l); };
  const ItemsetCollection family{s({"a", "b", "c"})};

  auto tree = CountingTree::build(family, db.dictionary());
  tree.count_transaction(s({"a", "b", "c", "e"}));
  for (const auto& [path, c] : counters(tree)) EXPECT_EQ(c, 1u);

  auto tree2 = CountingTree::build(family, db.dictionary());
  tree2.count_transaction(s({"b", "c"}));
  for (const auto& [path, c] : counters(tree2))
    EXPECT_EQ(c, (path == s({"b"}) || path == s({"b", "c"})) ? 1u : 0u);

  auto tree3 = CountingTree::build(family, db.dictionary());
  tree3.count_transaction(Transaction{});
  for (const auto& [path, c] : counters(tree3)) EXPECT_EQ(c, 0u);
  EXPECT_EQ(tree3.transactions(), 1u);
}

TEST(CountingTree, CountsTheExampleDatabase) {
  const auto db = oracle::example_db();
  auto s = [&](std::initializer_list<const char*> l) { return oracle::items(db, l); };
  const ItemsetCollection family{s({"a", "b", "c"})};
  auto tree = CountingTree::build(family, db.dictionary());
  tree.count_database(db);

  const auto c = counters(tree);
  EXPECT_EQ(c.at(s({"a"})), 4u);
  EXPECT_EQ(c.at(s({"a", "b"})), 3u);
  EXPECT_EQ(c.at(s({"a", "b", "c"})), 2u);
  EXPECT_EQ(c.at(s({"a", "c"})), 3u);
  EXPECT_EQ(c.at(s({"b"})), 5u);
  EXPECT_EQ(c.at(s({"b", "c"})), 3u);

  EXPECT_EQ(tree.query_count(s({"a", "b"})), 3u);
  EXPECT_EQ(tree.query_count(Itemset{}), 8u);
  EXPECT_THROW(tree.query_count(s({"a", "e"})), ContractViolation);
  // Structural nodes are not part of the query contract.
  EXPECT_THROW(tree.query_count(s({"a"})), ContractViolation);
  EXPECT_FALSE(tree.find_count(s({"a"})).has_value());

  const ItemsetCollection de{s({"d", "e"})};
  auto tree_de = CountingTree::build(de, db.dictionary());
  tree_de.count_database(db);
  EXPECT_EQ(tree_de.query_count(s({"d"})), 1u);
  EXPECT_EQ(tree_de.query_count(s({"e"})), 4u);
  EXPECT_EQ(tree_de.query_count(s({"d", "e"})), 1u);
}

TEST(CountingTree, EmptyDatabaseAndLifecycle) {
  const auto db = oracle::example_db();
  const ItemsetCollection family{oracle::items(db, {"a", "b"})};
  auto tree = CountingTree::build(family, db.dictionary());
  EXPECT_THROW(tree.query_count(family[0]), ContractViolation);  // not frozen yet

  tree.count_database(TransactionDatabase{});
  EXPECT_EQ(tree.transactions(), 0u);
  EXPECT_EQ(tree.query_count(family[0]), 0u);
  EXPECT_THROW(tree.count_database(db), ContractViolation);
  EXPECT_THROW(tree.count_transaction(db[0]), ContractViolation);

  tree.reset();
  tree.count_database(db);
  EXPECT_EQ(tree.query_count(family[0]), 3u);
}

TEST(CountingTreeProperty, MatchesTheScanOracle) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 200; ++trial) {
    const auto db = oracle::random_db(rng, 1 + trial % 12, rng() % 201);
    if (db.dictionary().empty()) continue;
    const auto family = oracle::random_family(rng, db, 1 + rng() % 30, 6);
    auto tree = CountingTree::build(family, db.dictionary());
    tree.count_database(db, 1 + trial % 3);

    // Every node's counter is exact, required or not, and never exceeds its
    // parent's.
    std::map<Itemset, Count> seen;
    tree.visit([&](const Itemset& path, Count c, bool) {
      if (db.size() > 0) ASSERT_EQ(c, support(db, path).count);
      const Count parent =
          path.size() == 1 ? tree.transactions() : seen.at(path.without_index(path.size() - 1));
      ASSERT_LE(c, parent);
      seen[path] = c;
    });

    // The required set is exactly the union of required_subsets.
    std::set<Itemset> expected;
    for (const auto& z : family)
      for (auto& x : required_subsets(z)) expected.insert(x);
    const auto req = tree.required_itemsets();
    ASSERT_EQ(std::set<Itemset>(req.begin(), req.end()), expected);
    for (const auto& x : expected)
      if (db.size() > 0) ASSERT_EQ(tree.query_count(x), support(db, x).count);

    // Every leaf is required.
    std::set<Itemset> parents;
    for (const auto& [p, c] : seen)
      if (p.size() > 1) parents.insert(p.without_index(p.size() - 1));
    for (const auto& [p, c] : seen)
      if (!parents.contains(p)) ASSERT_TRUE(expected.contains(p));
  }
}

TEST(CountingTreeProperty, SingleTransactionTouchesExactlyItsSubsets) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 100; ++trial) {
    const auto db = oracle::random_db(rng, 2 + trial % 11, 20);
    if (db.dictionary().size() < 2) continue;
    const auto family = oracle::random_family(rng, db, 20, 5);
    auto tree = CountingTree::build(family, db.dictionary());
    const auto t = oracle::random_family(rng, db, 1, db.dictionary().size()).front();
    tree.count_transaction(t);
    tree.visit([&](const Itemset& path, Count c, bool) {
      ASSERT_EQ(c, path.is_subset_of(t) ? 1u : 0u);
    });
  }
}

TEST(CountingTreeProperty, DuplicatesAndSharing) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const auto db = oracle::random_db(rng, 12, 10);
    if (db.dictionary().empty()) continue;
    auto f1 = oracle::random_family(rng, db, 1 + rng() % 15, 6);
    auto f2 = oracle::random_family(rng, db, 1 + rng() % 15, 6);

    auto doubled = f1;
    doubled.insert(doubled.end(), f1.begin(), f1.end());
    std::ostringstream a, b;
    CountingTree::build(doubled, db.dictionary()).dump(a);
    CountingTree::build(deduplicated(f1), db.dictionary()).dump(b);
    ASSERT_EQ(a.str(), b.str());

    auto both = f1;
    both.insert(both.end(), f2.begin(), f2.end());
    ASSERT_LE(CountingTree::build(both, db.dictionary()).node_count(),
              CountingTree::build(f1, db.dictionary()).node_count() +
                  CountingTree::build(f2, db.dictionary()).node_count());
  }
}

TEST(CountingTree, ParallelCountingEqualsSequential) {
  std::mt19937_64 rng(11);
  const auto db = oracle::random_db(rng, 12, 5000);
  const auto family = oracle::random_family(rng, db, 40, 6);
  auto seq = CountingTree::build(family, db.dictionary());
  seq.count_database(db, 1);
  auto par = CountingTree::build(family, db.dictionary());
  par.count_database(db, 4);
  std::ostringstream a, b;
  seq.dump(a);
  par.dump(b);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(seq.transactions(), par.transactions());
}
