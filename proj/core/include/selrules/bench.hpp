#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "selrules/corpus.hpp"
#include "selrules/counting_tree.hpp"
#include "selrules/fraction.hpp"
#include "selrules/miner.hpp"
#include "selrules/rulegen.hpp"

namespace selrules {

struct BenchConfig {
  Fraction pool_minsup{1, 100};
  std::optional<std::size_t> pool_max_len;
  std::vector<std::size_t> family_sizes;  // positive, strictly ascending
  std::size_t repetitions = 1;
  Fraction minconf{4, 5};
  std::uint64_t seed = 1;
  /// Time the restricted-Apriori baseline next to selective generation.
  bool run_baseline = true;
  /// Check, outside the timed regions, that the baseline's rules filtered
  /// to the family equal the selective rules. Needs run_baseline.
  bool verify = false;
  /// One discarded run per family size before the timed repetitions.
  bool warmup = true;
  std::size_t candidate_cap = 10'000'000;
};

struct BenchRow {
  std::size_t family_size = 0;
  double t_selective_s = 0;
  std::optional<double> t_apriori_s;  // empty when not run or every run failed
  double nodes = 0;
  double rules = 0;
  std::size_t baseline_failures = 0;
};

struct BenchReport {
  std::vector<BenchRow> rows;
  std::size_t pool_size = 0;
};

/// Tree built for `family`, counted over `db`, and the rules it yields.
struct SelectiveResult {
  CountingTree tree;
  RuleSet rules;
};

SelectiveResult run_selective(const TransactionDatabase& db, std::span<const Itemset> family,
                              const Fraction& minconf, unsigned threads = 1);

/// The restricted Apriori run that is guaranteed to find every itemset of
/// `family`: minsup = smallest family support, max_len = longest family
/// itemset, mining limited to items occurring in the family. Returns all of
/// its rules, not only those stemming from the family.
RuleSet restricted_apriori_rules(const TransactionDatabase& db,
                                 std::span<const CountedItemset> family, const Fraction& minconf,
                                 std::size_t candidate_cap = 10'000'000);

/// Rules whose lhs + rhs is a member of `family`, order preserved.
RuleSet rules_stemming_from(const RuleSet& rules, std::span<const Itemset> family);

/// `size` distinct indices out of [0, population), uniform, fixed by `seed`.
std::vector<std::size_t> sample_indices(std::size_t population, std::size_t size,
                                        std::uint64_t seed);

/// Uniform sample without replacement. Throws ContractViolation if `size`
/// exceeds the pool.
ItemsetCollection sample_pool(const FrequentItemsets& pool, std::size_t size, std::uint64_t seed);

/// Throws ContractViolation on an invalid configuration.
void validate(const BenchConfig& cfg);

/// Mines the pool at cfg.pool_minsup, then times both paths per size.
BenchReport run_benchmark(const TransactionDatabase& db, const BenchConfig& cfg);
BenchReport run_benchmark(const TransactionDatabase& db, const FrequentItemsets& pool,
                          const BenchConfig& cfg);

/// Header `family_size,t_selective_s,t_apriori_s,nodes,rules`; a missing
/// baseline time is written as NA.
void write_report(std::ostream& out, const BenchReport& report);

/// Synthetic basket data: transaction sizes follow a geometric law with the
/// given mean (clamped to [1, n_items]); items are drawn without
/// replacement with Zipf popularity weights 1/(rank+1)^zipf_exponent.
/// Labels are "i<rank>". Throws ContractViolation for mean_size <= 0 or
/// mean_size >= n_items.
TransactionDatabase synth_db(std::size_t n_items, std::size_t n_transactions, double mean_size,
                             std::uint64_t seed, double zipf_exponent = 1.0);

}  // namespace selrules
