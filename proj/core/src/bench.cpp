#include "selrules/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <random>
#include <string>
#include <unordered_set>

#include "selrules/errors.hpp"
#include "selrules/formats.hpp"

namespace selrules {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(splitmix64(seed) ^ a) ^ b);
}

// Unbiased integer in [0, n); independent of the standard library's
// distribution implementations so samples are identical across platforms.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t threshold = (0 - n) % n;
  while (true) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % n;
  }
}

// Uniform double in (0, 1].
double uniform_open_closed(std::mt19937_64& rng) {
  return static_cast<double>((rng() >> 11) + 1) * 0x1.0p-53;
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<CountedItemset> sample_counted(const FrequentItemsets& pool, std::size_t size,
                                           std::uint64_t seed) {
  std::vector<CountedItemset> out;
  out.reserve(size);
  for (auto idx : sample_indices(pool.size(), size, seed)) out.push_back(pool.itemsets[idx]);
  return out;
}

ItemsetCollection itemsets_of(std::span<const CountedItemset> counted) {
  ItemsetCollection out;
  out.reserve(counted.size());
  for (const auto& ci : counted) out.push_back(ci.itemset);
  return out;
}

bool same_rules(const RuleSet& a, const RuleSet& b) {
  if (a.rules.size() != b.rules.size()) return false;
  for (std::size_t i = 0; i < a.rules.size(); ++i) {
    const auto& x = a.rules[i];
    const auto& y = b.rules[i];
    if (x.lhs != y.lhs || x.rhs != y.rhs || x.count_full != y.count_full ||
        x.count_lhs != y.count_lhs)
      return false;
  }
  return true;
}

}  // namespace

SelectiveResult run_selective(const TransactionDatabase& db, std::span<const Itemset> family,
                              const Fraction& minconf, unsigned threads) {
  auto tree = CountingTree::build(family, db.dictionary());
  tree.count_database(db, threads);
  auto rules = generate_rules(family, tree, minconf);
  return {std::move(tree), std::move(rules)};
}

RuleSet restricted_apriori_rules(const TransactionDatabase& db,
                                 std::span<const CountedItemset> family, const Fraction& minconf,
                                 std::size_t candidate_cap) {
  if (family.empty()) throw ContractViolation("baseline needs a non-empty family");
  Count min_count = family.front().count;
  std::size_t max_len = 0;
  std::vector<ItemId> items;
  for (const auto& [itemset, count] : family) {
    min_count = std::min(min_count, count);
    max_len = std::max(max_len, itemset.size());
    items.insert(items.end(), itemset.begin(), itemset.end());
  }
  if (min_count == 0) throw ContractViolation("baseline needs itemsets with positive support");

  AprioriOptions options;
  options.minsup = Fraction(min_count, db.size());
  options.max_len = max_len;
  options.item_filter = Itemset(std::move(items));
  options.candidate_cap = candidate_cap;
  return rules_from_frequent(apriori(db, options), minconf);
}

RuleSet rules_stemming_from(const RuleSet& rules, std::span<const Itemset> family) {
  std::unordered_set<Itemset, ItemsetHash> members(family.begin(), family.end());
  RuleSet out;
  out.minconf = rules.minconf;
  out.m = rules.m;
  for (const auto& rule : rules.rules)
    if (members.contains(rule.itemset())) out.rules.push_back(rule);
  return out;
}

std::vector<std::size_t> sample_indices(std::size_t population, std::size_t size,
                                        std::uint64_t seed) {
  if (size > population)
    throw ContractViolation("cannot sample " + std::to_string(size) + " itemsets from a pool of " +
                            std::to_string(population));
  std::vector<std::size_t> idx(population);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  // Partial Fisher-Yates: the first `size` slots end up a uniform sample.
  for (std::size_t i = 0; i < size; ++i) {
    const auto j = i + uniform_below(rng, population - i);
    std::swap(idx[i], idx[j]);
  }
  idx.resize(size);
  return idx;
}

ItemsetCollection sample_pool(const FrequentItemsets& pool, std::size_t size, std::uint64_t seed) {
  return itemsets_of(sample_counted(pool, size, seed));
}

void validate(const BenchConfig& cfg) {
  if (cfg.family_sizes.empty()) throw ContractViolation("no family sizes configured");
  for (std::size_t i = 0; i < cfg.family_sizes.size(); ++i) {
    if (cfg.family_sizes[i] == 0) throw ContractViolation("family sizes must be positive");
    if (i > 0 && cfg.family_sizes[i] <= cfg.family_sizes[i - 1])
      throw ContractViolation("family sizes must be strictly ascending");
  }
  if (cfg.repetitions == 0) throw ContractViolation("repetitions must be at least 1");
  if (cfg.minconf > Fraction(1, 1)) throw ContractViolation("minconf must lie in [0, 1]");
  if (cfg.verify && !cfg.run_baseline)
    throw ContractViolation("verification needs the baseline to run");
}

BenchReport run_benchmark(const TransactionDatabase& db, const BenchConfig& cfg) {
  validate(cfg);
  AprioriOptions options;
  options.minsup = cfg.pool_minsup;
  options.max_len = cfg.pool_max_len;
  options.candidate_cap = cfg.candidate_cap;
  return run_benchmark(db, apriori(db, options), cfg);
}

BenchReport run_benchmark(const TransactionDatabase& db, const FrequentItemsets& pool,
                          const BenchConfig& cfg) {
  validate(cfg);
  BenchReport report;
  report.pool_size = pool.size();

  for (std::size_t size : cfg.family_sizes) {
    if (size > pool.size())
      throw ContractViolation("family size " + std::to_string(size) + " exceeds the pool of " +
                              std::to_string(pool.size()) + " itemsets");
    BenchRow row;
    row.family_size = size;
    double t_sel = 0;
    double t_apr = 0;
    std::size_t apr_ok = 0;

    const std::size_t first = cfg.warmup ? 0 : 1;
    for (std::size_t rep = first; rep <= cfg.repetitions; ++rep) {
      const bool timed = rep > 0;
      const auto counted = sample_counted(pool, size, derive_seed(cfg.seed, size, rep));
      const auto family = itemsets_of(counted);

      auto start = Clock::now();
      auto selective = run_selective(db, family, cfg.minconf);
      const double sel = seconds_since(start);
      if (timed) {
        t_sel += sel;
        row.nodes += static_cast<double>(selective.tree.node_count());
        row.rules += static_cast<double>(selective.rules.size());
      }

      if (!cfg.run_baseline) continue;
      try {
        start = Clock::now();
        auto baseline = restricted_apriori_rules(db, counted, cfg.minconf, cfg.candidate_cap);
        const double apr = seconds_since(start);
        if (timed) {
          t_apr += apr;
          ++apr_ok;
        }
        if (cfg.verify && !same_rules(rules_stemming_from(baseline, family), selective.rules))
          throw ContractViolation("baseline and selective rules differ for family size " +
                                  std::to_string(size));
      } catch (const ResourceExhausted&) {
        if (timed) ++row.baseline_failures;
      }
    }
    const auto reps = static_cast<double>(cfg.repetitions);
    row.t_selective_s = t_sel / reps;
    row.nodes /= reps;
    row.rules /= reps;
    if (apr_ok > 0) row.t_apriori_s = t_apr / static_cast<double>(apr_ok);
    report.rows.push_back(row);
  }
  return report;
}

void write_report(std::ostream& out, const BenchReport& report) {
  out << "family_size,t_selective_s,t_apriori_s,nodes,rules\n";
  char buf[32];
  for (const auto& row : report.rows) {
    std::snprintf(buf, sizeof buf, "%.9g", row.t_selective_s);
    out << row.family_size << ',' << buf << ',';
    if (row.t_apriori_s) {
      std::snprintf(buf, sizeof buf, "%.9g", *row.t_apriori_s);
      out << buf;
    } else {
      out << "NA";
    }
    out << ',' << format_measure(row.nodes) << ',' << format_measure(row.rules) << '\n';
  }
}

TransactionDatabase synth_db(std::size_t n_items, std::size_t n_transactions, double mean_size,
                             std::uint64_t seed, double zipf_exponent) {
  if (!(mean_size > 0)) throw ContractViolation("mean transaction size must be positive");
  if (!(mean_size < static_cast<double>(n_items)))
    throw ContractViolation("mean transaction size must be below the number of items");

  std::vector<double> cdf(n_items);
  double acc = 0;
  for (std::size_t r = 0; r < n_items; ++r) {
    acc += 1.0 / std::pow(static_cast<double>(r + 1), zipf_exponent);
    cdf[r] = acc;
  }

  std::mt19937_64 rng(seed);
  // Geometric on {1, 2, ...} with mean 1/p.
  const double p = std::min(1.0, 1.0 / mean_size);
  const double log_q = std::log1p(-p);

  std::vector<std::vector<std::string>> rows;
  rows.reserve(n_transactions);
  std::vector<char> taken(n_items, 0);
  std::vector<std::size_t> picked;
  for (std::size_t t = 0; t < n_transactions; ++t) {
    std::size_t size = 1;
    if (p < 1.0) {
      const double extra = std::floor(std::log(uniform_open_closed(rng)) / log_q);
      size = extra >= static_cast<double>(n_items) ? n_items : 1 + static_cast<std::size_t>(extra);
    }
    size = std::min(size, n_items);

    picked.clear();
    std::size_t attempts = 0;
    while (picked.size() < size && attempts < 64 * size) {
      ++attempts;
      const double u = uniform_open_closed(rng) * acc;
      auto r = static_cast<std::size_t>(std::lower_bound(cdf.begin(), cdf.end(), u) - cdf.begin());
      r = std::min(r, n_items - 1);
      if (!taken[r]) {
        taken[r] = 1;
        picked.push_back(r);
      }
    }
    // Very long transactions: fill up with the most popular unused items.
    for (std::size_t r = 0; picked.size() < size && r < n_items; ++r)
      if (!taken[r]) {
        taken[r] = 1;
        picked.push_back(r);
      }

    std::vector<std::string> row;
    row.reserve(picked.size());
    for (auto r : picked) {
      row.push_back("i" + std::to_string(r));
      taken[r] = 0;
    }
    rows.push_back(std::move(row));
  }

  auto db = TransactionDatabase::from_label_rows(rows);
  db.set_metadata("generator", "geometric-size/zipf-items");
  db.set_metadata("n_items", std::to_string(n_items));
  db.set_metadata("n_transactions", std::to_string(n_transactions));
  db.set_metadata("mean_size", format_measure(mean_size));
  db.set_metadata("zipf_exponent", format_measure(zipf_exponent));
  db.set_metadata("seed", std::to_string(seed));
  return db;
}

}  // namespace selrules
