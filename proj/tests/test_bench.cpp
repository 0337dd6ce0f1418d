#include <gtest/gtest.h>

#include <algorithm>
#include <set>
#include <sstream>

#include "oracle.hpp"
#include "selrules/bench.hpp"
#include "selrules/errors.hpp"

using namespace selrules;

TEST(Sampling, DeterministicDistinctAndInRange) {
  const auto a = sample_indices(1000, 100, 7);
  EXPECT_EQ(a, sample_indices(1000, 100, 7));
  EXPECT_NE(a, sample_indices(1000, 100, 8));
  EXPECT_EQ(std::set<std::size_t>(a.begin(), a.end()).size(), 100u);
  EXPECT_LT(*std::max_element(a.begin(), a.end()), 1000u);

  auto all = sample_indices(50, 50, 3);
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < 50; ++i) EXPECT_EQ(all[i], i);

  EXPECT_THROW(sample_indices(10, 11, 1), ContractViolation);
  EXPECT_TRUE(sample_indices(10, 0, 1).empty());
}

TEST(Sampling, RoughlyUniform) {
  // Each of 10 slots drawn 3 at a time over 20000 seeds: expected 6000 hits.
  std::vector<int> hits(10, 0);
  for (std::uint64_t s = 0; s < 20000; ++s)
    for (auto i : sample_indices(10, 3, s)) ++hits[i];
  for (int h : hits) EXPECT_NEAR(h, 6000, 400);
}

TEST(Sampling, PoolSizeLimit) {
  const auto db = oracle::example_db();
  AprioriOptions o;
  o.minsup = Fraction(3, 8);
  const auto pool = apriori(db, o);
  EXPECT_EQ(sample_pool(pool, 7, 1).size(), 7u);
  EXPECT_THROW(sample_pool(pool, 8, 1), ContractViolation);
}

TEST(Synth, DeterministicAndShaped) {
  const auto a = synth_db(870, 100000, 10.0, 42);
  const auto b = synth_db(870, 100000, 10.0, 42);
  EXPECT_EQ(a, b);
  EXPECT_FALSE(a == synth_db(870, 100000, 10.0, 43));
  EXPECT_EQ(a.size(), 100000u);
  EXPECT_LE(a.dictionary().size(), 870u);

  double total = 0;
  for (const auto& t : a.transactions()) total += static_cast<double>(t.size());
  EXPECT_NEAR(total / 100000.0, 10.0, 0.5);

  // Zipf: the most frequent item is i0.
  EXPECT_EQ(a.dictionary().label(0), "i0");

  EXPECT_THROW(synth_db(10, 10, 0.0, 1), ContractViolation);
  EXPECT_THROW(synth_db(10, 10, 10.0, 1), ContractViolation);
}

TEST(Bench, ConfigValidation) {
  BenchConfig cfg;
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg.family_sizes = {3, 2};
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg.family_sizes = {0, 2};
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg.family_sizes = {1, 2};
  EXPECT_NO_THROW(validate(cfg));
  cfg.repetitions = 0;
  EXPECT_THROW(validate(cfg), ContractViolation);
  cfg.repetitions = 1;
  cfg.run_baseline = false;
  cfg.verify = true;
  EXPECT_THROW(validate(cfg), ContractViolation);
}

TEST(Bench, SmokeRunWithVerification) {
  const auto db = synth_db(60, 3000, 6.0, 9);
  BenchConfig cfg;
  cfg.pool_minsup = Fraction(1, 100);
  cfg.family_sizes = {5, 20, 40};
  cfg.repetitions = 2;
  cfg.minconf = Fraction(1, 5);
  cfg.verify = true;
  const auto report = run_benchmark(db, cfg);
  ASSERT_EQ(report.rows.size(), 3u);
  EXPECT_GE(report.pool_size, 40u);
  for (const auto& row : report.rows) {
    EXPECT_GE(row.t_selective_s, 0.0);
    ASSERT_TRUE(row.t_apriori_s.has_value());
    EXPECT_GT(row.nodes, 0.0);
    EXPECT_EQ(row.baseline_failures, 0u);
  }
  // More targets never need fewer nodes on average here.
  EXPECT_LE(report.rows[0].nodes, report.rows[2].nodes);

  // Structural columns are reproducible; timings are not.
  const auto again = run_benchmark(db, cfg);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(report.rows[i].nodes, again.rows[i].nodes);
    EXPECT_EQ(report.rows[i].rules, again.rows[i].rules);
  }

  std::ostringstream out;
  write_report(out, report);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "family_size,t_selective_s,t_apriori_s,nodes,rules");
}

TEST(Bench, BaselineFailuresAreReportedPerCell) {
  const auto db = synth_db(60, 3000, 6.0, 9);
  BenchConfig cfg;
  cfg.pool_minsup = Fraction(1, 100);
  cfg.family_sizes = {10};
  cfg.candidate_cap = 1;
  cfg.warmup = false;
  AprioriOptions o;
  o.minsup = cfg.pool_minsup;
  const auto pool = apriori(db, o);
  const auto report = run_benchmark(db, pool, cfg);
  EXPECT_FALSE(report.rows[0].t_apriori_s.has_value());
  EXPECT_EQ(report.rows[0].baseline_failures, 1u);
  std::ostringstream out;
  write_report(out, report);
  EXPECT_NE(out.str().find(",NA,"), std::string::npos);

  cfg.family_sizes = {pool.size() + 1};
  EXPECT_THROW(run_benchmark(db, pool, cfg), ContractViolation);
}
