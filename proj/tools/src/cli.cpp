#include "selrules_cli/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include "selrules/bench.hpp"
#include "selrules/corpus.hpp"
#include "selrules/errors.hpp"
#include "selrules/formats.hpp"
#include "selrules/miner.hpp"
#include "selrules/rulegen.hpp"
#include "selrules/templates.hpp"

namespace selrules::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Fraction parse_fraction(const std::string& flag, const std::string& text, bool allow_zero) {
  Fraction f;
  try {
    f = Fraction::parse(text);
  } catch (const DataError& e) {
    throw UsageError(flag + ": " + e.what());
  }
  if (f > Fraction(1, 1) || (!allow_zero && f.num() == 0))
    throw UsageError(flag + " must lie in " + (allow_zero ? "[0, 1]" : "(0, 1]") + ", got " + text);
  return f;
}

char parse_separator(const std::string& flag, const std::string& text) {
  if (text == "space") return ' ';
  if (text == "tab" || text == "\\t") return '\t';
  if (text == "comma") return ',';
  if (text.size() != 1) throw UsageError(flag + " must be a single character, 'space' or 'tab'");
  return text.front();
}

std::vector<std::size_t> parse_sizes(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto& field : split_fields(text, ',')) {
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(field, &pos);
    } catch (const std::exception&) {
      throw UsageError("--sizes: not a number: '" + field + "'");
    }
    if (pos != field.size() || field.front() == '-')
      throw UsageError("--sizes: not a number: '" + field + "'");
    if (v == 0) throw UsageError("--sizes: family sizes must be positive");
    if (!out.empty() && v <= out.back())
      throw UsageError("--sizes: family sizes must be strictly ascending");
    out.push_back(static_cast<std::size_t>(v));
  }
  if (out.empty()) throw UsageError("--sizes: at least one family size is required");
  return out;
}

// Output sink: a file when a path is given, else `fallback`.
class Sink {
 public:
  Sink(const std::string& path, std::ostream& fallback) {
    if (path.empty() || path == "-") {
      stream_ = &fallback;
    } else {
      file_ = std::make_unique<std::ofstream>(path);
      if (!*file_) throw DataError("cannot write '" + path + "'");
      stream_ = file_.get();
    }
  }
  std::ostream& stream() { return *stream_; }
  bool is_file() const { return file_ != nullptr; }
  void close(const std::string& path) {
    stream_->flush();
    if (!*stream_) throw DataError("write failed for '" + path + "'");
  }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct MineArgs {
  std::string input, minsup, output, separator = "space";
  std::size_t maxlen = 0;
  bool closed = false;
  std::size_t cap = 10'000'000;
};

struct RulesArgs {
  std::string input, itemsets, minconf, output, separator = "space";
  unsigned threads = 1;
};

struct FilterArgs {
  std::string rules, tmpl, output;
};

struct BenchArgs {
  std::string input, pool_minsup, sizes, minconf = "0.8", output, separator = "space";
  std::size_t reps = 1, pool_maxlen = 0, cap = 10'000'000;
  std::uint64_t seed = 1;
  bool no_baseline = false, verify = false;
};

struct RecodeArgs {
  std::string input, output, missing = "?", table_separator = "comma", separator = "space",
                                columns;
};

struct SynthArgs {
  std::size_t items = 870, transactions = 100'000;
  double mean_size = 10.0, zipf = 1.0;
  std::uint64_t seed = 1;
  std::string output, separator = "space";
};

int cmd_mine(const MineArgs& a, std::ostream& out, std::ostream& err) {
  AprioriOptions options;
  options.minsup = parse_fraction("--minsup", a.minsup, false);
  if (a.maxlen > 0) options.max_len = a.maxlen;
  options.candidate_cap = a.cap;
  const auto db = load_basket(a.input, parse_separator("--separator", a.separator));

  auto frequent = apriori(db, options);
  const auto n_frequent = frequent.size();
  if (a.closed) frequent = closed_filter(frequent);

  Sink sink(a.output, out);
  write_itemsets(sink.stream(), frequent, db.dictionary());
  sink.close(a.output);

  std::ostream& summary = sink.is_file() ? out : err;
  summary << frequent.size() << " itemsets";
  if (a.closed) summary << " (closed, from " << n_frequent << " frequent)";
  summary << " over " << db.size() << " transactions and " << db.dictionary().size()
          << " items\n";
  return kExitOk;
}

int cmd_rules(const RulesArgs& a, std::ostream& out, std::ostream& err) {
  const auto minconf = parse_fraction("--minconf", a.minconf, true);
  const char sep = parse_separator("--separator", a.separator);
  const auto db = load_basket(a.input, sep);

  std::ifstream in(a.itemsets);
  if (!in) throw DataError("cannot open itemset file '" + a.itemsets + "'");
  const auto labels = read_itemset_labels(in, sep);
  auto family = resolve_family(labels, db.dictionary());
  for (const auto& w : family.warnings) err << "warning: " << w << '\n';
  if (family.itemsets.empty()) throw DataError("no usable itemsets in '" + a.itemsets + "'");

  auto result = run_selective(db, family.itemsets, minconf, std::max(1u, a.threads));
  std::vector<std::pair<std::string, std::size_t>> notes;
  for (const auto& note : result.rules.notes) {
    auto it = std::find_if(notes.begin(), notes.end(), [&](const auto& n) { return n.first == note; });
    if (it == notes.end())
      notes.emplace_back(note, 1);
    else
      ++it->second;
  }
  for (const auto& [note, n] : notes)
    err << "note: " << note << (n > 1 ? " (" + std::to_string(n) + " times)" : "") << '\n';

  Sink sink(a.output, out);
  write_rules(sink.stream(), result.rules, db.dictionary());
  sink.close(a.output);
  std::ostream& summary = sink.is_file() ? out : err;
  summary << result.rules.size() << " rules from " << family.itemsets.size() << " itemsets ("
          << result.tree.node_count() << " tree nodes)\n";
  return kExitOk;
}

int cmd_filter(const FilterArgs& a, std::ostream& out, std::ostream& err) {
  RuleTemplate tpl;
  try {
    tpl = parse_template(a.tmpl);
  } catch (const TemplateSyntaxError& e) {
    throw UsageError(std::string("--template: ") + e.what());
  }
  std::ifstream in(a.rules);
  if (!in) throw DataError("cannot open rule file '" + a.rules + "'");
  const auto records = read_rule_records(in);

  std::vector<std::string> labels;
  for (const auto& rec : records) {
    labels.insert(labels.end(), rec.lhs.begin(), rec.lhs.end());
    labels.push_back(rec.rhs);
  }
  for (const auto& name : unknown_classes(tpl, labels))
    err << "warning: template class '" << name << "' matches no item in the rule file\n";

  const auto kept = filter_records(records, tpl);
  Sink sink(a.output, out);
  write_rule_records(sink.stream(), kept);
  sink.close(a.output);
  std::ostream& summary = sink.is_file() ? out : err;
  summary << kept.size() << " of " << records.size() << " rules match\n";
  return kExitOk;
}

int cmd_bench(const BenchArgs& a, std::ostream& out, std::ostream& err) {
  BenchConfig cfg;
  cfg.pool_minsup = parse_fraction("--pool-minsup", a.pool_minsup, false);
  cfg.family_sizes = parse_sizes(a.sizes);
  if (a.reps == 0) throw UsageError("--reps must be at least 1");
  cfg.repetitions = a.reps;
  cfg.minconf = parse_fraction("--minconf", a.minconf, true);
  cfg.seed = a.seed;
  if (a.pool_maxlen > 0) cfg.pool_max_len = a.pool_maxlen;
  cfg.run_baseline = !a.no_baseline;
  cfg.verify = a.verify;
  if (cfg.verify && !cfg.run_baseline) throw UsageError("--verify needs the baseline");
  cfg.candidate_cap = a.cap;

  const auto db = load_basket(a.input, parse_separator("--separator", a.separator));
  AprioriOptions pool_options;
  pool_options.minsup = cfg.pool_minsup;
  pool_options.max_len = cfg.pool_max_len;
  pool_options.candidate_cap = cfg.candidate_cap;
  const auto pool = apriori(db, pool_options);
  err << "pool: " << pool.size() << " itemsets at minsup " << a.pool_minsup << '\n';
  if (pool.size() < cfg.family_sizes.back())
    throw DataError("pool of " + std::to_string(pool.size()) +
                    " itemsets is smaller than the largest family size");

  const auto report = run_benchmark(db, pool, cfg);
  for (const auto& row : report.rows)
    if (row.baseline_failures > 0)
      err << "warning: baseline exhausted its candidate cap in " << row.baseline_failures
          << " run(s) at family size " << row.family_size << '\n';

  Sink sink(a.output, out);
  write_report(sink.stream(), report);
  sink.close(a.output);
  return kExitOk;
}

int cmd_recode(const RecodeArgs& a, std::ostream& out, std::ostream& err) {
  const char table_sep = parse_separator("--table-separator", a.table_separator);
  const char sep = parse_separator("--separator", a.separator);
  std::optional<std::vector<std::string>> columns;
  if (!a.columns.empty()) columns = split_fields(a.columns, ',');
  const auto db = recode_nominal_table(a.input, a.missing, table_sep, columns);

  Sink sink(a.output, out);
  write_basket(db, sink.stream(), sep);
  sink.close(a.output);
  std::ostream& summary = sink.is_file() ? out : err;
  summary << db.size() << " transactions, " << db.dictionary().size() << " items\n";
  return kExitOk;
}

int cmd_synth(const SynthArgs& a, std::ostream& out, std::ostream& err) {
  if (a.items == 0 || !(a.mean_size > 0) || a.mean_size >= static_cast<double>(a.items))
    throw UsageError("need 0 < --mean-size < --items");
  const auto db = synth_db(a.items, a.transactions, a.mean_size, a.seed, a.zipf);
  Sink sink(a.output, out);
  for (const auto& [key, value] : db.metadata()) sink.stream() << "# " << key << '=' << value << '\n';
  write_basket(db, sink.stream(), parse_separator("--separator", a.separator));
  sink.close(a.output);
  std::ostream& summary = sink.is_file() ? out : err;
  summary << db.size() << " transactions, " << db.dictionary().size() << " items\n";
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Selective association rule generation from arbitrary itemset families",
               args.empty() ? "selrules" : args.front()};
  app.require_subcommand(1);

  MineArgs mine;
  auto* mine_cmd = app.add_subcommand("mine", "Mine frequent (optionally closed) itemsets");
  mine_cmd->add_option("--input", mine.input, "Basket file")->required();
  mine_cmd->add_option("--minsup", mine.minsup, "Minimum support in (0, 1]")->required();
  mine_cmd->add_option("--maxlen", mine.maxlen, "Longest itemset to mine (0 = unlimited)");
  mine_cmd->add_flag("--closed", mine.closed, "Keep closed itemsets only");
  mine_cmd->add_option("--output", mine.output, "Itemset file (default: stdout)");
  mine_cmd->add_option("--separator", mine.separator, "Basket item separator")
      ->capture_default_str();
  mine_cmd->add_option("--cap", mine.cap, "Candidate cap per level")->capture_default_str();

  RulesArgs rules;
  auto* rules_cmd = app.add_subcommand("rules", "Generate rules for the itemsets in a file");
  rules_cmd->add_option("--input", rules.input, "Basket file")->required();
  rules_cmd->add_option("--itemsets", rules.itemsets, "Itemset file")->required();
  rules_cmd->add_option("--minconf", rules.minconf, "Minimum confidence in [0, 1]")->required();
  rules_cmd->add_option("--output", rules.output, "Rule file (default: stdout)");
  rules_cmd->add_option("--separator", rules.separator, "Basket item separator")
      ->capture_default_str();
  rules_cmd->add_option("--threads", rules.threads, "Counting threads")->capture_default_str();

  FilterArgs filter;
  auto* filter_cmd = app.add_subcommand("filter", "Keep the rules matching an inclusive template");
  filter_cmd->add_option("--rules", filter.rules, "Rule file")->required();
  filter_cmd->add_option("--template", filter.tmpl, "Template such as 'any* => class'")
      ->required();
  filter_cmd->add_option("--output", filter.output, "Rule file (default: stdout)");

  BenchArgs bench;
  auto* bench_cmd =
      app.add_subcommand("bench", "Time selective generation against restricted Apriori");
  bench_cmd->add_option("--input", bench.input, "Basket file")->required();
  bench_cmd->add_option("--pool-minsup", bench.pool_minsup, "Minsup for the itemset pool")
      ->required();
  bench_cmd->add_option("--pool-maxlen", bench.pool_maxlen, "Longest pool itemset (0 = unlimited)");
  bench_cmd->add_option("--sizes", bench.sizes, "Comma-separated ascending family sizes")
      ->required();
  bench_cmd->add_option("--reps", bench.reps, "Repetitions per size")->capture_default_str();
  bench_cmd->add_option("--minconf", bench.minconf, "Minimum confidence")->capture_default_str();
  bench_cmd->add_option("--seed", bench.seed, "Sampling seed")->capture_default_str();
  bench_cmd->add_option("--output", bench.output, "Report file (default: stdout)");
  bench_cmd->add_option("--separator", bench.separator, "Basket item separator")
      ->capture_default_str();
  bench_cmd->add_flag("--no-baseline", bench.no_baseline, "Skip the Apriori baseline");
  bench_cmd->add_flag("--verify", bench.verify, "Cross-check baseline and selective rules");
  bench_cmd->add_option("--cap", bench.cap, "Baseline candidate cap")->capture_default_str();

  RecodeArgs recode;
  auto* recode_cmd = app.add_subcommand("recode", "Recode a nominal table into a basket file");
  recode_cmd->add_option("--input", recode.input, "Delimited table")->required();
  recode_cmd->add_option("--output", recode.output, "Basket file (default: stdout)");
  recode_cmd->add_option("--missing", recode.missing, "Missing-value token")->capture_default_str();
  recode_cmd->add_option("--table-separator", recode.table_separator, "Table cell separator")
      ->capture_default_str();
  recode_cmd->add_option("--separator", recode.separator, "Basket item separator")
      ->capture_default_str();
  recode_cmd->add_option("--columns", recode.columns,
                         "Comma-separated column names when the table has no header row");

  SynthArgs synth;
  auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic basket file");
  synth_cmd->add_option("--items", synth.items, "Distinct items")->capture_default_str();
  synth_cmd->add_option("--transactions", synth.transactions, "Transactions")
      ->capture_default_str();
  synth_cmd->add_option("--mean-size", synth.mean_size, "Mean transaction size")
      ->capture_default_str();
  synth_cmd->add_option("--zipf", synth.zipf, "Zipf exponent of item popularity")
      ->capture_default_str();
  synth_cmd->add_option("--seed", synth.seed, "Seed")->capture_default_str();
  synth_cmd->add_option("--output", synth.output, "Basket file (default: stdout)");
  synth_cmd->add_option("--separator", synth.separator, "Basket item separator")
      ->capture_default_str();

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("selrules");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  try {
    if (mine_cmd->parsed()) return cmd_mine(mine, out, err);
    if (rules_cmd->parsed()) return cmd_rules(rules, out, err);
    if (filter_cmd->parsed()) return cmd_filter(filter, out, err);
    if (bench_cmd->parsed()) return cmd_bench(bench, out, err);
    if (recode_cmd->parsed()) return cmd_recode(recode, out, err);
    if (synth_cmd->parsed()) return cmd_synth(synth, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace selrules::cli
