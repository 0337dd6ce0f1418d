#include "selrules/formats.hpp"

#include <cstdio>
#include <istream>
#include <ostream>

namespace selrules {

std::string format_measure(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", value);
  return buf;
}

namespace {

void write_braced(std::ostream& out, const Itemset& s, const ItemDictionary& dict) {
  out << '{';
  bool first = true;
  for (ItemId id : s) {
    if (!first) out << ',';
    out << dict.label(id);
    first = false;
  }
  out << '}';
}

// Splits on commas that are not inside braces.
std::vector<std::string_view> split_top_level(std::string_view line) {
  std::vector<std::string_view> out;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '{') ++depth;
    else if (line[i] == '}') --depth;
    else if (line[i] == ',' && depth == 0) {
      out.push_back(line.substr(start, i - start));
      start = i + 1;
    }
  }
  out.push_back(line.substr(start));
  return out;
}

bool unbrace(std::string_view field, std::vector<std::string>& labels) {
  if (field.size() < 2 || field.front() != '{' || field.back() != '}') return false;
  labels = split_fields(field.substr(1, field.size() - 2), ',');
  return true;
}

}  // namespace

void write_itemsets(std::ostream& out, const FrequentItemsets& f, const ItemDictionary& dict) {
  for (const auto& [itemset, count] : f.itemsets) {
    write_braced(out, itemset, dict);
    out << ' ' << count << ' '
        << format_measure(f.m == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(f.m))
        << '\n';
  }
}

std::vector<std::vector<std::string>> read_itemset_labels(std::istream& in, char separator) {
  std::vector<std::vector<std::string>> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    if (line.front() == '{') {
      const auto close = line.find('}');
      if (close == std::string::npos)
        throw DataError("itemset line " + std::to_string(line_no) + " has no closing '}'");
      out.push_back(split_fields(std::string_view(line).substr(1, close - 1), ','));
    } else {
      out.push_back(split_fields(line, separator));
    }
  }
  return out;
}

ResolvedFamily resolve_family(std::span<const std::vector<std::string>> labels,
                              const ItemDictionary& dict) {
  ResolvedFamily out;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    std::vector<ItemId> ids;
    std::string missing;
    for (const auto& label : labels[i]) {
      if (auto id = dict.find(label))
        ids.push_back(*id);
      else
        missing += (missing.empty() ? "" : ", ") + label;
    }
    if (!missing.empty() || ids.empty()) {
      ++out.skipped;
      out.warnings.push_back("itemset " + std::to_string(i + 1) + " skipped: " +
                             (missing.empty() ? "no labels" : "unknown label(s) " + missing));
      continue;
    }
    out.itemsets.emplace_back(std::move(ids));
  }
  return out;
}

void write_rules(std::ostream& out, const RuleSet& rules, const ItemDictionary& dict) {
  out << kRuleHeader << '\n';
  for (const auto& rule : rules.rules) {
    const auto m = measures(rule);
    write_braced(out, rule.lhs, dict);
    out << ",{" << dict.label(rule.rhs) << "}," << format_measure(m.support) << ','
        << format_measure(m.confidence) << ',' << (m.lift ? format_measure(*m.lift) : "") << ','
        << rule.count_full << '\n';
  }
}

std::vector<RuleRecord> read_rule_records(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw DataError("rule file is empty; expected a header");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kRuleHeader) throw DataError("rule file header must be '" + std::string(kRuleHeader) + "'");

  std::vector<RuleRecord> out;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_top_level(line);
    RuleRecord rec;
    std::vector<std::string> rhs;
    if (fields.size() != 6 || !unbrace(fields[0], rec.lhs) || !unbrace(fields[1], rhs) ||
        rhs.size() != 1)
      throw DataError("malformed rule on line " + std::to_string(line_no));
    rec.rhs = std::move(rhs.front());
    rec.line = line;
    out.push_back(std::move(rec));
  }
  return out;
}

void write_rule_records(std::ostream& out, std::span<const RuleRecord> records) {
  out << kRuleHeader << '\n';
  for (const auto& rec : records) out << rec.line << '\n';
}

std::vector<RuleRecord> filter_records(std::span<const RuleRecord> records,
                                       const RuleTemplate& tpl) {
  std::vector<RuleRecord> out;
  std::vector<std::string_view> lhs;
  for (const auto& rec : records) {
    lhs.assign(rec.lhs.begin(), rec.lhs.end());
    if (matches(tpl, lhs, rec.rhs)) out.push_back(rec);
  }
  return out;
}

}  // namespace selrules
