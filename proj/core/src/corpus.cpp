#include "selrules/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "selrules/errors.hpp"

namespace selrules {

ItemDictionary ItemDictionary::from_counts(std::vector<std::pair<std::string, Count>> counts) {
  std::sort(counts.begin(), counts.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  ItemDictionary dict;
  dict.labels_.reserve(counts.size());
  dict.order_basis_.reserve(counts.size());
  dict.rank_.reserve(counts.size());
  for (auto& [label, count] : counts) {
    const auto id = static_cast<ItemId>(dict.labels_.size());
    if (!dict.rank_.emplace(label, id).second)
      throw DataError("duplicate item label '" + label + "'");
    dict.labels_.push_back(std::move(label));
    dict.order_basis_.push_back(count);
  }
  return dict;
}

std::optional<ItemId> ItemDictionary::find(std::string_view label) const {
  auto it = rank_.find(label);
  if (it == rank_.end()) return std::nullopt;
  return it->second;
}

TransactionDatabase::TransactionDatabase(ItemDictionary dict, std::vector<Transaction> transactions)
    : dict_(std::move(dict)), transactions_(std::move(transactions)) {
  for (const auto& t : transactions_)
    if (!t.empty() && t.items().back() >= dict_.size())
      throw DataError("transaction references item id " + std::to_string(t.items().back()) +
                      " outside a dictionary of " + std::to_string(dict_.size()) + " items");
}

TransactionDatabase TransactionDatabase::from_label_rows(
    std::span<const std::vector<std::string>> rows) {
  std::unordered_map<std::string, Count> counts;
  std::unordered_set<std::string_view> seen;
  for (const auto& row : rows) {
    seen.clear();
    for (const auto& label : row)
      if (seen.insert(label).second) ++counts[label];
  }

  std::vector<std::pair<std::string, Count>> basis(counts.begin(), counts.end());
  auto dict = ItemDictionary::from_counts(std::move(basis));

  std::vector<Transaction> transactions;
  transactions.reserve(rows.size());
  std::vector<ItemId> ids;
  for (const auto& row : rows) {
    ids.clear();
    for (const auto& label : row) ids.push_back(*dict.find(label));
    transactions.emplace_back(ids);
  }
  return TransactionDatabase(std::move(dict), std::move(transactions));
}

std::optional<Itemset> TransactionDatabase::encode(std::span<const std::string> labels,
                                                   std::vector<std::string>* unknown) const {
  std::vector<ItemId> ids;
  bool complete = true;
  for (const auto& label : labels) {
    if (auto id = dict_.find(label)) {
      ids.push_back(*id);
    } else {
      complete = false;
      if (unknown) unknown->push_back(label);
    }
  }
  if (!complete) return std::nullopt;
  return Itemset(std::move(ids));
}

std::vector<std::string> split_fields(std::string_view line, char separator, bool keep_empty) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(separator, start);
    const auto field = line.substr(start, pos == std::string_view::npos ? line.npos : pos - start);
    if (keep_empty || !field.empty()) out.emplace_back(field);
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

TransactionDatabase read_basket(std::istream& in, char separator, std::size_t max_items) {
  std::vector<std::vector<std::string>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.front() == '#') continue;
    auto fields = split_fields(line, separator);
    if (fields.size() > max_items)
      throw DataError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                      " items, more than the limit of " + std::to_string(max_items));
    rows.push_back(std::move(fields));
  }
  if (in.bad()) throw DataError("read error in basket input");
  return TransactionDatabase::from_label_rows(rows);
}

TransactionDatabase load_basket(const std::filesystem::path& path, char separator,
                                std::size_t max_items) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open basket file '" + path.string() + "'");
  auto db = read_basket(in, separator, max_items);
  db.set_metadata("source", path.string());
  return db;
}

void write_basket(const TransactionDatabase& db, std::ostream& out, char separator) {
  const auto& dict = db.dictionary();
  for (const auto& t : db.transactions()) {
    bool first = true;
    for (ItemId id : t) {
      if (!first) out << separator;
      out << dict.label(id);
      first = false;
    }
    out << '\n';
  }
}

TransactionDatabase read_nominal_table(std::istream& in, std::string_view missing_token,
                                       char separator,
                                       std::optional<std::vector<std::string>> column_names) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string> columns;
  if (column_names) {
    columns = std::move(*column_names);
  } else {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line != "\r") break;
    }
    if (line_no == 0 || line.empty()) return {};
    columns = split_fields(line, separator, true);
  }

  std::vector<std::vector<std::string>> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto cells = split_fields(line, separator, true);
    if (cells.size() != columns.size())
      throw DataError("line " + std::to_string(line_no) + " has " + std::to_string(cells.size()) +
                      " cells, expected " + std::to_string(columns.size()));
    std::vector<std::string> row;
    row.reserve(cells.size());
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (cells[c] == missing_token) continue;
      row.push_back(columns[c] + "=" + cells[c]);
    }
    rows.push_back(std::move(row));
  }
  if (in.bad()) throw DataError("read error in table input");
  return TransactionDatabase::from_label_rows(rows);
}

TransactionDatabase recode_nominal_table(const std::filesystem::path& path,
                                         std::string_view missing_token, char separator,
                                         std::optional<std::vector<std::string>> column_names) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open table '" + path.string() + "'");
  auto db = read_nominal_table(in, missing_token, separator, std::move(column_names));
  db.set_metadata("source", path.string());
  return db;
}

std::vector<std::pair<ItemId, Count>> item_frequencies(const TransactionDatabase& db) {
  std::vector<Count> counts(db.dictionary().size(), 0);
  for (const auto& t : db.transactions())
    for (ItemId id : t) ++counts[id];
  std::vector<std::pair<ItemId, Count>> out;
  out.reserve(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) out.emplace_back(static_cast<ItemId>(i), counts[i]);
  return out;
}

Support support(const TransactionDatabase& db, const Itemset& x) {
  if (db.empty()) throw ContractViolation("support is undefined on an empty database");
  Count c = 0;
  for (const auto& t : db.transactions())
    if (x.is_subset_of(t)) ++c;
  return {c, db.size()};
}

}  // namespace selrules
