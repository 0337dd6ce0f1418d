#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "selrules/itemset.hpp"

namespace selrules {

/// Bidirectional map between item labels and dense ids.
///
/// Ids follow the global item order used everywhere else: descending
/// occurrence count, ties broken by ascending label. Frequent items
/// therefore get small ids and sort to the front of every transaction.
class ItemDictionary {
 public:
  ItemDictionary() = default;

  /// Orders the labels by (count desc, label asc). Labels must be unique.
  static ItemDictionary from_counts(std::vector<std::pair<std::string, Count>> counts);

  std::size_t size() const noexcept { return labels_.size(); }
  bool empty() const noexcept { return labels_.empty(); }

  const std::string& label(ItemId id) const { return labels_.at(id); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<ItemId> find(std::string_view label) const;
  /// Occurrence count the order was derived from.
  Count order_basis(ItemId id) const { return order_basis_.at(id); }

  friend bool operator==(const ItemDictionary& a, const ItemDictionary& b) {
    return a.labels_ == b.labels_ && a.order_basis_ == b.order_basis_;
  }

 private:
  struct StringHash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> labels_;
  std::vector<Count> order_basis_;
  std::unordered_map<std::string, ItemId, StringHash, std::equal_to<>> rank_;
};

/// The transaction database. Immutable once built.
class TransactionDatabase {
 public:
  TransactionDatabase() = default;
  /// Throws DataError if a transaction references an id outside `dict`.
  TransactionDatabase(ItemDictionary dict, std::vector<Transaction> transactions);

  /// Two-pass construction from label rows: the first pass fixes the item
  /// order from occurrence counts, the second encodes each row. Duplicate
  /// labels inside one row count once.
  static TransactionDatabase from_label_rows(std::span<const std::vector<std::string>> rows);

  const ItemDictionary& dictionary() const noexcept { return dict_; }
  std::span<const Transaction> transactions() const noexcept { return transactions_; }
  const Transaction& operator[](std::size_t i) const { return transactions_[i]; }
  /// Number of transactions, m.
  std::size_t size() const noexcept { return transactions_.size(); }
  bool empty() const noexcept { return transactions_.empty(); }

  /// Free-form provenance (e.g. generator parameters).
  const std::map<std::string, std::string>& metadata() const noexcept { return metadata_; }
  void set_metadata(std::string key, std::string value) { metadata_[std::move(key)] = std::move(value); }

  /// Resolves labels to an itemset. Unknown labels are reported through
  /// `unknown` (if given) and otherwise ignored.
  std::optional<Itemset> encode(std::span<const std::string> labels,
                                std::vector<std::string>* unknown = nullptr) const;

  friend bool operator==(const TransactionDatabase& a, const TransactionDatabase& b) {
    return a.dict_ == b.dict_ && a.transactions_ == b.transactions_;
  }

 private:
  ItemDictionary dict_;
  std::vector<Transaction> transactions_;
  std::map<std::string, std::string> metadata_;
};

inline constexpr std::size_t kDefaultMaxTransactionItems = std::size_t{1} << 16;

/// Basket format: one transaction per line, labels split on `separator`,
/// lines starting with '#' skipped. Runs of separators count as one.
TransactionDatabase read_basket(std::istream& in, char separator = ' ',
                                std::size_t max_items = kDefaultMaxTransactionItems);
TransactionDatabase load_basket(const std::filesystem::path& path, char separator = ' ',
                                std::size_t max_items = kDefaultMaxTransactionItems);
void write_basket(const TransactionDatabase& db, std::ostream& out, char separator = ' ');

/// Recodes a nominal table into transactions: the cell `v` in column `c`
/// becomes item "c=v"; cells equal to `missing_token` yield no item.
/// The first row names the columns unless `column_names` is given.
TransactionDatabase read_nominal_table(std::istream& in, std::string_view missing_token,
                                       char separator = ',',
                                       std::optional<std::vector<std::string>> column_names = {});
TransactionDatabase recode_nominal_table(const std::filesystem::path& path,
                                         std::string_view missing_token, char separator = ',',
                                         std::optional<std::vector<std::string>> column_names = {});

/// Occurrence count of every dictionary item, by ascending id.
std::vector<std::pair<ItemId, Count>> item_frequencies(const TransactionDatabase& db);

/// Support as an exact ratio count/total.
struct Support {
  Count count = 0;
  Count total = 0;
  double value() const noexcept {
    return total == 0 ? 0.0 : static_cast<double>(count) / static_cast<double>(total);
  }
  friend bool operator==(const Support&, const Support&) = default;
};

/// Naive subset scan. Throws ContractViolation on an empty database.
Support support(const TransactionDatabase& db, const Itemset& x);

/// Splits on `separator` after stripping a trailing '\r'. Empty fields are
/// dropped unless `keep_empty` is set.
std::vector<std::string> split_fields(std::string_view line, char separator,
                                      bool keep_empty = false);

}  // namespace selrules
