#include "selrules/templates.hpp"

#include <cctype>

namespace selrules {

std::string_view item_class(std::string_view label) noexcept {
  const auto eq = label.find('=');
  return eq == std::string_view::npos ? label : label.substr(0, eq);
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  RuleTemplate parse() {
    RuleTemplate tpl;
    tpl.lhs = parse_alternatives();
    tpl.lhs_star = accept('*');
    skip_ws();
    if (text_.substr(pos_, 2) != "=>") fail("expected '=>'");
    pos_ += 2;
    tpl.rhs = parse_alternatives();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '*')
      fail("the right-hand side matches exactly one item and cannot be starred");
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return tpl;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const { throw TemplateSyntaxError(what, pos_); }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  static bool name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == ':' ||
           c == '-';
  }

  std::string parse_name() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && name_char(text_[pos_])) ++pos_;
    if (pos_ == start) fail("expected a class name");
    return std::string(text_.substr(start, pos_ - start));
  }

  ClassSet parse_alternatives() {
    ClassSet set;
    const bool grouped = accept('(');
    do {
      auto name = parse_name();
      if (name == "any")
        set.any = true;
      else
        set.names.insert(std::move(name));
    } while (accept('|'));
    if (grouped && !accept(')')) fail("expected ')'");
    return set;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

RuleTemplate parse_template(std::string_view text) { return Parser(text).parse(); }

std::vector<std::string> unknown_classes(const RuleTemplate& tpl,
                                         std::span<const std::string> labels) {
  std::set<std::string_view, std::less<>> known;
  for (const auto& label : labels) known.insert(item_class(label));
  std::vector<std::string> out;
  for (const auto* side : {&tpl.lhs, &tpl.rhs})
    for (const auto& name : side->names)
      if (!known.contains(name)) out.push_back(name);
  return out;
}

bool matches(const RuleTemplate& tpl, std::span<const std::string_view> lhs_labels,
             std::string_view rhs_label) {
  if (lhs_labels.empty()) return false;
  if (!tpl.lhs_star && lhs_labels.size() != 1) return false;
  if (!tpl.rhs.admits(item_class(rhs_label))) return false;
  for (auto label : lhs_labels)
    if (!tpl.lhs.admits(item_class(label))) return false;
  return true;
}

RuleSet filter_rules(const RuleSet& rules, const RuleTemplate& tpl, const ItemDictionary& dict) {
  RuleSet out;
  out.minconf = rules.minconf;
  out.m = rules.m;
  std::vector<std::string_view> lhs;
  for (const auto& rule : rules.rules) {
    lhs.clear();
    for (ItemId id : rule.lhs) lhs.push_back(dict.label(id));
    if (matches(tpl, lhs, dict.label(rule.rhs))) out.rules.push_back(rule);
  }
  return out;
}

}  // namespace selrules
