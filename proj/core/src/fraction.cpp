#include "selrules/fraction.hpp"

#include <charconv>
#include <numeric>

#include "selrules/errors.hpp"

namespace selrules {

Fraction::Fraction(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw ContractViolation("fraction with zero denominator");
  const std::uint64_t g = std::gcd(num, den);
  num_ = num / (g == 0 ? 1 : g);
  den_ = den / (g == 0 ? 1 : g);
}

namespace {

bool all_digits(std::string_view s) {
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

std::uint64_t parse_u64(std::string_view s, std::string_view whole) {
  std::uint64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw DataError("not a number: '" + std::string(whole) + "'");
  return v;
}

}  // namespace

Fraction Fraction::parse(std::string_view text) {
  const std::string_view whole = text;
  if (text.empty()) throw DataError("empty fraction");

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto n = text.substr(0, slash);
    auto d = text.substr(slash + 1);
    if (n.empty() || d.empty() || !all_digits(n) || !all_digits(d))
      throw DataError("not a fraction: '" + std::string(whole) + "'");
    const auto den = parse_u64(d, whole);
    if (den == 0) throw DataError("zero denominator: '" + std::string(whole) + "'");
    return Fraction(parse_u64(n, whole), den);
  }

  std::string_view int_part = text;
  std::string_view frac_part;
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    int_part = text.substr(0, dot);
    frac_part = text.substr(dot + 1);
  }
  if ((int_part.empty() && frac_part.empty()) || !all_digits(int_part) || !all_digits(frac_part))
    throw DataError("not a decimal number: '" + std::string(whole) + "'");
  // Trailing zeros carry no information and would only eat precision.
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
  if (frac_part.size() > 18 || int_part.size() > 18)
    throw DataError("too many digits: '" + std::string(whole) + "'");

  std::uint64_t den = 1;
  for (std::size_t i = 0; i < frac_part.size(); ++i) den *= 10;
  const std::uint64_t ip = int_part.empty() ? 0 : parse_u64(int_part, whole);
  const std::uint64_t fp = frac_part.empty() ? 0 : parse_u64(frac_part, whole);
  const auto num = static_cast<WideCount>(ip) * den + fp;
  if (num > UINT64_MAX) throw DataError("fraction out of range: '" + std::string(whole) + "'");
  return Fraction(static_cast<std::uint64_t>(num), den);
}

std::string Fraction::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

}  // namespace selrules
