#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace selrules {

// Wide enough for the product of two 64-bit counts.
__extension__ typedef unsigned __int128 WideCount;

/// Exact non-negative rational used for every threshold (minsup, minconf).
/// Thresholds are compared against integer counts by cross-multiplication,
/// so boundary cases never depend on floating point rounding.
class Fraction {
 public:
  constexpr Fraction() = default;
  Fraction(std::uint64_t num, std::uint64_t den);

  /// Accepts "0.375", ".5", "1", "3/8". Throws DataError on anything else.
  static Fraction parse(std::string_view text);

  std::uint64_t num() const noexcept { return num_; }
  std::uint64_t den() const noexcept { return den_; }
  double value() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// count / total >= *this. A zero total admits nothing.
  bool admits(std::uint64_t count, std::uint64_t total) const noexcept {
    if (total == 0) return false;
    return static_cast<WideCount>(count) * den_ >=
           static_cast<WideCount>(num_) * total;
  }

  friend bool operator==(const Fraction& a, const Fraction& b) noexcept {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Fraction& a, const Fraction& b) noexcept {
    return static_cast<WideCount>(a.num_) * b.den_ <=>
           static_cast<WideCount>(b.num_) * a.den_;
  }

  std::string str() const;

 private:
  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace selrules
