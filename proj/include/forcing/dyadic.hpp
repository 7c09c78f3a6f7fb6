#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "forcing/natural.hpp"

namespace forcing {

/// Exact value numerator / 2^exponent.
///
/// Always normalized: either the exponent is zero or the numerator is odd.
/// Negative values are allowed so that thresholds such as 1/2 - 2^0 can be
/// represented; measures themselves are never negative.
class DyadicRational {
 public:
  DyadicRational() = default;
  DyadicRational(Natural numerator, std::size_t exponent);

  static DyadicRational integer(Natural value) { return {std::move(value), 0}; }
  /// 2^k for any signed k.
  static DyadicRational pow2(std::int64_t k);
  static DyadicRational half() { return pow2(-1); }

  /// Accepts "a", "a/b" with b a power of two, and "a/2^k"; a may carry a sign.
  static DyadicRational parse(std::string_view text);

  const Natural& numerator() const { return numerator_; }
  std::size_t exponent() const { return exponent_; }

  bool is_zero() const { return numerator_ == 0; }
  int sign() const { return numerator_.sign(); }

  /// Multiplies by 2^k.
  DyadicRational scaled(std::int64_t k) const;
  /// floor(value * 2^k); requires value >= 0.
  Natural floor_scaled(std::size_t k) const;
  /// True when value * 2^k is an integer.
  bool fits_grid(std::size_t k) const { return exponent_ <= k; }

  DyadicRational operator-() const;
  DyadicRational& operator+=(const DyadicRational& rhs);
  DyadicRational& operator-=(const DyadicRational& rhs);
  friend DyadicRational operator+(DyadicRational lhs, const DyadicRational& rhs) {
    return lhs += rhs;
  }
  friend DyadicRational operator-(DyadicRational lhs, const DyadicRational& rhs) {
    return lhs -= rhs;
  }
  friend DyadicRational operator*(const DyadicRational& lhs, const Natural& rhs);

  friend bool operator==(const DyadicRational&, const DyadicRational&) = default;
  friend std::strong_ordering operator<=>(const DyadicRational& lhs,
                                          const DyadicRational& rhs);

  /// "0", "3/8", "-1/2", "5".
  std::string to_string() const;

 private:
  void normalize();

  Natural numerator_{0};
  std::size_t exponent_{0};
};

inline std::string to_string(const DyadicRational& value) { return value.to_string(); }

}  // namespace forcing
