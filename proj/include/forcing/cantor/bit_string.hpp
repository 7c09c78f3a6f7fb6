#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

namespace forcing::cantor {

/// A finite binary string sigma, naming the cylinder [sigma] of Cantor space.
///
/// Ordering is lexicographic with a prefix sorting before its extensions, so
/// in a sorted container every string is immediately followed by the block of
/// strings extending it.
class BitString {
 public:
  BitString() = default;
  /// Throws ParseError unless every character is '0' or '1'.
  explicit BitString(std::string bits);

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  int bit(std::size_t i) const { return bits_[i] == '1' ? 1 : 0; }
  const std::string& str() const { return bits_; }

  bool is_prefix_of(const BitString& other) const {
    return other.bits_.size() >= bits_.size() &&
           std::string_view(other.bits_).substr(0, bits_.size()) == bits_;
  }
  bool comparable(const BitString& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  BitString child(int b) const;
  /// Requires a non-empty string.
  BitString parent() const;
  /// Requires a non-empty string.
  BitString sibling() const;
  BitString prefix(std::size_t n) const;

  /// "e" for the empty string, the bits otherwise.
  std::string to_text() const { return bits_.empty() ? std::string("e") : bits_; }

  friend auto operator<=>(const BitString&, const BitString&) = default;

 private:
  std::string bits_;
};

}  // namespace forcing::cantor
