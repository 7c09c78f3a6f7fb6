#pragma once

// Brute-force reference computations over the 2^d leaves of a finite tree.
// Works on raw '0'/'1' strings and never calls the clopen-set code.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace forcing::oracle {

using Strings = std::vector<std::string>;

class LeafSet {
 public:
  explicit LeafSet(std::size_t depth);
  /// Leaves below any of the given strings (each of length <= depth).
  static LeafSet of(const Strings& strings, std::size_t depth);

  std::size_t depth() const { return depth_; }
  std::size_t count() const;
  /// Number of marked leaves extending prefix.
  std::size_t count_under(const std::string& prefix) const;
  bool test(std::size_t leaf) const { return (words_[leaf / 64] >> (leaf % 64)) & 1u; }
  void set(std::size_t leaf) { words_[leaf / 64] |= std::uint64_t{1} << (leaf % 64); }
  void mark(const std::string& prefix);

  LeafSet operator|(const LeafSet& o) const;
  LeafSet operator&(const LeafSet& o) const;
  LeafSet operator~() const;
  bool subset_of(const LeafSet& o) const;
  bool operator==(const LeafSet& o) const = default;

 private:
  std::size_t depth_;
  std::vector<std::uint64_t> words_;
};

/// Minimal covering strings, found top-down: a node is emitted when all its
/// leaves are marked. Sorted.
Strings decompose(const LeafSet& s);

/// The property (*) read literally: for every i and every sigma of length i
/// outside level i, the strings on deeper levels below sigma cover less than
/// 2^-i. Input: strings grouped by level.
bool star_literal(const std::vector<Strings>& levels);

/// Least level at which the decompositions (grouped by length) differ.
std::optional<std::size_t> first_level_difference(const Strings& a, const Strings& b);

/// Least level at which some single-cylinder completion of s (a cylinder of
/// length <= horizon) keeps measure < 1/2 and changes the decomposition.
/// Every measure < 1/2 superset changes first at a level where one such
/// completion already does.
std::optional<std::size_t> freeze_by_completion(const Strings& s, std::size_t horizon);

/// Least differing level over every leaf superset of s at the horizon with
/// measure < 1/2. Exponential in 2^horizon; horizon <= 4.
std::optional<std::size_t> freeze_by_supersets(const Strings& s, std::size_t horizon);

/// All strings of the given length, in lexicographic order.
Strings all_strings(std::size_t length);

}  // namespace forcing::oracle
