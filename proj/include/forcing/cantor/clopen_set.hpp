#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "forcing/cantor/bit_string.hpp"
#include "forcing/dyadic.hpp"

namespace forcing::cantor {

/// A clopen subset of Cantor space held as its canonical antichain: no member
/// is a prefix of another and no sibling pair sigma0, sigma1 is present.
/// Members are kept sorted.
class ClopenSet {
 public:
  ClopenSet() = default;

  static ClopenSet whole() { return ClopenSet(std::vector<BitString>{BitString()}); }

  const std::vector<BitString>& members() const { return members_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  /// Length of the longest member, 0 for the empty set.
  std::size_t support_depth() const;
  bool has_member(const BitString& s) const;
  /// True when some member is a prefix of s, i.e. [s] lies inside the set.
  bool covers(const BitString& s) const;

  friend bool operator==(const ClopenSet&, const ClopenSet&) = default;
  friend auto operator<=>(const ClopenSet&, const ClopenSet&) = default;

 private:
  friend ClopenSet canonicalize(std::vector<BitString> strings);
  explicit ClopenSet(std::vector<BitString> canonical) : members_(std::move(canonical)) {}

  std::vector<BitString> members_;
};

/// Level function: levels[i] holds the strings of length i, sorted.
struct LevelFunction {
  std::vector<std::vector<BitString>> levels;

  std::size_t depth() const { return levels.size(); }
  friend bool operator==(const LevelFunction&, const LevelFunction&) = default;
};

/// The unique canonical antichain covering the same points as `strings`.
ClopenSet canonicalize(std::vector<BitString> strings);

DyadicRational measure(const ClopenSet& s);
/// Measure of the members of length < depth.
DyadicRational measure_below_level(const ClopenSet& s, std::size_t depth);

ClopenSet unite(const ClopenSet& s, const ClopenSet& t);
ClopenSet unite(std::span<const ClopenSet> sets);
ClopenSet intersect(const ClopenSet& s, const ClopenSet& t);
ClopenSet complement(const ClopenSet& s);
bool is_subset(const ClopenSet& s, const ClopenSet& t);

/// Measure of (union of s) intersected with [sigma].
DyadicRational mass_below(const ClopenSet& s, const BitString& sigma);
/// 2^-|sigma| minus mass_below: the cost of filling [sigma].
DyadicRational residual_mass(const ClopenSet& s, const BitString& sigma);

LevelFunction level_view(const ClopenSet& s);
/// Throws Error(NotAntichain) when two strings are comparable and
/// Error(InvalidCondition) when a string sits on the wrong level.
ClopenSet from_levels(const LevelFunction& l);

/// Canonicality property: for every level i and every sigma of length i not in
/// level i, the deeper levels put strictly less than 2^-i of mass below sigma.
bool check_star(const LevelFunction& l);
/// True when some level holds both sigma0 and sigma1.
bool has_sibling_pair(const LevelFunction& l);

DyadicRational symdiff_mass(const ClopenSet& s, const ClopenSet& t);

struct ParsedClopen {
  ClopenSet set;
  bool was_canonical;
};

/// "-" is the empty set, "e" the whole space, otherwise comma-separated bits.
ParsedClopen parse_clopen(std::string_view text);
std::string to_text(const ClopenSet& s);

}  // namespace forcing::cantor
