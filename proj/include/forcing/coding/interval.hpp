#pragma once

#include <optional>
#include <string>
#include <vector>

#include "forcing/dyadic.hpp"

namespace forcing::coding {

/// Half-open subinterval [lo, hi) of the unit interval, or empty.
class DyadicInterval {
 public:
  DyadicInterval() = default;  // empty
  /// Requires 0 <= lo < hi <= 1.
  DyadicInterval(DyadicRational lo, DyadicRational hi);

  bool empty() const { return !bounds_; }
  const DyadicRational& lo() const { return bounds_->first; }
  const DyadicRational& hi() const { return bounds_->second; }
  DyadicRational length() const { return empty() ? DyadicRational() : hi() - lo(); }
  bool contains(const DyadicRational& z) const { return !empty() && lo() <= z && z < hi(); }

  /// "[a/2^k, b/2^k)" or "empty".
  std::string to_text() const;

  friend bool operator==(const DyadicInterval&, const DyadicInterval&) = default;

 private:
  std::optional<std::pair<DyadicRational, DyadicRational>> bounds_;
};

/// Sorted, pairwise disjoint, fully merged list of non-empty intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  void add(const DyadicInterval& iv);
  const std::vector<DyadicInterval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  DyadicRational length() const;
  bool contains(const DyadicRational& z) const;
  /// True when the union is exactly [0, 1).
  bool is_unit() const;

  /// Parts joined by " U ", or "empty".
  std::string to_text() const;

  friend bool operator==(const IntervalUnion&, const IntervalUnion&) = default;

 private:
  std::vector<DyadicInterval> parts_;
};

}  // namespace forcing::coding
