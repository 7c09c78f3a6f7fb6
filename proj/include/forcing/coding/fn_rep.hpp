#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "forcing/coding/sequence.hpp"
#include "forcing/natural.hpp"

namespace forcing::coding {

/// A total function omega -> omega given by a finite table followed by a tail
/// rule: either a constant or the identity plus an offset.
///
/// Stored normalized (trailing table entries that the tail rule already
/// produces are dropped), so two FnReps are equal iff they are the same
/// function.
class FnRep {
 public:
  enum class Tail { Constant, Shift };

  FnRep() = default;
  FnRep(std::vector<Natural> table, Tail tail, Natural param);

  static FnRep constant(Natural c) { return FnRep({}, Tail::Constant, std::move(c)); }
  /// i -> i + k.
  static FnRep shifted(Natural k) { return FnRep({}, Tail::Shift, std::move(k)); }

  Natural operator()(std::size_t i) const;
  /// The first n values.
  FinSeq restrict(std::size_t n) const;

  const std::vector<Natural>& table() const { return table_; }
  Tail tail() const { return tail_; }
  const Natural& tail_param() const { return param_; }

  /// "3,0,5;const:0", "1,2;id+4", ";const:7".
  std::string to_text() const;
  static FnRep parse(std::string_view text);

  friend bool operator==(const FnRep&, const FnRep&) = default;
  friend bool operator<(const FnRep& a, const FnRep& b) {
    return std::tie(a.table_, a.tail_, a.param_) < std::tie(b.table_, b.tail_, b.param_);
  }

 private:
  Natural tail_value(std::size_t i) const;

  std::vector<Natural> table_;
  Tail tail_ = Tail::Constant;
  Natural param_{0};
};

/// Least i with a(i) != b(i), or nullopt when a == b.
std::optional<std::size_t> first_difference(const FnRep& a, const FnRep& b);
/// a(k) != b(k) for all sufficiently large k.
bool eventually_different(const FnRep& a, const FnRep& b);
/// a(i) >= b(i) for every i.
bool dominates(const FnRep& a, const FnRep& b);

}  // namespace forcing::coding
