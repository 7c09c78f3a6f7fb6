#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "forcing/cantor/clopen_set.hpp"
#include "forcing/dyadic.hpp"

namespace forcing::amoeba::detail {

struct Allocation {
  /// Length bounds for every added string.
  std::size_t min_level = 0;
  std::size_t max_level = 0;
  /// Give up past this many added strings or visited cells.
  std::size_t max_strings = std::size_t{1} << 20;
};

/// Strings to add to `current` with total mass exactly `amount`, inside
/// [within], disjoint from `current`. No free cylinder of `current` is ever
/// filled completely, so the canonical form of the result keeps every
/// existing member and every new string (nothing merges upward).
std::optional<std::vector<cantor::BitString>> allocate_mass(const cantor::ClopenSet& current,
                                                            const cantor::BitString& within,
                                                            const DyadicRational& amount,
                                                            const Allocation& bounds);

}  // namespace forcing::amoeba::detail
