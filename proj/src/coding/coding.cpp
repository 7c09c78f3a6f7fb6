#include "forcing/coding/coding.hpp"

#include <algorithm>
#include <set>

#include "forcing/error.hpp"

namespace forcing::coding {

namespace {

// tau is materialized entry by entry, so its length stays bounded.
constexpr std::size_t kMaxTileMapBits = 20;

DyadicInterval step(const FnRep& x, const CohenEntry& tile_code, const CohenEntry& restriction,
                    std::size_t n) {
  const Natural* m = restriction.value();
  // code(s) >= |s| for every s, so a restriction longer than tau misses dom(tau).
  if (m == nullptr || *m > tile_code.decoded_length()) return {};
  const auto code = try_seq_code(x.restrict(static_cast<std::size_t>(*m)));
  if (!code || *code >= tile_code.decoded_length()) return {};
  const auto tile = tile_code.decoded_entry(static_cast<std::size_t>(*code));
  return interval(n, *tile);
}

CohenEntry padded_at(const CohenSeq& y, std::size_t i) {
  return i < y.size() ? y[i] : CohenEntry();
}

}  // namespace

DyadicInterval interval(std::size_t n, const Natural& i) {
  if (i >= (Natural(1) << n)) return {};
  return DyadicInterval(DyadicRational(i, n), DyadicRational(i + 1, n));
}

DyadicInterval b_step(const FnRep& x, const FnRep& y, std::size_t n) {
  return step(x, CohenEntry(y(n)), CohenEntry(y(n + 1)), n);
}

DyadicInterval b_step(const FnRep& x, const CohenSeq& y, std::size_t n) {
  return step(x, padded_at(y, n), padded_at(y, n + 1), n);
}

IntervalUnion b_tail(const FnRep& x, const FnRep& y, std::size_t n, std::size_t last) {
  IntervalUnion out;
  for (std::size_t m = n + 1; m <= last; ++m) out.add(b_step(x, y, m));
  return out;
}

CoverWitness cover_witness(std::span<const FnRep> xs, std::size_t ell, const CohenSeq& s) {
  if (ell >= 32 || xs.size() != (std::size_t{1} << ell)) {
    throw Error(ErrorKind::BadFamilySize, "cover_witness needs exactly 2^ell ground reals (ell=" +
                                              std::to_string(ell) + ", got " +
                                              std::to_string(xs.size()) + ")");
  }
  if (ell < s.size()) {
    throw Error(ErrorKind::EllTooSmall, "ell=" + std::to_string(ell) +
                                            " is shorter than the Cohen condition (length " +
                                            std::to_string(s.size()) + ")");
  }

  CoverWitness w;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for (std::size_t j = i + 1; j < xs.size(); ++j) {
      const auto diff = first_difference(xs[i], xs[j]);
      if (!diff) {
        throw Error(ErrorKind::NotSeparated, "ground reals " + std::to_string(i) + " and " +
                                                 std::to_string(j) + " are equal (" +
                                                 xs[i].to_text() + ")");
      }
      w.separation = std::max(w.separation, *diff + 1);
    }
  }

  std::vector<std::size_t> codes;
  codes.reserve(xs.size());
  for (const auto& x : xs) {
    const auto code = try_seq_code(x.restrict(w.separation), kMaxTileMapBits);
    if (!code) {
      throw Error(ErrorKind::TooLarge, "restriction code of " + x.to_text() + " is too large");
    }
    codes.push_back(static_cast<std::size_t>(*code));
  }
  w.tile_map.assign(*std::max_element(codes.begin(), codes.end()) + 1, Natural(0));
  for (std::size_t i = 0; i < codes.size(); ++i) w.tile_map[codes[i]] = i;

  w.extension = s;
  w.extension.resize(ell);
  w.extension.push_back(CohenEntry::encoding(w.tile_map));
  w.extension.emplace_back(Natural(w.separation));

  for (const auto& x : xs) w.cover.add(b_step(x, w.extension, ell));
  if (!w.cover.is_unit()) {
    throw Error(ErrorKind::InvalidCondition,
                "cover verification failed: union is " + w.cover.to_text());
  }
  return w;
}

bool avoids(const DyadicRational& z, const IntervalUnion& u) { return !u.contains(z); }

}  // namespace forcing::coding
