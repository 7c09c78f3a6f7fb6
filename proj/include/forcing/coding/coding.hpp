#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "forcing/coding/fn_rep.hpp"
#include "forcing/coding/interval.hpp"
#include "forcing/coding/sequence.hpp"

namespace forcing::coding {

/// The n-th tile [i 2^-n, (i+1) 2^-n); empty for i >= 2^n.
DyadicInterval interval(std::size_t n, const Natural& i);

/// One step of the null-set coding: with c = seq_code(x | y(n+1)) and
/// tau = enum_seq(y(n)), the tile interval(n, tau(c)) when c < |tau|, else empty.
DyadicInterval b_step(const FnRep& x, const FnRep& y, std::size_t n);
/// Same, reading the parameter from a Cohen sequence padded with zeros.
DyadicInterval b_step(const FnRep& x, const CohenSeq& y, std::size_t n);

/// Union of b_step(x, y, m) for n < m <= last.
IntervalUnion b_tail(const FnRep& x, const FnRep& y, std::size_t n, std::size_t last);

struct CoverWitness {
  /// Least n' at which the restrictions x_i | n' are pairwise distinct.
  std::size_t separation = 0;
  /// tau with tau(seq_code(x_i | n')) = i, zero elsewhere.
  FinSeq tile_map;
  /// s padded with zeros to length ell, then seq_code(tau), then n'.
  CohenSeq extension;
  /// Union over i of b_step(x_i, extension, ell); equals [0,1).
  IntervalUnion cover;
};

/// Builds the parameter extension t of s that makes the 2^ell ground reals'
/// level-ell steps tile [0,1), and verifies the tiling exactly.
///
/// Throws Error(BadFamilySize) unless |xs| = 2^ell, Error(EllTooSmall) when
/// ell < |s|, Error(NotSeparated) when two of the xs are equal, and
/// Error(TooLarge) when some code of x_i | n' reaches 2^20.
CoverWitness cover_witness(std::span<const FnRep> xs, std::size_t ell, const CohenSeq& s);

/// True iff z lies in no part of u.
bool avoids(const DyadicRational& z, const IntervalUnion& u);

}  // namespace forcing::coding
