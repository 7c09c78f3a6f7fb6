#include <gtest/gtest.h>

#include <random>

#include "forcing/coding/coding.hpp"
#include "forcing/error.hpp"

namespace forcing::coding {
namespace {

DyadicRational Q(std::string_view text) { return DyadicRational::parse(text); }

// Independent pairing inverse by walking diagonals.
std::pair<std::uint64_t, std::uint64_t> unpair_by_walk(std::uint64_t z) {
  std::uint64_t w = 0;
  while ((w + 1) * (w + 2) / 2 <= z) ++w;
  const std::uint64_t b = z - w * (w + 1) / 2;
  return {w - b, b};
}

TEST(Pairing, MatchesDiagonalWalk) {
  for (std::uint64_t z = 0; z < 2000; ++z) {
    const auto [a, b] = cantor_unpair(Natural(z));
    const auto [wa, wb] = unpair_by_walk(z);
    EXPECT_EQ(a, wa);
    EXPECT_EQ(b, wb);
    EXPECT_EQ(cantor_pair(a, b), z);
  }
}

TEST(SeqCode, Examples) {
  EXPECT_TRUE(enum_seq(Natural(0)).empty());
  EXPECT_EQ(seq_code({}), 0);
  const FinSeq s{Natural(3), Natural(0), Natural(5)};
  EXPECT_EQ(enum_seq(seq_code(s)), s);
  EXPECT_EQ(seq_code(s), 44848);
  EXPECT_EQ(seq_code({Natural(3)}), 10);
  for (int n = 0; n < 10000; ++n) EXPECT_EQ(seq_code(enum_seq(Natural(n))), n);
}

TEST(CohenEntry, HeldCodesDecodeLazily) {
  FinSeq big;
  for (int i = 0; i < 40; ++i) big.emplace_back(1000 + i);
  const auto e = CohenEntry::encoding(big);
  EXPECT_FALSE(e.is_explicit());
  EXPECT_EQ(e.decoded_length(), 40);
  EXPECT_EQ(e.decoded_entry(3), Natural(1003));
  EXPECT_FALSE(e.decoded_entry(40));
  EXPECT_EQ(e.decode(), big);
  EXPECT_EQ(CohenEntry::parse(e.to_text()), e);
  EXPECT_EQ(CohenEntry::encoding({Natural(3)}), CohenEntry(10));
  EXPECT_LT(CohenEntry(10), e);
}

TEST(FnRep, TextAndOrder) {
  const auto f = FnRep::parse("3,0,5;const:0");
  EXPECT_EQ(f(0), 3);
  EXPECT_EQ(f(7), 0);
  EXPECT_EQ(FnRep::parse("1,2;id+4")(5), 9);
  EXPECT_EQ(FnRep::parse("0,0;const:0"), FnRep::constant(Natural(0)));
  EXPECT_EQ(FnRep::parse(";const:7").to_text(), ";const:7");
  EXPECT_EQ(first_difference(FnRep::constant(Natural(1)), FnRep::parse("1,2;const:1")), 1u);
  EXPECT_TRUE(eventually_different(FnRep::constant(Natural(1)), FnRep::shifted(Natural(0))));
  EXPECT_FALSE(eventually_different(FnRep::parse("4;const:1"), FnRep::constant(Natural(1))));
  EXPECT_TRUE(dominates(FnRep::shifted(Natural(1)), FnRep::shifted(Natural(0))));
  EXPECT_FALSE(dominates(FnRep::constant(Natural(5)), FnRep::shifted(Natural(0))));
  EXPECT_THROW(FnRep::parse("1,x;const:0"), ParseError);
}

TEST(Intervals, Tiles) {
  EXPECT_EQ(interval(1, Natural(0)).to_text(), "[0/2^1, 1/2^1)");
  EXPECT_EQ(interval(2, Natural(3)), DyadicInterval(Q("3/4"), Q("1")));
  EXPECT_TRUE(interval(2, Natural(4)).empty());
  for (std::size_t n = 0; n <= 8; ++n) {
    IntervalUnion u;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) u.add(interval(n, Natural(i)));
    EXPECT_TRUE(u.is_unit()) << n;
    EXPECT_EQ(u.parts().size(), 1u);
  }
}

TEST(Intervals, UnionAndAvoids) {
  IntervalUnion u;
  EXPECT_EQ(u.length(), Q("0"));
  u.add(DyadicInterval(Q("0"), Q("1/8")));
  u.add(DyadicInterval(Q("3/4"), Q("13/16")));
  EXPECT_EQ(u.length(), Q("3/16"));
  IntervalUnion half;
  half.add(DyadicInterval(Q("1/2"), Q("1")));
  EXPECT_TRUE(avoids(Q("0"), half));
  IntervalUnion right;
  right.add(DyadicInterval(Q("3/4"), Q("13/16")));
  EXPECT_FALSE(avoids(Q("3/4"), right));
  IntervalUnion left;
  left.add(DyadicInterval(Q("0"), Q("1/2")));
  EXPECT_TRUE(avoids(Q("1/2"), left));
}

TEST(BStep, Examples) {
  const auto x = FnRep::constant(Natural(7));
  EXPECT_TRUE(b_step(x, FnRep::constant(Natural(0)), 2).empty());
  const auto y = FnRep::parse("0,0,10;const:0");
  EXPECT_EQ(b_step(x, y, 2), DyadicInterval(Q("3/4"), Q("1")));
}

TEST(BTail, LengthBelowBound) {
  std::mt19937_64 gen(5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Natural> xt, yt;
    for (int i = 0; i < 6; ++i) xt.emplace_back(gen() % 3);
    for (int i = 0; i < 6; ++i) yt.emplace_back(gen() % 200);
    const FnRep x(xt, FnRep::Tail::Constant, Natural(gen() % 3));
    const FnRep y(yt, FnRep::Tail::Constant, Natural(gen() % 200));
    const std::size_t n = gen() % 4;
    const auto u = b_tail(x, y, n, n + 1 + gen() % 5);
    EXPECT_LT(u.length(), DyadicRational::pow2(-static_cast<std::int64_t>(n)));
  }
}

TEST(Cover, Examples) {
  const std::vector<FnRep> two{FnRep::constant(Natural(0)), FnRep::constant(Natural(1))};
  const auto w = cover_witness(two, 1, {});
  EXPECT_EQ(w.separation, 1u);
  EXPECT_TRUE(w.cover.is_unit());
  EXPECT_EQ(w.extension.size(), 3u);
  for (const auto& x : two) EXPECT_FALSE(b_step(x, w.extension, 1).empty());

  std::vector<FnRep> four;
  for (int i = 0; i < 4; ++i) four.push_back(FnRep({Natural(i)}, FnRep::Tail::Constant, Natural(0)));
  const auto w4 = cover_witness(four, 2, {CohenEntry(9)});
  EXPECT_TRUE(w4.cover.is_unit());
  EXPECT_EQ(w4.extension.front(), CohenEntry(9));
  for (const auto& x : four) {
    EXPECT_EQ(b_step(x, w4.extension, 2).length(), Q("1/4"));
  }
}

TEST(Cover, Errors) {
  const std::vector<FnRep> same{FnRep::constant(Natural(0)), FnRep::constant(Natural(0))};
  try {
    cover_witness(same, 1, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotSeparated);
  }
  const std::vector<FnRep> three(3, FnRep::constant(Natural(0)));
  EXPECT_THROW(cover_witness(three, 1, {}), Error);
  const std::vector<FnRep> two{FnRep::constant(Natural(0)), FnRep::constant(Natural(1))};
  EXPECT_THROW(cover_witness(two, 1, {CohenEntry(1), CohenEntry(2)}), Error);
}

}  // namespace
}  // namespace forcing::coding
