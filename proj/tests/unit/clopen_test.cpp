#include <gtest/gtest.h>

#include <random>

#include "forcing/cantor/clopen_set.hpp"
#include "forcing/error.hpp"
#include "oracle/leaf_oracle.hpp"

namespace forcing::cantor {
namespace {

ClopenSet S(std::string_view text) { return parse_clopen(text).set; }
DyadicRational Q(std::string_view text) { return DyadicRational::parse(text); }

oracle::Strings raw(const ClopenSet& s) {
  oracle::Strings out;
  for (const auto& m : s.members()) out.push_back(m.str());
  return out;
}

ClopenSet from_raw(const oracle::Strings& xs) {
  std::vector<BitString> v;
  for (const auto& x : xs) v.emplace_back(x);
  return canonicalize(std::move(v));
}

TEST(Dyadic, NormalizesAndCompares) {
  EXPECT_EQ(DyadicRational(Natural(6), 4), Q("3/8"));
  EXPECT_EQ(Q("4/2^3").to_string(), "1/2");
  EXPECT_EQ((Q("1/2") - Q("3/4")).to_string(), "-1/4");
  EXPECT_LT(Q("-1/2"), Q("0"));
  EXPECT_EQ(DyadicRational::pow2(-3), Q("1/8"));
  EXPECT_EQ(DyadicRational::pow2(2), Q("4"));
  EXPECT_EQ(Q("0").exponent(), 0u);
  EXPECT_THROW(Q("1/3"), ParseError);
}

TEST(Canonicalize, Examples) {
  EXPECT_EQ(to_text(S("00,01")), "0");
  EXPECT_EQ(to_text(S("0,01")), "0");
  EXPECT_EQ(to_text(S("00,1,011")), "00,011,1");
  EXPECT_EQ(S("00,1,011"), from_raw(oracle::decompose(oracle::LeafSet::of({"00", "1", "011"}, 3))));
  EXPECT_FALSE(parse_clopen("00,01").was_canonical);
  EXPECT_TRUE(parse_clopen("00,010").was_canonical);
  EXPECT_EQ(to_text(S("0,1")), "e");
  EXPECT_EQ(to_text(S("-")), "-");
}

TEST(Canonicalize, RejectsBadAlphabet) {
  try {
    parse_clopen("0,2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
}

TEST(Measure, Examples) {
  EXPECT_EQ(measure(S("-")), Q("0"));
  EXPECT_EQ(measure(S("0")), Q("1/2"));
  EXPECT_EQ(measure(S("00,010")), Q("3/8"));
  EXPECT_EQ(oracle::LeafSet::of({"00", "010"}, 3).count(), 3u);
}

TEST(SetOps, Examples) {
  EXPECT_EQ(to_text(unite(S("00"), S("01"))), "0");
  EXPECT_EQ(to_text(unite(S("00"), S("-"))), "00");
  EXPECT_EQ(to_text(unite(S("00,010"), S("011"))), "0");
  EXPECT_EQ(to_text(intersect(S("0"), S("01"))), "01");
  EXPECT_EQ(to_text(intersect(S("00"), S("1"))), "-");
  EXPECT_EQ(to_text(intersect(S("0"), S("00,11"))), "00");
  EXPECT_EQ(to_text(complement(S("0"))), "1");
  EXPECT_EQ(to_text(complement(S("-"))), "e");
  EXPECT_EQ(to_text(complement(S("00,010"))), "011,1");
  EXPECT_TRUE(is_subset(S("01"), S("0")));
  EXPECT_FALSE(is_subset(S("0"), S("01")));
  EXPECT_TRUE(is_subset(S("00,011"), S("00,01")));
}

TEST(Mass, Examples) {
  EXPECT_EQ(mass_below(S("00,010"), BitString("0")), Q("3/8"));
  EXPECT_EQ(mass_below(S("00,010"), BitString("1")), Q("0"));
  EXPECT_EQ(mass_below(S("0"), BitString("01")), Q("1/4"));
  EXPECT_EQ(residual_mass(S("00"), BitString("0")), Q("1/4"));
  EXPECT_EQ(residual_mass(S("00"), BitString("1")), Q("1/2"));
  EXPECT_EQ(residual_mass(S("0"), BitString("00")), Q("0"));
  EXPECT_EQ(symdiff_mass(S("0"), S("00")), Q("1/4"));
  EXPECT_EQ(symdiff_mass(S("00"), S("00")), Q("0"));
  EXPECT_EQ(symdiff_mass(S("00"), S("01")), Q("1/2"));
}

TEST(Levels, ViewAndBack) {
  const auto l = level_view(S("00,010"));
  ASSERT_EQ(l.depth(), 4u);
  EXPECT_TRUE(l.levels[0].empty());
  EXPECT_TRUE(l.levels[1].empty());
  EXPECT_EQ(l.levels[2], std::vector<BitString>{BitString("00")});
  EXPECT_EQ(l.levels[3], std::vector<BitString>{BitString("010")});
  EXPECT_EQ(from_levels(l), S("00,010"));
  EXPECT_EQ(from_levels(LevelFunction{{{}, {BitString("0")}, {}}}), S("0"));
  try {
    from_levels(LevelFunction{{{}, {BitString("0")}, {BitString("01")}}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotAntichain);
  }
}

TEST(Star, Examples) {
  EXPECT_TRUE(check_star(level_view(S("00,010"))));
  EXPECT_TRUE(oracle::star_literal({{}, {}, {"00"}, {"010"}}));
  const LevelFunction siblings{{{}, {}, {BitString("00"), BitString("01")}}};
  EXPECT_FALSE(check_star(siblings));
  EXPECT_TRUE(has_sibling_pair(siblings));
  EXPECT_TRUE(check_star(LevelFunction{}));
}

// Differential run against leaf enumeration at depth 8.
TEST(SetOps, AgreeWithLeafOracle) {
  constexpr std::size_t kDepth = 8;
  std::mt19937_64 gen(7);
  auto random_set = [&] {
    oracle::Strings xs;
    const std::size_t k = gen() % 6;
    for (std::size_t i = 0; i < k; ++i) {
      std::string s;
      for (std::size_t j = gen() % (kDepth + 1); j > 0; --j) s += (gen() & 1) ? '1' : '0';
      xs.push_back(s);
    }
    return xs;
  };
  for (int trial = 0; trial < 300; ++trial) {
    const auto a = random_set(), b = random_set();
    const auto la = oracle::LeafSet::of(a, kDepth), lb = oracle::LeafSet::of(b, kDepth);
    const auto sa = from_raw(a), sb = from_raw(b);
    EXPECT_EQ(raw(sa), oracle::decompose(la));
    EXPECT_EQ(measure(sa), DyadicRational(Natural(la.count()), kDepth));
    EXPECT_EQ(raw(unite(sa, sb)), oracle::decompose(la | lb));
    EXPECT_EQ(raw(intersect(sa, sb)), oracle::decompose(la & lb));
    EXPECT_EQ(raw(complement(sa)), oracle::decompose(~la));
    EXPECT_EQ(is_subset(sa, sb), la.subset_of(lb));
    EXPECT_TRUE(check_star(level_view(sa)));
    EXPECT_EQ(from_levels(level_view(sa)), sa);
  }
}

}  // namespace
}  // namespace forcing::cantor
