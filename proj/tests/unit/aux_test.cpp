#include <gtest/gtest.h>

#include "forcing/aux/aux_posets.hpp"
#include "forcing/error.hpp"

namespace forcing::aux {
namespace {

CohenSeq C(std::string_view text) { return coding::parse_cohen_seq(text); }
FnRep konst(int c) { return FnRep::constant(Natural(c)); }

TEST(Cohen, Order) {
  EXPECT_TRUE(cohen_le(C("0,2,0,5"), C("0,2")));
  EXPECT_FALSE(cohen_le(C("0"), C("1")));
  EXPECT_TRUE(cohen_le(C("4,4"), C("()")));
}

TEST(Hechler, Order) {
  EXPECT_TRUE(hechler_le(HechlerCond::parse("3,9|;const:2"), HechlerCond::parse("3|;const:2")));
  EXPECT_FALSE(hechler_le(HechlerCond::parse("3,1|;const:2"), HechlerCond::parse("3|;const:2")));
  const auto p = HechlerCond::parse("3,9|1;id+0");
  EXPECT_TRUE(hechler_le(p, p));
  EXPECT_EQ(HechlerCond::parse(p.to_text()), p);
}

TEST(EvDiff, OrderAndMeet) {
  EXPECT_TRUE(ev_le(EvDiffCond::parse("4|;const:3"), EvDiffCond::parse("()|;const:3")));
  EXPECT_FALSE(ev_le(EvDiffCond::parse("3|;const:3"), EvDiffCond::parse("()|;const:3")));
  EXPECT_FALSE(ev_le(EvDiffCond::parse("()|-"), EvDiffCond::parse("()|;const:3")));
  const std::vector<EvDiffCond> two{EvDiffCond{{}, {konst(0)}}, EvDiffCond{{}, {konst(1)}}};
  EXPECT_EQ(ev_stem_meet(two), (EvDiffCond{{}, {konst(0), konst(1)}}));
  EXPECT_EQ(ev_stem_meet(std::span(two).first(1)), two[0]);
  const std::vector<EvDiffCond> differ{EvDiffCond{{Natural(1)}, {}}, EvDiffCond{{}, {}}};
  EXPECT_THROW(ev_stem_meet(differ), Error);
}

// Every lower bound with the shared stem lies below the meet, over all side sets
// of size <= 3 drawn from a pool of four functions.
TEST(EvDiff, MeetIsGreatestLowerBound) {
  const std::vector<FnRep> pool{konst(0), konst(1), FnRep::shifted(Natural(0)),
                                FnRep::parse("2;const:0")};
  std::vector<std::set<FnRep>> sides;
  for (unsigned mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) > 3) continue;
    std::set<FnRep> s;
    for (unsigned i = 0; i < 4; ++i) {
      if (mask >> i & 1) s.insert(pool[i]);
    }
    sides.push_back(s);
  }
  const FinSeq stem{Natural(1)};
  for (const auto& a : sides) {
    for (const auto& b : sides) {
      const std::vector<EvDiffCond> ps{{stem, a}, {stem, b}};
      const auto m = ev_stem_meet(ps);
      EXPECT_TRUE(ev_le(m, ps[0]) && ev_le(m, ps[1]));
      for (const auto& r : sides) {
        const EvDiffCond rc{stem, r};
        if (ev_le(rc, ps[0]) && ev_le(rc, ps[1])) EXPECT_TRUE(ev_le(rc, m));
      }
    }
  }
}

TEST(Loc, ConditionsAndOrder) {
  EXPECT_TRUE(loc_is_condition(LocCond::parse("{5}|;const:0")));
  EXPECT_FALSE(loc_is_condition(LocCond::parse("{5,7}|-")));
  EXPECT_FALSE(loc_is_condition(LocCond::parse("{5},{1,2}|;const:0;const:1;const:2;const:3")));
  EXPECT_TRUE(loc_le(LocCond::parse("{5},{1,3}|;const:3"), LocCond::parse("{5}|;const:3")));
  EXPECT_FALSE(loc_le(LocCond::parse("{5},{1,2}|;const:3"), LocCond::parse("{5}|;const:3")));
  const auto p = LocCond::parse("{5},{1,3}|;const:3");
  EXPECT_TRUE(loc_le(p, p));
  EXPECT_EQ(LocCond::parse(p.to_text()), p);
}

TEST(Loc, SideCeiling) {
  const auto slots2 = LocCond::parse("{5},{1,3}|-").slots;
  const std::vector<LocCond> ok{{slots2, {konst(0)}}, {slots2, {konst(1)}}};
  const auto m = loc_stem_meet(ok);
  ASSERT_TRUE(std::holds_alternative<LocCond>(m));
  EXPECT_EQ(std::get<LocCond>(m).side, (std::set<FnRep>{konst(0), konst(1)}));

  const auto slots1 = LocCond::parse("{5}|-").slots;
  const std::vector<LocCond> over{{slots1, {konst(0)}}, {slots1, {konst(1)}}, {slots1, {konst(2)}}};
  const auto bad = loc_stem_meet(over);
  ASSERT_TRUE(std::holds_alternative<LocInfeasible>(bad));
  EXPECT_EQ(std::get<LocInfeasible>(bad).excess, 1u);
  EXPECT_EQ(std::get<LocCond>(loc_stem_meet(std::span(ok).first(1))), ok[0]);
  const std::vector<LocCond> differ{{slots1, {}}, {slots2, {}}};
  EXPECT_THROW(loc_stem_meet(differ), Error);
}

TEST(StemMaps, Monotone) {
  const auto p = LocCond::parse("{5},{1,3}|;const:3"), q = LocCond::parse("{5}|;const:3");
  EXPECT_TRUE(cohen_le(stem_of(p), stem_of(q)));
  EXPECT_EQ(stem_of(q), (CohenSeq{coding::CohenEntry::encoding({Natural(5)})}));
  EXPECT_TRUE(cohen_le(stem_of(EvDiffCond::parse("4,1|-")), stem_of(EvDiffCond::parse("4|-"))));
}

TEST(EdFamily, Modes) {
  const auto c = ed_family(3, FamilyMode::Constant);
  EXPECT_EQ(c, (std::vector<FnRep>{konst(0), konst(1), konst(2)}));
  const auto s = ed_family(2, FamilyMode::Staggered);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0](0), s[1](0));
  EXPECT_TRUE(eventually_different(s[0], s[1]));
  const auto big = ed_family(6, FamilyMode::Staggered);
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      const std::size_t past = std::max(big[i].table().size(), big[j].table().size());
      for (std::size_t k = past; k < past + 20; ++k) EXPECT_NE(big[i](k), big[j](k));
    }
  }
}

TEST(Hypothesis, EConstantFamily) {
  std::vector<AnyCondition> T;
  for (const auto& f : ed_family(5, FamilyMode::Constant)) T.push_back(EvDiffCond{{}, {f}});
  HypothesisOptions o;
  o.ell = 5;
  o.depth = 2;
  const auto r = hypothesis_check(T, o);
  ASSERT_TRUE(std::holds_alternative<HypothesisWitness>(r));
  const auto& w = std::get<HypothesisWitness>(r);
  EXPECT_EQ(w.chosen, (std::vector<std::size_t>{0, 1, 2, 3, 4}));
  const auto& meet = std::get<EvDiffCond>(w.meet);
  EXPECT_TRUE(meet.stem.empty());
  EXPECT_EQ(meet.side.size(), 5u);
}

TEST(Hypothesis, LOverlapAndDisjoint) {
  const auto slots2 = LocCond::parse("{5},{1,3}|-").slots;
  std::vector<AnyCondition> overlap{LocCond{slots2, {konst(0), konst(1)}}, LocCond{slots2, {konst(1)}},
                                    LocCond{slots2, {konst(0)}}, LocCond{slots2, {konst(0), konst(1)}}};
  HypothesisOptions o;
  o.ell = 4;
  o.depth = 2;
  EXPECT_TRUE(std::holds_alternative<HypothesisWitness>(hypothesis_check(overlap, o)));

  const auto slots1 = LocCond::parse("{5}|-").slots;
  std::vector<AnyCondition> disjoint{LocCond{slots1, {konst(0)}}, LocCond{slots1, {konst(1)}},
                                     LocCond{slots1, {konst(2)}}};
  o.ell = 3;
  const auto r = hypothesis_check(disjoint, o);
  ASSERT_TRUE(std::holds_alternative<HypothesisFailure>(r));
  EXPECT_EQ(std::get<HypothesisFailure>(r).clause, "side ceiling");
}

TEST(Hypothesis, Refusals) {
  std::vector<AnyCondition> mixed{EvDiffCond{}, LocCond{}};
  HypothesisOptions o;
  o.ell = 1;
  try {
    hypothesis_check(mixed, o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MixedPosets);
  }
  std::vector<AnyCondition> one{EvDiffCond{}};
  o.ell = 2;
  EXPECT_THROW(hypothesis_check(one, o), Error);
}

}  // namespace
}  // namespace forcing::aux
