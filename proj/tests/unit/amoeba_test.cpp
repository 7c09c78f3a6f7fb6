#include <gtest/gtest.h>

#include <random>

#include "forcing/amoeba/amoeba.hpp"
#include "forcing/error.hpp"
#include "oracle/leaf_oracle.hpp"

namespace forcing::amoeba {
namespace {

ClopenSet S(std::string_view text) { return cantor::parse_clopen(text).set; }
DyadicRational Q(std::string_view text) { return DyadicRational::parse(text); }
StemCondition P(std::string_view text) { return StemCondition::parse(text); }

oracle::Strings raw(const ClopenSet& s) {
  oracle::Strings out;
  for (const auto& m : s.members()) out.push_back(m.str());
  return out;
}

std::string label_text(const StemCondition& p) {
  return coding::to_text(h_label(p, LabelRule::ruler()));
}

// Exact clauses 1-4 of densify_aprime's contract, written against the leaf oracle
// at a horizon deep enough to hold every member of psi.
void expect_densified(const StemCondition& p, const ClopenSet& psi) {
  const std::size_t d = psi.support_depth() + 1;
  const auto leaves = oracle::LeafSet::of(raw(psi), d);
  const auto before = oracle::LeafSet::of(raw(p.phi()), d);
  EXPECT_TRUE(before.subset_of(leaves));
  const DyadicRational mass(Natural(leaves.count()), d);
  const auto prof = gap_profile(p);
  EXPECT_LT(mass, Q("1/2"));
  EXPECT_GT(mass, Q("1/2") - prof.min_residual.scaled(-1));
  for (const auto& g : prof.gaps) {
    const std::size_t free = (std::size_t{1} << (d - g.size())) - leaves.count_under(g.str());
    EXPECT_GE(DyadicRational(Natural(free), d), prof.min_residual.scaled(-1)) << g.to_text();
  }
  EXPECT_TRUE(ap_le(phi_embed(psi), p));
}

TEST(Amoeba, Membership) {
  EXPECT_TRUE(is_amoeba(S("00,010")));
  EXPECT_FALSE(is_amoeba(S("0")));
  EXPECT_TRUE(is_amoeba(S("-")));
  EXPECT_THROW(AmoebaCondition(S("0")), Error);
  const AmoebaCondition a(S("00,010")), b(S("00")), c(S("00,011"));
  EXPECT_TRUE(a_le(a, b));
  EXPECT_FALSE(a_le(b, a));
  EXPECT_FALSE(a_le(c, a));
  EXPECT_FALSE(a_compatible(AmoebaCondition(S("00")), AmoebaCondition(S("01"))));
  EXPECT_TRUE(a_compatible(AmoebaCondition(S("000")), AmoebaCondition(S("10"))));
  EXPECT_TRUE(a_compatible(a, a));
}

TEST(Freeze, Examples) {
  EXPECT_EQ(freeze_prefix(S("00")), 3u);
  EXPECT_EQ(freeze_prefix(S("-")), 2u);
  EXPECT_EQ(freeze_prefix(S("10")), 3u);
  EXPECT_EQ(phi_embed(S("00")), StemCondition(S("00"), 3));
  EXPECT_EQ(phi_embed(S("-")), StemCondition(S("-"), 2));
  EXPECT_THROW(freeze_prefix(S("0")), Error);
}

TEST(Freeze, MatchesSupersetOracle) {
  for (const char* text : {"00", "-", "10", "000", "00,010"}) {
    const auto s = S(text);
    EXPECT_EQ(std::optional<std::size_t>(freeze_prefix(s)),
              oracle::freeze_by_supersets(raw(s), 4))
        << text;
  }
}

TEST(Freeze, MatchesCompletionOracleAtDepthThree) {
  for (std::size_t mask = 0; mask < (1u << 8); ++mask) {
    oracle::Strings xs;
    for (std::size_t i = 0; i < 8; ++i) {
      if (mask >> i & 1) xs.push_back(oracle::all_strings(3)[i]);
    }
    const auto s = cantor::canonicalize({xs.begin(), xs.end()});
    if (!is_amoeba(s)) continue;
    EXPECT_EQ(std::optional<std::size_t>(freeze_prefix(s)),
              oracle::freeze_by_completion(raw(s), 6))
        << cantor::to_text(s);
  }
}

TEST(StemCond, OrderAndText) {
  const auto p = P("3|00,010"), q = P("3|00");
  EXPECT_TRUE(ap_le(p, q));
  EXPECT_FALSE(ap_le(P("2|00,010"), q));
  EXPECT_TRUE(ap_le(p, p));
  EXPECT_TRUE(same_stem(p, q));
  EXPECT_EQ(p.to_text(), "3|00,010");
  EXPECT_EQ(p.stem_mass(), Q("1/4"));
  EXPECT_EQ(p.tail_mass(), Q("1/8"));
  EXPECT_THROW(P("3|0"), Error);
}

TEST(DensifyAprime, Examples) {
  for (const auto& p : {P("2|-"), phi_embed(S("00")), P("3|00")}) {
    expect_densified(p, densify_aprime(p));
  }
  EXPECT_EQ(gap_profile(phi_embed(S("00"))).min_residual, Q("1/4"));
  EXPECT_THROW(densify_aprime(P("0|-")), Error);
}

TEST(DensifyAprime, RandomInputs) {
  std::mt19937_64 gen(11);
  int tested = 0;
  while (tested < 100) {
    oracle::Strings xs;
    for (std::size_t k = gen() % 4; k > 0; --k) {
      std::string s(2 + gen() % 4, '0');
      for (auto& c : s) c = (gen() & 1) ? '1' : '0';
      xs.push_back(s);
    }
    const auto s = cantor::canonicalize({xs.begin(), xs.end()});
    if (!is_amoeba(s)) continue;
    const auto p = phi_embed(s);
    expect_densified(p, densify_aprime(p));
    ++tested;
  }
}

TEST(Window, Witness) {
  const auto w = app_witness(P("4|00,010"));
  ASSERT_TRUE(w);
  EXPECT_EQ(w->n, 2u);
  EXPECT_EQ(w->stem_mass, Q("3/8"));
  EXPECT_EQ(w->penult_mass, Q("1/4"));
  EXPECT_EQ(app_witness(P("3|00"))->n, 1u);
  EXPECT_FALSE(app_witness(P("2|-")));
}

TEST(Window, DensifyApp) {
  const auto q = densify_app(P("2|-"));
  const auto w = app_witness(q);
  ASSERT_TRUE(w);
  EXPECT_EQ(w->n, 1u);
  EXPECT_GT(measure(q.phi()), Q("1/4"));
  EXPECT_LT(measure(q.phi()), Q("1/2"));
  EXPECT_EQ(q.tail_mass(), Q("0"));
  EXPECT_TRUE(ap_le(q, P("2|-")));

  const auto r = densify_app(phi_embed(S("00")));
  ASSERT_TRUE(app_witness(r));
  EXPECT_EQ(app_witness(r)->n, 2u);
  EXPECT_TRUE(cantor::is_subset(S("00"), r.phi()));
  EXPECT_GT(measure(r.phi()), Q("3/8"));
}

TEST(Window, HWindowAndLabel) {
  EXPECT_EQ(h_window(P("4|00,010")), 2u);
  EXPECT_EQ(h_window(P("3|00")), 1u);
  EXPECT_THROW(h_window(P("2|-")), Error);
  EXPECT_EQ(label_text(P("4|00,010")), "0,2,0");
  EXPECT_EQ(label_text(P("4|00,010,011110000000")), "0,2,0");
  EXPECT_EQ(LabelRule::ruler()(3), 2);
  EXPECT_EQ(LabelRule::parse(";const:4")(9), 4);
}

TEST(Meet, Examples) {
  const std::vector<StemCondition> ok{P("4|00,010,01100"), P("4|00,010,01101")};
  const auto m = meet_same_stem(ok);
  ASSERT_TRUE(std::holds_alternative<StemCondition>(m));
  EXPECT_EQ(measure(std::get<StemCondition>(m).phi()), Q("7/16"));

  const std::vector<StemCondition> full{P("4|00,010,0110"), P("4|00,010,0111")};
  const auto bad = meet_same_stem(full);
  ASSERT_TRUE(std::holds_alternative<MeetInfeasible>(bad));
  EXPECT_EQ(std::get<MeetInfeasible>(bad).union_mass, Q("1/2"));

  const std::vector<StemCondition> one{P("4|00,010")};
  EXPECT_EQ(std::get<StemCondition>(meet_same_stem(one)), P("4|00,010"));

  const std::vector<StemCondition> differ{P("4|00,010"), P("4|00")};
  EXPECT_THROW(meet_same_stem(differ), Error);
}

TEST(Projection, ExtendsLabels) {
  const auto p = densify_app(P("2|-"));
  const auto base = h_label(p, LabelRule::ruler());
  EXPECT_EQ(projection_search(p, base, LabelRule::ruler(), 32), p);
  for (int v = 0; v < 4; ++v) {
    auto t = base;
    t.emplace_back(v);
    const auto q = projection_search(p, t, LabelRule::ruler(), 32);
    ASSERT_TRUE(q) << v;
    EXPECT_TRUE(ap_le(*q, p));
    const auto got = h_label(*q, LabelRule::ruler());
    ASSERT_GE(got.size(), t.size());
    EXPECT_TRUE(std::equal(t.begin(), t.end(), got.begin()));
  }
  EXPECT_THROW(projection_search(p, {coding::CohenEntry(5)}, LabelRule::ruler(), 32), Error);
}

}  // namespace
}  // namespace forcing::amoeba
