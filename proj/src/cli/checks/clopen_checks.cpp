#include <set>

#include "common.hpp"
#include "oracle/leaf_oracle.hpp"

namespace forcing::cli::detail {

using cantor::BitString;
using cantor::ClopenSet;
using oracle::LeafSet;

namespace {

DyadicRational leaf_measure(std::size_t leaves, std::size_t depth) {
  return DyadicRational(Natural(leaves), depth);
}

std::string show(const ClopenSet& s) { return cantor::to_text(s); }

}  // namespace

std::vector<CheckRecord> clopen_suite(const SuiteParams& p) {
  const std::size_t depth = p.depth ? p.depth : 10;
  const std::size_t trials = p.trials ? p.trials : 1000;
  const std::string in = param_text("clopen", p);
  Rng rng(p.seed, "clopen");

  Tally canon("clopen.canonicalize", in), meas("clopen.measure", in), uni("clopen.union", in),
      inter("clopen.intersect", in), comp("clopen.complement", in), sub("clopen.is_subset", in),
      below("clopen.mass_below", in), resid("clopen.residual_mass", in),
      idem("clopen.idempotent", in), modular("clopen.modularity", in),
      zero("clopen.residual_zero_iff_covered", in), symdiff("clopen.symdiff", in),
      triangle("clopen.symdiff_triangle", in), levels("clopen.level_roundtrip", in);

  for (std::size_t t = 0; t < trials; ++t) {
    const auto xs = random_strings(rng, depth, 6);
    auto ys = random_strings(rng, depth, 6);
    if (rng.below(3) == 0) ys.insert(ys.end(), xs.begin(), xs.end());
    const auto zs = random_strings(rng, depth, 6);
    const BitString sigma(random_bits(rng, rng.below(depth + 1)));

    const ClopenSet s = cantor::canonicalize(xs);
    const ClopenSet u = cantor::canonicalize(ys);
    const ClopenSet r = cantor::canonicalize(zs);
    const LeafSet ls = LeafSet::of(raw(xs), depth);
    const LeafSet lu = LeafSet::of(raw(ys), depth);
    const std::string where = show(s) + " / " + show(u) + " / " + sigma.to_text();

    canon.expect(raw(s) == oracle::decompose(ls), [&] { return where; });
    meas.expect(cantor::measure(s) == leaf_measure(ls.count(), depth), [&] { return where; });
    uni.expect(raw(cantor::unite(s, u)) == oracle::decompose(ls | lu), [&] { return where; });
    inter.expect(raw(cantor::intersect(s, u)) == oracle::decompose(ls & lu), [&] { return where; });
    comp.expect(raw(cantor::complement(s)) == oracle::decompose(~ls), [&] { return where; });
    sub.expect(cantor::is_subset(s, u) == ls.subset_of(lu), [&] { return where; });
    below.expect(cantor::mass_below(s, sigma) == leaf_measure(ls.count_under(sigma.str()), depth),
                 [&] { return where; });
    const std::size_t cyl = std::size_t{1} << (depth - sigma.size());
    resid.expect(cantor::residual_mass(s, sigma) ==
                     leaf_measure(cyl - ls.count_under(sigma.str()), depth),
                 [&] { return where; });

    idem.expect(cantor::canonicalize(s.members()) == s, [&] { return where; });
    modular.expect(cantor::measure(cantor::unite(s, u)) + cantor::measure(cantor::intersect(s, u)) ==
                       cantor::measure(s) + cantor::measure(u),
                   [&] { return where; });
    const bool covered = cantor::is_subset(cantor::canonicalize({sigma}), s);
    zero.expect(cantor::residual_mass(s, sigma).is_zero() == covered, [&] { return where; });
    const LeafSet diff = (ls | lu) & ~(ls & lu);
    symdiff.expect(cantor::symdiff_mass(s, u) == leaf_measure(diff.count(), depth) &&
                       (cantor::symdiff_mass(s, u).is_zero() == (s == u)),
                   [&] { return where; });
    triangle.expect(cantor::symdiff_mass(s, u) <=
                        cantor::symdiff_mass(s, r) + cantor::symdiff_mass(r, u),
                    [&] { return where + " / " + show(r); });
    levels.expect(cantor::from_levels(cantor::level_view(s)) == s, [&] { return where; });
  }

  std::vector<CheckRecord> out;
  for (const Tally* t : {&canon, &meas, &uni, &inter, &comp, &sub, &below, &resid, &idem, &modular,
                         &zero, &symdiff, &triangle, &levels}) {
    out.push_back(t->record({{"depth", std::to_string(depth)}}));
  }
  return out;
}

namespace {

cantor::LevelFunction random_level_function(Rng& rng, std::size_t depth) {
  std::vector<BitString> picked;
  const std::size_t count = rng.below(7);
  for (std::size_t i = 0; i < count; ++i) {
    const BitString s(random_bits(rng, rng.range(1, depth - 1)));
    bool clash = false;
    for (const auto& t : picked) clash = clash || s.comparable(t);
    if (!clash) picked.push_back(s);
  }
  if (!picked.empty() && rng.coin()) {
    const BitString sib = picked[rng.below(picked.size())].sibling();
    bool clash = false;
    for (const auto& t : picked) clash = clash || sib.comparable(t);
    if (!clash) picked.push_back(sib);
  }
  cantor::LevelFunction l;
  l.levels.resize(depth);
  for (const auto& s : picked) l.levels[s.size()].push_back(s);
  for (auto& level : l.levels) std::sort(level.begin(), level.end());
  return l;
}

std::vector<oracle::Strings> raw_levels(const cantor::LevelFunction& l) {
  std::vector<oracle::Strings> out;
  for (const auto& level : l.levels) out.push_back(raw(level));
  return out;
}

std::string show(const cantor::LevelFunction& l) {
  std::string out = "(";
  for (std::size_t i = 0; i < l.levels.size(); ++i) {
    if (i) out += ";";
    for (std::size_t k = 0; k < l.levels[i].size(); ++k) {
      if (k) out += ",";
      out += l.levels[i][k].to_text();
    }
  }
  return out + ")";
}

}  // namespace

std::vector<CheckRecord> star_suite(const SuiteParams& p) {
  const std::size_t depth = p.depth ? std::clamp<std::size_t>(p.depth, 2, 8) : 8;
  const std::size_t trials = p.trials ? p.trials : 1000;
  const std::string in = param_text("star", p);
  Rng rng(p.seed, "star");

  Tally equiv("star.sibling_equivalence", in), views("star.canonical_views", in);
  std::size_t with_siblings = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto l = random_level_function(rng, depth);
    const bool star = cantor::check_star(l);
    const bool siblings = cantor::has_sibling_pair(l);
    with_siblings += siblings;
    equiv.expect(star == !siblings && star == oracle::star_literal(raw_levels(l)),
                 [&] { return show(l); });

    const ClopenSet s = cantor::canonicalize(random_strings(rng, depth - 1, 6));
    const auto view = cantor::level_view(s);
    views.expect(cantor::check_star(view) && oracle::star_literal(raw_levels(view)),
                 [&] { return cantor::to_text(s); });
  }
  return {equiv.record({{"depth", std::to_string(depth)},
                        {"with_sibling_pair", std::to_string(with_siblings)}}),
          views.record({{"depth", std::to_string(depth)}})};
}

}  // namespace forcing::cli::detail
