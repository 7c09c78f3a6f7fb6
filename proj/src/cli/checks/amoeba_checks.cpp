#include <algorithm>
#include <set>

#include "common.hpp"
#include "forcing/error.hpp"
#include "oracle/leaf_oracle.hpp"

namespace forcing::cli::detail {

using amoeba::StemCondition;
using cantor::BitString;
using cantor::ClopenSet;

namespace {

const DyadicRational kHalf = DyadicRational::half();

DyadicRational pow2neg(std::size_t k) { return DyadicRational::pow2(-static_cast<std::int64_t>(k)); }

DyadicRational mass_of_levels(const ClopenSet& s, std::size_t lo, std::size_t hi) {
  DyadicRational m;
  for (const auto& x : s.members()) {
    if (x.size() >= lo && x.size() < hi) m += pow2neg(x.size());
  }
  return m;
}

std::vector<BitString> members_below(const ClopenSet& s, std::size_t depth) {
  std::vector<BitString> out;
  for (const auto& x : s.members()) {
    if (x.size() < depth) out.push_back(x);
  }
  return out;
}

ClopenSet with(const ClopenSet& s, const std::vector<BitString>& extra) {
  auto all = s.members();
  all.insert(all.end(), extra.begin(), extra.end());
  return cantor::canonicalize(all);
}

std::string show(const StemCondition& p) { return p.to_text(); }

bool end_extends(const coding::CohenSeq& longer, const coding::CohenSeq& shorter) {
  return longer.size() >= shorter.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

// Disjoint from a, of measure exactly 1/2 - measure(a), built from free
// cylinders taken in random order.
ClopenSet fill_to_half(Rng& rng, const ClopenSet& a) {
  DyadicRational need = kHalf - cantor::measure(a);
  std::vector<BitString> pool = cantor::complement(a).members(), picked;
  while (!need.is_zero()) {
    const std::size_t k = rng.below(pool.size());
    const BitString g = pool[k];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(k));
    if (pow2neg(g.size()) <= need) {
      picked.push_back(g);
      need -= pow2neg(g.size());
    } else {
      pool.push_back(g.child(0));
      pool.push_back(g.child(1));
    }
  }
  return cantor::canonicalize(picked);
}

StemCondition random_stem_condition(Rng& rng, std::size_t depth) {
  const ClopenSet s = random_amoeba(rng, depth);
  if (rng.coin()) return amoeba::phi_embed(s);
  return StemCondition(s, rng.range(0, s.support_depth() + 1));
}

// The three inequalities of the window poset at n, evaluated from scratch.
bool window_holds(const StemCondition& q, std::size_t n) {
  const std::size_t d = q.stem_depth();
  const DyadicRational stem = mass_of_levels(q.phi(), 0, d);
  const DyadicRational penult = d == 0 ? DyadicRational() : mass_of_levels(q.phi(), 0, d - 1);
  const DyadicRational tail = mass_of_levels(q.phi(), d, q.phi().support_depth() + 1);
  const DyadicRational thr = kHalf - pow2neg(n);
  return stem > thr && penult <= thr && tail < pow2neg(n + 7);
}

// Independent clauses 1-4 of the densification, plus the embedding clause.
std::string densify_violation(const StemCondition& p, const ClopenSet& psi) {
  const std::size_t d = p.stem_depth();
  const std::size_t i = d - 1;
  if (members_below(psi, d) != members_below(p.phi(), d)) return "clause 1";
  for (const auto& tau : p.phi().members()) {
    if (tau.size() >= d && !psi.covers(tau)) return "clause 2";
  }
  const auto stem = members_below(p.phi(), d);
  std::vector<BitString> gaps;
  for (const auto& raw_sigma : oracle::all_strings(i)) {
    const BitString sigma(raw_sigma);
    const bool under_stem = std::any_of(stem.begin(), stem.end(),
                                        [&](const BitString& t) { return t.is_prefix_of(sigma); });
    if (!under_stem) gaps.push_back(sigma);
  }
  if (gaps.empty()) return "no gaps";
  DyadicRational a = pow2neg(0);
  for (const auto& sigma : gaps) {
    DyadicRational below;
    for (const auto& t : p.phi().members()) {
      if (t.size() >= d && sigma.is_prefix_of(t)) below += pow2neg(t.size());
    }
    a = std::min(a, pow2neg(i) - below);
  }
  const DyadicRational mu = cantor::measure(psi);
  if (!(mu < kHalf && mu > kHalf - a.scaled(-1))) return "clause 3";
  for (const auto& sigma : gaps) {
    if (pow2neg(i) - cantor::mass_below(psi, sigma) < a.scaled(-1)) return "clause 4";
  }
  if (!amoeba::ap_le(amoeba::phi_embed(psi), p)) return "embedding";
  return {};
}

}  // namespace

std::vector<CheckRecord> embedding_suite(const SuiteParams& p) {
  const std::size_t depth = p.depth ? std::clamp<std::size_t>(p.depth, 2, 6) : 6;
  const std::size_t trials = p.trials ? p.trials : 500;
  const std::string in = param_text("embedding", p);
  Rng rng(p.seed, "embedding");
  std::vector<CheckRecord> out;

  Tally order("embedding.order", in), incompat("embedding.incompatibility", in),
      compat("embedding.compatible_meet", in);
  std::size_t candidates = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const ClopenSet weak = random_amoeba(rng, depth);
    ClopenSet strong = weak;
    for (const auto& x : random_strings(rng, depth, 3)) {
      const ClopenSet next = with(strong, {x});
      if (amoeba::is_amoeba(next)) strong = next;
    }
    order.expect(amoeba::a_le(amoeba::AmoebaCondition(strong), amoeba::AmoebaCondition(weak)) &&
                     amoeba::ap_le(amoeba::phi_embed(strong), amoeba::phi_embed(weak)),
                 [&] { return cantor::to_text(strong) + " <= " + cantor::to_text(weak); });

    // A pair whose union reaches 1/2: b fills exactly the missing mass.
    ClopenSet a;
    while (a.empty()) a = random_amoeba(rng, depth);
    const ClopenSet b = fill_to_half(rng, a);
    const StemCondition pa = amoeba::phi_embed(a), pb = amoeba::phi_embed(b);
    const ClopenSet u = cantor::unite(a, b);
    bool found = false;
    std::vector<BitString> extras{BitString()};
    for (std::size_t len = 0; len <= depth + 2; ++len) {
      for (const auto& s : oracle::all_strings(len)) extras.emplace_back(s);
    }
    for (std::size_t k = 0; k < extras.size() && !found; ++k) {
      const ClopenSet r = k == 0 ? u : with(u, {extras[k]});
      ++candidates;
      if (!amoeba::is_amoeba(r)) continue;
      const StemCondition rc = amoeba::phi_embed(r);
      found = amoeba::ap_le(rc, pa) && amoeba::ap_le(rc, pb);
    }
    incompat.expect(!amoeba::a_compatible(amoeba::AmoebaCondition(a), amoeba::AmoebaCondition(b)) &&
                        !found,
                    [&] { return cantor::to_text(a) + " | " + cantor::to_text(b); });

    // Compatible pairs: the embedded union is a common lower bound.
    const ClopenSet c = random_amoeba(rng, depth), e = random_amoeba(rng, depth);
    const ClopenSet ce = cantor::unite(c, e);
    if (amoeba::is_amoeba(ce)) {
      const StemCondition r = amoeba::phi_embed(ce);
      compat.expect(amoeba::ap_le(r, amoeba::phi_embed(c)) && amoeba::ap_le(r, amoeba::phi_embed(e)),
                    [&] { return cantor::to_text(c) + " | " + cantor::to_text(e); });
    }
  }
  out.push_back(order.record({{"depth", std::to_string(depth)}}));
  out.push_back(incompat.record({{"candidates", std::to_string(candidates)}}));
  out.push_back(compat.record());

  // Every set of support depth <= 4 against single-cylinder completions.
  Tally oracle_all("embedding.freeze_oracle", in);
  for (std::uint32_t mask = 0; mask < (1u << 16); ++mask) {
    if (std::popcount(mask) >= 8) continue;
    oracle::Strings leaves;
    for (std::size_t leaf = 0; leaf < 16; ++leaf) {
      if ((mask >> leaf) & 1u) leaves.push_back(oracle::all_strings(4)[leaf]);
    }
    std::vector<BitString> bits;
    for (const auto& l : leaves) bits.emplace_back(l);
    const ClopenSet s = cantor::canonicalize(bits);
    const auto expected = oracle::freeze_by_completion(leaves, 6);
    const std::size_t got = amoeba::freeze_prefix(s);
    oracle_all.expect(expected && *expected == got, [&] {
      return cantor::to_text(s) + " got " + std::to_string(got) + " oracle " +
             (expected ? std::to_string(*expected) : std::string("none"));
    });
  }
  out.push_back(oracle_all.record({{"horizon", "6"}}));

  Tally supersets("embedding.freeze_supersets", in);
  for (std::uint32_t mask = 0; mask < 16; ++mask) {
    if (std::popcount(mask) >= 2) continue;
    oracle::Strings leaves;
    for (std::size_t leaf = 0; leaf < 4; ++leaf) {
      if ((mask >> leaf) & 1u) leaves.push_back(oracle::all_strings(2)[leaf]);
    }
    std::vector<BitString> bits(leaves.begin(), leaves.end());
    const ClopenSet s = cantor::canonicalize(bits);
    const auto expected = oracle::freeze_by_supersets(leaves, 4);
    const std::size_t got = amoeba::freeze_prefix(s);
    supersets.expect(expected && *expected == got,
                     [&] { return cantor::to_text(s) + " got " + std::to_string(got); });
  }
  out.push_back(supersets.record({{"horizon", "4"}}));

  Tally examples("embedding.freeze_examples", in);
  for (const auto& [text, want] : std::vector<std::pair<const char*, std::size_t>>{
           {"00", 3}, {"-", 2}, {"10", 3}}) {
    const auto s = cantor::parse_clopen(text).set;
    const auto e = amoeba::phi_embed(s);
    examples.expect(amoeba::freeze_prefix(s) == want && e.stem_depth() == want && e.phi() == s,
                    [&] { return std::string(text); });
  }
  out.push_back(examples.record());

  Tally density("embedding.densify", in);
  for (std::size_t t = 0; t < trials; ++t) {
    StemCondition q = random_stem_condition(rng, depth);
    if (q.stem_depth() == 0) q = StemCondition(q.phi(), 1);
    std::string bad;
    try {
      bad = densify_violation(q, amoeba::densify_aprime(q));
    } catch (const Error& e) {
      bad = e.what();
    }
    density.expect(bad.empty(), [&] { return show(q) + ": " + bad; });
  }
  out.push_back(density.record());
  return out;
}

std::vector<CheckRecord> window_suite(const SuiteParams& p) {
  const std::size_t depth = p.depth ? std::clamp<std::size_t>(p.depth, 2, 6) : 6;
  const std::size_t trials = p.trials ? p.trials : 200;
  const std::string in = param_text("window", p);
  Rng rng(p.seed, "window");
  std::vector<CheckRecord> out;

  Tally dens("window.densify_app", in), unique("window.h_unique", in),
      mono("window.h_monotone", in);
  auto unique_n = [](const DyadicRational& m) {
    std::size_t hits = 0, last = 0;
    for (std::size_t n = 0; n < 80; ++n) {
      if (kHalf - pow2neg(n) < m && m <= kHalf - pow2neg(n + 1)) ++hits, last = n;
    }
    return std::pair{hits, last};
  };
  for (std::size_t t = 0; t < trials; ++t) {
    const StemCondition base = random_stem_condition(rng, depth);
    const StemCondition q = amoeba::densify_app(base);
    const auto w = amoeba::app_witness(q);
    bool ok = w && amoeba::ap_le(q, base) && window_holds(q, w->n);
    for (std::size_t m = 0; ok && m < w->n; ++m) ok = !window_holds(q, m);
    std::set<std::size_t> new_levels;
    for (const auto& x : q.phi().members()) {
      if (!base.phi().has_member(x)) new_levels.insert(x.size());
    }
    ok = ok && new_levels.size() <= 1 &&
         mass_of_levels(q.phi(), q.stem_depth(), q.phi().support_depth() + 1).is_zero();
    dens.expect(ok, [&] { return show(base) + " -> " + show(q); });

    const auto [hits, n] = unique_n(q.stem_mass());
    unique.expect(hits == 1 && amoeba::h_window(q) == n, [&] { return show(q); });

    // A stronger condition: extra mass below the stem, then densified again.
    StemCondition lower = q;
    std::vector<BitString> extra;
    for (std::size_t k = 0; k < 3; ++k) {
      extra.emplace_back(random_bits(rng, q.stem_depth() + rng.range(1, 3)));
      const ClopenSet next = with(q.phi(), extra);
      if (!amoeba::is_amoeba(next) ||
          members_below(next, q.stem_depth()) != members_below(q.phi(), q.stem_depth())) {
        extra.pop_back();
      }
    }
    lower = amoeba::densify_app(StemCondition(with(q.phi(), extra), q.stem_depth()));
    mono.expect(amoeba::ap_le(lower, q) &&
                    end_extends(amoeba::h_label(lower, p.f), amoeba::h_label(q, p.f)),
                [&] { return show(lower) + " <= " + show(q); });
  }
  for (std::size_t m = 1; m <= 10; ++m) {
    for (std::size_t k = 0; k < (std::size_t{1} << (m - 1)); ++k) {
      const DyadicRational mass(Natural(k), m);
      unique.expect(unique_n(mass).first == 1, [&] { return mass.to_string(); });
    }
  }
  out.push_back(dens.record());
  out.push_back(unique.record());
  out.push_back(mono.record());

  Tally example("window.label_example", in);
  {
    const auto q = StemCondition::parse("4|00,010");
    const auto w = amoeba::app_witness(q);
    const auto label = amoeba::h_label(q, amoeba::LabelRule::ruler());
    example.expect(w && w->n == 2 && amoeba::h_window(q) == 2 &&
                       coding::to_text(label) == "0,2,0",
                   [&] { return coding::to_text(label); });
    const auto z = StemCondition::parse("3|00");
    example.expect(amoeba::app_witness(z) && amoeba::app_witness(z)->n == 1 &&
                       amoeba::h_window(z) == 1,
                   [] { return std::string("3|00"); });
    example.expect(!amoeba::app_witness(StemCondition::parse("2|-")),
                   [] { return std::string("2|-"); });
  }
  out.push_back(example.record());

  // Projection: every one-entry extension of a label is reached.
  Tally proj("window.projection", in);
  std::size_t not_found = 0;
  const std::vector<StemCondition> starts{
      amoeba::densify_app(StemCondition::parse("2|-")),
      amoeba::densify_app(amoeba::phi_embed(cantor::parse_clopen("00").set)),
      StemCondition::parse("4|00,010"), StemCondition::parse("3|00")};
  for (const auto& start : starts) {
    const auto label = amoeba::h_label(start, p.f);
    for (int v = 0; v < 4; ++v) {
      auto target = label;
      target.emplace_back(v);
      const auto q = amoeba::projection_search(start, target, p.f, 32);
      if (!q) {
        ++not_found;
        proj.add(false, show(start) + " -> " + coding::to_text(target) + ": not found");
        continue;
      }
      proj.expect(amoeba::ap_le(*q, start) && amoeba::app_witness(*q) &&
                      end_extends(amoeba::h_label(*q, p.f), target),
                  [&] { return show(*q); });
    }
  }
  auto rec = proj.record({{"budget", "32"}});
  if (not_found > 0 && proj.failures() == not_found) rec.outcome = Outcome::NotFound;
  out.push_back(rec);
  return out;
}

namespace {

struct MeetFamily {
  DyadicRational stem_mass;
  std::vector<StemCondition> members;
};

// Shared stem: a comb of mass 1/2 - 2^-n on levels 2..n and c non-sibling
// strings on level n+6. Each member adds one or two tail pieces on levels
// n+8..n+10, each piece in its own free level-(n+6) cell, so no union of
// tails can fill a cylinder on a stem level.
MeetFamily meet_family(Rng& rng, std::size_t n, std::size_t k, std::size_t c) {
  const std::size_t top = n + 6;
  std::vector<BitString> comb;
  for (std::size_t j = 2; j <= n; ++j) comb.emplace_back(std::string(j - 1, '0') + "1");
  std::vector<BitString> free_cells;
  for (const auto& s : oracle::all_strings(top)) {
    const BitString b(s);
    if (std::none_of(comb.begin(), comb.end(), [&](const BitString& t) { return t.is_prefix_of(b); })) {
      free_cells.push_back(b);
    }
  }
  std::vector<BitString> stem = comb, cells;
  std::size_t placed = 0;
  for (const auto& b : free_cells) {
    if (placed < c && b.str().back() == '0') {
      stem.push_back(b);
      ++placed;
    } else {
      cells.push_back(b);
    }
  }
  MeetFamily fam;
  const ClopenSet stem_set = cantor::canonicalize(stem);
  fam.stem_mass = cantor::measure(stem_set);
  for (std::size_t m = 0; m < k; ++m) {
    std::vector<BitString> pieces;
    const std::size_t count = 1 + rng.below(2);
    std::size_t prev = 0;
    for (std::size_t j = 0; j < count; ++j) {
      std::size_t level = top + 2 + rng.below(3);
      if (j == 1 && prev == top + 2 && level == top + 2) level = top + 3;
      prev = level;
      pieces.emplace_back(cells[2 * m + j].str() + random_bits(rng, level - top));
    }
    fam.members.emplace_back(with(stem_set, pieces), top + 1);
  }
  return fam;
}

}  // namespace

std::vector<CheckRecord> meet_suite(const SuiteParams& p) {
  const std::string in = param_text("meet", p);
  Rng rng(p.seed, "meet");
  Tally family("meet.family_window", in), bound("meet.mass_bound", in),
      sufficient("meet.sufficient", in);
  std::size_t infeasible = 0, vacuous = 0;
  for (std::size_t n = 0; n <= 6; ++n) {
    for (std::size_t k = 1; k <= 16; ++k) {
      for (std::size_t c : {1, 32, 48, 60, 62, 63}) {
        if (n == 0) {
          // penult mass <= 1/2 - 1 never holds: no condition has window 0.
          ++vacuous;
          continue;
        }
        const MeetFamily fam = meet_family(rng, n, k, c);
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) +
                                  " c=" + std::to_string(c);
        for (const auto& m : fam.members) {
          const auto w = amoeba::app_witness(m);
          family.expect(w && w->n == n && amoeba::same_stem(m, fam.members.front()),
                        [&] { return where + " " + show(m); });
        }
        const auto result = amoeba::meet_same_stem(fam.members);
        const DyadicRational slack = pow2neg(n + 7) * Natural(k);
        if (const auto* q = std::get_if<StemCondition>(&result)) {
          bound.expect(cantor::measure(q->phi()) < fam.stem_mass + slack &&
                           std::all_of(fam.members.begin(), fam.members.end(),
                                       [&](const StemCondition& m) { return amoeba::ap_le(*q, m); }),
                       [&] { return where; });
        } else {
          ++infeasible;
        }
        if (slack <= kHalf - fam.stem_mass) {
          sufficient.expect(std::holds_alternative<StemCondition>(result), [&] { return where; });
        }
      }
    }
  }

  Tally examples("meet.examples", in);
  {
    const std::vector<StemCondition> ok{StemCondition::parse("4|00,010,01100"),
                                        StemCondition::parse("4|00,010,01101")};
    const auto r = amoeba::meet_same_stem(ok);
    const auto* q = std::get_if<StemCondition>(&r);
    examples.expect(q && cantor::measure(q->phi()) == DyadicRational(Natural(7), 4),
                    [] { return std::string("7/16 case"); });
    const std::vector<StemCondition> over{StemCondition::parse("4|00,010,0110"),
                                          StemCondition::parse("4|00,010,0111")};
    const auto r2 = amoeba::meet_same_stem(over);
    const auto* bad = std::get_if<amoeba::MeetInfeasible>(&r2);
    examples.expect(bad && bad->union_mass == kHalf && bad->overshoot.is_zero(),
                    [] { return std::string("1/2 case"); });
    const std::vector<StemCondition> one{StemCondition::parse("4|00,010,01100")};
    const auto r3 = amoeba::meet_same_stem(one);
    examples.expect(std::get_if<StemCondition>(&r3) && std::get<StemCondition>(r3) == one.front(),
                    [] { return std::string("singleton"); });
  }
  return {family.record(), bound.record({{"infeasible_cases", std::to_string(infeasible)}}),
          sufficient.record({{"vacuous_cases", std::to_string(vacuous)}}), examples.record()};
}

}  // namespace forcing::cli::detail
