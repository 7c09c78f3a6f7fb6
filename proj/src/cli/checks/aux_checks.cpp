#include <algorithm>
#include <functional>

#include "common.hpp"
#include "forcing/aux/aux_posets.hpp"
#include "forcing/error.hpp"

namespace forcing::cli::detail {

using aux::EvDiffCond;
using aux::HechlerCond;
using aux::LocCond;
using coding::CohenSeq;
using coding::FinSeq;
using coding::FnRep;

namespace {

const std::vector<FnRep>& fn_pool() {
  static const std::vector<FnRep> pool{
      FnRep::constant(Natural(0)), FnRep::constant(Natural(1)), FnRep::shifted(Natural(0)),
      FnRep({Natural(2)}, FnRep::Tail::Constant, Natural(0)),
      FnRep({Natural(0), Natural(2)}, FnRep::Tail::Shift, Natural(1))};
  return pool;
}

FinSeq random_stem(Rng& rng, const FinSeq& base, std::size_t max_extra) {
  FinSeq s = base;
  const std::size_t extra = rng.below(max_extra + 1);
  for (std::size_t i = 0; i < extra; ++i) s.emplace_back(rng.below(4));
  return s;
}

std::set<FnRep> random_side(Rng& rng, std::size_t max_size) {
  std::set<FnRep> side;
  const std::size_t n = rng.below(max_size + 1);
  for (std::size_t i = 0; i < n; ++i) side.insert(fn_pool()[rng.below(fn_pool().size())]);
  return side;
}

std::set<Natural> random_slot(Rng& rng, std::size_t size) {
  std::set<Natural> slot;
  while (slot.size() < size) slot.insert(Natural(rng.below(size + 2)));
  return slot;
}

// Conditions drawn as a weak-to-strong chain so comparable triples are common.
template <typename Cond, typename Le, typename Weaken>
void order_laws(Tally& tally, std::size_t& chains, std::size_t trials, Le le,
                std::function<Cond()> fresh, Weaken strengthen) {
  for (std::size_t t = 0; t < trials; ++t) {
    const Cond c = fresh();
    const Cond b = strengthen(c);
    const Cond a = strengthen(b);
    const bool ab = le(a, b), bc = le(b, c);
    chains += ab && bc;
    tally.expect(le(a, a) && le(b, b) && le(c, c) && (!(ab && bc) || le(a, c)),
                 [&] { return std::string("triple ") + std::to_string(t); });
  }
}

}  // namespace

std::vector<CheckRecord> aux_suite(const SuiteParams& p) {
  const std::size_t trials = p.trials ? p.trials : 1000;
  const std::string in = param_text("aux", p);
  Rng rng(p.seed, "aux");
  std::vector<CheckRecord> out;

  Tally stems("aux.stem_maps", in);
  std::size_t stem_pairs = 0;
  auto stem_check = [&](bool le, const CohenSeq& a, const CohenSeq& b) {
    if (!le) return;
    ++stem_pairs;
    stems.expect(aux::cohen_le(a, b), [] { return std::string("stem map not monotone"); });
  };

  {
    Tally tally("aux.cohen_laws", in);
    std::size_t chains = 0;
    order_laws<CohenSeq>(
        tally, chains, trials, aux::cohen_le,
        [&] { return coding::to_cohen(random_stem(rng, {}, 3)); },
        [&](const CohenSeq& s) {
          CohenSeq t = rng.coin() ? s : coding::to_cohen(random_stem(rng, {}, 3));
          for (std::size_t i = rng.below(3); i > 0; --i) t.emplace_back(Natural(rng.below(4)));
          return t;
        });
    out.push_back(tally.record({{"chains", std::to_string(chains)}}));
  }
  {
    Tally tally("aux.hechler_laws", in);
    std::size_t chains = 0;
    order_laws<HechlerCond>(
        tally, chains, trials,
        [&](const HechlerCond& a, const HechlerCond& b) {
          const bool le = aux::hechler_le(a, b);
          stem_check(le, aux::stem_of(a), aux::stem_of(b));
          return le;
        },
        [&] { return HechlerCond{random_stem(rng, {}, 2), fn_pool()[rng.below(fn_pool().size())]}; },
        [&](const HechlerCond& q) {
          HechlerCond r{q.stem, fn_pool()[rng.below(fn_pool().size())]};
          for (std::size_t i = rng.below(3); i > 0; --i) {
            Natural v = q.side(r.stem.size()) + rng.below(3);
            if (v > 0 && rng.below(4) == 0) --v;
            r.stem.push_back(v);
          }
          return r;
        });
    out.push_back(tally.record({{"chains", std::to_string(chains)}}));
  }
  {
    Tally tally("aux.ev_laws", in);
    std::size_t chains = 0;
    order_laws<EvDiffCond>(
        tally, chains, trials,
        [&](const EvDiffCond& a, const EvDiffCond& b) {
          const bool le = aux::ev_le(a, b);
          stem_check(le, aux::stem_of(a), aux::stem_of(b));
          return le;
        },
        [&] { return EvDiffCond{random_stem(rng, {}, 2), random_side(rng, 2)}; },
        [&](const EvDiffCond& q) {
          EvDiffCond r{random_stem(rng, q.stem, 2), q.side};
          for (const auto& f : random_side(rng, 2)) r.side.insert(f);
          return r;
        });
    out.push_back(tally.record({{"chains", std::to_string(chains)}}));
  }
  {
    Tally tally("aux.loc_laws", in);
    std::size_t chains = 0;
    order_laws<LocCond>(
        tally, chains, trials,
        [&](const LocCond& a, const LocCond& b) {
          const bool le = aux::loc_le(a, b);
          stem_check(le, aux::stem_of(a), aux::stem_of(b));
          return le;
        },
        [&] {
          LocCond c;
          for (std::size_t i = 0, n = rng.below(3); i < n; ++i) c.slots.push_back(random_slot(rng, i + 1));
          c.side = random_side(rng, c.slots.size() + 1);
          return c;
        },
        [&](const LocCond& q) {
          LocCond r = q;
          for (std::size_t k = rng.below(3); k > 0; --k) {
            const std::size_t i = r.slots.size();
            std::set<Natural> slot;
            if (rng.below(4) != 0) {
              for (const auto& g : q.side) slot.insert(g(i));
            }
            while (slot.size() < i + 1) slot.insert(Natural(rng.below(i + 4)));
            while (slot.size() > i + 1) slot.erase(std::prev(slot.end()));
            r.slots.push_back(std::move(slot));
          }
          for (const auto& f : random_side(rng, 1)) {
            if (r.side.size() < r.slots.size() + 1) r.side.insert(f);
          }
          return r;
        });
    out.push_back(tally.record({{"chains", std::to_string(chains)}}));
  }
  out.push_back(stems.record({{"comparable_pairs", std::to_string(stem_pairs)}}));

  // Greatest lower bound of same-stem E conditions, over a pool of four.
  Tally glb("aux.ev_glb", in);
  {
    std::vector<std::set<FnRep>> sides;
    for (unsigned mask = 0; mask < 16; ++mask) {
      if (std::popcount(mask) > 3) continue;
      std::set<FnRep> s;
      for (unsigned k = 0; k < 4; ++k) {
        if ((mask >> k) & 1u) s.insert(fn_pool()[k]);
      }
      sides.push_back(std::move(s));
    }
    for (const FinSeq& stem : {FinSeq{}, FinSeq{Natural(1)}}) {
      for (const auto& s1 : sides) {
        for (const auto& s2 : sides) {
          const std::vector<EvDiffCond> ps{{stem, s1}, {stem, s2}};
          const EvDiffCond m = aux::ev_stem_meet(ps);
          bool ok = aux::ev_le(m, ps[0]) && aux::ev_le(m, ps[1]);
          for (const auto& s3 : sides) {
            const EvDiffCond r{stem, s3};
            if (aux::ev_le(r, ps[0]) && aux::ev_le(r, ps[1])) ok = ok && aux::ev_le(r, m);
          }
          glb.expect(ok, [&] { return m.to_text(); });
        }
      }
      const std::vector<EvDiffCond> one{{stem, sides[3]}};
      glb.expect(aux::ev_stem_meet(one) == one.front(), [] { return std::string("singleton"); });
    }
  }
  out.push_back(glb.record());

  // Same-slot L meets are feasible exactly up to the side ceiling.
  Tally ceiling("aux.loc_ceiling", in);
  std::size_t feasible = 0, infeasible = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    LocCond base;
    for (std::size_t i = 0, n = rng.below(3); i < n; ++i) base.slots.push_back(random_slot(rng, i + 1));
    std::vector<LocCond> ps;
    std::set<FnRep> all;
    for (std::size_t k = rng.range(1, 4); k > 0; --k) {
      LocCond c{base.slots, {}};
      for (const auto& f : random_side(rng, base.slots.size() + 1)) {
        if (c.side.size() < base.slots.size() + 1) c.side.insert(f);
      }
      all.insert(c.side.begin(), c.side.end());
      ps.push_back(std::move(c));
    }
    const auto r = aux::loc_stem_meet(ps);
    const bool fits = all.size() <= base.slots.size() + 1;
    if (const auto* m = std::get_if<LocCond>(&r)) {
      ++feasible;
      bool ok = fits && aux::loc_is_condition(*m);
      for (const auto& c : ps) ok = ok && aux::loc_le(*m, c);
      ceiling.expect(ok, [&] { return m->to_text(); });
    } else {
      ++infeasible;
      ceiling.expect(!fits && std::get<aux::LocInfeasible>(r).excess == all.size() - base.slots.size() - 1,
                     [&] { return base.to_text(); });
    }
  }
  {
    const auto s = LocCond::parse("{5},{1,3}|-").slots;
    const std::vector<LocCond> two{{s, {fn_pool()[0]}}, {s, {fn_pool()[1]}}};
    const auto ok = aux::loc_stem_meet(two);
    ceiling.expect(std::holds_alternative<LocCond>(ok), [] { return std::string("two sides"); });
    const auto s1 = LocCond::parse("{5}|-").slots;
    const std::vector<LocCond> three{{s1, {fn_pool()[0]}}, {s1, {fn_pool()[1]}}, {s1, {fn_pool()[2]}}};
    const auto bad = aux::loc_stem_meet(three);
    ceiling.expect(std::holds_alternative<aux::LocInfeasible>(bad) &&
                       std::get<aux::LocInfeasible>(bad).excess == 1,
                   [] { return std::string("three sides"); });
  }
  out.push_back(ceiling.record({{"feasible", std::to_string(feasible)},
                                {"infeasible", std::to_string(infeasible)}}));

  Tally family("aux.ed_family", in);
  for (std::size_t k = 1; k <= 8; ++k) {
    for (auto mode : {aux::FamilyMode::Constant, aux::FamilyMode::Staggered}) {
      const auto fs = aux::ed_family(k, mode);
      bool ok = fs.size() == k;
      for (std::size_t i = 0; i < fs.size(); ++i) {
        for (std::size_t j = i + 1; j < fs.size(); ++j) {
          ok = ok && coding::eventually_different(fs[i], fs[j]);
          const std::size_t beyond = std::max(fs[i].table().size(), fs[j].table().size());
          for (std::size_t pos = beyond; pos < beyond + 16; ++pos) ok = ok && fs[i](pos) != fs[j](pos);
          if (mode == aux::FamilyMode::Staggered) ok = ok && fs[i](0) == fs[j](0);
        }
      }
      family.expect(ok, [&] { return "k=" + std::to_string(k); });
    }
  }
  out.push_back(family.record());

  Tally hyp("aux.hypothesis", in);
  std::string tight_clause;
  auto expect_witness = [&](const std::vector<aux::AnyCondition>& T, std::size_t ell,
                            std::size_t depth, const char* what) {
    aux::HypothesisOptions o;
    o.ell = ell;
    o.depth = depth;
    o.f = p.f;
    const auto r = aux::hypothesis_check(T, o);
    const auto* w = std::get_if<aux::HypothesisWitness>(&r);
    bool ok = w != nullptr && w->chosen.size() == ell;
    if (ok) {
      for (auto i : w->chosen) {
        if (const auto* m = std::get_if<EvDiffCond>(&w->meet)) {
          ok = ok && aux::ev_le(*m, std::get<EvDiffCond>(T[i]));
        } else if (const auto* m = std::get_if<LocCond>(&w->meet)) {
          ok = ok && aux::loc_is_condition(*m) && aux::loc_le(*m, std::get<LocCond>(T[i]));
        } else {
          const auto& q = std::get<amoeba::StemCondition>(w->meet);
          ok = ok && amoeba::app_witness(q) &&
               amoeba::ap_le(q, std::get<amoeba::StemCondition>(T[i]));
        }
      }
    }
    hyp.expect(ok, [&] {
      return std::string(what) + ": " +
             (w ? std::string("bad witness") : std::get<aux::HypothesisFailure>(r).clause);
    });
  };
  {
    std::vector<aux::AnyCondition> T;
    for (const auto& f : aux::ed_family(5, aux::FamilyMode::Constant)) T.push_back(EvDiffCond{{}, {f}});
    expect_witness(T, 5, 2, "E constant family");
  }
  {
    const auto s = LocCond::parse("{5},{1,3}|-").slots;
    const auto& f = fn_pool();
    std::vector<aux::AnyCondition> T{LocCond{s, {f[0], f[1]}}, LocCond{s, {f[1]}},
                                     LocCond{s, {f[0]}}, LocCond{s, {f[0], f[1]}}};
    expect_witness(T, 4, 2, "L overlapping sides");
    // A union of exactly dom+1 sides fills the next slot, leaving no room for a new stem entry.
    std::vector<aux::AnyCondition> tight{LocCond{s, {f[0], f[1]}}, LocCond{s, {f[1]}},
                                         LocCond{s, {f[1], f[2]}}, LocCond{s, {f[0], f[2]}}};
    aux::HypothesisOptions o;
    o.ell = 4;
    o.depth = 2;
    const auto r = aux::hypothesis_check(tight, o);
    const auto* fail = std::get_if<aux::HypothesisFailure>(&r);
    tight_clause = fail ? fail->clause : "witness";
  }
  {
    const auto s = LocCond::parse("{5}|-").slots;
    std::vector<aux::AnyCondition> T{LocCond{s, {fn_pool()[0]}}, LocCond{s, {fn_pool()[1]}},
                                     LocCond{s, {fn_pool()[2]}}};
    aux::HypothesisOptions o;
    o.ell = 3;
    o.depth = 2;
    const auto r = aux::hypothesis_check(T, o);
    const auto* fail = std::get_if<aux::HypothesisFailure>(&r);
    hyp.expect(fail && fail->clause == "side ceiling", [] { return std::string("L disjoint sides"); });
  }
  {
    std::vector<aux::AnyCondition> T;
    for (const char* text : {"4|000,01,10000000000", "4|000,01,11000000000", "4|000,01,10100000000"}) {
      T.push_back(amoeba::StemCondition::parse(text));
    }
    expect_witness(T, 2, 1, "window family");
  }
  {
    bool refused = false;
    try {
      std::vector<aux::AnyCondition> T{EvDiffCond{}, LocCond{}};
      aux::HypothesisOptions o;
      o.ell = 1;
      aux::hypothesis_check(T, o);
    } catch (const Error& e) {
      refused = e.kind() == ErrorKind::MixedPosets;
    }
    hyp.expect(refused, [] { return std::string("mixed posets accepted"); });
  }
  std::replace(tight_clause.begin(), tight_clause.end(), ' ', '_');
  out.push_back(hyp.record({{"tight_union", tight_clause}}));
  return out;
}

}  // namespace forcing::cli::detail
