#include <set>

#include "common.hpp"
#include "forcing/coding/coding.hpp"
#include "forcing/error.hpp"

namespace forcing::cli::detail {

using coding::CohenEntry;
using coding::CohenSeq;
using coding::FinSeq;
using coding::FnRep;

namespace {

DyadicRational pow2neg(std::size_t k) { return DyadicRational::pow2(-static_cast<std::int64_t>(k)); }

FnRep random_fn(Rng& rng, std::size_t table_len, std::size_t max_value) {
  std::vector<Natural> table;
  for (std::size_t i = 0; i < table_len; ++i) table.emplace_back(rng.below(max_value + 1));
  if (rng.coin()) return FnRep(table, FnRep::Tail::Constant, Natural(rng.below(max_value + 1)));
  return FnRep(table, FnRep::Tail::Shift, Natural(rng.below(max_value + 1)));
}

// A parameter whose entries alternate between small restriction lengths and
// codes of short tile sequences, so that some steps are non-empty.
FnRep random_parameter(Rng& rng, std::size_t last) {
  std::vector<Natural> table;
  for (std::size_t m = 0; m <= last + 1; ++m) {
    if (rng.coin()) {
      table.emplace_back(rng.below(4));
    } else {
      FinSeq tiles;
      const std::size_t len = rng.range(1, 6);
      for (std::size_t i = 0; i < len; ++i) tiles.emplace_back(rng.below(std::size_t{1} << std::min<std::size_t>(m, 12)));
      table.push_back(coding::seq_code(tiles));
    }
  }
  return FnRep(table, FnRep::Tail::Constant, Natural(0));
}

std::vector<FnRep> separated_family(Rng& rng, std::size_t ell) {
  // Distinct length-3 prefixes over {0,..,3}: enough for 2^6 reals.
  std::vector<std::size_t> prefixes(64);
  for (std::size_t i = 0; i < 64; ++i) prefixes[i] = i;
  for (std::size_t i = 63; i > 0; --i) std::swap(prefixes[i], prefixes[rng.below(i + 1)]);
  std::vector<FnRep> xs;
  for (std::size_t i = 0; i < (std::size_t{1} << ell); ++i) {
    const std::size_t v = prefixes[i];
    std::vector<Natural> table{Natural(v >> 4), Natural((v >> 2) & 3), Natural(v & 3)};
    const Natural tail(rng.below(4));
    xs.emplace_back(table, rng.coin() ? FnRep::Tail::Constant : FnRep::Tail::Shift, tail);
  }
  return xs;
}

}  // namespace

std::vector<CheckRecord> coding_suite(const SuiteParams& p) {
  const std::size_t trials = p.trials ? p.trials : 200;
  const std::string in = param_text("coding", p);
  Rng rng(p.seed, "coding");
  std::vector<CheckRecord> out;

  Tally idx("coding.index_roundtrip", in);
  const std::size_t indices = p.trials ? 10 * p.trials : 10000;
  for (std::size_t n = 0; n < indices; ++n) {
    idx.expect(coding::seq_code(coding::enum_seq(Natural(n))) == n, [&] { return std::to_string(n); });
  }
  out.push_back(idx.record());

  Tally seqs("coding.sequence_roundtrip", in);
  for (std::size_t t = 0; t < 5 * trials; ++t) {
    FinSeq s;
    const std::size_t len = rng.below(7);
    for (std::size_t i = 0; i < len; ++i) s.emplace_back(rng.below(51));
    seqs.expect(coding::enum_seq(coding::seq_code(s)) == s, [&] { return coding::to_text(s); });
  }
  out.push_back(seqs.record());

  Tally tiling("coding.tiling", in);
  for (std::size_t n = 0; n <= 8; ++n) {
    coding::IntervalUnion all;
    DyadicRational total, edge;
    bool adjacent = true;
    for (std::size_t i = 0; i < (std::size_t{1} << n); ++i) {
      const auto iv = coding::interval(n, Natural(i));
      adjacent = adjacent && !iv.empty() && iv.lo() == edge && iv.length() == pow2neg(n);
      if (!iv.empty()) edge = iv.hi();
      total += iv.length();
      all.add(iv);
    }
    tiling.expect(adjacent && all.is_unit() && total == DyadicRational::integer(1) &&
                      coding::interval(n, Natural(std::size_t{1} << n)).empty(),
                  [&] { return "n=" + std::to_string(n); });
  }
  out.push_back(tiling.record());

  Tally tail("coding.b_tail_bound", in);
  std::size_t nonempty = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    const std::size_t n = rng.below(7);
    const std::size_t last = n + rng.range(1, 8);
    const FnRep x = random_fn(rng, rng.below(4), 3);
    const FnRep y = random_parameter(rng, last);
    bool steps_ok = true;
    for (std::size_t m = n + 1; m <= last; ++m) {
      const auto step = coding::b_step(x, y, m);
      nonempty += !step.empty();
      steps_ok = steps_ok && step.length() <= pow2neg(m);
    }
    const auto u = coding::b_tail(x, y, n, last);
    tail.expect(steps_ok && u.length() < pow2neg(n),
                [&] { return x.to_text() + " / " + y.to_text() + " n=" + std::to_string(n); });
  }
  out.push_back(tail.record({{"nonempty_steps", std::to_string(nonempty)}}));

  Tally cover("coding.cover", in), replay("coding.replay", in);
  const std::size_t families = std::max<std::size_t>(1, trials / 50);
  for (std::size_t ell = 0; ell <= 6; ++ell) {
    for (std::size_t f = 0; f < families; ++f) {
      const auto xs = separated_family(rng, ell);
      CohenSeq s;
      const std::size_t slen = rng.below(ell + 1);
      for (std::size_t i = 0; i < slen; ++i) s.emplace_back(Natural(rng.below(10)));
      const std::string where = "ell=" + std::to_string(ell) + " family " + std::to_string(f);
      try {
        const auto w = coding::cover_witness(xs, ell, s);
        coding::IntervalUnion u;
        DyadicRational total;
        for (const auto& x : xs) {
          const auto step = coding::b_step(x, w.extension, ell);
          total += step.length();
          u.add(step);
        }
        bool least = w.separation == 0;
        if (!least) {
          std::set<FinSeq> shorter;
          for (const auto& x : xs) shorter.insert(x.restrict(w.separation - 1));
          least = shorter.size() < xs.size();
        }
        const bool shape = w.extension.size() == ell + 2 &&
                           std::equal(s.begin(), s.end(), w.extension.begin()) &&
                           w.extension[ell] == CohenEntry::encoding(w.tile_map) &&
                           w.extension[ell + 1] == CohenEntry(Natural(w.separation));
        cover.expect(u.is_unit() && total == DyadicRational::integer(1) && least && shape,
                     [&] { return where; });
        for (std::size_t z = 0; z < 100; ++z) {
          const DyadicRational point(Natural(rng.below(std::uint64_t{1} << 20)), 20);
          replay.expect(!coding::avoids(point, u), [&] { return where + " z=" + point.to_string(); });
        }
      } catch (const Error& e) {
        cover.add(false, where + ": " + e.what());
      }
    }
  }
  out.push_back(cover.record({{"max_ell", "6"}}));
  out.push_back(replay.record());

  Tally ex("coding.examples", in);
  ex.expect(coding::enum_seq(Natural(0)).empty() && coding::seq_code({}) == 0,
            [] { return std::string("base case"); });
  const FinSeq s305{Natural(3), Natural(0), Natural(5)};
  ex.expect(coding::enum_seq(coding::seq_code(s305)) == s305, [] { return std::string("<3,0,5>"); });
  ex.expect(coding::interval(1, Natural(0)).to_text() == "[0/2^1, 1/2^1)" &&
                coding::interval(2, Natural(3)).to_text() == "[3/2^2, 4/2^2)" &&
                coding::interval(2, Natural(4)).empty(),
            [] { return coding::interval(1, Natural(0)).to_text(); });
  {
    const FnRep x = FnRep::constant(Natural(7));
    const FnRep y({Natural(0), Natural(0), coding::seq_code({Natural(3)}), Natural(0)},
                  FnRep::Tail::Constant, Natural(0));
    const auto step = coding::b_step(x, y, 2);
    ex.expect(step == coding::interval(2, Natural(3)), [&] { return step.to_text(); });
    ex.expect(coding::b_step(x, FnRep::constant(Natural(0)), 2).empty(),
              [] { return std::string("empty tau"); });
  }
  {
    coding::IntervalUnion u;
    u.add(coding::DyadicInterval(DyadicRational(), DyadicRational(Natural(1), 3)));
    u.add(coding::DyadicInterval(DyadicRational(Natural(3), 2), DyadicRational(Natural(13), 4)));
    ex.expect(u.length() == DyadicRational(Natural(3), 4), [&] { return u.to_text(); });
    ex.expect(coding::avoids(DyadicRational(), coding::IntervalUnion{}) &&
                  !coding::avoids(DyadicRational(Natural(3), 2), u),
              [] { return std::string("avoids"); });
  }
  {
    const std::vector<FnRep> two{FnRep::constant(Natural(0)), FnRep::constant(Natural(1))};
    const auto w = coding::cover_witness(two, 1, {});
    ex.expect(w.separation == 1 && w.cover.is_unit(), [] { return std::string("ell=1"); });
    bool refused = false;
    try {
      const std::vector<FnRep> same{FnRep::constant(Natural(0)), FnRep::constant(Natural(0))};
      coding::cover_witness(same, 1, {});
    } catch (const Error& e) {
      refused = e.kind() == ErrorKind::NotSeparated;
    }
    ex.expect(refused, [] { return std::string("identical reals accepted"); });
  }
  out.push_back(ex.record());
  return out;
}

}  // namespace forcing::cli::detail
