#include "forcing/aux/aux_posets.hpp"

#include <algorithm>
#include <map>

#include "forcing/error.hpp"

namespace forcing::aux {

namespace {

template <typename Seq>
bool end_extends(const Seq& longer, const Seq& shorter) {
  return longer.size() >= shorter.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

bool contains_all(const std::set<FnRep>& big, const std::set<FnRep>& small) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

std::pair<std::string_view, std::string_view> split_bar(std::string_view text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string_view::npos) throw ParseError(text.size(), "expected '|'");
  return {text.substr(0, bar), text.substr(bar + 1)};
}

template <typename Parse>
auto reparse(std::string_view part, std::size_t offset, Parse parse) {
  try {
    return parse(part);
  } catch (const ParseError& e) {
    const std::string what = e.what();
    throw ParseError(offset + e.position(), what.substr(what.find(": ") + 2));
  }
}

std::string slot_text(const std::set<Natural>& slot) {
  std::string out = "{";
  for (const auto& v : slot) {
    if (out.size() > 1) out += ',';
    out += v.str();
  }
  return out + "}";
}

std::vector<std::set<Natural>> parse_slots(std::string_view text) {
  std::vector<std::set<Natural>> slots;
  if (text == "()") return slots;
  std::size_t i = 0;
  while (i < text.size()) {
    if (text[i] != '{') throw ParseError(i, "expected '{'");
    const std::size_t close = text.find('}', i);
    if (close == std::string_view::npos) throw ParseError(text.size(), "unclosed slot");
    std::set<Natural> slot;
    std::string_view body = text.substr(i + 1, close - i - 1);
    std::size_t start = 0;
    while (!body.empty() && start <= body.size()) {
      std::size_t comma = body.find(',', start);
      if (comma == std::string_view::npos) comma = body.size();
      try {
        slot.insert(parse_natural(body.substr(start, comma - start)));
      } catch (const ParseError& e) {
        throw ParseError(i + 1 + start + e.position(), "invalid slot entry");
      }
      start = comma + 1;
    }
    slots.push_back(std::move(slot));
    i = close + 1;
    if (i < text.size()) {
      if (text[i] != ',') throw ParseError(i, "expected ',' between slots");
      ++i;
      if (i == text.size()) throw ParseError(i, "trailing ','");
    }
  }
  if (slots.empty()) throw ParseError(0, "empty slot text (use '()' for no slots)");
  return slots;
}

}  // namespace

bool cohen_le(const CohenSeq& s, const CohenSeq& t) { return end_extends(s, t); }

std::string HechlerCond::to_text() const {
  return coding::to_text(stem) + "|" + side.to_text();
}

HechlerCond HechlerCond::parse(std::string_view text) {
  const auto [stem, side] = split_bar(text);
  return HechlerCond{reparse(stem, 0, coding::parse_fin_seq),
                     reparse(side, stem.size() + 1, FnRep::parse)};
}

bool hechler_le(const HechlerCond& p, const HechlerCond& q) {
  if (!end_extends(p.stem, q.stem)) return false;
  if (!coding::dominates(p.side, q.side)) return false;
  for (std::size_t i = q.stem.size(); i < p.stem.size(); ++i) {
    if (p.stem[i] < q.side(i)) return false;
  }
  return true;
}

std::vector<FnRep> parse_fn_list(std::string_view text) {
  std::vector<FnRep> out;
  if (text.empty() || text == "-") return out;
  std::size_t start = 0;
  std::size_t table_at = 0;
  std::optional<std::string_view> table;
  while (start <= text.size()) {
    std::size_t semi = text.find(';', start);
    if (semi == std::string_view::npos) semi = text.size();
    const std::string_view token = text.substr(start, semi - start);
    const bool is_tail = token.starts_with("const:") || token.starts_with("id+");
    if (is_tail) {
      const std::string_view tab = table.value_or(std::string_view{});
      const std::string joined = std::string(tab) + ";" + std::string(token);
      try {
        out.push_back(FnRep::parse(joined));
      } catch (const ParseError& e) {
        const std::size_t base = table ? table_at : start - 1;
        throw ParseError(base + e.position(), "invalid function '" + joined + "'");
      }
      table.reset();
    } else {
      if (table) throw ParseError(start, "expected a tail rule (const:c or id+k)");
      table = token;
      table_at = start;
    }
    start = semi + 1;
  }
  if (table) throw ParseError(text.size(), "function without a tail rule");
  return out;
}

std::string fn_list_text(const std::set<FnRep>& fs) {
  if (fs.empty()) return "-";
  std::string out;
  for (const auto& f : fs) {
    if (!out.empty()) out += ';';
    out += f.to_text();
  }
  return out;
}

std::string EvDiffCond::to_text() const {
  return coding::to_text(stem) + "|" + fn_list_text(side);
}

EvDiffCond EvDiffCond::parse(std::string_view text) {
  const auto [stem, side] = split_bar(text);
  auto fs = reparse(side, stem.size() + 1, parse_fn_list);
  return EvDiffCond{reparse(stem, 0, coding::parse_fin_seq), {fs.begin(), fs.end()}};
}

bool ev_le(const EvDiffCond& p, const EvDiffCond& q) {
  if (!end_extends(p.stem, q.stem) || !contains_all(p.side, q.side)) return false;
  for (const auto& g : q.side) {
    for (std::size_t i = q.stem.size(); i < p.stem.size(); ++i) {
      if (p.stem[i] == g(i)) return false;
    }
  }
  return true;
}

EvDiffCond ev_stem_meet(std::span<const EvDiffCond> ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidCondition, "meet of an empty family");
  EvDiffCond out{ps.front().stem, {}};
  for (const auto& p : ps) {
    if (p.stem != out.stem) {
      throw Error(ErrorKind::StemsDiffer, "stems differ: " + coding::to_text(out.stem) + " vs " +
                                              coding::to_text(p.stem));
    }
    out.side.insert(p.side.begin(), p.side.end());
  }
  return out;
}

std::string LocCond::to_text() const {
  std::string out;
  for (const auto& s : slots) {
    if (!out.empty()) out += ',';
    out += slot_text(s);
  }
  if (out.empty()) out = "()";
  return out + "|" + fn_list_text(side);
}

LocCond LocCond::parse(std::string_view text) {
  const auto [slots, side] = split_bar(text);
  auto fs = reparse(side, slots.size() + 1, parse_fn_list);
  return LocCond{reparse(slots, 0, parse_slots), {fs.begin(), fs.end()}};
}

bool loc_is_condition(const LocCond& p) {
  for (std::size_t i = 0; i < p.slots.size(); ++i) {
    if (p.slots[i].size() != i + 1) return false;
  }
  return p.side.size() <= p.slots.size() + 1;
}

bool loc_le(const LocCond& p, const LocCond& q) {
  if (!end_extends(p.slots, q.slots) || !contains_all(p.side, q.side)) return false;
  for (const auto& g : q.side) {
    for (std::size_t i = q.slots.size(); i < p.slots.size(); ++i) {
      if (!p.slots[i].contains(g(i))) return false;
    }
  }
  return true;
}

LocMeetResult loc_stem_meet(std::span<const LocCond> ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidCondition, "meet of an empty family");
  LocCond out{ps.front().slots, {}};
  for (const auto& p : ps) {
    if (p.slots != out.slots) {
      throw Error(ErrorKind::SlotsDiffer, "slots differ: " + ps.front().to_text() + " vs " +
                                              p.to_text());
    }
    out.side.insert(p.side.begin(), p.side.end());
  }
  const std::size_t ceiling = out.slots.size() + 1;
  if (out.side.size() > ceiling) return LocInfeasible{out.side.size() - ceiling};
  return out;
}

CohenSeq stem_of(const HechlerCond& p) { return coding::to_cohen(p.stem); }
CohenSeq stem_of(const EvDiffCond& p) { return coding::to_cohen(p.stem); }

CohenSeq stem_of(const LocCond& p) {
  CohenSeq out;
  for (const auto& slot : p.slots) {
    out.push_back(coding::CohenEntry::encoding(FinSeq(slot.begin(), slot.end())));
  }
  return out;
}

std::vector<FnRep> ed_family(std::size_t k, FamilyMode mode) {
  std::vector<FnRep> out;
  for (std::size_t j = 0; j < k; ++j) {
    if (mode == FamilyMode::Constant) {
      out.push_back(FnRep::constant(j));
    } else {
      out.emplace_back(std::vector<Natural>(j + 1, 0), FnRep::Tail::Shift, Natural(j));
    }
  }
  return out;
}

namespace {

using amoeba::StemCondition;

std::string stem_key(const AnyCondition& c) {
  if (const auto* e = std::get_if<EvDiffCond>(&c)) return coding::to_text(e->stem);
  if (const auto* l = std::get_if<LocCond>(&c)) return LocCond{l->slots, {}}.to_text();
  const auto& p = std::get<StemCondition>(c);
  std::vector<cantor::BitString> below;
  for (const auto& m : p.phi().members()) {
    if (m.size() < p.stem_depth()) below.push_back(m);
  }
  return StemCondition(cantor::canonicalize(below), p.stem_depth()).to_text();
}

// All sequences over {0..alphabet-1} of length <= depth, shortest first.
std::vector<FinSeq> extensions(std::size_t depth, std::size_t alphabet) {
  std::vector<FinSeq> out{FinSeq{}};
  std::size_t layer_start = 0;
  for (std::size_t len = 1; len <= depth; ++len) {
    const std::size_t layer_end = out.size();
    for (std::size_t i = layer_start; i < layer_end; ++i) {
      for (std::size_t v = 0; v < alphabet; ++v) {
        FinSeq t = out[i];
        t.emplace_back(v);
        out.push_back(std::move(t));
      }
    }
    layer_start = layer_end;
  }
  return out;
}

// Slot i of the strengthened meet: the entry, every side value at i, then the
// least unused naturals.
std::optional<LocCond> strengthen(const LocCond& meet, const FinSeq& t) {
  LocCond r = meet;
  for (std::size_t k = 0; k < t.size(); ++k) {
    const std::size_t i = meet.slots.size() + k;
    std::set<Natural> slot{t[k]};
    for (const auto& g : meet.side) slot.insert(g(i));
    if (slot.size() > i + 1) return std::nullopt;
    for (Natural v = 0; slot.size() < i + 1; ++v) slot.insert(v);
    r.slots.push_back(std::move(slot));
  }
  return r;
}

class Checker {
 public:
  Checker(std::span<const AnyCondition> T, const HypothesisOptions& opts)
      : T_(T), opts_(opts), alphabet_(opts.depth + opts.ell + 1) {
    budget_ = opts.budget;
    if (budget_ == 0) {
      const std::size_t top = std::min<std::size_t>(alphabet_, 11);
      budget_ = (std::size_t{1} << (top + 1)) + 8;
    }
  }

  // Empty optional: the subset works. Otherwise the violated clause.
  std::optional<HypothesisFailure> try_subset(const std::vector<std::size_t>& chosen,
                                              AnyCondition& meet, std::size_t& checked) {
    const auto& first = T_[chosen.front()];
    if (std::holds_alternative<EvDiffCond>(first)) {
      std::vector<EvDiffCond> ps;
      for (auto i : chosen) ps.push_back(std::get<EvDiffCond>(T_[i]));
      const EvDiffCond m = ev_stem_meet(ps);
      for (const auto& t : extensions(opts_.depth, alphabet_)) {
        // Every (stem, side) pair is a condition of E.
        EvDiffCond r = m;
        r.stem.insert(r.stem.end(), t.begin(), t.end());
        ++checked;
      }
      meet = m;
      return std::nullopt;
    }
    if (std::holds_alternative<LocCond>(first)) {
      std::vector<LocCond> ps;
      for (auto i : chosen) ps.push_back(std::get<LocCond>(T_[i]));
      const auto result = loc_stem_meet(ps);
      if (const auto* bad = std::get_if<LocInfeasible>(&result)) {
        return HypothesisFailure{"side ceiling",
                                 "union of sides exceeds the bound by " + std::to_string(bad->excess)};
      }
      const LocCond& m = std::get<LocCond>(result);
      for (const auto& t : extensions(opts_.depth, alphabet_)) {
        ++checked;
        const auto r = strengthen(m, t);
        if (!r || !loc_is_condition(*r) || !loc_le(*r, m)) {
          return HypothesisFailure{"extension invalid",
                                   "stem extension " + coding::to_text(t) + " of " + m.to_text()};
        }
      }
      meet = m;
      return std::nullopt;
    }
    std::vector<StemCondition> ps;
    for (auto i : chosen) ps.push_back(std::get<StemCondition>(T_[i]));
    const auto result = amoeba::meet_same_stem(ps);
    if (const auto* bad = std::get_if<amoeba::MeetInfeasible>(&result)) {
      if (bad->reason == amoeba::MeetInfeasible::Reason::StemDisturbed) {
        return HypothesisFailure{"stem disturbed", "union mass " + bad->union_mass.to_string()};
      }
      return HypothesisFailure{"meet infeasible", "overshoot " + bad->overshoot.to_string()};
    }
    const StemCondition& m = std::get<StemCondition>(result);
    if (!amoeba::app_witness(m)) {
      return HypothesisFailure{"tail bound", "meet " + m.to_text() + " leaves the window poset"};
    }
    const CohenSeq label = amoeba::h_label(m, opts_.f);
    for (const auto& t : extensions(opts_.depth, alphabet_)) {
      ++checked;
      CohenSeq target = label;
      for (const auto& v : t) target.emplace_back(v);
      if (!amoeba::projection_search(m, target, opts_.f, budget_)) {
        return HypothesisFailure{"projection not found", "target " + coding::to_text(target)};
      }
    }
    meet = m;
    return std::nullopt;
  }

 private:
  std::span<const AnyCondition> T_;
  const HypothesisOptions& opts_;
  std::size_t alphabet_;
  std::size_t budget_;
};

bool next_subset(std::vector<std::size_t>& pos, std::size_t n) {
  const std::size_t k = pos.size();
  for (std::size_t i = k; i-- > 0;) {
    if (pos[i] < n - k + i) {
      ++pos[i];
      for (std::size_t j = i + 1; j < k; ++j) pos[j] = pos[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace

HypothesisResult hypothesis_check(std::span<const AnyCondition> T, const HypothesisOptions& opts) {
  if (T.empty()) throw Error(ErrorKind::InvalidCondition, "empty family");
  for (const auto& c : T) {
    if (c.index() != T.front().index()) {
      throw Error(ErrorKind::MixedPosets, "mixed posets in one family");
    }
    if (const auto* l = std::get_if<LocCond>(&c); l && !loc_is_condition(*l)) {
      throw Error(ErrorKind::InvalidCondition, "not a localization condition: " + l->to_text());
    }
    if (const auto* p = std::get_if<StemCondition>(&c); p && !amoeba::app_witness(*p)) {
      throw Error(ErrorKind::InvalidCondition, "not in the window poset: " + p->to_text());
    }
  }
  if (opts.ell == 0 || opts.ell > T.size()) {
    throw Error(ErrorKind::InvalidCondition,
                "need 1 <= ell <= " + std::to_string(T.size()) + ", got " + std::to_string(opts.ell));
  }

  // Stem classes in order of first appearance.
  std::vector<std::vector<std::size_t>> classes;
  std::map<std::string, std::size_t> class_of;
  for (std::size_t i = 0; i < T.size(); ++i) {
    auto [it, fresh] = class_of.emplace(stem_key(T[i]), classes.size());
    if (fresh) classes.emplace_back();
    classes[it->second].push_back(i);
  }

  Checker checker(T, opts);
  std::optional<HypothesisFailure> first_failure;
  for (const auto& members : classes) {
    if (members.size() < opts.ell) continue;
    std::vector<std::size_t> pos(opts.ell);
    for (std::size_t i = 0; i < opts.ell; ++i) pos[i] = i;
    do {
      std::vector<std::size_t> chosen;
      for (auto k : pos) chosen.push_back(members[k]);
      AnyCondition meet = T.front();
      std::size_t checked = 0;
      auto failure = checker.try_subset(chosen, meet, checked);
      if (!failure) return HypothesisWitness{std::move(chosen), std::move(meet), checked};
      if (!first_failure) first_failure = std::move(failure);
    } while (next_subset(pos, members.size()));
  }
  if (first_failure) return *first_failure;
  std::size_t largest = 0;
  for (const auto& members : classes) largest = std::max(largest, members.size());
  return HypothesisFailure{"no common stem", "largest stem class has " + std::to_string(largest) +
                                                 " of " + std::to_string(opts.ell) + " conditions"};
}

}  // namespace forcing::aux
