#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forcing/amoeba/amoeba.hpp"
#include "forcing/coding/fn_rep.hpp"
#include "forcing/coding/sequence.hpp"

namespace forcing::aux {

using coding::CohenSeq;
using coding::FinSeq;
using coding::FnRep;

/// s end-extends t.
bool cohen_le(const CohenSeq& s, const CohenSeq& t);

struct HechlerCond {
  FinSeq stem;
  FnRep side;

  /// "s|f", e.g. "3,9|;const:2".
  std::string to_text() const;
  static HechlerCond parse(std::string_view text);
  friend bool operator==(const HechlerCond&, const HechlerCond&) = default;
};

bool hechler_le(const HechlerCond& p, const HechlerCond& q);

struct EvDiffCond {
  FinSeq stem;
  std::set<FnRep> side;

  /// "s|f;f;...", sides in sorted order.
  std::string to_text() const;
  static EvDiffCond parse(std::string_view text);
  friend bool operator==(const EvDiffCond&, const EvDiffCond&) = default;
};

bool ev_le(const EvDiffCond& p, const EvDiffCond& q);
/// Throws Error(StemsDiffer) unless all stems coincide.
EvDiffCond ev_stem_meet(std::span<const EvDiffCond> ps);

struct LocCond {
  std::vector<std::set<Natural>> slots;
  std::set<FnRep> side;

  /// "{a,b},{c}|f;...".
  std::string to_text() const;
  static LocCond parse(std::string_view text);
  friend bool operator==(const LocCond&, const LocCond&) = default;
};

bool loc_is_condition(const LocCond& p);
bool loc_le(const LocCond& p, const LocCond& q);

struct LocInfeasible {
  /// Number of sides beyond the ceiling length + 1.
  std::size_t excess;
};
using LocMeetResult = std::variant<LocCond, LocInfeasible>;
/// Throws Error(SlotsDiffer) unless all slot sequences coincide.
LocMeetResult loc_stem_meet(std::span<const LocCond> ps);

/// Stem maps into Cohen forcing. Slots are sent to the codes of their sorted
/// element lists.
CohenSeq stem_of(const HechlerCond& p);
CohenSeq stem_of(const EvDiffCond& p);
CohenSeq stem_of(const LocCond& p);

/// Splits "f;f;..." into FnReps; each one ends at its tail rule.
std::vector<FnRep> parse_fn_list(std::string_view text);
std::string fn_list_text(const std::set<FnRep>& fs);

enum class FamilyMode { Constant, Staggered };
/// k pairwise eventually different functions. Staggered members all vanish
/// on an initial segment and then run as id+j.
std::vector<FnRep> ed_family(std::size_t k, FamilyMode mode);

using AnyCondition = std::variant<EvDiffCond, LocCond, amoeba::StemCondition>;

struct HypothesisOptions {
  std::size_t ell = 0;
  /// Extra stem entries tried on top of the shared stem.
  std::size_t depth = 0;
  amoeba::LabelRule f = amoeba::LabelRule::ruler();
  /// Level budget for projection searches; 0 picks one that reaches every
  /// alphabet value under the ruler.
  std::size_t budget = 0;
};

struct HypothesisWitness {
  /// Indices into T, increasing.
  std::vector<std::size_t> chosen;
  AnyCondition meet;
  std::size_t extensions_checked;
};

struct HypothesisFailure {
  /// One of "no common stem", "side ceiling", "meet infeasible",
  /// "stem disturbed", "tail bound", "extension invalid", "projection not found".
  std::string clause;
  std::string detail;
};

using HypothesisResult = std::variant<HypothesisWitness, HypothesisFailure>;

/// Looks for ell conditions of T with a shared stem whose meet exists and
/// stays usable under every stem extension of at most `depth` entries over
/// the alphabet {0, ..., depth + ell}. Subsets are tried in lexicographic
/// order; the first failure met is reported when nothing succeeds.
/// Throws Error(MixedPosets) for heterogeneous T, Error(InvalidCondition)
/// for an empty T, ell > |T|, or an A'' input outside the window poset.
HypothesisResult hypothesis_check(std::span<const AnyCondition> T, const HypothesisOptions& opts);

}  // namespace forcing::aux
