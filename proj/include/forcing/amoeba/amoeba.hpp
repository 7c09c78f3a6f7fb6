#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "forcing/cantor/clopen_set.hpp"
#include "forcing/coding/fn_rep.hpp"
#include "forcing/coding/sequence.hpp"
#include "forcing/dyadic.hpp"

namespace forcing::amoeba {

using cantor::BitString;
using cantor::ClopenSet;
using cantor::LevelFunction;
using coding::CohenSeq;

/// 1/2 - 2^-n, the n-th mass threshold.
DyadicRational threshold(std::size_t n);

/// An open set of measure < 1/2; stronger conditions are larger sets.
class AmoebaCondition {
 public:
  /// Throws Error(NotAmoeba) when measure(set) >= 1/2.
  explicit AmoebaCondition(ClopenSet set);

  const ClopenSet& set() const { return set_; }

  friend bool operator==(const AmoebaCondition&, const AmoebaCondition&) = default;

 private:
  ClopenSet set_;
};

bool is_amoeba(const ClopenSet& s);
/// p <= q (p stronger): q's set is inside p's.
bool a_le(const AmoebaCondition& p, const AmoebaCondition& q);
bool a_compatible(const AmoebaCondition& p, const AmoebaCondition& q);

/// Condition (u, phi) with a frozen stem u: the levels of phi below stem_depth.
class StemCondition {
 public:
  /// Throws Error(NotAmoeba) unless measure(phi) < 1/2.
  StemCondition(ClopenSet phi, std::size_t stem_depth);

  const ClopenSet& phi() const { return phi_; }
  std::size_t stem_depth() const { return stem_depth_; }

  /// level_view(phi) cut or padded to exactly stem_depth levels.
  LevelFunction stem() const;
  DyadicRational stem_mass() const;
  /// Mass of the levels below stem_depth - 1.
  DyadicRational penult_mass() const;
  DyadicRational tail_mass() const;

  /// "<stem_depth>|<clopen text>".
  std::string to_text() const;
  static StemCondition parse(std::string_view text);

  friend bool operator==(const StemCondition&, const StemCondition&) = default;

 private:
  ClopenSet phi_;
  std::size_t stem_depth_;
};

/// Length of the frozen level prefix of s: the least level at which some
/// measure < 1/2 extension of s has a different canonical decomposition.
/// Throws Error(NotAmoeba) when measure(s) >= 1/2.
std::size_t freeze_prefix(const ClopenSet& s);

/// The dense embedding: (levels of s below freeze_prefix(s), s).
StemCondition phi_embed(const ClopenSet& s);

bool ap_le(const StemCondition& p, const StemCondition& q);
/// Stems equal as level functions of the same depth.
bool same_stem(const StemCondition& p, const StemCondition& q);

/// Strings of length stem_depth - 1 not extending a stem member, with their
/// residual masses and the minimum residual.
struct GapProfile {
  std::vector<BitString> gaps;
  std::vector<DyadicRational> residuals;
  DyadicRational min_residual;
};
/// Requires stem_depth >= 1.
GapProfile gap_profile(const StemCondition& p);

/// psi extending p.phi below the fixed stem, with measure in
/// (1/2 - a/2, 1/2) and at least a/2 left uncovered under every gap.
/// Throws Error(EmptyStem) when stem_depth == 0.
ClopenSet densify_aprime(const StemCondition& p);

struct AppWindow {
  std::size_t n;
  DyadicRational stem_mass;
  DyadicRational penult_mass;
  DyadicRational tail_mass;
};

/// Smallest n with stem mass > 1/2 - 2^-n >= penult mass and tail < 2^-(n+7).
std::optional<AppWindow> app_witness(const StemCondition& p);

/// q <= p in the window poset, built by adding mass on one fresh level.
StemCondition densify_app(const StemCondition& p);

/// The unique n with stem mass in (1/2 - 2^-n, 1/2 - 2^-(n+1)].
/// Throws Error(NotInAppWindow) unless app_witness(p) exists.
std::size_t h_window(const StemCondition& p);

/// A rule f : omega -> omega taking every value infinitely often (the default
/// 2-adic valuation of i+1), or any FnRep.
class LabelRule {
 public:
  static LabelRule ruler() { return LabelRule(); }
  explicit LabelRule(coding::FnRep fn) : fn_(std::move(fn)) {}

  Natural operator()(std::size_t i) const;

  /// "ruler" or FnRep text.
  std::string to_text() const;
  static LabelRule parse(std::string_view text);

 private:
  LabelRule() = default;
  std::optional<coding::FnRep> fn_;
};

/// <f(i_0), ..., f(i_n)> with n = h_window(p) and i_j the least level count
/// whose cumulative stem mass exceeds 1/2 - 2^-j.
CohenSeq h_label(const StemCondition& p, const LabelRule& f);

struct MeetInfeasible {
  enum class Reason { MassOvershoot, StemDisturbed };
  Reason reason;
  /// Mass of the union minus 1/2 (zero or positive for MassOvershoot).
  DyadicRational overshoot;
  DyadicRational union_mass;
};

using MeetResult = std::variant<StemCondition, MeetInfeasible>;

/// Common lower bound (shared stem, union of phi) of same-stem conditions.
/// Throws Error(StemsDiffer) unless all stems coincide.
MeetResult meet_same_stem(std::span<const StemCondition> ps);

/// Bounded search for q <= p in the window poset whose label end-extends t.
/// Throws Error(LabelMismatch) unless t end-extends h_label(p, f).
std::optional<StemCondition> projection_search(const StemCondition& p, const CohenSeq& t,
                                               const LabelRule& f, std::size_t budget);

}  // namespace forcing::amoeba
