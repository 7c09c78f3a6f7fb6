#include "forcing/amoeba/amoeba.hpp"

#include <algorithm>
#include <bit>
#include <limits>

#include "forcing/error.hpp"
#include "mass_allocator.hpp"

namespace forcing::amoeba {

namespace {

const DyadicRational& one_half() {
  static const DyadicRational h = DyadicRational::half();
  return h;
}

DyadicRational cylinder_mass(std::size_t length) {
  return DyadicRational::pow2(-static_cast<std::int64_t>(length));
}

// Cumulative mass of levels < i, for i = 0..last.
std::vector<DyadicRational> cumulative_masses(const ClopenSet& phi, std::size_t last) {
  std::vector<DyadicRational> per_level(last + 1);
  for (const auto& m : phi.members()) {
    if (m.size() < last) per_level[m.size()] += cylinder_mass(m.size());
  }
  std::vector<DyadicRational> cum(last + 1);
  for (std::size_t i = 1; i <= last; ++i) cum[i] = cum[i - 1] + per_level[i - 1];
  return cum;
}

// Levels 0..depth-1 of phi restricted to the stem.
std::vector<BitString> members_below(const ClopenSet& phi, std::size_t depth) {
  std::vector<BitString> out;
  for (const auto& m : phi.members()) {
    if (m.size() < depth) out.push_back(m);
  }
  return out;
}

ClopenSet with_strings(const ClopenSet& s, const std::vector<BitString>& extra) {
  std::vector<BitString> all = s.members();
  all.insert(all.end(), extra.begin(), extra.end());
  return cantor::canonicalize(std::move(all));
}

bool end_extends(const CohenSeq& longer, const CohenSeq& shorter) {
  return longer.size() >= shorter.size() &&
         std::equal(shorter.begin(), shorter.end(), longer.begin());
}

// Level at which completing the uncovered string sigma first changes the
// canonical decomposition: sigma climbs while its sibling is already a member.
std::size_t affected_level(const ClopenSet& s, BitString sigma) {
  while (!sigma.empty() && s.has_member(sigma.sibling())) sigma = sigma.parent();
  return sigma.size();
}

}  // namespace

DyadicRational threshold(std::size_t n) {
  return one_half() - cylinder_mass(n);
}

AmoebaCondition::AmoebaCondition(ClopenSet set) : set_(std::move(set)) {
  if (!is_amoeba(set_)) {
    throw Error(ErrorKind::NotAmoeba, "not an amoeba condition: measure " +
                                          cantor::measure(set_).to_string() + " >= 1/2");
  }
}

bool is_amoeba(const ClopenSet& s) { return cantor::measure(s) < one_half(); }

bool a_le(const AmoebaCondition& p, const AmoebaCondition& q) {
  return cantor::is_subset(q.set(), p.set());
}

bool a_compatible(const AmoebaCondition& p, const AmoebaCondition& q) {
  return is_amoeba(cantor::unite(p.set(), q.set()));
}

StemCondition::StemCondition(ClopenSet phi, std::size_t stem_depth)
    : phi_(std::move(phi)), stem_depth_(stem_depth) {
  if (!is_amoeba(phi_)) {
    throw Error(ErrorKind::NotAmoeba, "not an amoeba condition: measure " +
                                          cantor::measure(phi_).to_string() + " >= 1/2");
  }
}

LevelFunction StemCondition::stem() const {
  LevelFunction out;
  out.levels.resize(stem_depth_);
  for (const auto& m : phi_.members()) {
    if (m.size() < stem_depth_) out.levels[m.size()].push_back(m);
  }
  return out;
}

DyadicRational StemCondition::stem_mass() const {
  return cantor::measure_below_level(phi_, stem_depth_);
}

DyadicRational StemCondition::penult_mass() const {
  return stem_depth_ == 0 ? DyadicRational() : cantor::measure_below_level(phi_, stem_depth_ - 1);
}

DyadicRational StemCondition::tail_mass() const { return cantor::measure(phi_) - stem_mass(); }

std::string StemCondition::to_text() const {
  return std::to_string(stem_depth_) + "|" + cantor::to_text(phi_);
}

StemCondition StemCondition::parse(std::string_view text) {
  const std::size_t bar = text.find('|');
  if (bar == std::string_view::npos) {
    throw ParseError(text.size(), "expected '<stem_depth>|<clopen set>'");
  }
  const Natural depth = parse_natural(text.substr(0, bar));
  if (depth > 4096) throw ParseError(0, "stem depth too large");
  try {
    return StemCondition(cantor::parse_clopen(text.substr(bar + 1)).set,
                         static_cast<std::size_t>(depth));
  } catch (const ParseError& e) {
    throw ParseError(bar + 1 + e.position(), "invalid clopen set");
  }
}

std::size_t freeze_prefix(const ClopenSet& s) {
  const DyadicRational budget = one_half() - cantor::measure(s);
  if (budget.sign() <= 0) {
    throw Error(ErrorKind::NotAmoeba, "not an amoeba condition: measure " +
                                          cantor::measure(s).to_string() + " >= 1/2");
  }
  const auto free = cantor::complement(s);
  std::size_t shortest_free = std::numeric_limits<std::size_t>::max();
  for (const auto& g : free.members()) shortest_free = std::min(shortest_free, g.size());

  // Any string of length >= `forced` is completable once it is free.
  std::size_t forced = 0;
  while (cylinder_mass(forced) >= budget) ++forced;
  const std::size_t horizon = std::max(forced, shortest_free);

  std::size_t best = std::numeric_limits<std::size_t>::max();
  for (std::size_t len = 0; len <= horizon && len < best; ++len) {
    // Uncovered strings of this length: proper prefixes of members, and free
    // strings (those below a complement member of length <= len).
    std::vector<BitString> candidates;
    for (const auto& m : s.members()) {
      if (m.size() > len) candidates.push_back(m.prefix(len));
      // A free sibling of a member can merge upward when completed.
      if (m.size() == len && !m.empty() && !s.covers(m.sibling()) &&
          free.covers(m.sibling())) {
        candidates.push_back(m.sibling());
      }
    }
    std::sort(candidates.begin(), candidates.end());
    candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
    for (const auto& sigma : candidates) {
      if (cantor::residual_mass(s, sigma) < budget) {
        best = std::min(best, affected_level(s, sigma));
      }
    }
    // Every other free string of this length completes in place.
    if (shortest_free <= len && cylinder_mass(len) < budget) best = std::min(best, len);
  }
  return best;
}

StemCondition phi_embed(const ClopenSet& s) { return StemCondition(s, freeze_prefix(s)); }

bool same_stem(const StemCondition& p, const StemCondition& q) {
  return p.stem_depth() == q.stem_depth() &&
         members_below(p.phi(), p.stem_depth()) == members_below(q.phi(), q.stem_depth());
}

bool ap_le(const StemCondition& p, const StemCondition& q) {
  if (p.stem_depth() < q.stem_depth()) return false;
  if (members_below(p.phi(), q.stem_depth()) != members_below(q.phi(), q.stem_depth())) {
    return false;
  }
  // Every cylinder of q sits inside a cylinder of p on the same or a lower level.
  return std::all_of(q.phi().members().begin(), q.phi().members().end(),
                     [&](const BitString& sigma) { return p.phi().covers(sigma); });
}

GapProfile gap_profile(const StemCondition& p) {
  if (p.stem_depth() == 0) throw Error(ErrorKind::EmptyStem, "empty stem: stem_depth is 0");
  const std::size_t i = p.stem_depth() - 1;
  const ClopenSet stem_set = cantor::canonicalize(members_below(p.phi(), p.stem_depth()));
  const auto open = cantor::complement(stem_set);
  GapProfile out;
  for (const auto& g : open.members()) {
    if (g.size() > i) continue;  // cannot happen for a canonical stem of depth i+1
    // Every string of length i below g avoids the stem.
    const std::size_t extra = i - g.size();
    if (extra >= 20) throw Error(ErrorKind::TooLarge, "too many gap strings");
    for (std::size_t bits = 0; bits < (std::size_t{1} << extra); ++bits) {
      std::string s = g.str();
      for (std::size_t k = extra; k-- > 0;) s.push_back(((bits >> k) & 1) ? '1' : '0');
      out.gaps.emplace_back(std::move(s));
    }
  }
  std::sort(out.gaps.begin(), out.gaps.end());
  for (const auto& sigma : out.gaps) out.residuals.push_back(cantor::residual_mass(p.phi(), sigma));
  out.min_residual = *std::min_element(out.residuals.begin(), out.residuals.end());
  return out;
}

ClopenSet densify_aprime(const StemCondition& p) {
  const GapProfile gaps = gap_profile(p);
  const DyadicRational& a = gaps.min_residual;
  const DyadicRational mu = cantor::measure(p.phi());
  const DyadicRational low = one_half() - a.scaled(-1) - mu;
  const DyadicRational high = one_half() - mu;
  const DyadicRational floor = low.sign() > 0 ? low : DyadicRational();
  DyadicRational remaining = (floor + high).scaled(-1);

  ClopenSet psi = p.phi();
  for (std::size_t k = 0; k < gaps.gaps.size() && !remaining.is_zero(); ++k) {
    // Leaving half of each gap's residual uncovered keeps it >= a/2.
    const DyadicRational cap = gaps.residuals[k].scaled(-1);
    const DyadicRational give = remaining < cap ? remaining : cap;
    if (give.is_zero()) continue;
    detail::Allocation bounds;
    bounds.min_level = p.stem_depth();
    bounds.max_level = std::max({give.exponent(), p.phi().support_depth(), p.stem_depth()}) + 2;
    auto added = detail::allocate_mass(psi, gaps.gaps[k], give, bounds);
    if (!added) continue;
    psi = with_strings(psi, *added);
    remaining -= give;
  }
  if (!remaining.is_zero()) {
    throw Error(ErrorKind::NoCapacity, "could not place the densifying mass below the stem");
  }
  return psi;
}

std::optional<AppWindow> app_witness(const StemCondition& p) {
  const DyadicRational stem = p.stem_mass();
  const DyadicRational penult = p.penult_mass();
  const DyadicRational tail = p.tail_mass();
  // stem > threshold(n) fails for all larger n once it fails.
  for (std::size_t n = 0; threshold(n) < stem; ++n) {
    if (penult <= threshold(n) && tail < cylinder_mass(n + 7)) {
      return AppWindow{n, stem, penult, tail};
    }
  }
  return std::nullopt;
}

StemCondition densify_app(const StemCondition& p) {
  const DyadicRational mu = cantor::measure(p.phi());
  if (mu >= one_half()) throw Error(ErrorKind::NoCapacity, "no capacity: measure >= 1/2");
  std::size_t n = 1;
  while (mu > threshold(n)) ++n;
  const std::size_t level = std::max({p.phi().support_depth() + 1, n + 2, p.stem_depth()});
  const DyadicRational amount = one_half() - mu - cylinder_mass(level);

  detail::Allocation bounds;
  bounds.min_level = level;
  bounds.max_level = level;
  auto added = detail::allocate_mass(p.phi(), BitString(), amount, bounds);
  if (!added) {
    throw Error(ErrorKind::TooLarge, "densifying level " + std::to_string(level) +
                                         " needs too many cylinders");
  }
  return StemCondition(with_strings(p.phi(), *added), level + 1);
}

std::size_t h_window(const StemCondition& p) {
  if (!app_witness(p)) {
    throw Error(ErrorKind::NotInAppWindow, "not in A-double-prime: " + p.to_text());
  }
  const DyadicRational stem = p.stem_mass();
  std::size_t n = 0;
  while (stem > threshold(n + 1)) ++n;
  return n;
}

Natural LabelRule::operator()(std::size_t i) const {
  if (fn_) return (*fn_)(i);
  return Natural(std::countr_zero(static_cast<std::uint64_t>(i) + 1));
}

std::string LabelRule::to_text() const { return fn_ ? fn_->to_text() : "ruler"; }

LabelRule LabelRule::parse(std::string_view text) {
  if (text == "ruler") return ruler();
  return LabelRule(coding::FnRep::parse(text));
}

CohenSeq h_label(const StemCondition& p, const LabelRule& f) {
  const std::size_t n = h_window(p);
  const std::size_t last = std::min(p.stem_depth(), p.phi().support_depth() + 1);
  const auto cum = cumulative_masses(p.phi(), last);
  CohenSeq label;
  std::size_t i = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    const DyadicRational t = threshold(j);
    while (!(cum[i] > t)) ++i;  // terminates: the stem mass exceeds threshold(n)
    label.emplace_back(f(i));
  }
  return label;
}

MeetResult meet_same_stem(std::span<const StemCondition> ps) {
  if (ps.empty()) throw Error(ErrorKind::InvalidCondition, "meet of an empty family");
  for (const auto& p : ps) {
    if (!same_stem(p, ps.front())) {
      throw Error(ErrorKind::StemsDiffer,
                  "stems differ: " + ps.front().to_text() + " vs " + p.to_text());
    }
  }
  std::vector<ClopenSet> sets;
  for (const auto& p : ps) sets.push_back(p.phi());
  const ClopenSet joined = cantor::unite(sets);
  const DyadicRational mass = cantor::measure(joined);
  if (mass >= one_half()) {
    return MeetInfeasible{MeetInfeasible::Reason::MassOvershoot, mass - one_half(), mass};
  }
  const std::size_t depth = ps.front().stem_depth();
  if (members_below(joined, depth) != members_below(ps.front().phi(), depth)) {
    return MeetInfeasible{MeetInfeasible::Reason::StemDisturbed, DyadicRational(), mass};
  }
  return StemCondition(joined, depth);
}

namespace {

class ProjectionSearch {
 public:
  ProjectionSearch(const StemCondition& p, const CohenSeq& target, const LabelRule& f,
                   std::size_t budget)
      : p_(p), target_(target), f_(f), budget_(budget), nodes_left_(budget * (target.size() + 1) * 4) {}

  std::optional<StemCondition> run(std::size_t first_entry) {
    return extend(first_entry, p_.phi(), p_.stem_depth());
  }

 private:
  // Places the threshold crossing for label entry j at some level >= free_from.
  std::optional<StemCondition> extend(std::size_t j, const ClopenSet& current,
                                      std::size_t free_from) {
    if (j == target_.size()) return finish(current);
    const DyadicRational goal = threshold(j);
    for (std::size_t level = free_from; level < free_from + budget_; ++level) {
      if (nodes_left_-- == 0) return std::nullopt;
      if (CohenEntry(f_(level + 1)) != target_[j]) continue;
      const DyadicRational before = cantor::measure_below_level(current, level);
      if (before > goal) break;  // the crossing already happened below `level`

      ClopenSet next = current;
      const DyadicRational bulk = goal - before;
      if (!bulk.is_zero()) {
        if (level == free_from) continue;
        detail::Allocation bounds;
        bounds.min_level = free_from;
        bounds.max_level = level - 1;
        auto added = detail::allocate_mass(next, BitString(), bulk, bounds);
        if (!added) continue;
        next = with_strings(next, *added);
      }
      detail::Allocation cross;
      cross.min_level = level;
      cross.max_level = level;
      auto step = detail::allocate_mass(next, BitString(), cylinder_mass(level), cross);
      if (!step) continue;
      next = with_strings(next, *step);
      if (!is_amoeba(next)) continue;
      if (j + 1 < target_.size() &&
          cantor::measure_below_level(next, level + 1) > threshold(j + 1)) {
        continue;
      }
      if (auto done = extend(j + 1, next, level + 1)) return done;
    }
    return std::nullopt;
  }

  std::optional<StemCondition> finish(const ClopenSet& set) const {
    try {
      StemCondition q(set, std::max(p_.stem_depth(), set.support_depth() + 1));
      if (!app_witness(q)) q = densify_app(q);
      if (!ap_le(q, p_) || !app_witness(q)) return std::nullopt;
      if (!end_extends(h_label(q, f_), target_)) return std::nullopt;
      return q;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  using CohenEntry = coding::CohenEntry;

  const StemCondition& p_;
  const CohenSeq& target_;
  const LabelRule& f_;
  std::size_t budget_;
  std::size_t nodes_left_;
};

}  // namespace

std::optional<StemCondition> projection_search(const StemCondition& p, const CohenSeq& t,
                                               const LabelRule& f, std::size_t budget) {
  const CohenSeq label = h_label(p, f);
  if (!end_extends(t, label)) {
    throw Error(ErrorKind::LabelMismatch, "label mismatch: " + coding::to_text(t) +
                                              " does not extend " + coding::to_text(label));
  }
  if (t.size() == label.size()) return p;
  return ProjectionSearch(p, t, f, budget).run(label.size());
}

}  // namespace forcing::amoeba
