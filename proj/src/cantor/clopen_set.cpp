#include "forcing/cantor/clopen_set.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "forcing/error.hpp"

namespace forcing::cantor {

namespace {

DyadicRational cylinder_mass(std::size_t length) {
  return DyadicRational::pow2(-static_cast<std::int64_t>(length));
}

// First member that is >= sigma; members extending sigma form a block from here.
auto extension_block(const std::vector<BitString>& members, const BitString& sigma) {
  return std::lower_bound(members.begin(), members.end(), sigma);
}

void complement_into(const ClopenSet& s, const BitString& node, std::vector<BitString>& out) {
  if (s.covers(node)) return;
  const auto& members = s.members();
  auto it = extension_block(members, node);
  if (it == members.end() || !node.is_prefix_of(*it)) {
    out.push_back(node);
    return;
  }
  complement_into(s, node.child(0), out);
  complement_into(s, node.child(1), out);
}

}  // namespace

std::size_t ClopenSet::support_depth() const {
  std::size_t depth = 0;
  for (const auto& m : members_) depth = std::max(depth, m.size());
  return depth;
}

bool ClopenSet::has_member(const BitString& s) const {
  return std::binary_search(members_.begin(), members_.end(), s);
}

bool ClopenSet::covers(const BitString& s) const {
  for (std::size_t n = 0; n <= s.size(); ++n) {
    if (has_member(s.prefix(n))) return true;
  }
  return false;
}

ClopenSet canonicalize(std::vector<BitString> strings) {
  std::sort(strings.begin(), strings.end());
  strings.erase(std::unique(strings.begin(), strings.end()), strings.end());

  // Drop dominated strings: an extension directly follows its prefix block.
  std::vector<BitString> antichain;
  for (auto& s : strings) {
    if (!antichain.empty() && antichain.back().is_prefix_of(s)) continue;
    antichain.push_back(std::move(s));
  }

  // Merge sibling pairs bottom-up; a merged parent can only pair with its own
  // sibling on the next level.
  std::size_t max_len = 0;
  for (const auto& s : antichain) max_len = std::max(max_len, s.size());
  std::vector<std::set<BitString>> by_level(max_len + 1);
  for (auto& s : antichain) by_level[s.size()].insert(std::move(s));
  for (std::size_t len = max_len; len >= 1; --len) {
    auto& level = by_level[len];
    for (auto it = level.begin(); it != level.end();) {
      const BitString& s = *it;
      if (s.bit(len - 1) == 0) {
        auto sib = level.find(s.sibling());
        if (sib != level.end()) {
          by_level[len - 1].insert(s.parent());
          level.erase(sib);
          it = level.erase(it);
          continue;
        }
      }
      ++it;
    }
  }

  std::vector<BitString> out;
  for (auto& level : by_level) out.insert(out.end(), level.begin(), level.end());
  std::sort(out.begin(), out.end());
  return ClopenSet(std::move(out));
}

DyadicRational measure(const ClopenSet& s) {
  DyadicRational total;
  for (const auto& m : s.members()) total += cylinder_mass(m.size());
  return total;
}

DyadicRational measure_below_level(const ClopenSet& s, std::size_t depth) {
  DyadicRational total;
  for (const auto& m : s.members()) {
    if (m.size() < depth) total += cylinder_mass(m.size());
  }
  return total;
}

ClopenSet unite(const ClopenSet& s, const ClopenSet& t) {
  std::vector<BitString> all = s.members();
  all.insert(all.end(), t.members().begin(), t.members().end());
  return canonicalize(std::move(all));
}

ClopenSet unite(std::span<const ClopenSet> sets) {
  std::vector<BitString> all;
  for (const auto& s : sets) all.insert(all.end(), s.members().begin(), s.members().end());
  return canonicalize(std::move(all));
}

ClopenSet intersect(const ClopenSet& s, const ClopenSet& t) {
  std::vector<BitString> out;
  for (const auto& a : s.members()) {
    if (t.covers(a)) {
      out.push_back(a);
      continue;
    }
    for (auto it = extension_block(t.members(), a);
         it != t.members().end() && a.is_prefix_of(*it); ++it) {
      out.push_back(*it);
    }
  }
  return canonicalize(std::move(out));
}

ClopenSet complement(const ClopenSet& s) {
  std::vector<BitString> out;
  complement_into(s, BitString(), out);
  return canonicalize(std::move(out));
}

bool is_subset(const ClopenSet& s, const ClopenSet& t) {
  return std::all_of(s.members().begin(), s.members().end(), [&](const BitString& a) {
    return mass_below(t, a) == cylinder_mass(a.size());
  });
}

DyadicRational mass_below(const ClopenSet& s, const BitString& sigma) {
  if (s.covers(sigma)) return cylinder_mass(sigma.size());
  DyadicRational total;
  for (auto it = extension_block(s.members(), sigma);
       it != s.members().end() && sigma.is_prefix_of(*it); ++it) {
    total += cylinder_mass(it->size());
  }
  return total;
}

DyadicRational residual_mass(const ClopenSet& s, const BitString& sigma) {
  return cylinder_mass(sigma.size()) - mass_below(s, sigma);
}

LevelFunction level_view(const ClopenSet& s) {
  LevelFunction out;
  out.levels.resize(s.empty() ? 0 : s.support_depth() + 1);
  for (const auto& m : s.members()) out.levels[m.size()].push_back(m);
  for (auto& level : out.levels) std::sort(level.begin(), level.end());
  return out;
}

ClopenSet from_levels(const LevelFunction& l) {
  std::vector<BitString> all;
  for (std::size_t i = 0; i < l.levels.size(); ++i) {
    for (const auto& s : l.levels[i]) {
      if (s.size() != i) {
        throw Error(ErrorKind::InvalidCondition,
                    "string " + s.to_text() + " listed on level " + std::to_string(i));
      }
      all.push_back(s);
    }
  }
  std::sort(all.begin(), all.end());
  for (std::size_t i = 1; i < all.size(); ++i) {
    if (all[i - 1].is_prefix_of(all[i])) {
      throw Error(ErrorKind::NotAntichain, "not an antichain: " + all[i - 1].to_text() +
                                               " is a prefix of " + all[i].to_text());
    }
  }
  return canonicalize(std::move(all));
}

bool check_star(const LevelFunction& l) {
  // Only proper prefixes of listed strings can carry deeper mass.
  std::map<BitString, DyadicRational> deeper_mass;
  for (const auto& level : l.levels) {
    for (const auto& s : level) {
      for (std::size_t n = 0; n < s.size(); ++n) {
        deeper_mass[s.prefix(n)] += cylinder_mass(s.size());
      }
    }
  }
  for (const auto& [sigma, mass] : deeper_mass) {
    if (sigma.size() < l.levels.size() &&
        std::binary_search(l.levels[sigma.size()].begin(), l.levels[sigma.size()].end(),
                           sigma)) {
      continue;
    }
    if (mass >= cylinder_mass(sigma.size())) return false;
  }
  return true;
}

bool has_sibling_pair(const LevelFunction& l) {
  for (std::size_t i = 1; i < l.levels.size(); ++i) {
    const auto& level = l.levels[i];
    for (const auto& s : level) {
      if (s.bit(i - 1) == 0 && std::binary_search(level.begin(), level.end(), s.sibling())) {
        return true;
      }
    }
  }
  return false;
}

DyadicRational symdiff_mass(const ClopenSet& s, const ClopenSet& t) {
  const DyadicRational both = measure(intersect(s, t));
  return measure(s) + measure(t) - both - both;
}

ParsedClopen parse_clopen(std::string_view text) {
  if (text == "-") return {ClopenSet(), true};
  if (text.empty()) throw ParseError(0, "empty clopen text (use '-' for the empty set)");
  std::vector<BitString> raw;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    const std::string_view token =
        text.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                           : comma - start);
    if (token.empty()) throw ParseError(start, "empty bit string");
    if (token == "e") {
      raw.emplace_back();
    } else {
      for (std::size_t i = 0; i < token.size(); ++i) {
        if (token[i] != '0' && token[i] != '1') {
          throw ParseError(start + i, std::string("unexpected character '") + token[i] +
                                          "' (alphabet is {0,1})");
        }
      }
      raw.emplace_back(std::string(token));
    }
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  std::vector<BitString> sorted = raw;
  std::sort(sorted.begin(), sorted.end());
  ClopenSet set = canonicalize(raw);
  const bool was_canonical = sorted == set.members();
  return {std::move(set), was_canonical};
}

std::string to_text(const ClopenSet& s) {
  if (s.empty()) return "-";
  std::string out;
  for (const auto& m : s.members()) {
    if (!out.empty()) out += ',';
    out += m.to_text();
  }
  return out;
}

}  // namespace forcing::cantor
