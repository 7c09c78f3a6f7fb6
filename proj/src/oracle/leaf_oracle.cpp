#include "leaf_oracle.hpp"

#include <algorithm>
#include <bit>
#include <iterator>
#include <set>

namespace forcing::oracle {

namespace {

std::size_t index_of(const std::string& s) {
  std::size_t v = 0;
  for (char c : s) v = 2 * v + (c == '1');
  return v;
}

void decompose_into(const LeafSet& s, std::string& node, Strings& out) {
  const std::size_t full = std::size_t{1} << (s.depth() - node.size());
  const std::size_t have = s.count_under(node);
  if (have == 0) return;
  if (have == full) {
    out.push_back(node);
    return;
  }
  for (char c : {'0', '1'}) {
    node.push_back(c);
    decompose_into(s, node, out);
    node.pop_back();
  }
}

}  // namespace

LeafSet::LeafSet(std::size_t depth)
    : depth_(depth), words_(((std::size_t{1} << depth) + 63) / 64, 0) {}

LeafSet LeafSet::of(const Strings& strings, std::size_t depth) {
  LeafSet out(depth);
  for (const auto& s : strings) out.mark(s);
  return out;
}

void LeafSet::mark(const std::string& prefix) {
  const std::size_t span = std::size_t{1} << (depth_ - prefix.size());
  const std::size_t first = index_of(prefix) * span;
  if (span < 64) {
    words_[first / 64] |= ((std::uint64_t{1} << span) - 1) << (first % 64);
    return;
  }
  for (std::size_t w = first / 64; w < (first + span) / 64; ++w) words_[w] = ~std::uint64_t{0};
}

std::size_t LeafSet::count() const {
  std::size_t n = 0;
  for (auto w : words_) n += std::popcount(w);
  return n;
}

std::size_t LeafSet::count_under(const std::string& prefix) const {
  const std::size_t span = std::size_t{1} << (depth_ - prefix.size());
  const std::size_t first = index_of(prefix) * span;
  if (span < 64) {
    const std::uint64_t mask = ((std::uint64_t{1} << span) - 1) << (first % 64);
    return std::popcount(words_[first / 64] & mask);
  }
  std::size_t n = 0;
  for (std::size_t w = first / 64; w < (first + span) / 64; ++w) n += std::popcount(words_[w]);
  return n;
}

LeafSet LeafSet::operator|(const LeafSet& o) const {
  LeafSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] |= o.words_[i];
  return out;
}

LeafSet LeafSet::operator&(const LeafSet& o) const {
  LeafSet out = *this;
  for (std::size_t i = 0; i < words_.size(); ++i) out.words_[i] &= o.words_[i];
  return out;
}

LeafSet LeafSet::operator~() const {
  LeafSet out(depth_);
  for (std::size_t leaf = 0; leaf < (std::size_t{1} << depth_); ++leaf) {
    if (!test(leaf)) out.set(leaf);
  }
  return out;
}

bool LeafSet::subset_of(const LeafSet& o) const { return (*this & o) == *this; }

Strings decompose(const LeafSet& s) {
  Strings out;
  std::string node;
  decompose_into(s, node, out);
  std::sort(out.begin(), out.end());
  return out;
}

bool star_literal(const std::vector<Strings>& levels) {
  const std::size_t depth = levels.size();
  Strings all;
  for (const auto& level : levels) all.insert(all.end(), level.begin(), level.end());
  for (std::size_t i = 0; i < depth; ++i) {
    const std::set<std::string> here(levels[i].begin(), levels[i].end());
    for (const auto& sigma : all_strings(i)) {
      if (here.contains(sigma)) continue;
      Strings deeper;
      for (const auto& t : all) {
        if (t.size() > i && t.starts_with(sigma)) deeper.push_back(t);
      }
      // Compare against the full cylinder at the finest depth.
      const std::size_t leaves = LeafSet::of(deeper, depth).count_under(sigma);
      if (leaves >= (std::size_t{1} << (depth - i))) return false;
    }
  }
  return true;
}

std::optional<std::size_t> first_level_difference(const Strings& a, const Strings& b) {
  Strings sa = a, sb = b, only;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                std::back_inserter(only));
  std::optional<std::size_t> best;
  for (const auto& s : only) {
    if (!best || s.size() < *best) best = s.size();
  }
  return best;
}

std::optional<std::size_t> freeze_by_completion(const Strings& s, std::size_t horizon) {
  const LeafSet base = LeafSet::of(s, horizon);
  const Strings base_parts = decompose(base);
  const std::size_t half = std::size_t{1} << (horizon - 1);
  std::optional<std::size_t> best;
  for (std::size_t len = 0; len <= horizon; ++len) {
    for (const auto& sigma : all_strings(len)) {
      LeafSet grown = base;
      grown.mark(sigma);
      if (grown.count() >= half) continue;
      const auto diff = first_level_difference(base_parts, decompose(grown));
      if (diff && (!best || *diff < *best)) best = diff;
    }
  }
  return best;
}

std::optional<std::size_t> freeze_by_supersets(const Strings& s, std::size_t horizon) {
  const LeafSet base = LeafSet::of(s, horizon);
  const Strings base_parts = decompose(base);
  const std::size_t leaves = std::size_t{1} << horizon;
  std::vector<std::size_t> free;
  for (std::size_t leaf = 0; leaf < leaves; ++leaf) {
    if (!base.test(leaf)) free.push_back(leaf);
  }
  std::optional<std::size_t> best;
  for (std::uint64_t pick = 1; pick < (std::uint64_t{1} << free.size()); ++pick) {
    if (base.count() + std::popcount(pick) >= leaves / 2) continue;
    LeafSet grown = base;
    for (std::size_t k = 0; k < free.size(); ++k) {
      if ((pick >> k) & 1u) grown.set(free[k]);
    }
    const auto diff = first_level_difference(base_parts, decompose(grown));
    if (diff && (!best || *diff < *best)) best = diff;
  }
  return best;
}

Strings all_strings(std::size_t length) {
  Strings out;
  for (std::size_t v = 0; v < (std::size_t{1} << length); ++v) {
    std::string s(length, '0');
    for (std::size_t k = 0; k < length; ++k) {
      if ((v >> (length - 1 - k)) & 1u) s[k] = '1';
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace forcing::oracle
