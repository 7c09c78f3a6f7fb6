#include "forcing/coding/interval.hpp"

#include <algorithm>

#include "forcing/error.hpp"

namespace forcing::coding {

DyadicInterval::DyadicInterval(DyadicRational lo, DyadicRational hi) {
  if (lo.sign() < 0 || !(lo < hi) || hi > DyadicRational::integer(1)) {
    throw Error(ErrorKind::InvalidCondition,
                "interval [" + lo.to_string() + ", " + hi.to_string() + ") is not inside [0,1)");
  }
  bounds_.emplace(std::move(lo), std::move(hi));
}

std::string DyadicInterval::to_text() const {
  if (empty()) return "empty";
  const std::size_t k = std::max(lo().exponent(), hi().exponent());
  const std::string den = "/2^" + std::to_string(k);
  return "[" + lo().floor_scaled(k).str() + den + ", " + hi().floor_scaled(k).str() + den + ")";
}

void IntervalUnion::add(const DyadicInterval& iv) {
  if (iv.empty()) return;
  DyadicRational lo = iv.lo();
  DyadicRational hi = iv.hi();
  std::vector<DyadicInterval> kept;
  for (const auto& part : parts_) {
    // Touching intervals merge too: [a,b) u [b,c) = [a,c).
    if (part.hi() < lo || hi < part.lo()) {
      kept.push_back(part);
    } else {
      lo = std::min(lo, part.lo());
      hi = std::max(hi, part.hi());
    }
  }
  kept.emplace_back(std::move(lo), std::move(hi));
  std::sort(kept.begin(), kept.end(),
            [](const DyadicInterval& a, const DyadicInterval& b) { return a.lo() < b.lo(); });
  parts_ = std::move(kept);
}

DyadicRational IntervalUnion::length() const {
  DyadicRational total;
  for (const auto& part : parts_) total += part.length();
  return total;
}

bool IntervalUnion::contains(const DyadicRational& z) const {
  return std::any_of(parts_.begin(), parts_.end(),
                     [&](const DyadicInterval& part) { return part.contains(z); });
}

bool IntervalUnion::is_unit() const {
  return parts_.size() == 1 && parts_[0].lo().is_zero() &&
         parts_[0].hi() == DyadicRational::integer(1);
}

std::string IntervalUnion::to_text() const {
  if (parts_.empty()) return "empty";
  std::string out;
  for (const auto& part : parts_) {
    if (!out.empty()) out += " U ";
    out += part.to_text();
  }
  return out;
}

}  // namespace forcing::coding
