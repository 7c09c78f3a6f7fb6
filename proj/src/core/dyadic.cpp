#include "forcing/dyadic.hpp"

#include <algorithm>

#include "forcing/error.hpp"

namespace forcing {

DyadicRational::DyadicRational(Natural numerator, std::size_t exponent)
    : numerator_(std::move(numerator)), exponent_(exponent) {
  normalize();
}

void DyadicRational::normalize() {
  if (numerator_ == 0) {
    exponent_ = 0;
    return;
  }
  if (exponent_ == 0) return;
  const Natural magnitude = abs(numerator_);
  const std::size_t twos = std::min<std::size_t>(lsb(magnitude), exponent_);
  if (twos > 0) {
    numerator_ >>= twos;  // exact: the low bits are zero
    exponent_ -= twos;
  }
}

DyadicRational DyadicRational::pow2(std::int64_t k) {
  if (k >= 0) return DyadicRational(Natural(1) << static_cast<std::size_t>(k), 0);
  return DyadicRational(1, static_cast<std::size_t>(-k));
}

DyadicRational DyadicRational::parse(std::string_view text) {
  if (text.empty()) throw ParseError(0, "expected a dyadic rational");
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '-') {
    negative = true;
    pos = 1;
  }
  const std::size_t slash = text.find('/', pos);
  Natural num = parse_natural(text.substr(pos, slash == std::string_view::npos
                                                    ? std::string_view::npos
                                                    : slash - pos));
  if (negative) num = -num;
  if (slash == std::string_view::npos) return DyadicRational(num, 0);
  std::string_view den = text.substr(slash + 1);
  if (den.starts_with("2^")) {
    const Natural k = parse_natural(den.substr(2));
    if (k > 100000) throw ParseError(slash + 3, "exponent too large");
    return DyadicRational(num, static_cast<std::size_t>(k));
  }
  const Natural d = parse_natural(den);
  if (d == 0 || (d & (d - 1)) != 0) {
    throw ParseError(slash + 1, "denominator is not a power of two");
  }
  return DyadicRational(num, msb(d));
}

DyadicRational DyadicRational::scaled(std::int64_t k) const {
  if (numerator_ == 0) return {};
  if (k >= 0) {
    const auto shift = static_cast<std::size_t>(k);
    if (shift <= exponent_) return DyadicRational(numerator_, exponent_ - shift);
    return DyadicRational(numerator_ << (shift - exponent_), 0);
  }
  return DyadicRational(numerator_, exponent_ + static_cast<std::size_t>(-k));
}

Natural DyadicRational::floor_scaled(std::size_t k) const {
  if (k >= exponent_) return numerator_ << (k - exponent_);
  return numerator_ >> (exponent_ - k);
}

DyadicRational DyadicRational::operator-() const {
  DyadicRational out = *this;
  out.numerator_ = -out.numerator_;
  return out;
}

DyadicRational& DyadicRational::operator+=(const DyadicRational& rhs) {
  const std::size_t e = std::max(exponent_, rhs.exponent_);
  numerator_ = (numerator_ << (e - exponent_)) + (rhs.numerator_ << (e - rhs.exponent_));
  exponent_ = e;
  normalize();
  return *this;
}

DyadicRational& DyadicRational::operator-=(const DyadicRational& rhs) {
  return *this += -rhs;
}

DyadicRational operator*(const DyadicRational& lhs, const Natural& rhs) {
  return DyadicRational(lhs.numerator_ * rhs, lhs.exponent_);
}

std::strong_ordering operator<=>(const DyadicRational& lhs, const DyadicRational& rhs) {
  const std::size_t e = std::max(lhs.exponent_, rhs.exponent_);
  const Natural a = lhs.numerator_ << (e - lhs.exponent_);
  const Natural b = rhs.numerator_ << (e - rhs.exponent_);
  if (a < b) return std::strong_ordering::less;
  if (a > b) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string DyadicRational::to_string() const {
  if (exponent_ == 0) return numerator_.str();
  return numerator_.str() + "/" + (Natural(1) << exponent_).str();
}

}  // namespace forcing
