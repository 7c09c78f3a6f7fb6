#include "forcing/cantor/bit_string.hpp"

#include "forcing/error.hpp"

namespace forcing::cantor {

BitString::BitString(std::string bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] != '0' && bits_[i] != '1') {
      throw ParseError(i, std::string("unexpected character '") + bits_[i] +
                              "' in bit string");
    }
  }
}

BitString BitString::child(int b) const {
  BitString out = *this;
  out.bits_.push_back(b ? '1' : '0');
  return out;
}

BitString BitString::parent() const {
  BitString out = *this;
  out.bits_.pop_back();
  return out;
}

BitString BitString::sibling() const {
  BitString out = *this;
  out.bits_.back() = out.bits_.back() == '0' ? '1' : '0';
  return out;
}

BitString BitString::prefix(std::size_t n) const {
  BitString out;
  out.bits_ = bits_.substr(0, n);
  return out;
}

}  // namespace forcing::cantor
