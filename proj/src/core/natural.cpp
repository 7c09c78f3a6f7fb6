#include "forcing/natural.hpp"

#include "forcing/error.hpp"

namespace forcing {

std::string to_string(const Natural& value) { return value.str(); }

Natural parse_natural(std::string_view text) {
  if (text.empty()) throw ParseError(0, "expected a natural number");
  Natural value = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw ParseError(i, std::string("unexpected character '") + c + "' in natural");
    }
    value = value * 10 + (c - '0');
  }
  return value;
}

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Parse: return "parse error";
    case ErrorKind::NotAntichain: return "not an antichain";
    case ErrorKind::NotAmoeba: return "not an amoeba condition";
    case ErrorKind::InvalidCondition: return "invalid condition";
    case ErrorKind::EmptyStem: return "empty stem";
    case ErrorKind::NotInAppWindow: return "not in A-double-prime";
    case ErrorKind::NoCapacity: return "no capacity";
    case ErrorKind::StemsDiffer: return "stems differ";
    case ErrorKind::LabelMismatch: return "label mismatch";
    case ErrorKind::NotSeparated: return "not separated";
    case ErrorKind::EllTooSmall: return "ell too small";
    case ErrorKind::BadFamilySize: return "bad family size";
    case ErrorKind::TooLarge: return "too large";
    case ErrorKind::SlotsDiffer: return "slots differ";
    case ErrorKind::MixedPosets: return "mixed posets";
  }
  return "error";
}

}  // namespace forcing
