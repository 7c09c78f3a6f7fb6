#include "forcing/coding/sequence.hpp"

#include <algorithm>

#include "forcing/error.hpp"

namespace forcing::coding {

namespace {

// Longest sequence enum_seq is willing to materialize.
constexpr std::size_t kMaxDecodedLength = 1u << 24;

template <typename Parse>
auto parse_list(std::string_view text, Parse parse_item) {
  std::vector<decltype(parse_item(std::string_view{}, std::size_t{0}))> out;
  if (text == "()") return out;
  if (text.empty()) throw ParseError(0, "empty sequence text (use '()' for the empty sequence)");
  std::size_t start = 0;
  int depth = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] == '(') ++depth;
    if (i < text.size() && text[i] == ')') --depth;
    if (i == text.size() || (text[i] == ',' && depth == 0)) {
      if (i == start) throw ParseError(start, "empty sequence entry");
      out.push_back(parse_item(text.substr(start, i - start), start));
      start = i + 1;
    }
  }
  return out;
}

Natural parse_natural_at(std::string_view token, std::size_t offset) {
  try {
    return parse_natural(token);
  } catch (const ParseError& e) {
    throw ParseError(offset + e.position(), "invalid natural '" + std::string(token) + "'");
  }
}

}  // namespace

Natural cantor_pair(const Natural& a, const Natural& b) {
  const Natural s = a + b;
  return s * (s + 1) / 2 + b;
}

std::pair<Natural, Natural> cantor_unpair(const Natural& z) {
  const Natural w = (boost::multiprecision::sqrt(Natural(8 * z + 1)) - 1) / 2;
  const Natural t = w * (w + 1) / 2;
  const Natural b = z - t;
  return {w - b, b};
}

std::optional<Natural> try_seq_code(const FinSeq& s, std::size_t max_bits) {
  if (s.empty()) return Natural(0);
  Natural g = s.back();
  for (std::size_t i = s.size() - 1; i-- > 0;) {
    g = cantor_pair(s[i], g);
    if (g != 0 && msb(g) >= max_bits) return std::nullopt;
  }
  Natural code = 1 + cantor_pair(Natural(s.size() - 1), g);
  if (msb(code) >= max_bits) return std::nullopt;
  return code;
}

Natural seq_code(const FinSeq& s) {
  auto code = try_seq_code(s);
  if (!code) {
    throw Error(ErrorKind::TooLarge,
                "code of a length-" + std::to_string(s.size()) + " sequence exceeds " +
                    std::to_string(kMaterializeBits) + " bits");
  }
  return *code;
}

FinSeq enum_seq(const Natural& n) {
  if (n == 0) return {};
  auto [k, g] = cantor_unpair(n - 1);
  if (k >= kMaxDecodedLength) {
    throw Error(ErrorKind::TooLarge, "code " + n.str() + " names a sequence that is too long");
  }
  const auto length = static_cast<std::size_t>(k) + 1;
  FinSeq out;
  out.reserve(length);
  for (std::size_t i = 0; i + 1 < length; ++i) {
    auto [head, rest] = cantor_unpair(g);
    out.push_back(std::move(head));
    g = std::move(rest);
  }
  out.push_back(std::move(g));
  return out;
}

CohenEntry::CohenEntry(Natural value) {
  if (value != 0 && msb(value) >= kMaterializeBits) {
    rep_ = enum_seq(value);
  } else {
    rep_ = std::move(value);
  }
}

CohenEntry CohenEntry::encoding(FinSeq s) {
  CohenEntry out;
  if (auto code = try_seq_code(s)) {
    out.rep_ = std::move(*code);
  } else {
    out.rep_ = std::move(s);
  }
  return out;
}

FinSeq CohenEntry::decode() const {
  if (const auto* v = std::get_if<Natural>(&rep_)) return enum_seq(*v);
  return std::get<FinSeq>(rep_);
}

Natural CohenEntry::decoded_length() const {
  if (const auto* v = std::get_if<Natural>(&rep_)) {
    if (*v == 0) return 0;
    return cantor_unpair(*v - 1).first + 1;
  }
  return Natural(std::get<FinSeq>(rep_).size());
}

std::optional<Natural> CohenEntry::decoded_entry(std::size_t i) const {
  if (const auto* seq = std::get_if<FinSeq>(&rep_)) {
    if (i >= seq->size()) return std::nullopt;
    return (*seq)[i];
  }
  const Natural& v = std::get<Natural>(rep_);
  if (v == 0) return std::nullopt;
  auto [k, g] = cantor_unpair(v - 1);
  if (Natural(i) > k) return std::nullopt;
  for (std::size_t j = 0; j < i; ++j) g = cantor_unpair(g).second;
  if (Natural(i) == k) return g;
  return cantor_unpair(g).first;
}

std::string CohenEntry::to_text() const {
  if (const auto* v = std::get_if<Natural>(&rep_)) return v->str();
  return "code(" + coding::to_text(std::get<FinSeq>(rep_)) + ")";
}

CohenEntry CohenEntry::parse(std::string_view text) {
  if (text.starts_with("code(") && text.ends_with(")")) {
    return encoding(parse_fin_seq(text.substr(5, text.size() - 6)));
  }
  return CohenEntry(parse_natural(text));
}

std::strong_ordering operator<=>(const CohenEntry& a, const CohenEntry& b) {
  const auto* va = a.value();
  const auto* vb = b.value();
  if (va && vb) {
    if (*va < *vb) return std::strong_ordering::less;
    if (*va > *vb) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }
  if (va) return std::strong_ordering::less;
  if (vb) return std::strong_ordering::greater;
  const auto& sa = std::get<FinSeq>(a.rep_);
  const auto& sb = std::get<FinSeq>(b.rep_);
  if (sa < sb) return std::strong_ordering::less;
  if (sb < sa) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

CohenSeq to_cohen(const FinSeq& s) { return CohenSeq(s.begin(), s.end()); }

std::string to_text(const FinSeq& s) {
  if (s.empty()) return "()";
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += ',';
    out += v.str();
  }
  return out;
}

std::string to_text(const CohenSeq& s) {
  if (s.empty()) return "()";
  std::string out;
  for (const auto& v : s) {
    if (!out.empty()) out += ',';
    out += v.to_text();
  }
  return out;
}

FinSeq parse_fin_seq(std::string_view text) {
  return parse_list(text, parse_natural_at);
}

CohenSeq parse_cohen_seq(std::string_view text) {
  return parse_list(text, [](std::string_view token, std::size_t offset) {
    try {
      return CohenEntry::parse(token);
    } catch (const ParseError& e) {
      throw ParseError(offset + e.position(), "invalid entry '" + std::string(token) + "'");
    }
  });
}

}  // namespace forcing::coding
