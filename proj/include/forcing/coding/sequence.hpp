#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "forcing/natural.hpp"

namespace forcing::coding {

/// Finite sequence of naturals, an element of omega^{<omega}.
using FinSeq = std::vector<Natural>;

/// Cantor pairing (a+b)(a+b+1)/2 + b and its inverse.
Natural cantor_pair(const Natural& a, const Natural& b);
std::pair<Natural, Natural> cantor_unpair(const Natural& z);

/// Codes above this many bits are not expanded into decimal.
inline constexpr std::size_t kMaterializeBits = 1u << 16;

/// Code of a sequence: <> -> 0, <a_0..a_k> -> 1 + pair(k, g) with g the right
/// fold of the entries under pair. Returns nullopt when the code would need
/// more than max_bits bits.
std::optional<Natural> try_seq_code(const FinSeq& s, std::size_t max_bits = kMaterializeBits);
/// As try_seq_code; throws Error(TooLarge) past kMaterializeBits.
Natural seq_code(const FinSeq& s);
/// Inverse of seq_code. Throws Error(TooLarge) for codes of absurd length.
FinSeq enum_seq(const Natural& n);

/// A natural number that may be held through the sequence it codes.
///
/// Codes produced by the covering construction nest the pairing function once
/// per entry and quickly outgrow any memory; those stay in decoded form. The
/// representation is canonical (explicit iff the code fits kMaterializeBits),
/// so structural equality is numeric equality.
class CohenEntry {
 public:
  CohenEntry() = default;
  CohenEntry(Natural value);  // NOLINT(google-explicit-constructor)
  CohenEntry(int value) : CohenEntry(Natural(value)) {}  // NOLINT

  /// The natural seq_code(s), without expanding it when it is huge.
  static CohenEntry encoding(FinSeq s);

  bool is_explicit() const { return std::holds_alternative<Natural>(rep_); }
  /// Decimal value when explicit.
  const Natural* value() const { return std::get_if<Natural>(&rep_); }
  /// enum_seq of this natural.
  FinSeq decode() const;
  /// Length of enum_seq of this natural, without decoding the entries.
  Natural decoded_length() const;
  /// Entry i of enum_seq of this natural; nullopt past the end. Decodes only
  /// the first i+1 entries.
  std::optional<Natural> decoded_entry(std::size_t i) const;

  /// Decimal when explicit, "code(a,b,...)" otherwise.
  std::string to_text() const;
  static CohenEntry parse(std::string_view text);

  friend bool operator==(const CohenEntry&, const CohenEntry&) = default;
  /// Explicit values sort before held codes; numeric among explicit values.
  friend std::strong_ordering operator<=>(const CohenEntry& a, const CohenEntry& b);

 private:
  std::variant<Natural, FinSeq> rep_{Natural(0)};
};

/// Element of Cohen forcing: a finite sequence ordered by end-extension.
using CohenSeq = std::vector<CohenEntry>;

CohenSeq to_cohen(const FinSeq& s);

/// Comma-separated entries, "()" for the empty sequence.
std::string to_text(const FinSeq& s);
std::string to_text(const CohenSeq& s);
FinSeq parse_fin_seq(std::string_view text);
CohenSeq parse_cohen_seq(std::string_view text);

}  // namespace forcing::coding
