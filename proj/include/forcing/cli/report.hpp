#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace forcing::cli {

enum class Outcome { Pass, Fail, Infeasible, NotFound };

const char* to_string(Outcome o);

struct CheckRecord {
  std::string name;
  /// digest() of the canonical input text.
  std::string inputs;
  Outcome outcome = Outcome::Pass;
  /// Exact values as literal strings, in emission order.
  std::vector<std::pair<std::string, std::string>> values;
};

struct Report {
  std::vector<CheckRecord> records;
  std::uint64_t seed = 0;
};

enum class Format { Text, JsonLines };

/// 64-bit FNV-1a of text, as 16 lowercase hex digits.
std::string digest(std::string_view text);

void emit_report(const Report& r, Format format, std::ostream& out);

}  // namespace forcing::cli
