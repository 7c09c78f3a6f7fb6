#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "forcing/amoeba/amoeba.hpp"
#include "forcing/cli/report.hpp"

namespace forcing::cli {

enum class Suite { Clopen, Star, Embedding, Window, Meet, Coding, Aux, All };

std::optional<Suite> parse_suite(std::string_view name);
const char* to_string(Suite s);

struct SuiteParams {
  std::uint64_t seed = 0;
  /// Random instances per property; 0 keeps each suite's own default.
  std::size_t trials = 0;
  /// Support-depth bound for generated clopen sets; 0 keeps the default.
  std::size_t depth = 0;
  amoeba::LabelRule f = amoeba::LabelRule::ruler();
};

/// One aggregated record per property. Deterministic in params.
std::vector<CheckRecord> run_suite(Suite suite, const SuiteParams& params);

}  // namespace forcing::cli
