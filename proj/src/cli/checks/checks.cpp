#include "forcing/cli/checks.hpp"

#include "common.hpp"

namespace forcing::cli {

namespace {

struct SuiteName {
  Suite suite;
  const char* name;
};

constexpr SuiteName kSuites[] = {
    {Suite::Clopen, "clopen"}, {Suite::Star, "star"},     {Suite::Embedding, "embedding"},
    {Suite::Window, "window"}, {Suite::Meet, "meet"},     {Suite::Coding, "coding"},
    {Suite::Aux, "aux"},       {Suite::All, "all"},
};

}  // namespace

std::optional<Suite> parse_suite(std::string_view name) {
  for (const auto& s : kSuites) {
    if (name == s.name) return s.suite;
  }
  return std::nullopt;
}

const char* to_string(Suite s) {
  for (const auto& entry : kSuites) {
    if (entry.suite == s) return entry.name;
  }
  return "?";
}

std::vector<CheckRecord> run_suite(Suite suite, const SuiteParams& params) {
  switch (suite) {
    case Suite::Clopen: return detail::clopen_suite(params);
    case Suite::Star: return detail::star_suite(params);
    case Suite::Embedding: return detail::embedding_suite(params);
    case Suite::Window: return detail::window_suite(params);
    case Suite::Meet: return detail::meet_suite(params);
    case Suite::Coding: return detail::coding_suite(params);
    case Suite::Aux: return detail::aux_suite(params);
    case Suite::All: break;
  }
  std::vector<CheckRecord> all;
  for (auto s : {Suite::Clopen, Suite::Star, Suite::Embedding, Suite::Window, Suite::Meet,
                 Suite::Coding, Suite::Aux}) {
    auto part = run_suite(s, params);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace forcing::cli
