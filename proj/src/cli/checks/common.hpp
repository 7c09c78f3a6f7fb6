#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "forcing/cantor/clopen_set.hpp"
#include "forcing/cli/checks.hpp"

namespace forcing::cli::detail {

class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream);

  /// Uniform on [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Uniform on [lo, hi].
  std::size_t range(std::size_t lo, std::size_t hi) { return lo + below(hi - lo + 1); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 gen_;
};

/// Counts trials and keeps the first failing case.
class Tally {
 public:
  Tally(std::string name, std::string inputs);

  void add(bool ok, const std::string& detail = {});
  template <typename Describe>
  void expect(bool ok, Describe describe) {
    add(ok, ok ? std::string() : describe());
  }
  std::size_t trials() const { return trials_; }
  std::size_t failures() const { return failures_; }

  CheckRecord record(std::vector<std::pair<std::string, std::string>> extra = {}) const;

 private:
  std::string name_;
  std::string inputs_;
  std::size_t trials_ = 0;
  std::size_t failures_ = 0;
  std::string first_;
};

std::string param_text(std::string_view suite, const SuiteParams& p);

std::string random_bits(Rng& rng, std::size_t length);
/// Up to max_count strings of length <= depth.
std::vector<cantor::BitString> random_strings(Rng& rng, std::size_t depth, std::size_t max_count);
/// Canonical set with measure < 1/2 and support depth <= depth.
cantor::ClopenSet random_amoeba(Rng& rng, std::size_t depth);

std::vector<std::string> raw(const std::vector<cantor::BitString>& xs);
std::vector<std::string> raw(const cantor::ClopenSet& s);

std::vector<CheckRecord> clopen_suite(const SuiteParams& p);
std::vector<CheckRecord> star_suite(const SuiteParams& p);
std::vector<CheckRecord> embedding_suite(const SuiteParams& p);
std::vector<CheckRecord> window_suite(const SuiteParams& p);
std::vector<CheckRecord> meet_suite(const SuiteParams& p);
std::vector<CheckRecord> coding_suite(const SuiteParams& p);
std::vector<CheckRecord> aux_suite(const SuiteParams& p);

}  // namespace forcing::cli::detail
