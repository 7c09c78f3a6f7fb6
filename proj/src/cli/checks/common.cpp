#include "common.hpp"

namespace forcing::cli::detail {

Rng::Rng(std::uint64_t seed, std::string_view stream) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : stream) h = (h ^ c) * 0x100000001b3ull;
  gen_.seed(seed * 0x9e3779b97f4a7c15ull ^ h);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection keeps the draw uniform and independent of the library's
  // distribution implementations.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t x;
  do {
    x = gen_();
  } while (x >= limit);
  return x % n;
}

Tally::Tally(std::string name, std::string inputs)
    : name_(std::move(name)), inputs_(std::move(inputs)) {}

void Tally::add(bool ok, const std::string& detail) {
  ++trials_;
  if (ok) return;
  if (failures_++ == 0) first_ = detail;
}

CheckRecord Tally::record(std::vector<std::pair<std::string, std::string>> extra) const {
  CheckRecord r;
  r.name = name_;
  r.inputs = digest(name_ + "\n" + inputs_);
  r.outcome = failures_ == 0 ? Outcome::Pass : Outcome::Fail;
  r.values = {{"trials", std::to_string(trials_)}, {"failures", std::to_string(failures_)}};
  for (auto& kv : extra) r.values.push_back(std::move(kv));
  if (failures_ > 0) r.values.emplace_back("first_failure", first_);
  return r;
}

std::string param_text(std::string_view suite, const SuiteParams& p) {
  return std::string(suite) + " seed=" + std::to_string(p.seed) +
         " trials=" + std::to_string(p.trials) + " depth=" + std::to_string(p.depth) +
         " f=" + p.f.to_text();
}

std::string random_bits(Rng& rng, std::size_t length) {
  std::string s(length, '0');
  for (auto& c : s) c = rng.coin() ? '1' : '0';
  return s;
}

std::vector<cantor::BitString> random_strings(Rng& rng, std::size_t depth, std::size_t max_count) {
  std::vector<cantor::BitString> out;
  const std::size_t count = rng.below(max_count + 1);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t len = rng.below(depth + 1);
    if (len == 0 && rng.below(8) != 0) len = rng.range(std::min<std::size_t>(1, depth), depth);
    out.emplace_back(random_bits(rng, len));
  }
  return out;
}

cantor::ClopenSet random_amoeba(Rng& rng, std::size_t depth) {
  std::vector<cantor::BitString> kept;
  const std::size_t count = rng.below(6);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t len = rng.range(std::min<std::size_t>(2, depth), depth);
    kept.emplace_back(random_bits(rng, len));
    if (!(cantor::measure(cantor::canonicalize(kept)) < DyadicRational::half())) kept.pop_back();
  }
  return cantor::canonicalize(kept);
}

std::vector<std::string> raw(const std::vector<cantor::BitString>& xs) {
  std::vector<std::string> out;
  for (const auto& x : xs) out.push_back(x.str());
  return out;
}

std::vector<std::string> raw(const cantor::ClopenSet& s) { return raw(s.members()); }

}  // namespace forcing::cli::detail
