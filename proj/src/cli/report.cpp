#include "forcing/cli/report.hpp"

#include <array>
#include <cstdio>
#include <iomanip>
#include "json.hpp"

namespace forcing::cli {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Infeasible: return "infeasible";
    case Outcome::NotFound: return "not-found";
  }
  return "?";
}

std::string digest(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

void emit_report(const Report& r, Format format, std::ostream& out) {
  std::array<std::size_t, 4> counts{};
  for (const auto& rec : r.records) ++counts[static_cast<std::size_t>(rec.outcome)];

  if (format == Format::JsonLines) {
    for (const auto& rec : r.records) {
      nlohmann::ordered_json values = nlohmann::ordered_json::object();
      for (const auto& [k, v] : rec.values) values[k] = v;
      nlohmann::ordered_json line;
      line["check"] = rec.name;
      line["inputs"] = rec.inputs;
      line["outcome"] = to_string(rec.outcome);
      line["values"] = std::move(values);
      out << line.dump() << '\n';
    }
    nlohmann::ordered_json summary;
    summary["summary"] = {{"total", r.records.size()},
                          {"pass", counts[0]},
                          {"fail", counts[1]},
                          {"infeasible", counts[2]},
                          {"not-found", counts[3]},
                          {"seed", std::to_string(r.seed)}};
    out << summary.dump() << '\n';
    return;
  }

  for (const auto& rec : r.records) {
    out << std::left << std::setw(34) << rec.name << ' ' << rec.inputs << ' '
        << std::setw(10) << to_string(rec.outcome);
    for (const auto& [k, v] : rec.values) out << ' ' << k << '=' << v;
    out << '\n';
  }
  out << "summary: total=" << r.records.size() << " pass=" << counts[0] << " fail=" << counts[1]
      << " infeasible=" << counts[2] << " not-found=" << counts[3] << " seed=" << r.seed << '\n';
}

}  // namespace forcing::cli
