#include "forcing/cli/run.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <sstream>
#include <map>

#include "CLI11.hpp"
#include "forcing/amoeba/amoeba.hpp"
#include "forcing/cli/checks.hpp"
#include "forcing/cli/report.hpp"
#include "forcing/coding/coding.hpp"
#include "forcing/error.hpp"
#include "json.hpp"

namespace forcing::cli {

namespace {

using amoeba::StemCondition;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

constexpr const char* kGrammar =
    "usage: forcing <command> [args] [--depth N] [--seed N] [--format text|jsonl]\n"
    "                         [--f-rule ruler|FN] [--trials N]\n"
    "  canon SET            measure SET          embed SET\n"
    "  densify COND [--to aprime|app]            window COND\n"
    "  label COND           meet COND COND...    project COND SEQ [--budget N]\n"
    "  enum N               code SEQ             cover ELL SEQ FN...\n"
    "  bstep FN FN N        btail FN FN N LAST\n"
    "  check clopen|star|embedding|window|meet|coding|aux|all\n"
    "SET: bitstrings joined by ',' ('-' empty, 'e' whole space); COND: DEPTH|SET;\n"
    "SEQ: naturals joined by ',' ('()' empty); FN: TABLE;const:C or TABLE;id+K\n"
    "Any argument written @PATH is read from that file.\n";

struct Options {
  std::size_t depth = 0;
  std::uint64_t seed = 0;
  std::string format = "text";
  std::string f_rule = "ruler";
  std::size_t trials = 0;
  std::string densify_to = "app";
  std::size_t budget = 32;
  std::vector<std::string> args;
};

class Printer {
 public:
  Printer(std::string command, const Options& o, std::ostream& out)
      : command_(std::move(command)), jsonl_(o.format == "jsonl"), args_(o.args), out_(out) {}

  // Prints the main result: the bare value in text mode, one object in jsonl.
  // Condition-valued results leave out the extras in text mode so they can be
  // fed back in as arguments.
  void result(const std::string& value,
              std::vector<std::pair<std::string, std::string>> extra = {},
              bool text_extras = true) {
    if (!jsonl_) {
      out_ << value;
      if (text_extras) {
        for (const auto& [k, v] : extra) out_ << ' ' << k << '=' << v;
      }
      out_ << '\n';
      return;
    }
    nlohmann::ordered_json j;
    j["command"] = command_;
    j["args"] = args_;
    j["result"] = value;
    for (const auto& [k, v] : extra) j[k] = v;
    out_ << j.dump() << '\n';
  }

 private:
  std::string command_;
  bool jsonl_;
  std::vector<std::string> args_;
  std::ostream& out_;
};

std::size_t parse_count(const std::string& text) {
  const Natural n = parse_natural(text);
  if (n > Natural(1) << 20) throw ParseError(0, "number too large: " + text);
  return static_cast<std::size_t>(n);
}

void need_args(const Options& o, std::size_t min, std::size_t max) {
  if (o.args.size() < min || o.args.size() > max) {
    throw CLI::ValidationError("expected " + std::to_string(min) +
                               (max == min ? "" : " to " + std::to_string(max)) +
                               " arguments, got " + std::to_string(o.args.size()));
  }
}

using Handler = std::function<int(const Options&, Printer&)>;

const std::map<std::string, std::pair<std::pair<std::size_t, std::size_t>, Handler>>& handlers() {
  static const std::map<std::string, std::pair<std::pair<std::size_t, std::size_t>, Handler>> table{
      {"canon",
       {{1, 1},
        [](const Options& o, Printer& p) {
          const auto parsed = cantor::parse_clopen(o.args[0]);
          p.result(cantor::to_text(parsed.set),
                   {{"was_canonical", parsed.was_canonical ? "true" : "false"}},
                   /*text_extras=*/false);
          return kOk;
        }}},
      {"measure",
       {{1, 1},
        [](const Options& o, Printer& p) {
          p.result(cantor::measure(cantor::parse_clopen(o.args[0]).set).to_string());
          return kOk;
        }}},
      {"embed",
       {{1, 1},
        [](const Options& o, Printer& p) {
          p.result(amoeba::phi_embed(cantor::parse_clopen(o.args[0]).set).to_text());
          return kOk;
        }}},
      {"densify",
       {{1, 1},
        [](const Options& o, Printer& p) {
          const auto q = StemCondition::parse(o.args[0]);
          if (o.densify_to == "aprime") {
            const auto psi = amoeba::densify_aprime(q);
            p.result(cantor::to_text(psi), {{"measure", cantor::measure(psi).to_string()}}, false);
          } else {
            const auto r = amoeba::densify_app(q);
            p.result(r.to_text(), {{"measure", cantor::measure(r.phi()).to_string()}}, false);
          }
          return kOk;
        }}},
      {"window",
       {{1, 1},
        [](const Options& o, Printer& p) {
          const auto q = StemCondition::parse(o.args[0]);
          const auto w = amoeba::app_witness(q);
          if (!w) {
            p.result("none");
            return kFailed;
          }
          p.result(std::to_string(w->n), {{"h_window", std::to_string(amoeba::h_window(q))},
                                          {"stem", w->stem_mass.to_string()},
                                          {"penult", w->penult_mass.to_string()},
                                          {"tail", w->tail_mass.to_string()}});
          return kOk;
        }}},
      {"label",
       {{1, 1},
        [](const Options& o, Printer& p) {
          const auto q = StemCondition::parse(o.args[0]);
          const auto f = amoeba::LabelRule::parse(o.f_rule);
          p.result(coding::to_text(amoeba::h_label(q, f)));
          return kOk;
        }}},
      {"meet",
       {{1, 64},
        [](const Options& o, Printer& p) {
          std::vector<StemCondition> ps;
          for (const auto& a : o.args) ps.push_back(StemCondition::parse(a));
          const auto r = amoeba::meet_same_stem(ps);
          if (const auto* q = std::get_if<StemCondition>(&r)) {
            p.result(q->to_text(), {{"measure", cantor::measure(q->phi()).to_string()}}, false);
            return kOk;
          }
          const auto& bad = std::get<amoeba::MeetInfeasible>(r);
          p.result("infeasible",
                   {{"reason", bad.reason == amoeba::MeetInfeasible::Reason::MassOvershoot
                                   ? "mass-overshoot"
                                   : "stem-disturbed"},
                    {"union_measure", bad.union_mass.to_string()},
                    {"overshoot", bad.overshoot.to_string()}});
          return kFailed;
        }}},
      {"project",
       {{2, 2},
        [](const Options& o, Printer& p) {
          const auto q = StemCondition::parse(o.args[0]);
          const auto t = coding::parse_cohen_seq(o.args[1]);
          const auto f = amoeba::LabelRule::parse(o.f_rule);
          const auto r = amoeba::projection_search(q, t, f, o.budget);
          if (!r) {
            p.result("not-found", {{"budget", std::to_string(o.budget)}});
            return kFailed;
          }
          p.result(r->to_text(), {{"label", coding::to_text(amoeba::h_label(*r, f))}}, false);
          return kOk;
        }}},
      {"enum",
       {{1, 1},
        [](const Options& o, Printer& p) {
          p.result(coding::to_text(coding::enum_seq(parse_natural(o.args[0]))));
          return kOk;
        }}},
      {"code",
       {{1, 1},
        [](const Options& o, Printer& p) {
          p.result(coding::CohenEntry::encoding(coding::parse_fin_seq(o.args[0])).to_text());
          return kOk;
        }}},
      {"cover",
       {{3, 1u << 12},
        [](const Options& o, Printer& p) {
          const std::size_t ell = parse_count(o.args[0]);
          const auto s = coding::parse_cohen_seq(o.args[1]);
          std::vector<coding::FnRep> xs;
          for (std::size_t i = 2; i < o.args.size(); ++i) xs.push_back(coding::FnRep::parse(o.args[i]));
          const auto w = coding::cover_witness(xs, ell, s);
          p.result(coding::to_text(w.extension), {{"separation", std::to_string(w.separation)},
                                                   {"cover", w.cover.to_text()}});
          return kOk;
        }}},
      {"bstep",
       {{3, 3},
        [](const Options& o, Printer& p) {
          const auto x = coding::FnRep::parse(o.args[0]);
          const auto y = coding::FnRep::parse(o.args[1]);
          const auto iv = coding::b_step(x, y, parse_count(o.args[2]));
          p.result(iv.to_text(), {{"length", iv.length().to_string()}});
          return kOk;
        }}},
      {"btail",
       {{4, 4},
        [](const Options& o, Printer& p) {
          const auto x = coding::FnRep::parse(o.args[0]);
          const auto y = coding::FnRep::parse(o.args[1]);
          const std::size_t n = parse_count(o.args[2]);
          const std::size_t last = parse_count(o.args[3]);
          if (n >= last) throw CLI::ValidationError("btail needs N < LAST");
          const auto u = coding::b_tail(x, y, n, last);
          p.result(u.to_text(), {{"length", u.length().to_string()}});
          return kOk;
        }}},
  };
  return table;
}

int run_check(const Options& o, std::ostream& out) {
  const auto suite = parse_suite(o.args[0]);
  if (!suite) throw CLI::ValidationError("unknown suite '" + o.args[0] + "'");
  SuiteParams params;
  params.seed = o.seed;
  params.trials = o.trials;
  params.depth = o.depth;
  params.f = amoeba::LabelRule::parse(o.f_rule);
  Report report;
  report.seed = o.seed;
  report.records = run_suite(*suite, params);
  emit_report(report, o.format == "jsonl" ? Format::JsonLines : Format::Text, out);
  const bool all_pass = std::all_of(report.records.begin(), report.records.end(),
                                    [](const CheckRecord& r) { return r.outcome == Outcome::Pass; });
  return all_pass ? kOk : kFailed;
}

// "@path" stands for the contents of a condition file, surrounding whitespace removed.
void expand_file_args(std::vector<std::string>& args) {
  for (auto& a : args) {
    if (!a.starts_with('@')) continue;
    std::ifstream in(a.substr(1));
    if (!in) throw CLI::ValidationError("cannot read " + a.substr(1));
    std::ostringstream ss;
    ss << in.rdbuf();
    std::string text = ss.str();
    const auto first = text.find_first_not_of(" \t\r\n");
    const auto last = text.find_last_not_of(" \t\r\n");
    a = first == std::string::npos ? std::string() : text.substr(first, last - first + 1);
  }
}

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite combinatorics of the Amoeba forcing and its relatives", "forcing"};
  app.require_subcommand(1);
  app.add_option("--depth", o.depth, "support-depth bound for generated inputs");
  app.add_option("--seed", o.seed, "random seed");
  app.add_option("--format", o.format, "output format")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--f-rule", o.f_rule, "label rule: 'ruler' or a function");
  app.add_option("--trials", o.trials, "random instances per property");

  std::map<std::string, CLI::App*> subs;
  for (const auto& [name, entry] : handlers()) {
    auto* sub = app.add_subcommand(name);
    sub->fallthrough();
    sub->add_option("args", o.args)->required()->allow_extra_args();
    if (name == "densify") {
      sub->add_option("--to", o.densify_to)->check(CLI::IsMember({"aprime", "app"}));
    }
    if (name == "project") sub->add_option("--budget", o.budget);
    subs[name] = sub;
  }
  auto* check = app.add_subcommand("check");
  check->fallthrough();
  check->add_option("suite", o.args)->required();

  std::vector<std::string> reversed(argv.rbegin(), argv.rend());
  try {
    app.parse(reversed);
    if (check->parsed()) {
      need_args(o, 1, 1);
    } else {
      for (const auto& [name, entry] : handlers()) {
        if (subs[name]->parsed()) need_args(o, entry.first.first, entry.first.second);
      }
    }
    expand_file_args(o.args);
  } catch (const CLI::CallForHelp&) {
    out << kGrammar;
    return kOk;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return kUsage;
  }

  try {
    if (check->parsed()) return run_check(o, out);
    for (const auto& [name, entry] : handlers()) {
      if (!subs[name]->parsed()) continue;
      Printer printer(name, o, out);
      return entry.second(o, printer);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return kUsage;
  } catch (const CLI::Error& e) {
    err << "error: " << e.what() << '\n' << kGrammar;
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}

}  // namespace forcing::cli
