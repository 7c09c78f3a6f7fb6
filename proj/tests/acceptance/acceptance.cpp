// Runs each acceptance criterion and prints one PASS/FAIL line per criterion.
// Usage: acceptance <forcing binary> <golden dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "forcing/cli/checks.hpp"

namespace {

using forcing::cli::CheckRecord;
using forcing::cli::Outcome;
using forcing::cli::Suite;

struct Verdict {
  bool ok = true;
  std::string note;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    ok = false;
    if (!note.empty()) note += "; ";
    note += what;
  }
};

struct SuiteRun {
  std::map<std::string, CheckRecord> records;
  double seconds = 0;
};

SuiteRun run(Suite s) {
  const auto start = std::chrono::steady_clock::now();
  SuiteRun r;
  for (auto& rec : forcing::cli::run_suite(s, forcing::cli::SuiteParams{})) {
    r.records.emplace(rec.name, std::move(rec));
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string value(const CheckRecord& r, const std::string& key) {
  for (const auto& [k, v] : r.values) {
    if (k == key) return v;
  }
  return "";
}

long number(const CheckRecord& r, const std::string& key) {
  const auto v = value(r, key);
  return v.empty() ? -1 : std::stol(v);
}

// The record exists, passed, and ran at least min_trials instances.
void expect_record(Verdict& v, const SuiteRun& s, const std::string& name, long min_trials = 1) {
  const auto it = s.records.find(name);
  if (it == s.records.end()) {
    v.require(false, name + " missing");
    return;
  }
  v.require(it->second.outcome == Outcome::Pass, name + " " + to_string(it->second.outcome));
  v.require(number(it->second, "trials") >= min_trials,
            name + " trials=" + value(it->second, "trials") + " < " + std::to_string(min_trials));
}

void expect_time(Verdict& v, const SuiteRun& s, double limit) {
  v.require(s.seconds < limit, "runtime " + std::to_string(s.seconds) + "s");
}

struct Shell {
  int status;
  std::string out;
};

Shell shell(const std::string& command) {
  Shell r{-1, ""};
  FILE* pipe = popen((command + " 2>/dev/null").c_str(), "r");
  if (!pipe) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, n);
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(int id, const Verdict& v, const std::string& what, double seconds) {
  char t[32];
  std::snprintf(t, sizeof t, "%.2fs", seconds);
  std::cout << "criterion " << id << ": " << (v.ok ? "PASS" : "FAIL") << "  " << what << " ["
            << t << "]";
  if (!v.ok) std::cout << "  " << v.note;
  std::cout << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: acceptance <forcing binary> <golden dir>\n";
    return 2;
  }
  const std::string tool = argv[1], golden = argv[2];
  bool all = true;

  {
    auto s = run(Suite::Clopen);
    Verdict v;
    for (const char* name : {"canonicalize", "measure", "union", "intersect", "complement",
                             "is_subset", "mass_below", "residual_mass"}) {
      expect_record(v, s, std::string("clopen.") + name, 1000);
    }
    v.require(value(s.records["clopen.measure"], "depth") == "10", "depth != 10");
    expect_time(v, s, 30);
    report(1, v, "clopen algebra vs leaf enumeration, exact, >=1000 inputs, depth 10, <30s",
           s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Star);
    Verdict v;
    expect_record(v, s, "star.sibling_equivalence", 1000);
    expect_record(v, s, "star.canonical_views", 1000);
    report(2, v, "check_star == no sibling pair on >=1000 level functions, depth 8", s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Embedding);
    Verdict v;
    expect_record(v, s, "embedding.order", 500);
    expect_record(v, s, "embedding.incompatibility", 500);
    expect_record(v, s, "embedding.freeze_oracle", 1);
    expect_record(v, s, "embedding.freeze_supersets", 1);
    expect_record(v, s, "embedding.freeze_examples", 3);
    expect_record(v, s, "embedding.densify", 1);
    v.require(value(s.records["embedding.freeze_oracle"], "horizon") == "6", "horizon != 6");
    expect_time(v, s, 120);
    report(3, v, "embedding order/incompatibility, freeze oracle at horizon 6, densify clauses, <2min",
           s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Window);
    Verdict v;
    expect_record(v, s, "window.densify_app", 200);
    expect_record(v, s, "window.h_unique", 200);
    expect_record(v, s, "window.h_monotone", 200);
    expect_record(v, s, "window.label_example", 1);
    report(4, v, "window inequalities, unique h window, label monotone, label 0,2,0", s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Meet);
    Verdict v;
    expect_record(v, s, "meet.family_window", 1);
    expect_record(v, s, "meet.mass_bound", 1);
    expect_record(v, s, "meet.sufficient", 1);
    expect_record(v, s, "meet.examples", 3);
    report(5, v, "meet mass bound and sufficient condition over n<=6, k<=16", s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Coding);
    Verdict v;
    expect_record(v, s, "coding.index_roundtrip", 10000);
    expect_record(v, s, "coding.tiling", 9);
    expect_record(v, s, "coding.b_tail_bound", 200);
    expect_record(v, s, "coding.cover", 7);
    expect_record(v, s, "coding.replay", 100);
    expect_record(v, s, "coding.examples", 1);
    v.require(value(s.records["coding.cover"], "max_ell") == "6", "max_ell != 6");
    expect_time(v, s, 60);
    report(6, v, "enumeration roundtrip 10^4, tiling n<=8, tail bound, covers l<=6, replay, <1min",
           s.seconds);
    all &= v.ok;
  }
  {
    auto s = run(Suite::Aux);
    Verdict v;
    for (const char* name : {"aux.cohen_laws", "aux.hechler_laws", "aux.ev_laws", "aux.loc_laws"}) {
      expect_record(v, s, name, 1000);
    }
    expect_record(v, s, "aux.ev_glb", 1);
    expect_record(v, s, "aux.loc_ceiling", 1);
    expect_record(v, s, "aux.hypothesis", 1);
    const auto& ceiling = s.records["aux.loc_ceiling"];
    v.require(number(ceiling, "feasible") > 0 && number(ceiling, "infeasible") > 0,
              "ceiling not witnessed both ways");
    report(7, v, "order laws >=1000 triples, glb, side ceiling, hypothesis instances", s.seconds);
    all &= v.ok;
  }
  {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    for (const auto& [format, file] : {std::pair{"text", "check_all_seed0.txt"},
                                       std::pair{"jsonl", "check_all_seed0.jsonl"}}) {
      const std::string cmd = tool + " --format " + format + " check all --seed 0";
      const auto first = shell(cmd), second = shell(cmd);
      v.require(first.status == 0, std::string(format) + " run exit " + std::to_string(first.status));
      v.require(first.out == second.out, std::string(format) + " runs differ");
      v.require(first.out == slurp(golden + "/" + file), std::string(format) + " differs from golden");
    }
    const std::vector<std::pair<std::string, int>> matrix{
        {"canon 00,01", 0},
        {"measure 00,010", 0},
        {"label '4|00,010'", 0},
        {"check star --trials 20", 0},
        {"label '2|-'", 1},
        {"meet '4|00,010,0110' '4|00,010,0111'", 1},
        {"cover 1 '()' ';const:0' ';const:0'", 1},
        {"canon 0,2", 2},
        {"", 2},
        {"frobnicate", 2},
        {"check nosuch", 2},
        {"--format xml canon 0", 2},
    };
    for (const auto& [args, expected] : matrix) {
      const int got = shell(tool + " " + args).status;
      v.require(got == expected, "'" + args + "' exit " + std::to_string(got) + " != " +
                                     std::to_string(expected));
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    report(8, v, "golden reports byte-identical for seed 0 (text, jsonl), exit-status matrix", secs);
    all &= v.ok;
  }
  return all ? 0 : 1;
}
