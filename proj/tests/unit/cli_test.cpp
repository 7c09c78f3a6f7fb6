#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "forcing/aux/aux_posets.hpp"

#include "forcing/cli/checks.hpp"
#include "forcing/cli/report.hpp"
#include "forcing/cli/run.hpp"

namespace forcing::cli {
namespace {

struct Outcome3 {
  int status;
  std::string out, err;
};

Outcome3 call(std::vector<std::string> argv) {
  std::ostringstream out, err;
  const int status = run(argv, out, err);
  return {status, out.str(), err.str()};
}

TEST(Run, Examples) {
  EXPECT_EQ(call({"canon", "00,01"}).out, "0\n");
  EXPECT_EQ(call({"measure", "00,010"}).out, "3/8\n");
  EXPECT_EQ(call({"label", "4|00,010"}).out, "0,2,0\n");
  EXPECT_EQ(call({"code", "3,0,5"}).out, "44848\n");
  EXPECT_EQ(call({"enum", "100"}).out, "1,0,1,0,0,0\n");
  EXPECT_EQ(call({"bstep", ";const:7", "0,0,10;const:0", "2"}).out, "[3/2^2, 4/2^2) length=1/4\n");
}

TEST(Run, ExitStatuses) {
  EXPECT_EQ(call({"canon", "00,01"}).status, 0);
  const auto bad = call({"canon", "0,2"});
  EXPECT_EQ(bad.status, 2);
  EXPECT_NE(bad.err.find("position"), std::string::npos);
  EXPECT_EQ(call({}).status, 2);
  EXPECT_EQ(call({"frobnicate"}).status, 2);
  EXPECT_EQ(call({"label", "2|-"}).status, 1);
  EXPECT_EQ(call({"meet", "4|00,010,0110", "4|00,010,0111"}).status, 1);
  EXPECT_EQ(call({"check", "nosuch"}).status, 2);
}

TEST(Run, JsonLines) {
  const auto r = call({"--format", "jsonl", "canon", "00,01"});
  EXPECT_EQ(r.out, R"({"command":"canon","args":["00,01"],"result":"0","was_canonical":"false"})"
                   "\n");
}

TEST(Run, FileArguments) {
  const std::string path = testing::TempDir() + "cond.txt";
  std::ofstream(path) << "4|00,010\n";
  EXPECT_EQ(call({"label", "@" + path}).out, "0,2,0\n");
  std::remove(path.c_str());
  EXPECT_EQ(call({"label", "@" + path}).status, 2);
}

TEST(Formats, PrinterParserRoundTrip) {
  for (const char* t : {"-", "e", "00,010", "011,1"}) {
    EXPECT_EQ(cantor::to_text(cantor::parse_clopen(t).set), t);
  }
  for (const char* t : {"3|00,010", "0|-", "2|-"}) {
    EXPECT_EQ(amoeba::StemCondition::parse(t).to_text(), t);
  }
  for (const char* t : {"3,0,5;const:0", "1,2;id+4", ";const:7", ";id+0"}) {
    EXPECT_EQ(coding::FnRep::parse(t).to_text(), t);
  }
  for (const char* t : {"()", "3,0,5"}) {
    EXPECT_EQ(coding::to_text(coding::parse_cohen_seq(t)), t);
  }
  for (const char* t : {"3,9|;const:2", "()|1;id+0"}) {
    EXPECT_EQ(aux::HechlerCond::parse(t).to_text(), t);
  }
  for (const char* t : {"4|;const:3", "()|-", "1,2|;const:0;;id+1"}) {
    EXPECT_EQ(aux::EvDiffCond::parse(t).to_text(), t);
  }
  for (const char* t : {"{5},{1,3}|;const:3", "()|-"}) {
    EXPECT_EQ(aux::LocCond::parse(t).to_text(), t);
  }
  EXPECT_EQ(amoeba::LabelRule::parse("ruler").to_text(), "ruler");
}

TEST(Report, Shapes) {
  std::ostringstream empty;
  emit_report(Report{}, Format::Text, empty);
  EXPECT_EQ(empty.str(), "summary: total=0 pass=0 fail=0 infeasible=0 not-found=0 seed=0\n");

  Report one;
  one.records.push_back({"x.y", digest("x"), Outcome::Pass, {{"trials", "1"}}});
  std::ostringstream text, json;
  emit_report(one, Format::Text, text);
  emit_report(one, Format::JsonLines, json);
  const std::string lines = text.str();
  EXPECT_EQ(std::count(lines.begin(), lines.end(), '\n'), 2);
  EXPECT_EQ(json.str(),
            "{\"check\":\"x.y\",\"inputs\":\"" + digest("x") +
                "\",\"outcome\":\"pass\",\"values\":{\"trials\":\"1\"}}\n"
                "{\"summary\":{\"total\":1,\"pass\":1,\"fail\":0,\"infeasible\":0,"
                "\"not-found\":0,\"seed\":\"0\"}}\n");
}

TEST(Report, DigestIsFnv1a) {
  EXPECT_EQ(digest(""), "cbf29ce484222325");
  EXPECT_EQ(digest("a"), "af63dc4c8601ec8c");
}

TEST(Checks, DeterministicForSeed) {
  SuiteParams p;
  p.seed = 42;
  p.trials = 50;
  const auto a = call({"check", "clopen", "--seed", "42", "--trials", "50"});
  const auto b = call({"check", "clopen", "--seed", "42", "--trials", "50"});
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.status, 0);
  const auto r1 = run_suite(Suite::Star, p), r2 = run_suite(Suite::Star, p);
  ASSERT_EQ(r1.size(), r2.size());
  for (std::size_t i = 0; i < r1.size(); ++i) EXPECT_EQ(r1[i].values, r2[i].values);
}

}  // namespace
}  // namespace forcing::cli
