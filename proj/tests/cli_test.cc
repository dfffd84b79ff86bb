// Copyright 2026 The FAQS Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "commands.h"

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "exit_codes.h"
#include "fuzz.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "support/test_util.h"

namespace faqs::cli {
namespace {

using ::faqs::testing::ReadFile;
using ::faqs::testing::TempPath;
using ::faqs::testing::WriteTemp;

constexpr char kExample[] =
    "141.92.0.0/16 1\n"
    "141.92.64.0/18 1\n"
    "141.92.0.0/19 1\n"
    "141.92.192.0/19 2\n"
    "141.92.224.0/19 2\n";

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "faqs");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = Main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json ReadJson(const std::string& path) {
  return nlohmann::json::parse(ReadFile(path));
}

TEST(AggregateCommandTest, ExampleTable) {
  const std::string rib = WriteTemp("rib.txt", kExample);
  const std::string out = TempPath("agg.txt");
  const std::string stats = TempPath("stats.json");
  Outcome r = Invoke({"aggregate", "--rib", rib, "--family", "v4", "--out", out,
                  "--stats", stats});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadFile(out), "141.92.0.0/16 1\n141.92.192.0/18 2\n");
  EXPECT_DOUBLE_EQ(ReadJson(stats)["ratio"].get<double>(), 0.4);
  EXPECT_EQ(ReadJson(stats)["n_u"].get<int>(), 0);
}

TEST(AggregateCommandTest, EmptyRib) {
  const std::string out = TempPath("agg.txt");
  Outcome r = Invoke({"aggregate", "--rib", WriteTemp("rib.txt", ""), "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadFile(out), "");
  r = Invoke({"aggregate", "--rib", WriteTemp("rib2.txt", "0.0.0.0/0 3\n"),
              "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadFile(out), "0.0.0.0/0 3\n");
}

TEST(AggregateCommandTest, ToyFamily) {
  const std::string out = TempPath("agg.txt");
  Outcome r = Invoke({"aggregate", "--rib", WriteTemp("rib.txt", "0/1 1\n1/1 1\n"),
                  "--family", "w4", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadFile(out), "0000/0 1\n");
}

TEST(AggregateCommandTest, ErrorCodes) {
  const std::string out = TempPath("agg.txt");
  EXPECT_EQ(Invoke({"aggregate", "--rib", WriteTemp("bad.txt", "10.0.0.1/8 1\n"),
                    "--out", out})
                .code,
            tools::kExitParse);
  EXPECT_EQ(Invoke({"aggregate", "--rib",
                    WriteTemp("dup.txt", "10.0.0.0/8 1\n10.0.0.0/8 1\n"),
                    "--out", out})
                .code,
            tools::kExitParse);
  EXPECT_EQ(Invoke({"aggregate", "--rib", TempPath("missing.txt"), "--out", out})
                .code,
            tools::kExitIo);
  EXPECT_EQ(Invoke({"aggregate", "--rib", WriteTemp("rib.txt", kExample),
                    "--out", "/nonexistent-dir/out.txt"})
                .code,
            tools::kExitIo);
  EXPECT_EQ(Invoke({"aggregate", "--rib", WriteTemp("rib.txt", kExample),
                    "--family", "v5", "--out", out})
                .code,
            tools::kExitUsage);
}

TEST(ReplayCommandTest, SingleAnnouncement) {
  const std::string report = TempPath("report.json");
  Outcome r = Invoke({"replay", "--rib", WriteTemp("rib.txt", kExample), "--updates",
                  WriteTemp("u.txt", "A 141.92.0.0/16 2\n"), "--family", "v4",
                  "--report", report, "--oracle-every", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = ReadJson(report);
  EXPECT_EQ(j["n_u"].get<int>(), 1);
  EXPECT_EQ(j["n_c"].get<int>(), 4);
  EXPECT_EQ(j["b_max"].get<int>(), 4);
  EXPECT_NE(r.out.find("n_u"), std::string::npos);
}

TEST(ReplayCommandTest, NoOpAnnouncements) {
  const std::string report = TempPath("report.json");
  Outcome r = Invoke({"replay", "--rib", WriteTemp("rib.txt", kExample), "--updates",
                  WriteTemp("u.txt", "A 141.92.0.0/16 1\nA 141.92.0.0/20 1\n"
                                     "A 141.92.224.0/19 2\n"),
                  "--report", report});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadJson(report)["n_c"].get<int>(), 0);
  EXPECT_DOUBLE_EQ(ReadJson(report)["burst0_pct"].get<double>(), 100.0);
}

TEST(ReplayCommandTest, OracleEveryUpdateOnRandomToyTrace) {
  auto c = tools::GenerateFuzzCase(
      {.width = 8, .updates = 10000, .hops = 4, .seed = 2});
  ASSERT_TRUE(c.ok());
  std::string rib, trace;
  for (const auto& [p, hop] : c->initial) {
    rib += p.ToString() + " " + std::to_string(hop.id) + "\n";
  }
  for (const RouteUpdate& u : c->updates) trace += FormatUpdate(u) + "\n";
  const std::string report = TempPath("report.json");
  Outcome r = Invoke({"replay", "--rib", WriteTemp("rib.txt", rib), "--updates",
                  WriteTemp("u.txt", trace), "--family", "w8", "--report",
                  report, "--oracle-every", "1", "--series-every", "1000"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(ReadJson(report)["n_u"].get<int>(), 10000);
  const std::string csv = ReadFile(report + ".series.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 11);
}

TEST(ReplayCommandTest, ErrorCodes) {
  const std::string rib = WriteTemp("rib.txt", kExample);
  const std::string report = TempPath("report.json");
  Outcome bad = Invoke({"replay", "--rib", rib, "--updates",
                    WriteTemp("u.txt", "A 10.0.0.0/8 1\nA 10.0.0.0/8\n"),
                    "--report", report});
  EXPECT_EQ(bad.code, tools::kExitParse);
  EXPECT_NE(bad.err.find("line 2"), std::string::npos) << bad.err;
  EXPECT_EQ(Invoke({"replay", "--rib", rib, "--updates", TempPath("none.txt"),
                    "--report", report})
                .code,
            tools::kExitIo);
}

TEST(VerifyCommandTest, Examples) {
  const std::string rib = WriteTemp("rib.txt", kExample);
  EXPECT_EQ(Invoke({"verify", "--rib", rib, "--aggregated",
                    WriteTemp("t2.txt", "141.92.0.0/16 1\n141.92.192.0/18 2\n"),
                    "--family", "v4"})
                .code,
            0);
  EXPECT_EQ(Invoke({"verify", "--rib", rib, "--aggregated",
                    WriteTemp("t1b.txt", "141.92.0.0/16 1\n141.92.192.0/19 2\n"
                                         "141.92.224.0/19 2\n")})
                .code,
            0);
  Outcome r = Invoke({"verify", "--rib", rib, "--aggregated",
                  WriteTemp("bad.txt", "141.92.0.0/16 1\n141.92.192.0/18 1\n")});
  EXPECT_EQ(r.code, tools::kExitEquivalence);
  // The reported region lies under the edited /18.
  const bool under = r.err.find("region 141.92.192.0/") != std::string::npos ||
                     r.err.find("region 141.92.224.0/") != std::string::npos;
  EXPECT_TRUE(under) << r.err;
}

TEST(FuzzCommandTest, RunsAndIsDeterministic) {
  Outcome a = Invoke({"fuzz", "--width", "8", "--updates", "2000", "--hops", "4",
                  "--seed", "1"});
  Outcome b = Invoke({"fuzz", "--width", "8", "--updates", "2000", "--hops", "4",
                  "--seed", "1"});
  EXPECT_EQ(a.code, 0) << a.out;
  EXPECT_EQ(a.out, b.out);
  Outcome zero = Invoke({"fuzz", "--updates", "0"});
  EXPECT_EQ(zero.code, 0);
}

TEST(MainTest, UsageErrors) {
  EXPECT_EQ(Invoke({}).code, tools::kExitUsage);
  EXPECT_EQ(Invoke({"frobnicate"}).code, tools::kExitUsage);
  EXPECT_EQ(Invoke({"aggregate", "--rib", "x"}).code, tools::kExitUsage);
  EXPECT_EQ(Invoke({"fuzz", "--width", "nope"}).code, tools::kExitUsage);
  EXPECT_EQ(Invoke({"fuzz", "--width", "3"}).code, tools::kExitUsage);
  Outcome help = Invoke({"--help"});
  EXPECT_EQ(help.code, 0);
  EXPECT_NE(help.out.find("aggregate"), std::string::npos);
}

}  // namespace
}  // namespace faqs::cli
