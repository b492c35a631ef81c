// Copyright 2026 The splitrt Authors
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

#include "cli.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace splitrt::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "splitrt");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli_main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

TEST(CliTest, VerifyHistogramConfirmsEquivalence) {
  auto r = Invoke({"verify", "histogram", "--workers", "2", "--blocks-per-worker", "8", "--rows", "20000"});
  EXPECT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("mode equivalence confirmed"), std::string::npos) << r.out;
}

TEST(CliTest, MissingSubcommandIsUsageError) {
  auto r = Invoke({});
  EXPECT_EQ(r.code, kExitUsage);
  EXPECT_NE(r.err.find("Usage"), std::string::npos);
}

TEST(CliTest, UnknownFlagIsUsageError) {
  EXPECT_EQ(Invoke({"bench", "histogram", "--frobnicate", "3"}).code, kExitUsage);
}

TEST(CliTest, UnknownAppOrModeIsUsageError) {
  EXPECT_EQ(Invoke({"bench", "sorting"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bench", "histogram", "--mode", "turbo"}).code, kExitUsage);
  EXPECT_EQ(Invoke({"bench"}).code, kExitUsage);
}

TEST(CliTest, HelpExitsZero) {
  auto r = Invoke({"--help"});
  EXPECT_EQ(r.code, kExitOk);
  EXPECT_NE(r.out.find("bench"), std::string::npos);
}

TEST(CliTest, BenchKmeansWritesCsvFile) {
  const auto path = std::filesystem::temp_directory_path() / "splitrt_cli_test_out.csv";
  std::filesystem::remove(path);
  auto r = Invoke({"bench", "kmeans", "--mode", "spliter", "--csv", path.string(), "--rows", "2000",
                "--k", "3", "--iters", "2"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::ifstream in(path);
  ASSERT_TRUE(in.good());
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header.rfind("app,mode,workers,", 0), 0u);
  std::string line;
  int rows = 0;
  while (std::getline(in, line)) {
    ++rows;
    EXPECT_EQ(line.rfind("kmeans,spliter,", 0), 0u);
  }
  EXPECT_EQ(rows, 2);
  std::filesystem::remove(path);
}

TEST(CliTest, BenchToStdoutHonoursLists) {
  auto r = Invoke({"bench", "histogram", "--rows", "3000", "--workers", "1,2", "--mode", "baseline,rechunk",
                "--seed", "4", "--reps", "2", "--sched-overhead-us", "2", "--latency-us", "1",
                "--bandwidth-mbps", "8"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  // 2 worker counts x 2 modes x (2 reps + 1 aggregate).
  EXPECT_EQ(rows, 12);
  EXPECT_NE(r.out.find("histogram,rechunk,2,1,4,"), std::string::npos);
}

TEST(CliTest, SweepDefaultsToFourBlockCounts) {
  auto r = Invoke({"sweep", "histogram", "--rows", "2000", "--mode", "spliter"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  for (const char* cell : {"1,1000,", "4,250,", "16,63,", "48,21,"}) {
    EXPECT_NE(r.out.find(std::string("histogram,spliter,2,1,") + cell), std::string::npos) << cell;
  }
}

}  // namespace
}  // namespace splitrt::cli
