// Copyright 2026 The mtstreams Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <sstream>

#include "mtstreams/cli.hpp"
#include "test_support.hpp"

namespace mts::cli {
namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "mtstreams");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = testing::scratch_dir(::testing::UnitTest::GetInstance()->current_test_info()->name());
    stats::Battery b;
    b.name = "cli-quick";
    b.tests = {{"lc", stats::LinearCompParams{45000, 0}}, {"serial", stats::SerialParams{20000, 64}}};
    write_file_bytes(path("quick.json"), stats::battery_to_json(b).dump());
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::filesystem::path dir_;
};

TEST_F(Cli, GenWritesSetAndPrintsFingerprint) {
  const auto r = run_cli({"gen", "--technique", "indexed", "--count", "5", "--out", path("a")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("technique=indexed seed=0 count=5"), std::string::npos);
  const std::string fp = sha256_hex(read_file_bytes(path("a/manifest.txt")));
  EXPECT_NE(r.out.find("fingerprint " + fp), std::string::npos);
  EXPECT_EQ(parse_status(read_file_bytes(path("a/indexed_00004.mts"))), init_genrand(4));

  const auto again = run_cli({"gen", "--technique", "indexed", "--count", "5", "--out", path("b")});
  EXPECT_EQ(again.out, r.out);
  EXPECT_EQ(run_cli({"verify", "--dir", path("a"), "--dir", path("b")}).code, 0);
}

TEST_F(Cli, GenDefaultsAndUsageErrors) {
  auto r = run_cli({"gen", "--technique", "split", "--count", "2", "--out", path("s")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("seed=5489 spacing=1000000 count=2"), std::string::npos);
  EXPECT_EQ(parse_status(read_file_bytes(path("s/split_00001.mts"))), advanced(init_genrand(5489), 1000000));

  EXPECT_EQ(run_cli({"gen", "--technique", "split", "--count", "2", "--spacing", "0", "--out", path("z")}).code, 1);
  EXPECT_FALSE(std::filesystem::exists(path("z")));
  EXPECT_EQ(run_cli({"gen", "--technique", "split", "--count", "2", "--spacing", "0", "--lenient", "--out", path("z")}).code, 0);
  EXPECT_EQ(run_cli({"gen", "--technique", "indexed", "--count", "2", "--spacing", "5", "--out", path("y")}).code, 1);
  EXPECT_EQ(run_cli({"gen", "--technique", "bogus", "--count", "2", "--out", path("y")}).code, 1);
  EXPECT_EQ(run_cli({"gen", "--technique", "random", "--count", "0", "--out", path("y")}).code, 1);
  EXPECT_EQ(run_cli({"gen", "--technique", "random", "--out", path("y")}).code, 1);
  EXPECT_EQ(run_cli({}).code, 1);
  EXPECT_EQ(run_cli({"frobnicate"}).code, 1);
}

TEST_F(Cli, GenReportsUnwritableOutput) {
  write_file_bytes(path("file"), "x");
  EXPECT_EQ(run_cli({"gen", "--technique", "indexed", "--count", "1", "--out", path("file/sub")}).code, 2);
}

TEST_F(Cli, HelpDocumentsDefaults) {
  const auto top = run_cli({"--help"});
  EXPECT_EQ(top.code, 0);
  EXPECT_NE(top.out.find("mini-crush-v1"), std::string::npos);
  EXPECT_NE(top.out.find("1e-10"), std::string::npos);
  const auto test = run_cli({"test", "--help"});
  EXPECT_EQ(test.code, 0);
  EXPECT_NE(test.out.find("[mini-crush-v1]"), std::string::npos);
  EXPECT_NE(test.out.find("[1e-10]"), std::string::npos);
  EXPECT_NE(test.out.find("logical cores"), std::string::npos);
  for (const char* sub : {"gen", "report", "registry", "verify"}) EXPECT_EQ(run_cli({sub, "--help"}).code, 0) << sub;
}

TEST_F(Cli, TestReportRegistryPipeline) {
  ASSERT_EQ(run_cli({"gen", "--technique", "random", "--count", "3", "--out", path("set")}).code, 0);
  const auto t = run_cli({"test", "--dir", path("set"), "--battery", path("quick.json"), "--mode", "both", "--jobs", "2",
                          "--expected-fail", "lc", "--strict", "--out", path("r.jsonl")});
  ASSERT_EQ(t.code, 0) << t.err;
  EXPECT_NE(t.out.find("statuses 3 modes 2 suspect 0"), std::string::npos);
  const auto records = report::parse_results_jsonl(read_file_bytes(path("r.jsonl")));
  EXPECT_EQ(records.size(), 12u);
  EXPECT_EQ(std::count_if(records.begin(), records.end(), [](const auto& r) { return r.mode == "real"; }), 6);

  const auto md = run_cli({"report", "--results", path("r.jsonl"), "--expected-fail", "lc"});
  ASSERT_EQ(md.code, 0) << md.err;
  EXPECT_NE(md.out.find("| random | int | 0 | 3 | 0.00 |"), std::string::npos);
  const auto js = run_cli({"report", "--results", path("r.jsonl"), "--expected-fail", "lc", "--format", "json",
                           "--tables", "summary,pertest"});
  ASSERT_EQ(js.code, 0) << js.err;
  const auto j = nlohmann::json::parse(js.out);
  EXPECT_FALSE(j.contains("histogram"));
  EXPECT_EQ(j["pertest"][0]["test_id"], "lc");
  EXPECT_EQ(j["pertest"][0]["fraction"], 1.0);
  EXPECT_EQ(j["expected_fail"], nlohmann::json::array({"lc"}));
  EXPECT_EQ(run_cli({"report", "--results", path("r.jsonl"), "--tables", "bogus"}).code, 1);

  const auto reg = run_cli({"registry", "--results", path("r.jsonl"), "--expected-fail", "lc", "--out", path("reg.txt")});
  ASSERT_EQ(reg.code, 0) << reg.err;
  const std::string text = read_file_bytes(path("reg.txt"));
  EXPECT_NE(text.find("random 2 " + sha256_hex(read_file_bytes(path("set/random_00002.mts")))), std::string::npos);
  EXPECT_TRUE(std::filesystem::exists(path("reg.txt.json")));
  EXPECT_EQ(run_cli({"registry", "--results", path("r.jsonl"), "--out", path("x")}).code, 1);

  // Without the expected-failure allowance every status is Suspect.
  const auto strict = run_cli({"test", "--status", path("set/random_00000.mts"), "--battery", path("quick.json"),
                               "--expected-fail", "", "--strict", "--out", path("s.jsonl")});
  EXPECT_EQ(strict.code, 3) << strict.err;
  const auto lax = run_cli({"test", "--status", path("set/random_00000.mts"), "--battery", path("quick.json"),
                            "--expected-fail", "", "--out", path("s.jsonl")});
  EXPECT_EQ(lax.code, 0);
}

TEST_F(Cli, RegistryEntriesRetestGood) {
  ASSERT_EQ(run_cli({"gen", "--technique", "split", "--count", "4", "--spacing", "4096", "--out", path("set")}).code, 0);
  ASSERT_EQ(run_cli({"test", "--dir", path("set"), "--battery", path("quick.json"), "--mode", "both", "--expected-fail",
                     "lc", "--out", path("r.jsonl")}).code, 0);
  ASSERT_EQ(run_cli({"registry", "--results", path("r.jsonl"), "--expected-fail", "lc", "--out", path("reg.txt")}).code, 0);
  std::istringstream lines(read_file_bytes(path("reg.txt")));
  int entries = 0;
  for (std::string line; std::getline(lines, line);) {
    if (line.starts_with("#")) continue;
    std::istringstream fields(line);
    std::string technique, sha;
    std::uint64_t index = 0;
    fields >> technique >> index >> sha;
    const std::string file = path("set/" + status_filename(*parse_technique(technique), index));
    EXPECT_EQ(sha256_hex(read_file_bytes(file)), sha);
    const auto again = run_cli({"test", "--status", file, "--battery", path("quick.json"), "--mode", "both",
                                "--expected-fail", "lc", "--strict", "--out", path("one.jsonl")});
    EXPECT_EQ(again.code, 0) << line;
    ++entries;
  }
  EXPECT_EQ(entries, 4);
}

TEST_F(Cli, TestErrors) {
  EXPECT_EQ(run_cli({"test", "--dir", path("none"), "--out", path("o")}).code, 2);
  EXPECT_EQ(run_cli({"test", "--out", path("o")}).code, 1);
  EXPECT_EQ(run_cli({"test", "--dir", path("x"), "--status", path("y"), "--out", path("o")}).code, 1);
  std::filesystem::create_directories(path("set"));
  write_file_bytes(path("set/bad.mts"), "MT19937-STATUS v1\n");
  const auto bad = run_cli({"test", "--dir", path("set"), "--battery", path("quick.json"), "--expected-fail", "lc", "--out", path("o")});
  EXPECT_EQ(bad.code, 2) << bad.err;
  const auto skip = run_cli({"test", "--dir", path("set"), "--battery", path("quick.json"), "--expected-fail", "lc", "--skip-unreadable",
                             "--out", path("o")});
  EXPECT_EQ(skip.code, 0) << skip.err;
  EXPECT_NE(skip.err.find("skipped"), std::string::npos);
  EXPECT_EQ(run_cli({"test", "--dir", path("set"), "--battery", path("nope.json"), "--out", path("o")}).code, 2);
  EXPECT_EQ(run_cli({"test", "--dir", path("set"), "--threshold", "0.7", "--out", path("o")}).code, 1);
  EXPECT_EQ(run_cli({"test", "--dir", path("set"), "--expected-fail", "ghost", "--out", path("o")}).code, 1);
  EXPECT_EQ(run_cli({"test", "--dir", path("set"), "--mode", "float", "--out", path("o")}).code, 1);
}

TEST_F(Cli, EmptyResultsGiveEmptyRegistry) {
  write_file_bytes(path("empty.jsonl"), "");
  const auto r = run_cli({"registry", "--results", path("empty.jsonl"), "--out", path("reg.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("registry 0"), std::string::npos);
  EXPECT_TRUE(read_file_bytes(path("reg.txt")).ends_with("# modes\n"));
}

TEST_F(Cli, MalformedResultsExitTwo) {
  write_file_bytes(path("bad.jsonl"), "{\"technique\":\n");
  EXPECT_EQ(run_cli({"report", "--results", path("bad.jsonl")}).code, 2);
  EXPECT_EQ(run_cli({"report", "--results", path("missing.jsonl")}).code, 2);
  EXPECT_EQ(run_cli({"registry", "--results", path("bad.jsonl"), "--out", path("o")}).code, 2);
}

TEST_F(Cli, VerifyNamesDifferingFile) {
  ASSERT_EQ(run_cli({"gen", "--technique", "indexed", "--count", "3", "--out", path("a")}).code, 0);
  ASSERT_EQ(run_cli({"gen", "--technique", "indexed", "--count", "3", "--out", path("b")}).code, 0);
  EXPECT_EQ(run_cli({"verify", "--dir", path("a"), "--dir", path("a")}).code, 0);
  std::string bytes = read_file_bytes(path("b/indexed_00001.mts"));
  bytes[20] = bytes[20] == '1' ? '2' : '1';
  write_file_bytes(path("b/indexed_00001.mts"), bytes);
  const auto r = run_cli({"verify", "--dir", path("a"), "--dir", path("b")});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("differ: indexed_00001.mts"), std::string::npos);
  EXPECT_EQ(run_cli({"verify", "--dir", path("a"), "--dir", path("missing")}).code, 2);
  EXPECT_EQ(run_cli({"verify", "--dir", path("a")}).code, 1);
}

}  // namespace
}  // namespace mts::cli
