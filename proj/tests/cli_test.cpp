// Copyright 2026 The tfshift Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tfshift/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "tfshift/errors.hpp"
#include "tfshift/signal_io.hpp"

namespace tfshift {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "tfshift");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::vector<nlohmann::json> json_lines(const std::string& text) {
  std::vector<nlohmann::json> recs;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) recs.push_back(nlohmann::json::parse(line));
  return recs;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("tfshift_cli_test_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path(name)) << text; }
  void save(const std::string& name, const Signal& s, std::map<std::string, std::string> header = {}) const {
    save_signal_file(path(name), {std::move(header), PayloadFormat::kBinary, s});
  }

 private:
  fs::path dir_;
};

TEST_F(CliTest, GenFlag) {
  const auto o = invoke({"gen", "--p", "101", "--kind", "flag", "--line", "1", "--torus-trace", "0", "--index",
                         "0", "--out", path("f.sig")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const SignalFile f = load_signal_file(path("f.sig"));
  EXPECT_EQ(f.signal.size(), 101u);
  EXPECT_NEAR(f.signal.norm_squared(), 2.0, 2 / std::sqrt(101.0));
  EXPECT_EQ(f.field("line"), "slope:1");
  EXPECT_EQ(f.field("torus-trace"), "0");
  EXPECT_NE(o.out.find("kind=flag"), std::string::npos);
}

TEST_F(CliTest, GenCrossHasNormSquaredTwo) {
  const auto o = invoke({"gen", "--p", "101", "--kind", "cross", "--lines", "1,2", "--out", path("c.sig")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const SignalFile f = load_signal_file(path("c.sig"));
  EXPECT_NEAR(f.signal.norm_squared(), 2.0, 2 / std::sqrt(101.0));
  EXPECT_EQ(f.field("line2"), "slope:2");
}

TEST_F(CliTest, GenHeisenbergVerticalIsDelta) {
  const auto o = invoke({"gen", "--p", "5", "--kind", "heisenberg", "--line", "vertical", "--index", "2"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  std::istringstream is(o.out);
  const SignalFile f = read_signal_file(is);
  for (Residue t = 0; t < 5; ++t) EXPECT_NEAR(std::abs(f.signal[t] - Complex(t == 2)), 0.0, 1e-12);
}

TEST_F(CliTest, GenWeilAndRandom) {
  EXPECT_EQ(invoke({"gen", "--p", "31", "--kind", "weil", "--torus-trace", "3"}).code, cli::kSuccess);
  const auto a = invoke({"gen", "--p", "31", "--kind", "random", "--seed", "5"});
  const auto b = invoke({"gen", "--p", "31", "--kind", "random", "--seed", "5"});
  EXPECT_EQ(a.code, cli::kSuccess);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, GenErrors) {
  EXPECT_EQ(invoke({"gen", "--p", "100", "--kind", "flag"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"gen", "--p", "2", "--kind", "flag"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"gen", "--p", "101", "--kind", "wave"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"gen", "--p", "101", "--kind", "cross", "--lines", "1,1"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"gen", "--p", "101", "--kind", "flag", "--line", "101"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"gen", "--kind", "flag"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({}).code, cli::kUsageError);
}

TEST_F(CliTest, GenDegenerateVectorIsConstructionError) {
  // Some trace class at p = 31 is split and carries a two-dimensional eigenspace.
  bool saw = false;
  for (int trace = 0; trace < 31 && !saw; ++trace) {
    for (int eig = 0; eig < 31; ++eig) {
      const auto o = invoke({"gen", "--p", "31", "--kind", "weil", "--torus-trace", std::to_string(trace),
                             "--eig", std::to_string(eig)});
      if (o.code == cli::kConstructionError) {
        saw = true;
        EXPECT_NE(o.err.find("degenerate"), std::string::npos);
        break;
      }
      ASSERT_TRUE(o.code == cli::kSuccess || o.code == cli::kUsageError) << o.err;
    }
  }
  EXPECT_TRUE(saw);
}

TEST_F(CliTest, AmbiguityOfDeltaIsVerticalLineOfOnes) {
  save("d.sig", Signal::delta(Prime(5), 0));
  const auto o = invoke({"ambiguity", "--sender", path("d.sig"), "--receiver", path("d.sig")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  std::istringstream is(o.out);
  const Grid g = read_grid(is);
  for (Residue tau = 0; tau < 5; ++tau) {
    for (Residue omega = 0; omega < 5; ++omega) EXPECT_NEAR(g.at(tau, omega), tau == 0, 1e-12);
  }
}

TEST_F(CliTest, AmbiguityLineAndFile) {
  save("d.sig", Signal::delta(Prime(5), 0));
  const auto o = invoke({"ambiguity", "--sender", path("d.sig"), "--line", "vertical", "--offset", "0,2"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  EXPECT_EQ(o.out.rfind("tfshift-line p=5 line=vertical offset=0,2", 0), 0u);
  EXPECT_EQ(invoke({"ambiguity", "--sender", path("d.sig"), "--format", "binary", "--out", path("g.bin")}).code,
            cli::kSuccess);
  std::ifstream is(path("g.bin"), std::ios::binary);
  EXPECT_EQ(read_grid(is).p, 5u);
}

TEST_F(CliTest, AmbiguityErrors) {
  save("a.sig", Signal::delta(Prime(5), 0));
  save("b.sig", Signal::delta(Prime(7), 0));
  EXPECT_EQ(invoke({"ambiguity", "--sender", path("a.sig"), "--receiver", path("b.sig")}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"ambiguity", "--sender", path("missing.sig")}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"ambiguity", "--sender", path("a.sig"), "--offset", "1"}).code, cli::kSuccess);
  EXPECT_EQ(invoke({"ambiguity", "--sender", path("a.sig"), "--line", "1", "--offset", "1"}).code,
            cli::kUsageError);
}

class CliDetectTest : public CliTest {
 protected:
  void SetUp() override {
    CliTest::SetUp();
    ASSERT_EQ(invoke({"gen", "--p", "101", "--kind", "flag", "--line", "1", "--torus-trace", "0", "--out",
                      path("s.sig")})
                  .code,
              cli::kSuccess);
    sender_ = load_signal_file(path("s.sig")).signal;
    write("manifest.txt", "# one sender\ns.sig\n");
  }
  Signal sender_{Prime(3)};
};

TEST_F(CliDetectTest, RecoversShift) {
  save("r.sig", heisenberg_op(sender_, {50, 50}));
  const auto o = invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("manifest.txt")});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto recs = json_lines(o.out);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["tau"], 50);
  EXPECT_EQ(recs[0]["omega"], 50);
  EXPECT_EQ(recs[0]["bit"], 1);
  EXPECT_EQ(recs[0]["confident"], true);
  EXPECT_EQ(recs[0]["waveform"], "s.sig");
}

TEST_F(CliDetectTest, NegativeBit) {
  save("r.sig", Complex(-1) * heisenberg_op(sender_, {7, 90}));
  const auto recs = json_lines(invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("manifest.txt")}).out);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_EQ(recs[0]["bit"], -1);
  EXPECT_EQ(recs[0]["tau"], 7);
}

TEST_F(CliDetectTest, ZeroReceiverIsLowConfidence) {
  save("r.sig", Signal(Prime(101)));
  const auto o = invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("manifest.txt")});
  EXPECT_EQ(o.code, cli::kLowConfidence);
  EXPECT_EQ(json_lines(o.out).at(0)["confident"], false);
}

TEST_F(CliDetectTest, ManifestErrors) {
  save("r.sig", sender_);
  write("bad.txt", "nothere.sig\n");
  EXPECT_EQ(invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("bad.txt")}).code, cli::kUsageError);
  write("empty.txt", "# nothing\n");
  EXPECT_EQ(invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("empty.txt")}).code,
            cli::kUsageError);
  save("noline.sig", sender_);
  write("noline.txt", "noline.sig\n");
  EXPECT_EQ(invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("noline.txt")}).code,
            cli::kUsageError);
  EXPECT_EQ(invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("manifest.txt"), "--method",
                    "cross"})
                .code,
            cli::kUsageError);
  save("small.sig", Signal::delta(Prime(7), 0));
  EXPECT_EQ(invoke({"detect", "--receiver", path("small.sig"), "--manifest", path("manifest.txt")}).code,
            cli::kUsageError);
}

TEST_F(CliDetectTest, Radar) {
  const Signal r = heisenberg_op(sender_, {10, 20}) + heisenberg_op(sender_, {60, 3});
  save("r.sig", r);
  const auto o = invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("manifest.txt"), "--method",
                         "radar", "--targets", "2"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto recs = json_lines(o.out);
  ASSERT_EQ(recs.size(), 3u);
  std::set<std::pair<int, int>> found;
  for (int k = 0; k < 2; ++k) found.insert({recs[k]["tau"].get<int>(), recs[k]["omega"].get<int>()});
  EXPECT_EQ(found, (std::set<std::pair<int, int>>{{10, 20}, {60, 3}}));
  EXPECT_EQ(recs[2]["complete"], true);
}

TEST_F(CliDetectTest, CrossMethod) {
  ASSERT_EQ(invoke({"gen", "--p", "101", "--kind", "cross", "--lines", "1,2", "--out", path("c.sig")}).code,
            cli::kSuccess);
  const Signal c = load_signal_file(path("c.sig")).signal;
  save("r.sig", heisenberg_op(c, {33, 44}));
  write("cm.txt", "c.sig\n");
  const auto o =
      invoke({"detect", "--receiver", path("r.sig"), "--manifest", path("cm.txt"), "--method", "cross"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  const auto recs = json_lines(o.out);
  EXPECT_EQ(recs.at(0)["tau"], 33);
  EXPECT_EQ(recs.at(0)["omega"], 44);
}

TEST_F(CliTest, SimulateNoiseless) {
  const auto o = invoke({"simulate", "--p", "101", "--r", "3", "--sigma", "0", "--trials", "100", "--method", "flag"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  std::istringstream is(o.out);
  std::string header, row;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header.rfind("p,r,sigma,method,trials,detections,exact_shift_rate", 0), 0u);
  EXPECT_EQ(row.rfind("101,3,0,flag,100,300,1,0,", 0), 0u) << row;
}

TEST_F(CliTest, SimulateIsDeterministic) {
  const std::vector<std::string> args = {"simulate", "--p", "31", "--r", "2", "--sigma", "0.3", "--trials", "30",
                                         "--seed", "7"};
  const auto a = invoke(args), b = invoke(args);
  EXPECT_EQ(a.code, cli::kSuccess);
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, SimulateConfigAndOverride) {
  write("sim.cfg", "# noiseless\np = 31\nr = 2\ntrials = 10\nsigma = 0\n");
  const auto a = invoke({"simulate", "--config", path("sim.cfg")});
  ASSERT_EQ(a.code, cli::kSuccess) << a.err;
  EXPECT_NE(a.out.find("\n31,2,0,flag,10,"), std::string::npos) << a.out;
  const auto b = invoke({"simulate", "--config", path("sim.cfg"), "--r", "1"});
  EXPECT_NE(b.out.find("\n31,1,0,flag,10,"), std::string::npos) << b.out;
  write("bad.cfg", "colour = red\n");
  EXPECT_EQ(invoke({"simulate", "--config", path("bad.cfg")}).code, cli::kUsageError);
  write("bad2.cfg", "trials = many\n");
  EXPECT_EQ(invoke({"simulate", "--config", path("bad2.cfg")}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"simulate", "--trials", "0"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"simulate", "--method", "radar"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"simulate", "--p", "9"}).code, cli::kUsageError);
}

TEST(ParseConfigTest, KeyValueLines) {
  std::istringstream is("a = 1\n\n# c\nb=two # trailing\n");
  const auto cfg = cli::parse_config(is);
  EXPECT_EQ(cfg.size(), 2u);
  EXPECT_EQ(cfg.at("a"), "1");
  EXPECT_EQ(cfg.at("b"), "two");
  std::istringstream bad("novalue\n");
  EXPECT_THROW(cli::parse_config(bad), DomainError);
  std::istringstream empty_key("=3\n");
  EXPECT_THROW(cli::parse_config(empty_key), DomainError);
}

TEST_F(CliTest, BenchRows) {
  const auto o = invoke({"bench", "--p", "1009,10007", "--repeats", "3"});
  ASSERT_EQ(o.code, cli::kSuccess) << o.err;
  std::istringstream is(o.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(is, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "p,line_seconds,full_seconds,ratio,full_mode,line_dft_ops");
  EXPECT_EQ(lines[1].rfind("1009,", 0), 0u);
  EXPECT_NE(lines[1].find("measured"), std::string::npos);
  EXPECT_EQ(lines[2].rfind("10007,", 0), 0u);
  EXPECT_NE(lines[2].find("extrapolated"), std::string::npos);
  EXPECT_EQ(invoke({"bench", "--p", "1000"}).code, cli::kUsageError);
  EXPECT_EQ(invoke({"bench", "--p", "abc"}).code, cli::kUsageError);
}

TEST_F(CliTest, HelpExitsZero) { EXPECT_EQ(invoke({"--help"}).code, cli::kSuccess); }

}  // namespace
}  // namespace tfshift
