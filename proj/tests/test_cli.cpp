#include <gtest/gtest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "dlc/io.hpp"
#include "fixtures.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int status = -1;
  std::string out;
};

/// Runs the CLI with stdout captured; stderr is discarded.
Run run(const std::string& args) {
  const std::string command = std::string(DLC_CLI_PATH) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
  const int raw = pclose(pipe);
  r.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  return r;
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("dlc_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    std::ofstream(path("example.json")) << dlc::testing::kExampleJson;
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  static std::string slurp(const std::string& file) {
    std::ifstream in(file);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, GenFamilies) {
  auto tribes = run("gen tribes --terms 2 --width 2");
  ASSERT_EQ(tribes.status, 0);
  EXPECT_EQ(dlc::parse_decision_list(tribes.out).size(), 3u);

  auto threshold = run("gen threshold --n 4 --w 2 -o " + path("t.json"));
  ASSERT_EQ(threshold.status, 0);
  EXPECT_EQ(dlc::parse_decision_list(slurp(path("t.json"))).size(), 7u);

  EXPECT_EQ(dlc::parse_decision_list(run("gen table --table 0110").out).size(), 5u);
  EXPECT_EQ(dlc::parse_decision_list(run("gen lv --n 4 --w 2 --v 101010").out).size(), 7u);
}

TEST_F(CliTest, GenRandomIsDeterministic) {
  const auto a = run("gen random --n 8 --w 3 --m 10 --seed 7");
  const auto b = run("gen random --n 8 --w 3 --m 10 --seed 7");
  ASSERT_EQ(a.status, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, run("gen random --n 8 --w 3 --m 10 --seed 8").out);
}

TEST_F(CliTest, GenRejectsBadParameters) {
  EXPECT_EQ(run("gen threshold --n 3 --w 3").status, 2);
  EXPECT_EQ(run("gen table --table 011").status, 2);
  EXPECT_NE(run("gen").status, 0);
}

TEST_F(CliTest, CompressExample) {
  const auto r = run("compress " + path("example.json") + " --epsilon 0 --mode exact -o " + path("r.json") +
                     " --sublist " + path("s.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("(t = 2)"), std::string::npos);
  const auto result = nlohmann::json::parse(slurp(path("r.json")));
  EXPECT_EQ(result["t"], 2);
  EXPECT_EQ(result["distance"], 0.0);
  EXPECT_EQ(result["kept"], (std::vector<int>{1, 3, 5}));
  EXPECT_EQ(dlc::parse_decision_list(slurp(path("s.json"))).size(), 3u);
}

TEST_F(CliTest, CompressTopOneAndEpsilonOne) {
  run("compress " + path("example.json") + " --t 1 -o " + path("r.json"));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("r.json")))["distance_exact"], "1/2");
  run("compress " + path("example.json") + " --epsilon 1 -o " + path("e.json"));
  EXPECT_EQ(nlohmann::json::parse(slurp(path("e.json")))["t"], 1);
  EXPECT_NE(run("compress " + path("example.json")).status, 0);
  EXPECT_NE(run("compress " + path("example.json") + " --t 1 --epsilon 0.5").status, 0);
}

TEST_F(CliTest, CompressReadsStdin) {
  const auto r = run("compress - --t 2 < " + path("example.json"));
  ASSERT_EQ(r.status, 0);
  EXPECT_NE(r.out.find("rules kept:    3 of 5"), std::string::npos);
}

TEST_F(CliTest, CompressMonteCarloIndependentOfWorkers) {
  run("gen threshold --n 10 --w 3 -o " + path("th.json"));
  for (const char* w : {"1", "3"}) {
    ASSERT_EQ(run("compress " + path("th.json") + " --epsilon 0.1 --mode mc --samples 30000 --workers " + w +
                  " -o " + path(std::string("mc") + w + ".json"))
                  .status,
              0);
  }
  EXPECT_EQ(slurp(path("mc1.json")), slurp(path("mc3.json")));
}

TEST_F(CliTest, CompressExactLimit) {
  run("gen tribes --terms 9 --width 3 -o " + path("big.json"));
  const std::string cmd = "DLC_ASSIGNMENT_LIMIT=20 " + std::string(DLC_CLI_PATH) + " compress " + path("big.json") +
                          " --t 1 > /dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(raw), 2);
  EXPECT_EQ(run("compress " + path("big.json") + " --t 1 --mode mc --samples 20000").status, 0);
}

TEST_F(CliTest, Stats) {
  const auto ex = run("stats " + path("example.json") + " --format json");
  ASSERT_EQ(ex.status, 0);
  const auto j = nlohmann::json::parse(ex.out);
  EXPECT_EQ(j["usenum"], 2);
  EXPECT_EQ(j["hit"]["exact_values"], (std::vector<std::string>{"1/2", "0", "1/2", "0", "0"}));

  std::ofstream(path("const.json")) << R"({"n":3,"rules":[{"value":"z"}]})";
  EXPECT_EQ(nlohmann::json::parse(run("stats " + path("const.json") + " --format json").out)["usenum"], 1);
  run("gen threshold --n 4 --w 2 -o " + path("t.json"));
  EXPECT_EQ(nlohmann::json::parse(run("stats " + path("t.json") + " --format json").out)["usenum"], 7);

  const auto csv = run("stats " + path("example.json") + " --format csv --mc --samples 1000");
  EXPECT_EQ(csv.out.substr(0, 5), "check");
}

TEST_F(CliTest, StatsRejectsMalformedInput) {
  std::ofstream(path("bad.json")) << R"({"n":2,"rules":[{"pos":[1],"value":"a"}]})";
  EXPECT_EQ(run("stats " + path("bad.json")).status, 2);
  EXPECT_EQ(run("stats " + path("missing.json")).status, 2);
}

TEST_F(CliTest, VerifySuitesPass) {
  EXPECT_EQ(run("verify roundtrip --n 6 --w 3 --lists 50 --exhaustive -o " + path("rt.csv")).status, 0);
  EXPECT_EQ(slurp(path("rt.csv")).substr(0, 8), "instance");
  EXPECT_EQ(run("verify roundtrip --n 7 --w 3 --lists 5 --samples 500").status, 0);
  EXPECT_EQ(run("verify bridging --beta 0.5 --lists 200 -o " + path("b.csv")).status, 0);
  EXPECT_EQ(run("verify hyper --beta 0.25 0.75 --lists 20 -o " + path("h.csv")).status, 0);
  EXPECT_EQ(run("verify dnf-useful --family threshold --n 6 --w 2 --beta-fix 0.25 0.5 -o " + path("d.csv")).status,
            0);
  EXPECT_EQ(run("verify claims --lists 30 -o " + path("c.csv")).status, 0);
}

TEST_F(CliTest, VerifyUsenumTribes) {
  const auto r = run("verify usenum --alpha 0.5 --family tribes --terms 2 --width 2 --format json");
  ASSERT_EQ(r.status, 0);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j["pass"].get<bool>());
  EXPECT_EQ(j["rows"][0]["bound"], 64.0);
  EXPECT_LE(j["rows"][0]["expected_usenum"].get<double>(), 64.0);
}

TEST_F(CliTest, VerifyOutputIndependentOfWorkers) {
  const auto a = run("verify roundtrip --n 7 --w 3 --lists 4 --samples 300 --workers 1");
  const auto b = run("verify roundtrip --n 7 --w 3 --lists 4 --samples 300 --workers 4");
  EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, VerifyRejectsNonDnfCorpus) {
  EXPECT_EQ(run("verify dnf-useful --lists 3").status, 2);
  EXPECT_NE(run("verify nonsense").status, 0);
}
