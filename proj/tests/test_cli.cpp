#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "selrules_cli/cli.hpp"

namespace fs = std::filesystem;
using selrules::cli::run;

namespace {

const std::string kExample = std::string(SELRULES_TEST_DATA) + "/example.basket";

struct Result {
  int code;
  std::string out, err;
};

Result cli(std::vector<std::string> args) {
  args.insert(args.begin(), "selrules");
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("selrules_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  void write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
  }
  std::string read(const std::string& name) const {
    std::ifstream in(path(name));
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  }
  static std::size_t lines(const std::string& text) {
    return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
  }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, UsageAndHelp) {
  EXPECT_EQ(cli({}).code, selrules::cli::kExitUsage);
  EXPECT_EQ(cli({"--help"}).code, selrules::cli::kExitOk);
  EXPECT_EQ(cli({"nonsense"}).code, selrules::cli::kExitUsage);
  EXPECT_EQ(cli({"mine", "--input", kExample}).code, selrules::cli::kExitUsage);
}

TEST_F(CliTest, MineOnTheExample) {
  const auto r = cli({"mine", "--input", kExample, "--minsup", "0.375", "--output", path("f.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(read("f.txt")), 7u);
  EXPECT_NE(r.out.find("7 itemsets"), std::string::npos);

  const auto closed = cli({"mine", "--input", kExample, "--minsup", "3/8", "--closed"});
  ASSERT_EQ(closed.code, 0);
  EXPECT_EQ(lines(closed.out), 7u);

  EXPECT_EQ(cli({"mine", "--input", kExample, "--minsup", "1.5"}).code, 1);
  EXPECT_EQ(cli({"mine", "--input", kExample, "--minsup", "0"}).code, 1);
  EXPECT_EQ(cli({"mine", "--input", kExample, "--minsup", "abc"}).code, 1);
  EXPECT_EQ(cli({"mine", "--input", path("missing.basket"), "--minsup", "0.5"}).code, 2);
}

TEST_F(CliTest, RulesAndFilter) {
  write("family.txt", "a b c\n");
  auto r = cli({"rules", "--input", kExample, "--itemsets", path("family.txt"), "--minconf", "0.6",
                "--output", path("rules.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(read("rules.csv")), 4u);  // header + 3 rules

  r = cli({"rules", "--input", kExample, "--itemsets", path("family.txt"), "--minconf", "0.8"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u);

  write("unknown.txt", "{zzz}\n");
  r = cli({"rules", "--input", kExample, "--itemsets", path("unknown.txt"), "--minconf", "0.5"});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("zzz"), std::string::npos);

  write("partly.txt", "{zzz}\n{a}\n{a,b}\n");
  r = cli({"rules", "--input", kExample, "--itemsets", path("partly.txt"), "--minconf", "0"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.err.find("warning"), std::string::npos);
  EXPECT_NE(r.err.find("note"), std::string::npos);
  EXPECT_EQ(lines(r.out), 3u);

  r = cli({"filter", "--rules", path("rules.csv"), "--template", "any* => any"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read("rules.csv"));

  r = cli({"filter", "--rules", path("rules.csv"), "--template", "a => any"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(lines(r.out), 1u);

  EXPECT_EQ(cli({"filter", "--rules", path("rules.csv"), "--template", "any => "}).code, 1);
  EXPECT_EQ(cli({"filter", "--rules", path("nope.csv"), "--template", "any => any"}).code, 2);
}

TEST_F(CliTest, RecodeAndSynth) {
  write("t.csv", "color,size\nred,big\nblue,?\n");
  auto r = cli({"recode", "--input", path("t.csv"), "--output", path("t.basket")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read("t.basket"), "color=red size=big\ncolor=blue\n");

  write("h.csv", "red;big\n");
  r = cli({"recode", "--input", path("h.csv"), "--table-separator", ";", "--columns", "color,size"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "color=red size=big\n");

  write("ragged.csv", "a,b\n1\n");
  EXPECT_EQ(cli({"recode", "--input", path("ragged.csv")}).code, 2);

  r = cli({"synth", "--items", "20", "--transactions", "50", "--mean-size", "3", "--seed", "4"});
  ASSERT_EQ(r.code, 0);
  EXPECT_EQ(r.out, cli({"synth", "--items", "20", "--transactions", "50", "--mean-size", "3",
                        "--seed", "4"}).out);
  EXPECT_EQ(cli({"synth", "--items", "3", "--mean-size", "3"}).code, 1);
}

TEST_F(CliTest, Bench) {
  ASSERT_EQ(cli({"synth", "--items", "40", "--transactions", "2000", "--mean-size", "5", "--output",
                 path("s.basket")}).code,
            0);
  const std::vector<std::string> base{"bench", "--input", path("s.basket"), "--pool-minsup", "0.02",
                                      "--minconf", "0.3", "--seed", "11"};
  auto args = base;
  args.insert(args.end(), {"--sizes", "5,10", "--reps", "2", "--verify"});
  const auto r = cli(args);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(lines(r.out), 3u);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "family_size,t_selective_s,t_apriori_s,nodes,rules");

  args = base;
  args.insert(args.end(), {"--sizes", "0"});
  EXPECT_EQ(cli(args).code, 1);
  args = base;
  args.insert(args.end(), {"--sizes", "10,5"});
  EXPECT_EQ(cli(args).code, 1);
  args = base;
  args.insert(args.end(), {"--sizes", "5", "--no-baseline", "--verify"});
  EXPECT_EQ(cli(args).code, 1);
  args = base;
  args.insert(args.end(), {"--sizes", "100000000"});
  EXPECT_EQ(cli(args).code, 2);

  args = base;
  args.insert(args.end(), {"--sizes", "5", "--no-baseline"});
  const auto nb = cli(args);
  ASSERT_EQ(nb.code, 0);
  EXPECT_NE(nb.out.find(",NA,"), std::string::npos);
}
