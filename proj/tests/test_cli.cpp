#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "qrsum/io.hpp"

using qrsum::io::json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "qrsum");
  std::ostringstream out, err;
  const int code = qrsum::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST(Cli, CharSum) {
  const auto r = run({"charsum", "--p", "7", "--tuple", "0,1,2,3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["value"], -1);
  EXPECT_EQ(j["weil_ok"], true);
  EXPECT_EQ(j["wan_ok"], true);
  EXPECT_EQ(j["shift_reduced"], 0);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"charsum", "--p", "9", "--tuple", "0,1"}).code, 2);
  EXPECT_EQ(run({"charsum", "--p", "7"}).code, 2);
  EXPECT_EQ(run({"charsum", "--p", "7", "--tuple", "0,x"}).code, 2);
  EXPECT_EQ(run({"--format", "csv", "charsum", "--p", "7", "--tuple", "0,1"}).code, 2);
  EXPECT_EQ(run({"hist", "--p", "7", "--k", "3"}).code, 2);
  EXPECT_EQ(run({"bounds", "--p", "101", "--eta", "0.5"}).code, 2);
  EXPECT_EQ(run({"bounds", "--p", "7", "--A", "0,1", "--B", "0,1"}).code, 2);
  EXPECT_EQ(run({"verify-range", "--from", "20", "--to", "10"}).code, 2);
  const auto r = run({"nonsense"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
}

TEST(Cli, HelpDescribesEveryCommand) {
  const auto r = run({"--help"});
  EXPECT_EQ(r.code, 0);
  for (const char* cmd :
       {"charsum", "ck", "hist", "sweep", "sumset", "bounds", "search", "verify-range", "verify-lemmas"})
    EXPECT_NE(r.out.find(cmd), std::string::npos) << cmd;
  EXPECT_EQ(run({"search", "--help"}).code, 0);
}

TEST(Cli, Bounds) {
  const auto r = run({"bounds", "--p", "1009"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["size_range"]["lower_A"], 9);
  EXPECT_EQ(j["size_range"]["upper_A"], 62);
  EXPECT_NEAR(j["theorem2_lower_bound"].get<double>(), 44.23, 0.005);

  const auto cert = run({"bounds", "--p", "7", "--A", "1", "--B", "0,1,3"});
  ASSERT_EQ(cert.code, 0) << cert.err;
  EXPECT_EQ(json::parse(cert.out)["certificate"]["all_passed"], true);
}

TEST(Cli, SumsetAndSearchExitCodes) {
  const auto ok = run({"sumset", "--p", "7", "--A", "0,1", "--B", "0,1"});
  ASSERT_EQ(ok.code, 0) << ok.err;
  const auto j = json::parse(ok.out);
  EXPECT_EQ(j["E"], 6);
  EXPECT_EQ(j["sumset_in_residues"], false);

  // Singleton decompositions are expected and keep exit code 0.
  const auto singles = run({"search", "--p", "7", "--min-a", "1", "--min-b", "1"});
  EXPECT_EQ(singles.code, 0);
  EXPECT_EQ(json::parse(singles.out)["decompositions_found"].size(), 14u);
  EXPECT_EQ(json::parse(singles.out)["verdict"], "FOUND");

  const auto none = run({"search", "--p", "43"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(json::parse(none.out)["verdict"], "no-decomposition");
}

TEST(Cli, VerifyRangeCsv) {
  const auto r = run({"verify-range", "--from", "3", "--to", "23"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "p,verdict,nodes,seconds");
  EXPECT_NE(r.out.find("23,no-decomposition,0,\n"), std::string::npos);
  const auto j = run({"--format", "json", "verify-range", "--from", "3", "--to", "7"});
  EXPECT_EQ(json::parse(j.out).size(), 3u);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "qrsum_cli_output_test.json";
  const auto r = run({"--output", path.string(), "ck", "--k", "2", "--p", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream f(path);
  const auto j = json::parse(f);
  EXPECT_EQ(j["max_sum"], -1);
  std::filesystem::remove(path);
}

TEST(Cli, HistogramFormats) {
  const auto csv = run({"--format", "csv", "hist", "--p", "11", "--bins", "8"});
  ASSERT_EQ(csv.code, 0) << csv.err;
  EXPECT_EQ(csv.out.substr(0, csv.out.find('\n')), "bin_left,bin_right,count,reference_density");
  const auto j = json::parse(run({"hist", "--p", "101", "--samples", "20000"}).out);
  EXPECT_EQ(j["histogram"]["total"], 20000);
  EXPECT_EQ(j["seed"], qrsum::cli::kDefaultSeed);
  EXPECT_EQ(j["bounds_ok"], true);
}

TEST(Cli, SweepAndLemmas) {
  const auto s = run({"sweep", "--tuple", "0,1,2,3", "--from", "3", "--to", "200"});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(json::parse(s.out)["skipped"], json({3}));
  const auto l = run({"verify-lemmas", "--pairs", "50", "--instances", "20", "--theorem2-max", "1000"});
  ASSERT_EQ(l.code, 0) << l.err;
  EXPECT_EQ(json::parse(l.out)["all_passed"], true);
}

// Identical arguments give identical bytes for any worker count.
TEST(Cli, WorkerCountDoesNotChangeOutput) {
  const std::vector<std::vector<std::string>> commands = {
      {"hist", "--p", "101", "--samples", "30000"},
      {"ck", "--k", "4", "--p", "499", "--samples", "30000"},
      {"--format", "csv", "hist", "--p", "31"},
      {"sweep", "--tuple", "0,1,5,9", "--from", "3", "--to", "500"},
      {"verify-range", "--from", "3", "--to", "43"},
      {"search", "--p", "11", "--min-a", "1", "--min-b", "1"},
      {"verify-lemmas", "--pairs", "100", "--instances", "50", "--theorem2-max", "0"},
  };
  for (const auto& cmd : commands) {
    auto one = cmd, four = cmd;
    one.insert(one.begin(), {"--workers", "1"});
    four.insert(four.begin(), {"--workers", "4"});
    const auto a = run(one), b = run(four);
    EXPECT_EQ(a.code, 0) << cmd[0];
    EXPECT_EQ(a.out, b.out) << cmd[0];
  }
}
