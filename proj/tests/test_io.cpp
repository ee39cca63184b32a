#include <gtest/gtest.h>

#include <cstdlib>

#include "qrsum/io.hpp"

using namespace qrsum;
using io::json;

TEST(Io, DoublesRoundTrip) {
  for (double x : {0.1, 1.0 / 3, -2.5e-300, 44.22686222986097, 1e300}) {
    const auto s = io::format_double(x);
    EXPECT_EQ(std::strtod(s.c_str(), nullptr), x) << s;
    EXPECT_EQ(json::parse(json(x).dump()).get<double>(), x);
  }
}

TEST(Io, CharSumRecord) {
  const Prime p(7);
  const auto j = io::to_json(char_sum(KTuple(p, {0, 1, 2, 3}), p));
  EXPECT_EQ(j["value"], -1);
  EXPECT_EQ(j["tuple"], json({0, 1, 2, 3}));
  EXPECT_EQ(j["weil_ok"], true);
  const auto odd = io::to_json(char_sum(KTuple(p, {0, 1, 2}), p));
  EXPECT_TRUE(odd["wan_ok"].is_null());
}

TEST(Io, ProfileRecord) {
  const Prime p(7);
  const FpSet a(p, {0, 1});
  const auto j = io::to_json(build_profile(a, a), a, a);
  for (const char* key : {"p", "A", "B", "support", "r_nonzero", "M0", "M1", "E", "unique"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["r_nonzero"], json::parse("[[0,1],[1,2],[2,1]]"));
  EXPECT_EQ(j["E"], 6);
}

TEST(Io, CertificateAndReport) {
  const Prime p(7);
  const auto cert = io::to_json(certify_pair(FpSet(p, {1}), FpSet(p, {0, 1, 3})));
  EXPECT_EQ(cert["checks"].size(), 2u);
  EXPECT_EQ(cert["all_passed"], true);
  const auto rep = io::to_json(search(SearchConfig{p}));
  EXPECT_FALSE(rep["config"].contains("worker_count"));
  EXPECT_EQ(rep["decompositions_found"], json::array());
  EXPECT_EQ(rep["exhaustive"], true);
}

TEST(Io, HistogramCsv) {
  const auto csv = io::histogram_csv(vertical_histogram(4, Prime(11), 4, Exhaustive{}));
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "bin_left,bin_right,count,reference_density");
  EXPECT_NE(csv.find("\n-2,-1,"), std::string::npos);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 5);
  const auto csv6 = io::histogram_csv(vertical_histogram(6, Prime(11), 2, Exhaustive{}));
  EXPECT_NE(csv6.find(",\n"), std::string::npos);
}

TEST(Io, RangeCsv) {
  const auto rows = verify_conjecture_range(3, 7, SearchConfig{Prime(3)});
  EXPECT_EQ(io::range_csv(rows, false),
            "p,verdict,nodes,seconds\n3,no-decomposition,0,\n5,no-decomposition,0,\n7,no-decomposition,0,\n");
  EXPECT_NE(io::range_csv(rows, true), io::range_csv(rows, false));
}
