#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = grassknot::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& s, const std::string& needle) { return s.find(needle) != std::string::npos; }

}  // namespace

TEST(Cli, ClassifySplit) {
  const auto r = run({"classify", "--top", "12,34,56", "--bottom", "12,35,46"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "components=2 split")) << r.out;
}

TEST(Cli, ClassifyTable) {
  const auto r = run({"classify", "--top", "12,34,56", "--bottom", "14,25,36"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "unknot:6 trefoil_left:1 trefoil_right:1")) << r.out;
}

TEST(Cli, ClassifyWithSignsAndLabels) {
  const auto r = run({"classify", "--top", "A1", "--bottom", "E", "--signs", "101"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "class=trefoil_right")) << r.out;
  EXPECT_TRUE(contains(r.out, "determinant=3")) << r.out;
  EXPECT_TRUE(contains(r.out, "writhe=3")) << r.out;
}

TEST(Cli, ExplainListsCrossings) {
  const auto r = run({"classify", "--top", "12,34,56", "--bottom", "14,25,36", "--explain"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "0: bottom 1-4 x 2-5 at x=4 level=1")) << r.out;
  EXPECT_TRUE(contains(r.out, "2: bottom 2-5 x 3-6 at x=3 level=1")) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"bogus"}).code, 2);
  EXPECT_EQ(run({"census", "--frobnicate"}).code, 2);
  const auto bad = run({"classify", "--top", "12,34,5", "--bottom", "12,34,56"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(contains(bad.err, "endpoint 6 missing")) << bad.err;
  const auto len = run({"classify", "--top", "12,34,56", "--bottom", "14,25,36", "--signs", "01"});
  EXPECT_EQ(len.code, 2);
  EXPECT_TRUE(contains(len.err, "3 crossings")) << len.err;
  EXPECT_EQ(run({"census", "--blades", "7"}).code, 2);
  EXPECT_EQ(run({"census", "--blades", "10"}).code, 2);
  EXPECT_EQ(run({"census", "--format", "xml"}).code, 2);
  EXPECT_EQ(run({"render", "--top", "12,34,56", "--bottom", "14,25,36", "--signs", "010"}).code, 2);
  const auto cap = run({"classify", "--top", "C1", "--bottom", "E", "--cap", "3"});
  EXPECT_EQ(cap.code, 2);
  EXPECT_TRUE(contains(cap.err, "Monte Carlo")) << cap.err;
}

TEST(Cli, HelpDocumentsCsvColumns) {
  const auto r = run({"census", "--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "top_label,bottom_label,top,bottom")) << r.out;
}

TEST(Cli, CensusFormats) {
  const auto json = run({"census", "--blades", "6", "--format", "json"});
  EXPECT_EQ(json.code, 0);
  EXPECT_TRUE(contains(json.out, "\"connected_pairs\":120"));
  EXPECT_EQ(grassknot::parse_census_json(json.out), grassknot::full_census(3));
  EXPECT_EQ(json.out, run({"census", "--blades", "6", "--format", "json", "--threads", "3"}).out);
  const auto csv = run({"census", "--format", "csv"});
  EXPECT_EQ(csv.code, 0);
  EXPECT_EQ(std::count(csv.out.begin(), csv.out.end(), '\n'), 226);
  const auto text = run({"census"});
  EXPECT_TRUE(contains(text.out, "total_pairs=225 connected_pairs=120 split_pairs=105")) << text.out;
}

TEST(Cli, Prob) {
  const auto r = run({"prob", "--blades", "6"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(contains(r.out, "model: ")) << r.out;
  EXPECT_TRUE(contains(r.out, "p_split        = 7/15  (0.466666666667)")) << r.out;
  EXPECT_TRUE(contains(r.out, "p_ring")) << r.out;
  EXPECT_TRUE(contains(r.out, "p_figure_eight")) << r.out;
}

TEST(Cli, TableAndEnumerate) {
  const auto t = run({"table", "--blades", "6"});
  EXPECT_EQ(t.code, 0);
  EXPECT_TRUE(contains(t.out, "N = not connected")) << t.out;
  EXPECT_EQ(run({"table", "--blades", "8"}).code, 2);
  const auto e = run({"enumerate", "--blades", "6", "--format", "csv"});
  EXPECT_EQ(e.code, 0);
  EXPECT_TRUE(contains(e.out, "E,\"14,25,36\"")) << e.out;
  const auto e8 = run({"enumerate", "--blades", "8"});
  EXPECT_TRUE(contains(e8.out, "105 matchings")) << e8.out;
}

TEST(Cli, RenderSvgAndAscii) {
  const std::string path = testing::TempDir() + "grassknot_render_test.svg";
  const auto r = run({"render", "--top", "12,34,56", "--bottom", "14,25,36", "--signs", "010", "--svg", path, "--ascii"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(contains(r.out, "|1")) << r.out;
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  EXPECT_TRUE(contains(buf.str(), "<svg")) << path;
  std::remove(path.c_str());
}

TEST(Cli, MonteCarlo) {
  const auto a = run({"mc", "--blades", "6", "--samples", "5000", "--seed", "7"});
  EXPECT_EQ(a.code, 0);
  EXPECT_TRUE(contains(a.out, "samples=5000 seed=7")) << a.out;
  EXPECT_EQ(a.out, run({"mc", "--blades", "6", "--samples", "5000", "--seed", "7", "--threads", "2"}).out);
  const auto j = run({"mc", "--samples", "10", "--format", "json"});
  EXPECT_EQ(grassknot::Json::parse(j.out)["samples"], 10);
}
