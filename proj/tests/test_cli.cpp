#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "support.hpp"

using nlohmann::json;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  std::string cmd = std::string(SPLINEDIM_PATH) + " " + args + " 2>/dev/null";
  Result res;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return res;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) res.out.append(buf, n);
  int status = pclose(pipe);
  res.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

std::string write_temp(const std::string& name, const std::string& text) {
  std::string path = ::testing::TempDir() + name;
  std::ofstream(path) << text;
  return path;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::stringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string c;
    while (std::getline(ls, c, ',')) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.push_back("");
    rows.push_back(cells);
  }
  return rows;
}

const char* kTwoTriangles = R"({"vertices":[[0,0],[1,0],[1,1],[0,1]],"triangles":[[0,1,2],[0,2,3]]})";

}  // namespace

TEST(Cli, PowellSabinMorganScottRow) {
  auto res = run("dim --gen ps6:morgan-scott -r 2 -s 3 -d 5 --method all --format csv");
  ASSERT_EQ(res.code, 0);
  auto rows = csv(res.out);
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"d", "h0", "lb52", "lb51", "ub53", "exact", "method"}));
  EXPECT_EQ(rows[1][0], "5");
  EXPECT_EQ(rows[1][1], "0");
  EXPECT_EQ(rows[1][5], "67");
  EXPECT_EQ(rows[1][6], "exact");
}

TEST(Cli, MeshFileExact) {
  auto path = write_temp("two.json", kTwoTriangles);
  auto res = run("dim --mesh " + path + " -r 1 -s 2 -d 5 --method exact --format csv");
  ASSERT_EQ(res.code, 0);
  EXPECT_EQ(csv(res.out)[1][5], "29");
}

TEST(Cli, FormulaAndFallback) {
  auto res = run("dim --gen star:4-generic -r 1 -d 2 --method formula --format csv");
  ASSERT_EQ(res.code, 0);
  auto row = csv(res.out)[1];
  EXPECT_EQ(row[5], "7");
  EXPECT_EQ(row[6], "formula");
  auto fb = run("dim --gen ps6:triangle -r 2 -s 3 -d 4 --method formula --format csv");
  ASSERT_EQ(fb.code, 0);
  EXPECT_EQ(csv(fb.out)[1][6], "oracle");
  auto checked = run("dim --gen ps6:two-triangles -r 1 -s 1 -d 2..3 --method formula --check --format csv");
  ASSERT_EQ(checked.code, 0);
  EXPECT_EQ(csv(checked.out)[1][5], "12");
}

TEST(Cli, TableSingleTriangle) {
  auto res = run("table --gen triangle -r 1 -s 2 -d 0..6 --format json");
  ASSERT_EQ(res.code, 0);
  auto j = json::parse(res.out);
  ASSERT_EQ(j.size(), 7u);
  for (const auto& row : j) {
    int d = row["d"];
    EXPECT_EQ(row["exact"], supersplines::binom(d + 2, 2));
    EXPECT_EQ(row["h0"], 0);
  }
}

TEST(Cli, TableCheckAndSandwichOnRandomMeshes) {
  for (int seed = 0; seed < 4; ++seed) {
    auto res = run("table --gen random:" + std::to_string(seed) + " -r 1 -s 2 -d 2..6 --check --format json");
    ASSERT_EQ(res.code, 0) << seed;
    for (const auto& row : json::parse(res.out)) {
      EXPECT_LE(row["lb52"], row["lb51"]);
      EXPECT_LE(row["lb51"], row["exact"]);
      EXPECT_LE(row["exact"], row["ub53"]);
    }
  }
}

TEST(Cli, JsonIsSortedAndStable) {
  auto a = run("dim --gen morgan-scott -r 1 -s 2 -d 3..4 --method all --format json");
  auto b = run("dim --gen morgan-scott -r 1 -s 2 -d 3..4 --method all --format json");
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  auto j = json::parse(a.out);
  std::vector<std::string> keys;
  for (auto it = j[0].begin(); it != j[0].end(); ++it) keys.push_back(it.key());
  EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end()));
  EXPECT_EQ(a.out.find("\"d\": 3"), a.out.find("\"d\""));
}

TEST(Cli, CanonicalEdgeIdeal) {
  auto res = run("ideal --canonical -r 1 -s 2 -d 3..5 --format json");
  ASSERT_EQ(res.code, 0);
  auto j = json::parse(res.out);
  ASSERT_EQ(j["generators"].size(), 2u);
  EXPECT_EQ(j["generators"][0]["terms"][0]["exp"], json::parse("[3,0,0]"));
  EXPECT_EQ(j["generators"][1]["terms"][0]["exp"], json::parse("[2,1,1]"));
  std::vector<int> dims;
  for (const auto& e : j["dims"]) dims.push_back(e["dim"]);
  EXPECT_EQ(dims, (std::vector<int>{1, 4, 8}));
}

TEST(Cli, VertexIdeals) {
  auto bar = run("ideal --gen star:3-generic -r 1 -s 2 --vertex 0 --variant bar -d 2..7 --format csv");
  ASSERT_EQ(bar.code, 0);
  auto rows = csv(bar.out);
  for (std::size_t k = 1; k < rows.size(); ++k) {
    int d = std::stoi(rows[k][0]);
    EXPECT_EQ(std::stoll(rows[k][1]), supersplines::binom(d + 2, 2) - supersplines::binom(4, 2));
  }
  for (int v = 0; v < 3; ++v) {
    auto full = run("ideal --gen morgan-scott -r 1 -s 2 --vertex " + std::to_string(v) + " --variant full -d 5 --format csv");
    auto tilde = run("ideal --gen morgan-scott -r 1 -s 2 --vertex " + std::to_string(v) + " --variant tilde -d 5 --format csv");
    ASSERT_EQ(full.code, 0);
    ASSERT_EQ(tilde.code, 0);
    EXPECT_EQ(csv(full.out)[1][1], csv(tilde.out)[1][1]);
  }
  EXPECT_EQ(run("ideal --gen morgan-scott -r 1 --vertex 5 -d 3").code, 1);
  EXPECT_EQ(run("ideal --gen morgan-scott -r 1 --vertex 99 -d 3").code, 1);
  EXPECT_EQ(run("ideal --gen morgan-scott -r 1 --edge 0,1 -d 3").code, 0);
}

TEST(Cli, GenRoundTrip) {
  auto gen = run("gen ps6:morgan-scott -r 2 -s 3");
  ASSERT_EQ(gen.code, 0);
  auto path = write_temp("psms.json", gen.out);
  auto direct = run("dim --gen ps6:morgan-scott -r 2 -s 3 -d 4..5 --method all --format json");
  auto loaded = run("dim --mesh " + path + " -d 4..5 --method all --format json");
  ASSERT_EQ(direct.code, 0);
  ASSERT_EQ(loaded.code, 0);
  EXPECT_EQ(direct.out, loaded.out);

  auto plain = run("gen morgan-scott");
  ASSERT_EQ(plain.code, 0);
  auto j = json::parse(plain.out);
  EXPECT_EQ(j["triangles"].size(), 7u);
  EXPECT_FALSE(j.contains("smoothness"));
}

TEST(Cli, Refine) {
  auto path = write_temp("two_r.json", kTwoTriangles);
  auto res = run("refine --mesh " + path + " -r 1 -s 2");
  ASSERT_EQ(res.code, 0);
  auto j = json::parse(res.out);
  EXPECT_EQ(j["triangles"].size(), 12u);
  EXPECT_TRUE(j.contains("smoothness"));
}

TEST(Cli, Validate) {
  auto ok = run("validate --gen morgan-scott --format json");
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(json::parse(ok.out)["f1_interior"], 9);
  auto path = write_temp("bowtie.json", R"({"vertices":[[0,0],[1,0],[0,1],[-1,0],[0,-1]],"triangles":[[0,1,2],[0,3,4]]})");
  auto bad = run("validate --mesh " + path + " --format json");
  EXPECT_EQ(bad.code, 1);
  EXPECT_EQ(json::parse(bad.out)["failed"], "hereditary");
}

TEST(Cli, InputErrorsExitOne) {
  auto garbage = write_temp("garbage.json", "{nope");
  EXPECT_EQ(run("dim --mesh " + garbage + " -r 1 -d 2").code, 1);
  EXPECT_EQ(run("dim --mesh /nonexistent/file.json -r 1 -d 2").code, 1);
  EXPECT_EQ(run("dim --gen nosuchmesh -r 1 -d 2").code, 1);
  EXPECT_EQ(run("dim --gen triangle -r 1 -d 31").code, 1);
  EXPECT_EQ(run("dim --gen triangle -r 1 -d 31 --allow-large --method lb52 --format csv").code, 0);
  EXPECT_EQ(run("dim --gen triangle -r 1 -d 5..2").code, 1);
  EXPECT_EQ(run("dim --gen triangle -r 2 -s 1 -d 2").code, 1);
  EXPECT_EQ(run("dim --gen triangle -r 1 -d 2 --method magic").code, 1);
  EXPECT_EQ(run("dim --gen triangle -r 1 -d 2 --format xml").code, 1);
  EXPECT_EQ(run("dim --gen triangle -d 2").code, 1);
  EXPECT_EQ(run("dim --gen triangle --mesh x.json -r 1 -d 2").code, 1);
  EXPECT_EQ(run("frobnicate").code, 1);
  EXPECT_EQ(run("").code, 1);
}
