#include <gtest/gtest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
};

Result run(const std::string& args) {
  const std::string cmd = std::string(DCREG_CLI) + " " + args + " 2>&1";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("dcreg_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::pair<double, double>> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<std::pair<double, double>> rows;
  while (std::getline(in, line)) {
    const auto c = line.find(',');
    rows.push_back({std::stod(line.substr(0, c)), std::stod(line.substr(c + 1))});
  }
  return rows;
}

}  // namespace

TEST(Cli, HuberConfigPasses) {
  const fs::path out = scratch("huber");
  const Result r = run("regularize --config " + std::string(DCREG_SOURCE_DIR) + "/configs/huber.json --out " + out.string());
  EXPECT_EQ(r.code, 0) << r.out;
  std::ifstream in(out / "report.json");
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["verdict"], "PASS");
  for (const auto& c : j["checks"])
    if (c["name"] == "sandwich" || c["name"] == "huber_oracle") EXPECT_EQ(c["status"], "PASS");
  const Result d = run("diagnose " + out.string() + " --no-report");
  EXPECT_EQ(d.code, 0) << d.out;
  fs::remove_all(out);
}

TEST(Cli, L1SeparationConfigFailsAsDesigned) {
  const fs::path out = scratch("l1");
  const Result r =
      run("regularize --config " + std::string(DCREG_SOURCE_DIR) + "/configs/l1_separation.json --out " + out.string());
  EXPECT_EQ(r.code, 1) << r.out;
  std::ifstream in(out / "report.json");
  const auto j = nlohmann::json::parse(in);
  for (const auto& c : j["checks"])
    if (c["name"] == "separation") {
      EXPECT_EQ(c["status"], "FAIL");
      EXPECT_LE(c["worst_value"].get<double>(), 1e-6);
    }
  fs::remove_all(out);
}

TEST(Cli, MissingBoundsExitsTwoWithoutArtifacts) {
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  std::ofstream(dir / "c.json") << R"({"function": "x", "grid": {"nodes": [5]}, "kernel": {}, "outputs": {"directory": ")"
                                << (dir / "out").string() << "\"}}";
  const Result r = run("regularize --config " + (dir / "c.json").string());
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.out.find("grid.bounds"), std::string::npos);
  EXPECT_NE(r.out.find("\"status\": \"ConfigError\""), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "out"));
  fs::remove_all(dir);
}

TEST(Cli, EnvelopeOfSqrtAbs) {
  const Result r = run("envelope --fn \"sqrt(abs(x))\" --domain -4:4:801");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto rows = parse_csv(r.out);
  ASSERT_EQ(rows.size(), 801u);
  for (const auto& [x, v] : rows) EXPECT_NEAR(v, std::abs(x) / 2, 1e-9);
}

TEST(Cli, MoreauOfAbsIsHuber) {
  const Result r = run("moreau --fn \"abs(x)\" --n 1");
  ASSERT_EQ(r.code, 0) << r.out;
  for (const auto& [x, v] : parse_csv(r.out)) {
    const double h = std::abs(x) <= 0.5 ? x * x : std::abs(x) - 0.25;
    EXPECT_NEAR(v, h, 1e-4);
  }
}

TEST(Cli, KernelCheckEuclidean) {
  const Result r = run("kernel-check --p 2 --norm euclidean");
  ASSERT_EQ(r.code, 0) << r.out;
  const auto pos = r.out.find("separation_constant ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(r.out.substr(pos + 20)), 1.0, 1e-9);
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run("").code, 2);
  EXPECT_EQ(run("moreau --fn \"y\"").code, 2);
  EXPECT_EQ(run("lasry-lions --fn \"abs(x)\" --n 4 --m 2").code, 2);
}
