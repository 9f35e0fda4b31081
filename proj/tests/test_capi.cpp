#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "dcreg/dcreg.h"

namespace fs = std::filesystem;

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STRNE(dcreg_version(), "");
  EXPECT_STREQ(dcreg_status_name(DCREG_OK), "Ok");
  EXPECT_STREQ(dcreg_status_name(DCREG_CONFIG_ERROR), "ConfigError");
}

TEST(CApi, ExpressionRoundTrip) {
  dcreg_function* f = nullptr;
  ASSERT_EQ(dcreg_function_from_expression("abs(x)", "-1:1:5", &f), DCREG_OK);
  ASSERT_EQ(dcreg_function_size(f), 5u);
  EXPECT_EQ(dcreg_function_dim(f), 1);
  std::vector<double> v(5);
  ASSERT_EQ(dcreg_function_values(f, v.data(), v.size()), DCREG_OK);
  EXPECT_EQ(v, (std::vector<double>{1, 0.5, 0, 0.5, 1}));
  EXPECT_EQ(dcreg_function_values(f, v.data(), 4), DCREG_INVALID_ARGUMENT);
  dcreg_function_free(f);
}

TEST(CApi, ErrorsAreReportedNotThrown) {
  dcreg_function* f = nullptr;
  EXPECT_EQ(dcreg_function_from_expression("sqrt(x)", "-1:1:5", &f), DCREG_EVALUATION_ERROR);
  EXPECT_NE(std::string(dcreg_last_error()).find("sqrt"), std::string::npos);
  EXPECT_EQ(f, nullptr);
  EXPECT_EQ(dcreg_function_from_expression("x", "1:0:5", &f), DCREG_INVALID_GRID);
  EXPECT_EQ(dcreg_function_from_expression(nullptr, "0:1:5", &f), DCREG_INVALID_ARGUMENT);
  dcreg_kernel* k = nullptr;
  EXPECT_EQ(dcreg_kernel_create("gaussian", 2, 2, 1, &k), DCREG_UNSUPPORTED_KERNEL);
}

TEST(CApi, InfConvolveHuber) {
  dcreg_function* f = nullptr;
  dcreg_kernel* k = nullptr;
  dcreg_function* out = nullptr;
  ASSERT_EQ(dcreg_function_from_expression("abs(x)", "-2:2:401", &f), DCREG_OK);
  ASSERT_EQ(dcreg_kernel_create("kp", 2, 2, 1, &k), DCREG_OK);
  ASSERT_EQ(dcreg_inf_convolve(f, k, 1.0, &out), DCREG_OK);
  std::vector<double> v(401);
  dcreg_function_values(out, v.data(), v.size());
  EXPECT_NEAR(v[200], 0.0, 1e-15);
  EXPECT_NEAR(v[0], 1.75, 1e-12);
  dcreg_function* fast = nullptr;
  ASSERT_EQ(dcreg_inf_convolve_fast(f, k, 1.0, &fast), DCREG_OK);
  std::vector<double> w(401);
  dcreg_function_values(fast, w.data(), w.size());
  for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(v[i], w[i], 1e-12);
  dcreg_function_free(fast);
  dcreg_function_free(out);
  dcreg_kernel_free(k);
  dcreg_function_free(f);
}

TEST(CApi, DeltaAndEnvelope) {
  dcreg_function* f = nullptr;
  dcreg_kernel* k = nullptr;
  ASSERT_EQ(dcreg_function_from_expression("(abs(x) - 1)^2", "-2:2:81", &f), DCREG_OK);
  ASSERT_EQ(dcreg_kernel_create("kp", 2, 3, 1, &k), DCREG_OK);
  dcreg_function *val = nullptr, *plus = nullptr, *minus = nullptr;
  ASSERT_EQ(dcreg_delta_regularize(f, k, 2.0, &val, &plus, &minus), DCREG_OK);
  std::vector<double> a(81), b(81), c(81);
  dcreg_function_values(val, a.data(), 81);
  dcreg_function_values(plus, b.data(), 81);
  dcreg_function_values(minus, c.data(), 81);
  for (int i = 0; i < 81; ++i) EXPECT_NEAR(a[i], b[i] - c[i], 1e-9);
  dcreg_function* co = nullptr;
  ASSERT_EQ(dcreg_convex_envelope(f, &co), DCREG_OK);
  dcreg_function* ll = nullptr;
  EXPECT_EQ(dcreg_lasry_lions(f, k, 4, 2, &ll), DCREG_SCALE_ORDER);
  ASSERT_EQ(dcreg_lasry_lions(f, k, 2, 4, &ll), DCREG_OK);
  for (auto* h : {val, plus, minus, co, ll, f}) dcreg_function_free(h);
  dcreg_kernel_free(k);
}

TEST(CApi, ValuesWithInfinity) {
  const double vals[] = {1.0, HUGE_VAL, 0.0};
  dcreg_function* f = nullptr;
  ASSERT_EQ(dcreg_function_from_values("0:1:3", vals, 3, &f), DCREG_OK);
  dcreg_kernel* k = nullptr;
  dcreg_kernel_create("kp", 2, 2, 1, &k);
  dcreg_function* s = nullptr;
  EXPECT_EQ(dcreg_sup_convolve(f, k, 1.0, &s), DCREG_INFINITE_VALUE_IN_SUP);
  const double bad[] = {NAN, 0.0, 0.0};
  dcreg_function* g = nullptr;
  EXPECT_EQ(dcreg_function_from_values("0:1:3", bad, 3, &g), DCREG_INVALID_VALUE);
  dcreg_kernel_free(k);
  dcreg_function_free(f);
}

TEST(CApi, CsvFileRoundTrip) {
  const fs::path p = fs::temp_directory_path() / "dcreg_capi_roundtrip.csv";
  dcreg_function* f = nullptr;
  ASSERT_EQ(dcreg_function_from_expression("if(x < 0, inf, sin(x))", "-1:1:9,0:1:3", &f), DCREG_OK);
  ASSERT_EQ(dcreg_function_write_csv(f, p.c_str()), DCREG_OK);
  dcreg_function* g = nullptr;
  ASSERT_EQ(dcreg_function_read_csv(p.c_str(), &g), DCREG_OK);
  std::vector<double> a(27), b(27);
  dcreg_function_values(f, a.data(), 27);
  dcreg_function_values(g, b.data(), 27);
  EXPECT_EQ(a, b);
  dcreg_function_free(f);
  dcreg_function_free(g);
  fs::remove(p);
}

TEST(CApi, KernelCheck) {
  dcreg_kernel* k = nullptr;
  ASSERT_EQ(dcreg_kernel_create("kp", 2, 2, 2, &k), DCREG_OK);
  dcreg_kernel_report r{};
  ASSERT_EQ(dcreg_kernel_check(k, 2000, 0, &r), DCREG_OK);
  EXPECT_NEAR(r.separation_constant, 1.0, 1e-9);
  EXPECT_LE(r.quadratic_defect, 1e-12);
  EXPECT_EQ(r.is_quadratic, 1);
  dcreg_kernel_free(k);
}

TEST(CApi, RunConfigMissingBoundsWritesNothing) {
  const fs::path dir = fs::temp_directory_path() / "dcreg_capi_bad";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const fs::path cfg = dir / "bad.json";
  std::ofstream(cfg) << R"({"function": "x", "grid": {"nodes": [5]}, "kernel": {}, "outputs": {"directory": ")"
                     << (dir / "out").string() << "\"}}";
  int passed = -1;
  EXPECT_EQ(dcreg_run_config(cfg.c_str(), nullptr, &passed), DCREG_CONFIG_ERROR);
  EXPECT_NE(std::string(dcreg_last_error()).find("grid.bounds"), std::string::npos);
  EXPECT_FALSE(fs::exists(dir / "out"));
  fs::remove_all(dir);
}
