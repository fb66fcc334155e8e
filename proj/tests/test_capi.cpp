#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mild_descent.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("mild_capi_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("version and status names") {
  CHECK(std::string(md_version()).size() > 0);
  CHECK(std::string(md_status_name(MD_OK)) == "ok");
  CHECK(std::string(md_status_name(MD_ERR_PARSE)) == "parse_error");
}

TEST_CASE("config handles") {
  md_config* cfg = nullptr;
  REQUIRE(md_config_create(&cfg) == MD_OK);
  char buf[64];
  REQUIRE(md_config_get(cfg, "n_space", buf, sizeof buf) == MD_OK);
  CHECK(std::string(buf) == "96");
  CHECK(md_config_set(cfg, "nu", "-1") == MD_ERR_INVALID_ARGUMENT);
  CHECK(std::string(md_last_error()).find("nu must be > 0") != std::string::npos);
  CHECK(md_config_set(cfg, "mu", "1") == MD_ERR_INVALID_ARGUMENT);
  CHECK(md_config_get(cfg, "nu", buf, 2) == MD_ERR_INVALID_ARGUMENT);
  CHECK(md_config_create(nullptr) == MD_ERR_INVALID_ARGUMENT);
  md_config_destroy(cfg);
  md_config_destroy(nullptr);

  const fs::path dir = scratch_dir("config");
  std::ofstream(dir / "a.cfg") << "beta = 0.0\nouter_iters = 1\n";
  REQUIRE(md_config_load((dir / "a.cfg").c_str(), &cfg) == MD_OK);
  CHECK(md_config_notice_count(cfg) == 10);
  CHECK(std::string(md_config_notice(cfg, 0)).find("'nu'") != std::string::npos);
  CHECK(md_config_notice(cfg, 99) == nullptr);
  md_config_destroy(cfg);

  std::ofstream(dir / "b.cfg") << "beta 0.0\n";
  md_config* bad = nullptr;
  CHECK(md_config_load((dir / "b.cfg").c_str(), &bad) == MD_ERR_PARSE);
  CHECK(bad == nullptr);
  CHECK(md_config_load((dir / "missing.cfg").c_str(), &bad) == MD_ERR_IO);
  fs::remove_all(dir);
}

TEST_CASE("reproduce, artifacts and increment through the C API") {
  md_config* cfg = nullptr;
  REQUIRE(md_config_create(&cfg) == MD_OK);
  REQUIRE(md_config_set(cfg, "outer_iters", "2") == MD_OK);
  md_report* report = nullptr;
  REQUIRE(md_reproduce(cfg, 1, &report) == MD_OK);
  REQUIRE(md_report_cost_count(report) == 3);
  double c0 = 0, c2 = 0, mismatch = 0;
  REQUIRE(md_report_cost(report, 0, &c0) == MD_OK);
  REQUIRE(md_report_cost(report, 2, &c2) == MD_OK);
  CHECK(c0 == doctest::Approx(58.73820710826269).epsilon(1e-9));
  CHECK(c2 < c0);
  CHECK(md_report_cost(report, 3, &c2) == MD_ERR_INVALID_ARGUMENT);
  REQUIRE(md_report_relative_mismatch(report, 0, &mismatch) == MD_OK);
  CHECK(mismatch == doctest::Approx(0.82848).epsilon(1e-4));
  CHECK(md_report_rejections(report) == 0);
  CHECK(std::string(md_report_stop_reason(report)) == "max_iterations");

  const fs::path dir = scratch_dir("run");
  REQUIRE(md_report_write_artifacts(report, dir.c_str()) == MD_OK);
  CHECK(fs::exists(dir / "manifest.txt"));
  md_control* u0 = nullptr;
  md_control* u2 = nullptr;
  REQUIRE(md_control_load((dir / "control_iter0.csv").c_str(), &u0) == MD_OK);
  REQUIRE(md_control_load((dir / "control_iter2.csv").c_str(), &u2) == MD_OK);
  CHECK(md_control_pieces(u2) == 30);
  CHECK(md_control_channels(u2) == 2);

  double inc = 1.0, direct = 1.0;
  REQUIRE(md_exact_increment(cfg, u2, u2, 1, &inc, &direct) == MD_OK);
  CHECK(inc == 0.0);
  CHECK(direct == 0.0);
  REQUIRE(md_exact_increment(cfg, u0, u2, 1, &inc, &direct) == MD_OK);
  CHECK(inc < 0.0);
  CHECK(direct == doctest::Approx(c2 - c0).epsilon(1e-12));

  md_control_destroy(u0);
  md_control_destroy(u2);
  md_report_destroy(report);
  md_config_destroy(cfg);
  fs::remove_all(dir);
}

TEST_CASE("divergence maps to its status code") {
  md_config* cfg = nullptr;
  REQUIRE(md_config_create(&cfg) == MD_OK);
  REQUIRE(md_config_set(cfg, "beta", "5000") == MD_OK);
  md_report* report = nullptr;
  CHECK(md_reproduce(cfg, 1, &report) == MD_ERR_DIVERGENCE);
  CHECK(report == nullptr);
  md_config_destroy(cfg);
}

TEST_CASE("thread cap from the environment") {
  unsigned n = 0;
  ::setenv("MILD_DESCENT_THREADS", "3", 1);
  REQUIRE(md_threads_from_env(&n) == MD_OK);
  CHECK(n == 3);
  ::setenv("MILD_DESCENT_THREADS", "many", 1);
  CHECK(md_threads_from_env(&n) == MD_ERR_INVALID_ARGUMENT);
  ::unsetenv("MILD_DESCENT_THREADS");
}
