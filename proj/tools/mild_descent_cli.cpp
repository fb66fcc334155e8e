// Command-line front end; talks to the library only through mild_descent.h.
#include "mild_descent.h"

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>

namespace {

struct Options {
  std::string config;
  std::string output_dir;
  int iters = -1;
  bool quiet = false;
};

class Failure {
 public:
  explicit Failure(md_status s) : status(s), message(md_last_error()) {}
  md_status status;
  std::string message;
};

void check(md_status s) {
  if (s != MD_OK) throw Failure(s);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
  void operator()(T* p) const { Destroy(p); }
};
using ConfigPtr = std::unique_ptr<md_config, Deleter<md_config, md_config_destroy>>;
using ReportPtr = std::unique_ptr<md_report, Deleter<md_report, md_report_destroy>>;
using ControlPtr = std::unique_ptr<md_control, Deleter<md_control, md_control_destroy>>;
using TablePtr = std::unique_ptr<md_verify_table, Deleter<md_verify_table, md_verify_destroy>>;

ConfigPtr make_config(const Options& opt) {
  md_config* raw = nullptr;
  if (!opt.config.empty()) {
    check(md_config_load(opt.config.c_str(), &raw));
  } else {
    check(md_config_create(&raw));
  }
  ConfigPtr cfg(raw);
  if (!opt.quiet) {
    for (size_t i = 0; i < md_config_notice_count(cfg.get()); ++i) {
      std::fprintf(stderr, "note: %s\n", md_config_notice(cfg.get(), i));
    }
  }
  if (!opt.output_dir.empty()) check(md_config_set(cfg.get(), "output_dir", opt.output_dir.c_str()));
  if (opt.iters >= 0) {
    check(md_config_set(cfg.get(), "outer_iters", std::to_string(opt.iters).c_str()));
  }
  return cfg;
}

unsigned threads() {
  unsigned n = 0;
  check(md_threads_from_env(&n));
  return n;
}

int run_descent(const Options& opt) {
  ConfigPtr cfg = make_config(opt);
  md_report* raw = nullptr;
  check(md_reproduce(cfg.get(), threads(), &raw));
  ReportPtr report(raw);
  char dir[4096];
  check(md_config_get(cfg.get(), "output_dir", dir, sizeof dir));
  check(md_report_write_artifacts(report.get(), dir));
  if (!opt.quiet) {
    std::printf("iteration,cost,relative_mismatch\n");
    for (size_t i = 0; i < md_report_cost_count(report.get()); ++i) {
      double cost = 0.0;
      double mismatch = 0.0;
      check(md_report_cost(report.get(), i, &cost));
      check(md_report_relative_mismatch(report.get(), i, &mismatch));
      std::printf("%zu,%.17g,%.17g\n", i, cost, mismatch);
    }
    std::printf("stop_reason = %s\nrejections = %zu\nartifacts = %s\n",
                md_report_stop_reason(report.get()), md_report_rejections(report.get()), dir);
  }
  return 0;
}

int run_verify(const Options& opt) {
  ConfigPtr cfg = make_config(opt);
  md_verify_table* raw = nullptr;
  check(md_verify(cfg.get(), threads(), &raw));
  TablePtr table(raw);
  bool all = true;
  std::printf("%-36s %-24s %-10s %-10s %s\n", "check", "value", "target", "tolerance", "status");
  for (size_t i = 0; i < md_verify_rows(table.get()); ++i) {
    const char* name = nullptr;
    double value = 0, target = 0, tol = 0;
    int passed = 0;
    check(md_verify_row(table.get(), i, &name, &value, &target, &tol, &passed));
    all = all && passed;
    std::printf("%-36s %-24.17g %-10g %-10g %s\n", name, value, target, tol,
                passed ? "PASS" : "FAIL");
  }
  return all ? 0 : 1;
}

int run_increment(const Options& opt, const std::string& ubar_path, const std::string& u_path) {
  ConfigPtr cfg = make_config(opt);
  md_control* raw_bar = nullptr;
  check(md_control_load(ubar_path.c_str(), &raw_bar));
  ControlPtr ubar(raw_bar);
  md_control* raw_u = nullptr;
  check(md_control_load(u_path.c_str(), &raw_u));
  ControlPtr u(raw_u);
  double increment = 0.0;
  double direct = 0.0;
  check(md_exact_increment(cfg.get(), ubar.get(), u.get(), threads(), &increment, &direct));
  std::printf("increment = %.17g\n", increment);
  if (!opt.quiet) std::printf("direct_difference = %.17g\n", direct);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monotone sample-and-hold descent for semilinear evolution equations"};
  app.set_version_flag("--version", std::string(md_version()));
  app.require_subcommand(1);
  Options opt;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config, "flat key = value configuration file");
    sub->add_option("--output-dir", opt.output_dir, "artifact directory (overrides output_dir)");
    sub->add_option("--iters", opt.iters, "outer iterations (overrides outer_iters)")
        ->check(CLI::NonNegativeNumber);
    sub->add_flag("--quiet", opt.quiet, "suppress notices and tables");
  };
  auto* reproduce = app.add_subcommand("reproduce", "reaction-diffusion benchmark run");
  auto* descend = app.add_subcommand("descend", "descent with a custom configuration file");
  auto* verify = app.add_subcommand("verify", "residual table of the variational checks");
  auto* increment = app.add_subcommand("increment", "exact increment between two control files");
  for (auto* sub : {reproduce, descend, verify, increment}) add_common(sub);
  descend->get_option("--config")->required();
  std::string ubar_path;
  std::string u_path;
  increment->add_option("UBAR", ubar_path, "baseline control CSV")->required();
  increment->add_option("U", u_path, "candidate control CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (reproduce->parsed()) return run_descent(opt);
    if (descend->parsed()) return run_descent(opt);
    if (verify->parsed()) return run_verify(opt);
    return run_increment(opt, ubar_path, u_path);
  } catch (const Failure& f) {
    std::fprintf(stderr, "error: code=%s status=%d message=\"%s\"\n", md_status_name(f.status),
                 static_cast<int>(f.status), f.message.c_str());
    return static_cast<int>(f.status);
  }
}
