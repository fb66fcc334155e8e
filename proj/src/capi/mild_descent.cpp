#include "mild_descent.h"

#include "mild/artifacts.hpp"
#include "mild/config.hpp"
#include "mild/parallel.hpp"
#include "mild/verify.hpp"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#ifndef MILD_DESCENT_VERSION
#define MILD_DESCENT_VERSION "0.0.0"
#endif

struct md_config {
  mild::rd::RDConfig cfg;
  std::vector<std::string> notices;
};

struct md_report {
  mild::rd::RunResult run;
  std::string started_at;
  std::string finished_at;
  unsigned threads;
};

struct md_control {
  mild::ControlSignal signal;
};

struct md_verify_table {
  std::vector<mild::verify::Row> rows;
};

namespace {

thread_local std::string last_error;

md_status status_of(mild::ErrorKind kind) {
  switch (kind) {
    case mild::ErrorKind::InvalidArgument:
      return MD_ERR_INVALID_ARGUMENT;
    case mild::ErrorKind::DimensionMismatch:
      return MD_ERR_DIMENSION;
    case mild::ErrorKind::Misaligned:
      return MD_ERR_MISALIGNED;
    case mild::ErrorKind::Divergence:
      return MD_ERR_DIVERGENCE;
    case mild::ErrorKind::MissingField:
      return MD_ERR_MISSING_FIELD;
    case mild::ErrorKind::Parse:
      return MD_ERR_PARSE;
    case mild::ErrorKind::Io:
      return MD_ERR_IO;
  }
  return MD_ERR_INTERNAL;
}

md_status fail(md_status status, std::string message) {
  last_error = std::move(message);
  return status;
}

template <class Fn>
md_status guarded(Fn&& fn) {
  try {
    fn();
    return MD_OK;
  } catch (const mild::Error& e) {
    return fail(status_of(e.kind()), e.what());
  } catch (const std::bad_alloc&) {
    return fail(MD_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(MD_ERR_INTERNAL, e.what());
  }
}

#define MD_REQUIRE_ARG(cond, msg) \
  if (!(cond)) return fail(MD_ERR_INVALID_ARGUMENT, msg)

}  // namespace

extern "C" {

const char* md_version(void) { return MILD_DESCENT_VERSION; }

const char* md_last_error(void) { return last_error.c_str(); }

const char* md_status_name(md_status status) {
  switch (status) {
    case MD_OK:
      return "ok";
    case MD_ERR_INVALID_ARGUMENT:
      return "invalid_argument";
    case MD_ERR_DIMENSION:
      return "dimension_mismatch";
    case MD_ERR_MISALIGNED:
      return "misaligned";
    case MD_ERR_DIVERGENCE:
      return "divergence";
    case MD_ERR_MISSING_FIELD:
      return "missing_field";
    case MD_ERR_PARSE:
      return "parse_error";
    case MD_ERR_IO:
      return "io_error";
    case MD_ERR_INTERNAL:
      return "internal_error";
  }
  return "unknown";
}

md_status md_config_create(md_config** out) {
  MD_REQUIRE_ARG(out != nullptr, "md_config_create: out is NULL");
  return guarded([&] { *out = new md_config{}; });
}

md_status md_config_load(const char* path, md_config** out) {
  MD_REQUIRE_ARG(path != nullptr && out != nullptr, "md_config_load: NULL argument");
  return guarded([&] {
    auto loaded = mild::io::load_config(path);
    *out = new md_config{std::move(loaded.config), std::move(loaded.notices)};
  });
}

void md_config_destroy(md_config* cfg) { delete cfg; }

md_status md_config_set(md_config* cfg, const char* key, const char* value) {
  MD_REQUIRE_ARG(cfg != nullptr && key != nullptr && value != nullptr,
                 "md_config_set: NULL argument");
  return guarded([&] { mild::io::set_config_value(cfg->cfg, key, value); });
}

md_status md_config_get(const md_config* cfg, const char* key, char* buf, size_t buf_len) {
  MD_REQUIRE_ARG(cfg != nullptr && key != nullptr && buf != nullptr && buf_len > 0,
                 "md_config_get: NULL argument");
  const std::string text = mild::io::describe(cfg->cfg);
  const std::string prefix = std::string(key) + " = ";
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = text.find('\n', pos);
    if (text.compare(pos, prefix.size(), prefix) == 0) {
      const std::string value = text.substr(pos + prefix.size(), end - pos - prefix.size());
      if (value.size() + 1 > buf_len) return fail(MD_ERR_INVALID_ARGUMENT, "buffer too small");
      std::memcpy(buf, value.c_str(), value.size() + 1);
      return MD_OK;
    }
    pos = end + 1;
  }
  return fail(MD_ERR_INVALID_ARGUMENT, std::string("unknown config key: ") + key);
}

size_t md_config_notice_count(const md_config* cfg) { return cfg ? cfg->notices.size() : 0; }

const char* md_config_notice(const md_config* cfg, size_t index) {
  if (cfg == nullptr || index >= cfg->notices.size()) return nullptr;
  return cfg->notices[index].c_str();
}

md_status md_reproduce(const md_config* cfg, unsigned threads, md_report** out) {
  MD_REQUIRE_ARG(cfg != nullptr && out != nullptr, "md_reproduce: NULL argument");
  return guarded([&] {
    const std::string started = mild::io::utc_timestamp();
    auto run = mild::rd::reproduce(cfg->cfg, threads);
    *out = new md_report{std::move(run), started, mild::io::utc_timestamp(), threads};
  });
}

void md_report_destroy(md_report* report) { delete report; }

size_t md_report_cost_count(const md_report* report) {
  return report ? report->run.report.cost_history.size() : 0;
}

md_status md_report_cost(const md_report* report, size_t index, double* out) {
  MD_REQUIRE_ARG(report != nullptr && out != nullptr, "md_report_cost: NULL argument");
  MD_REQUIRE_ARG(index < report->run.report.cost_history.size(), "md_report_cost: index out of range");
  *out = report->run.report.cost_history[index];
  return MD_OK;
}

md_status md_report_relative_mismatch(const md_report* report, size_t index, double* out) {
  MD_REQUIRE_ARG(report != nullptr && out != nullptr, "md_report_relative_mismatch: NULL argument");
  MD_REQUIRE_ARG(index < report->run.report.terminal_states.size(),
                 "md_report_relative_mismatch: index out of range");
  return guarded([&] {
    *out = mild::rd::relative_mismatch(report->run.setup, report->run.report.terminal_states[index]);
  });
}

size_t md_report_rejections(const md_report* report) {
  return report ? report->run.report.rejections : 0;
}

const char* md_report_stop_reason(const md_report* report) {
  return report ? mild::to_string(report->run.report.stop_reason) : "unknown";
}

md_status md_report_write_artifacts(const md_report* report, const char* dir) {
  MD_REQUIRE_ARG(report != nullptr && dir != nullptr, "md_report_write_artifacts: NULL argument");
  return guarded([&] {
    mild::io::RunManifest manifest;
    manifest.config = report->run.config;
    manifest.version = MILD_DESCENT_VERSION;
    manifest.started_at = report->started_at;
    manifest.finished_at = report->finished_at;
    manifest.threads = report->threads;
    mild::io::emit_artifacts(report->run, std::move(manifest), dir);
  });
}

md_status md_control_load(const char* path, md_control** out) {
  MD_REQUIRE_ARG(path != nullptr && out != nullptr, "md_control_load: NULL argument");
  return guarded([&] { *out = new md_control{mild::io::read_control_csv(path)}; });
}

void md_control_destroy(md_control* control) { delete control; }

size_t md_control_pieces(const md_control* control) {
  return control ? control->signal.n_pieces() : 0;
}

size_t md_control_channels(const md_control* control) {
  return control ? static_cast<size_t>(control->signal.channels()) : 0;
}

md_status md_exact_increment(const md_config* cfg, const md_control* ubar, const md_control* u,
                             unsigned threads, double* increment, double* direct) {
  MD_REQUIRE_ARG(cfg != nullptr && ubar != nullptr && u != nullptr,
                 "md_exact_increment: NULL argument");
  return guarded([&] {
    const auto setup = mild::rd::build_problem(cfg->cfg);
    const double inc = mild::exact_increment(setup.problem, setup.grid, ubar->signal, u->signal,
                                             {.epsilon = cfg->cfg.epsilon, .threads = threads});
    if (increment) *increment = inc;
    if (direct) {
      *direct = mild::evaluate_cost(setup.problem, setup.grid, u->signal) -
                mild::evaluate_cost(setup.problem, setup.grid, ubar->signal);
    }
  });
}

md_status md_verify(const md_config* cfg, unsigned threads, md_verify_table** out) {
  MD_REQUIRE_ARG(cfg != nullptr && out != nullptr, "md_verify: NULL argument");
  return guarded([&] { *out = new md_verify_table{mild::verify::run_all(cfg->cfg, threads)}; });
}

void md_verify_destroy(md_verify_table* table) { delete table; }

size_t md_verify_rows(const md_verify_table* table) { return table ? table->rows.size() : 0; }

md_status md_verify_row(const md_verify_table* table, size_t index, const char** name,
                        double* value, double* target, double* tolerance, int* passed) {
  MD_REQUIRE_ARG(table != nullptr, "md_verify_row: NULL table");
  MD_REQUIRE_ARG(index < table->rows.size(), "md_verify_row: index out of range");
  const auto& row = table->rows[index];
  if (name) *name = row.name.c_str();
  if (value) *value = row.value;
  if (target) *target = row.target;
  if (tolerance) *tolerance = row.tolerance;
  if (passed) *passed = row.passed() ? 1 : 0;
  return MD_OK;
}

md_status md_threads_from_env(unsigned* out) {
  MD_REQUIRE_ARG(out != nullptr, "md_threads_from_env: out is NULL");
  return guarded([&] { *out = mild::threads_from_env(); });
}

}  // extern "C"
