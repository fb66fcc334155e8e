#include "mild/artifacts.hpp"

#include "mild/config.hpp"
#include "mild/format.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <sstream>

namespace mild::io {

namespace fs = std::filesystem;

namespace {

class CsvWriter {
 public:
  explicit CsvWriter(const fs::path& path) : path_(path), out_(path, std::ios::binary) {
    if (!out_) throw Error(ErrorKind::Io, "cannot write '" + path.string() + "'");
  }
  ~CsvWriter() = default;

  CsvWriter& row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i > 0) out_ << ',';
      out_ << cells[i];
    }
    out_ << '\n';
    return *this;
  }

  void close() {
    out_.close();
    if (!out_) throw Error(ErrorKind::Io, "failed writing '" + path_.string() + "'");
  }

 private:
  fs::path path_;
  std::ofstream out_;
};

void write_profile(const fs::path& path, const torus::TorusGrid& grid, const StateField& rho) {
  CsvWriter csv(path);
  csv.row({"theta", "rho"});
  for (Eigen::Index i = 0; i < grid.size(); ++i) {
    csv.row({format_double(grid.theta(i)), format_double(rho[i])});
  }
  csv.close();
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string cell; std::getline(ss, cell, ',');) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double cell_to_double(const std::string& cell, const fs::path& path, std::size_t line,
                      std::size_t column) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw Error(ErrorKind::Parse, path.string() + ": line " + std::to_string(line) + ", field " +
                                      std::to_string(column) + ": expected a number, got '" +
                                      cell + "'");
  }
  return v;
}

}  // namespace

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_control_csv(const fs::path& path, const ControlSignal& u) {
  CsvWriter csv(path);
  std::vector<std::string> header = {"t_start", "t_end"};
  for (Eigen::Index j = 0; j < u.channels(); ++j) header.push_back("u" + std::to_string(j + 1));
  csv.row(header);
  for (std::size_t k = 0; k < u.n_pieces(); ++k) {
    std::vector<std::string> cells = {format_double(u.breakpoints()[k]),
                                      format_double(u.breakpoints()[k + 1])};
    for (Eigen::Index j = 0; j < u.channels(); ++j) cells.push_back(format_double(u.value(k)[j]));
    csv.row(cells);
  }
  csv.close();
}

ControlSignal read_control_csv(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open control file '" + path.string() + "'");
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorKind::Parse, path.string() + ": empty file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() < 3 || header[0] != "t_start" || header[1] != "t_end") {
    throw Error(ErrorKind::Parse,
                path.string() + ": line 1: expected header 't_start,t_end,u1,...'");
  }
  const auto m = static_cast<Eigen::Index>(header.size() - 2);
  std::vector<double> breakpoints;
  std::vector<ControlValue> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != header.size()) {
      throw Error(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) +
                                        ": expected " + std::to_string(header.size()) +
                                        " fields, got " + std::to_string(cells.size()));
    }
    const double start = cell_to_double(cells[0], path, line_no, 1);
    const double end = cell_to_double(cells[1], path, line_no, 2);
    if (breakpoints.empty()) {
      breakpoints.push_back(start);
    } else if (breakpoints.back() != start) {
      throw Error(ErrorKind::Parse, path.string() + ": line " + std::to_string(line_no) +
                                        ": t_start does not continue the previous t_end");
    }
    breakpoints.push_back(end);
    ControlValue v(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      v[j] = cell_to_double(cells[static_cast<std::size_t>(j) + 2], path, line_no,
                            static_cast<std::size_t>(j) + 3);
    }
    values.push_back(std::move(v));
  }
  if (values.empty()) throw Error(ErrorKind::Parse, path.string() + ": no control rows");
  return ControlSignal(std::move(breakpoints), std::move(values));
}

RunManifest emit_artifacts(const rd::RunResult& run, RunManifest manifest, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw Error(ErrorKind::Io, "cannot create output directory '" + dir.string() + "'");
  }
  const auto& report = run.report;
  const auto& setup = run.setup;
  manifest.files.clear();
  auto track = [&](const std::string& name) {
    manifest.files.push_back(name);
    return dir / name;
  };

  {
    CsvWriter csv(track("cost_history.csv"));
    csv.row({"iteration", "cost"});
    for (std::size_t i = 0; i < report.cost_history.size(); ++i) {
      csv.row({std::to_string(i), format_double(report.cost_history[i])});
    }
    csv.close();
  }
  {
    CsvWriter csv(track("diagnostics.csv"));
    csv.row({"iteration", "cost", "relative_mismatch", "increment_estimate", "increment_residual"});
    for (std::size_t i = 0; i < report.cost_history.size(); ++i) {
      const bool has_inc = i > 0 && i - 1 < report.increment_residuals.size();
      csv.row({std::to_string(i), format_double(report.cost_history[i]),
               format_double(rd::relative_mismatch(setup, report.terminal_states[i])),
               has_inc ? format_double(report.increment_estimates[i - 1]) : "",
               has_inc ? format_double(report.increment_residuals[i - 1]) : ""});
    }
    csv.close();
  }
  for (std::size_t k = 0; k < report.controls.size(); ++k) {
    write_control_csv(track("control_iter" + std::to_string(k) + ".csv"), report.controls[k]);
    write_profile(track("terminal_profile_iter" + std::to_string(k) + ".csv"), setup.torus,
                  report.terminal_states[k]);
  }
  write_profile(track("target_profile.csv"), setup.torus, setup.target);

  const fs::path manifest_path = track("manifest.txt");
  std::ofstream out(manifest_path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write '" + manifest_path.string() + "'");
  out << "version = " << manifest.version << '\n';
  out << "started_at = " << manifest.started_at << '\n';
  out << "finished_at = " << manifest.finished_at << '\n';
  out << "threads = " << manifest.threads << '\n';
  out << describe(manifest.config);
  out << "scheme.integrator = " << ExpEulerStepper::variant << '\n';
  out << "scheme.time_step = " << format_double(setup.grid.dt()) << '\n';
  out << "scheme.steps_per_interval = " << setup.grid.steps_per_interval() << '\n';
  out << "scheme.spatial_quadrature = rectangle rule, weight 2*pi/n\n";
  out << "scheme.increment_quadrature = midpoint over control pieces\n";
  out << "scheme.probe = forward difference\n";
  out << "result.iterations = " << report.iterations() << '\n';
  out << "result.stop_reason = " << to_string(report.stop_reason) << '\n';
  out << "result.rejections = " << report.rejections << '\n';
  for (std::size_t i = 0; i < manifest.files.size(); ++i) {
    out << "file." << i << " = " << manifest.files[i] << '\n';
  }
  out.close();
  if (!out) throw Error(ErrorKind::Io, "failed writing '" + manifest_path.string() + "'");
  return manifest;
}

}  // namespace mild::io
