#include "mild/config.hpp"

#include "mild/format.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace mild::io {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view v) {
  double out = 0.0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorKind::Parse,
                std::string(key) + ": expected a number, got '" + std::string(v) + "'");
  }
  return out;
}

std::int64_t parse_int(std::string_view key, std::string_view v) {
  std::int64_t out = 0;
  const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || ptr != v.data() + v.size()) {
    throw Error(ErrorKind::Parse,
                std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
  }
  return out;
}

void assign(rd::RDConfig& cfg, std::string_view key, std::string_view v) {
  if (key == "nu") cfg.nu = parse_double(key, v);
  else if (key == "beta") cfg.beta = parse_double(key, v);
  else if (key == "T") cfg.T = parse_double(key, v);
  else if (key == "alpha") cfg.alpha = parse_double(key, v);
  else if (key == "radius") cfg.radius = parse_double(key, v);
  else if (key == "epsilon") cfg.epsilon = parse_double(key, v);
  else if (key == "n_space") cfg.n_space = parse_int(key, v);
  else if (key == "dt") cfg.dt = parse_double(key, v);
  else if (key == "n_intervals") cfg.n_intervals = parse_int(key, v);
  else if (key == "outer_iters") cfg.outer_iters = parse_int(key, v);
  else if (key == "seed") cfg.seed = parse_int(key, v);
  else if (key == "output_dir") cfg.output_dir = std::string(v);
  else throw Error(ErrorKind::InvalidArgument, "unknown config key: " + std::string(key));
}

std::string parse_error(std::size_t line, std::size_t column, const std::string& what) {
  return "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what;
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = {"nu",      "beta",    "T",           "alpha",
                                                "radius",  "epsilon", "n_space",     "dt",
                                                "n_intervals", "outer_iters", "seed", "output_dir"};
  return keys;
}

LoadedConfig parse_config(std::string_view text) {
  const auto& keys = config_keys();
  LoadedConfig out;
  std::map<std::string, std::size_t> seen;
  std::vector<std::string> unknown;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      const auto col = line.find_first_not_of(" \t") + 1;
      throw Error(ErrorKind::Parse, parse_error(line_no, col, "expected 'key = value'"));
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string_view value = trim(line.substr(eq + 1));
    if (key.empty()) {
      throw Error(ErrorKind::Parse, parse_error(line_no, eq + 1, "missing key before '='"));
    }
    if (value.empty()) {
      throw Error(ErrorKind::Parse, parse_error(line_no, eq + 2, "missing value for '" + key + "'"));
    }
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      unknown.push_back(key);
      continue;
    }
    if (const auto it = seen.find(key); it != seen.end()) {
      throw Error(ErrorKind::Parse,
                  parse_error(line_no, line.find(key) + 1,
                              "duplicate key '" + key + "' (first set on line " +
                                  std::to_string(it->second) + ")"));
    }
    seen.emplace(key, line_no);
    try {
      assign(out.config, key, value);
    } catch (const Error& e) {
      const auto col = static_cast<std::size_t>(value.data() - line.data()) + 1;
      throw Error(ErrorKind::Parse, parse_error(line_no, col, e.what()));
    }
  }
  if (!unknown.empty()) {
    std::string list;
    for (const auto& k : unknown) list += (list.empty() ? "" : ", ") + k;
    throw Error(ErrorKind::InvalidArgument, "unknown config key(s): " + list);
  }
  std::map<std::string, std::string> defaults;
  {
    std::istringstream lines(describe(rd::RDConfig{}));
    for (std::string l; std::getline(lines, l);) {
      const auto eq = l.find(" = ");
      defaults.emplace(l.substr(0, eq), l.substr(eq + 3));
    }
  }
  for (const auto& k : keys) {
    if (!seen.contains(k)) {
      out.notices.push_back("config key '" + k + "' not set; using default " + defaults[k]);
    }
  }
  out.config.validate();
  return out;
}

LoadedConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

void set_config_value(rd::RDConfig& cfg, std::string_view key, std::string_view value) {
  rd::RDConfig updated = cfg;
  assign(updated, key, trim(value));
  updated.validate();
  cfg = std::move(updated);
}

std::string describe(const rd::RDConfig& cfg) {
  std::string out;
  auto line = [&](const char* key, const std::string& v) { out += std::string(key) + " = " + v + "\n"; };
  line("nu", format_double(cfg.nu));
  line("beta", format_double(cfg.beta));
  line("T", format_double(cfg.T));
  line("alpha", format_double(cfg.alpha));
  line("radius", format_double(cfg.radius));
  line("epsilon", format_double(cfg.epsilon));
  line("n_space", std::to_string(cfg.n_space));
  line("dt", format_double(cfg.dt));
  line("n_intervals", std::to_string(cfg.n_intervals));
  line("outer_iters", std::to_string(cfg.outer_iters));
  line("seed", std::to_string(cfg.seed));
  line("output_dir", cfg.output_dir);
  return out;
}

}  // namespace mild::io
