#pragma once

#include "mild/reaction_diffusion.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace mild::io {

struct RunManifest {
  rd::RDConfig config;
  std::string version;
  std::string started_at;
  std::string finished_at;
  unsigned threads = 0;
  /// Filled by emit_artifacts, relative to the output directory.
  std::vector<std::string> files;
};

/// Writes the CSV artifacts of a benchmark run plus `manifest.txt` into
/// `dir` (created if needed). Returns the manifest with its file list filled.
RunManifest emit_artifacts(const rd::RunResult& run, RunManifest manifest,
                           const std::filesystem::path& dir);

/// `t_start,t_end,u1,...,um` with one row per piece.
void write_control_csv(const std::filesystem::path& path, const ControlSignal& u);
ControlSignal read_control_csv(const std::filesystem::path& path);

std::string utc_timestamp();

}  // namespace mild::io
