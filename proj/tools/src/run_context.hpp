#pragma once

#include <chrono>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace lab {

using json = nlohmann::ordered_json;

enum ExitCode : int {
  kOk = 0,
  kFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
  kVerificationFailure = 4,
};

/// Git blob hash (SHA-1 of "blob <size>\0<content>") as lowercase hex.
std::string git_blob_hash(const std::string& content);

/// One output directory per run: <base>/<command>-<UTC timestamp>-<hash prefix>.
/// The hash covers the command name and the resolved configuration.
class RunContext {
 public:
  RunContext(std::string command, json config, const std::filesystem::path& base,
             std::vector<std::string> argv);

  const std::filesystem::path& dir() const { return dir_; }
  /// Path of an output file inside the run directory, recorded in the manifest.
  std::filesystem::path output(const std::string& name);
  void record_seed(const std::string& label, std::uint64_t seed);
  void note(const std::string& message);
  /// Writes manifest.json.
  void finish(int exit_code);

 private:
  std::string command_;
  json config_;
  std::vector<std::string> argv_;
  std::string input_hash_;
  std::string started_;
  std::filesystem::path dir_;
  std::vector<std::string> outputs_;
  json seeds_ = json::object();
  std::vector<std::string> notes_;
  std::chrono::steady_clock::time_point t0_;
};

}  // namespace lab
