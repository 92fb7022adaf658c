#include "run_context.hpp"

#include <openssl/evp.h>

#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace lab {

namespace fs = std::filesystem;

std::string git_blob_hash(const std::string& content) {
  const std::string blob = "blob " + std::to_string(content.size()) + '\0' + content;
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(blob.data(), blob.size(), digest, &len, EVP_sha1(), nullptr) != 1)
    throw std::runtime_error("SHA-1 digest failed");
  std::ostringstream hex;
  for (unsigned int i = 0; i < len; ++i)
    hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
  return hex.str();
}

namespace {

std::string utc_stamp(std::time_t t, const char* fmt) {
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[64];
  std::strftime(buf, sizeof buf, fmt, &tm);
  return buf;
}

}  // namespace

RunContext::RunContext(std::string command, json config, const fs::path& base,
                       std::vector<std::string> argv)
    : command_(std::move(command)),
      config_(std::move(config)),
      argv_(std::move(argv)),
      t0_(std::chrono::steady_clock::now()) {
  json inputs;
  inputs["command"] = command_;
  inputs["config"] = config_;
  input_hash_ = git_blob_hash(inputs.dump());
  const std::time_t now = std::time(nullptr);
  started_ = utc_stamp(now, "%Y-%m-%dT%H:%M:%SZ");
  const std::string stem = command_ + "-" + utc_stamp(now, "%Y%m%dT%H%M%SZ") + "-" + input_hash_.substr(0, 8);
  dir_ = base / stem;
  for (int k = 1; fs::exists(dir_); ++k) dir_ = base / (stem + "-" + std::to_string(k));
  fs::create_directories(dir_);
}

fs::path RunContext::output(const std::string& name) {
  outputs_.push_back(name);
  return dir_ / name;
}

void RunContext::record_seed(const std::string& label, std::uint64_t seed) { seeds_[label] = seed; }

void RunContext::note(const std::string& message) { notes_.push_back(message); }

void RunContext::finish(int exit_code) {
  json m;
  m["command"] = command_;
  m["argv"] = argv_;
  m["config"] = config_;
  m["seeds"] = seeds_;
  m["input_hash"] = input_hash_;
  m["started_utc"] = started_;
  m["wall_time_s"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0_).count();
  m["exit_code"] = exit_code;
  m["outputs"] = outputs_;
  m["notes"] = notes_;
  std::ofstream out(dir_ / "manifest.json");
  out << m.dump(2) << '\n';
}

}  // namespace lab
