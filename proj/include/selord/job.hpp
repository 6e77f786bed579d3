#pragma once

// JSON job files for the command-line front end. All integers in a job are
// decimal strings; rationals are "a/b".

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

namespace selord {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
  std::optional<std::size_t> bound;          // overrides the job's "bound"
  std::optional<std::size_t> stabilization;  // overrides the job's "stabilization"
  bool use_cache = true;
  bool certificates = false;
  std::filesystem::path cache_path;  // empty: default location
};

struct RunResult {
  int exit_code = 0;  // 0 determinate, 1 input error, 2 indeterminate
  nlohmann::json document;
};

// Subcommands: td, chamber, classgroup, split, rho, verdict, parametrize.
RunResult run_job(const std::string& subcommand, const nlohmann::json& job,
                  const RunOptions& options);

}  // namespace selord
