#pragma once

#include <string>

#include "cli/config.hpp"

// Executes a parsed run configuration and renders the result as CSV or
// JSON. Everything in the pipeline is deterministic: repeated runs of the
// same config produce byte-identical output.

namespace cqed::cli {

inline constexpr const char* kEngineVersion = "1.0.0";

struct TaskOutput {
  nlohmann::json payload;  // full result, mirrors the CSV table
  std::string csv;
};

// Throws ConfigError for configuration problems; any other exception is a
// numerical failure.
TaskOutput run_task(const RunConfig& config, int threads = 1);

// Renders the selected format (config.format) of an already-computed result.
std::string render(const TaskOutput& output, const std::string& format);

// Full CLI entry: load config, run, write to config/CLI-selected output.
// Returns 0 on success, 2 on config errors, 3 on numerical failures.
int run_main(const std::string& config_path, const std::string& output_override,
             const std::string& format_override, int threads);

// FNV-1a 64-bit hash, used for the provenance config hash.
std::string fnv1a_hex(const std::string& text);

// Lossless (17 significant digit) decimal rendering of a double.
std::string format_double(double value);

}  // namespace cqed::cli
