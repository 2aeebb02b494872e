#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/jcmodel.hpp"

// JSON run configuration for the command-line front end. Frequencies are
// nu/2pi in MHz (suffix _mhz), delays in ns or us; conversion to the
// engine's rad/s happens once, here.

namespace cqed::cli {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Task {
  Spectrum,
  G2,
  G3Map,
  G3Diag,
  Distribution,
  Certify,
  FitSpectrum,
  FitLongtime,
  Sweep,
};

std::string task_name(Task task);

struct SystemConfig {
  double g_mhz = 0.0;
  double kappa_mhz = 0.0;
  double gamma_mhz = 0.0;
  double delta_c_mhz = 0.0;
  double delta_ac_mhz = 0.0;
  std::string drive = "none";  // "atom" | "cavity" | "none"
  double eta_mhz = 0.0;
  int n_max = 12;

  SystemParams to_params() const;
  DriveKind drive_kind() const;
};

struct DelayGrid {
  std::string preset;  // "dynamics" | "long-time" | "" for explicit range
  double start_ns = 0.0;
  double stop_ns = 0.0;
  double step_ns = 1.0;

  std::vector<double> seconds() const;
};

struct DetuningGrid {
  double start_mhz = 0.0;
  double stop_mhz = 0.0;
  int points = 0;

  std::vector<double> radians() const;
};

struct WindowConfig {
  double start_us = 0.0;
  double stop_us = 0.0;
};

struct SweepParameter {
  std::string name;  // a system field name, e.g. "delta_c_mhz"
  double start = 0.0;
  double stop = 0.0;
  int points = 0;
};

struct SweepConfig {
  std::vector<SweepParameter> parameters;
  std::vector<std::string> observables;
};

struct FitConfig {
  std::string input;            // CSV or JSON table produced by this tool
  nlohmann::json initial;       // task-specific initial guess
  bool fit_scale = false;       // spectrum fits only
};

struct RunConfig {
  Task task = Task::G2;
  SystemConfig system;
  DelayGrid delays;
  DetuningGrid detunings;
  double temperature_mhz = 0.0;  // spectrum thermal scale
  double a_ec = 0.0;             // spectrum remnant amplitude
  int certify_order = 2;
  std::optional<WindowConfig> window;
  std::optional<FitConfig> fit;
  std::optional<SweepConfig> sweep;
  std::string output;        // empty -> stdout
  std::string format = "csv";  // "csv" | "json"
  nlohmann::json raw;        // the parsed config, for provenance hashing
};

// Throws ConfigError on malformed or inconsistent input, including unknown
// keys (typos should fail loudly, not silently change the run).
RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config_file(const std::string& path);

}  // namespace cqed::cli
