#include "cli/config.hpp"

#include <fstream>
#include <set>

#include "cqed/correlations.hpp"
#include "cqed/units.hpp"

namespace cqed::cli {

namespace {

void check_keys(const nlohmann::json& j, const std::set<std::string>& allowed,
                const std::string& where) {
  if (!j.is_object()) {
    throw ConfigError(where + ": expected a JSON object");
  }
  for (const auto& [key, value] : j.items()) {
    if (!allowed.count(key)) {
      throw ConfigError(where + ": unknown key '" + key + "'");
    }
  }
}

double get_number(const nlohmann::json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_number()) {
    throw ConfigError("'" + key + "' must be a number");
  }
  return j[key].get<double>();
}

double require_number(const nlohmann::json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key) || !j[key].is_number()) {
    throw ConfigError(where + ": missing numeric '" + key + "'");
  }
  return j[key].get<double>();
}

int get_int(const nlohmann::json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_number_integer()) {
    throw ConfigError("'" + key + "' must be an integer");
  }
  return j[key].get<int>();
}

std::string get_string(const nlohmann::json& j, const std::string& key,
                       const std::string& fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_string()) {
    throw ConfigError("'" + key + "' must be a string");
  }
  return j[key].get<std::string>();
}

Task parse_task(const std::string& name) {
  if (name == "spectrum") return Task::Spectrum;
  if (name == "g2") return Task::G2;
  if (name == "g3map") return Task::G3Map;
  if (name == "g3diag") return Task::G3Diag;
  if (name == "distribution") return Task::Distribution;
  if (name == "certify") return Task::Certify;
  if (name == "fit-spectrum") return Task::FitSpectrum;
  if (name == "fit-longtime") return Task::FitLongtime;
  if (name == "sweep") return Task::Sweep;
  throw ConfigError("unknown task '" + name + "'");
}

SystemConfig parse_system(const nlohmann::json& j) {
  check_keys(j,
             {"g_mhz", "kappa_mhz", "gamma_mhz", "delta_c_mhz", "delta_ac_mhz", "drive",
              "eta_mhz", "n_max"},
             "system");
  SystemConfig sys;
  sys.g_mhz = get_number(j, "g_mhz", 0.0);
  sys.kappa_mhz = get_number(j, "kappa_mhz", 0.0);
  sys.gamma_mhz = get_number(j, "gamma_mhz", 0.0);
  sys.delta_c_mhz = get_number(j, "delta_c_mhz", 0.0);
  sys.delta_ac_mhz = get_number(j, "delta_ac_mhz", 0.0);
  sys.drive = get_string(j, "drive", "none");
  sys.eta_mhz = get_number(j, "eta_mhz", 0.0);
  sys.n_max = get_int(j, "n_max", 12);
  if (sys.drive != "atom" && sys.drive != "cavity" && sys.drive != "none") {
    throw ConfigError("system.drive must be 'atom', 'cavity' or 'none'");
  }
  if (sys.n_max < 1) {
    throw ConfigError("system.n_max must be at least 1");
  }
  return sys;
}

DelayGrid parse_delays(const nlohmann::json& j) {
  check_keys(j, {"preset", "start_ns", "stop_ns", "step_ns"}, "delay_grid");
  DelayGrid grid;
  grid.preset = get_string(j, "preset", "");
  if (!grid.preset.empty()) {
    if (grid.preset != "dynamics" && grid.preset != "long-time") {
      throw ConfigError("delay_grid.preset must be 'dynamics' or 'long-time'");
    }
    return grid;
  }
  grid.start_ns = require_number(j, "start_ns", "delay_grid");
  grid.stop_ns = require_number(j, "stop_ns", "delay_grid");
  grid.step_ns = require_number(j, "step_ns", "delay_grid");
  if (!(grid.step_ns > 0.0) || grid.stop_ns < grid.start_ns) {
    throw ConfigError("delay_grid: need step_ns > 0 and stop_ns >= start_ns");
  }
  return grid;
}

DetuningGrid parse_detunings(const nlohmann::json& j) {
  check_keys(j, {"start_mhz", "stop_mhz", "points"}, "detuning_grid");
  DetuningGrid grid;
  grid.start_mhz = require_number(j, "start_mhz", "detuning_grid");
  grid.stop_mhz = require_number(j, "stop_mhz", "detuning_grid");
  grid.points = get_int(j, "points", 0);
  if (grid.points < 1 || grid.stop_mhz < grid.start_mhz) {
    throw ConfigError("detuning_grid: need points >= 1 and stop_mhz >= start_mhz");
  }
  return grid;
}

SweepConfig parse_sweep(const nlohmann::json& j) {
  check_keys(j, {"parameters", "observables"}, "sweep");
  if (!j.contains("parameters") || !j["parameters"].is_array() || j["parameters"].empty()) {
    throw ConfigError("sweep: needs a non-empty 'parameters' array");
  }
  static const std::set<std::string> sweepable = {"g_mhz",       "kappa_mhz",    "gamma_mhz",
                                                  "delta_c_mhz", "delta_ac_mhz", "eta_mhz"};
  static const std::set<std::string> known_observables = {
      "semiclassical_mean_photons", "quantum_mean_photons", "g2_zero", "g3_zero"};

  SweepConfig sweep;
  long total = 1;
  for (const auto& pj : j["parameters"]) {
    check_keys(pj, {"name", "start", "stop", "points"}, "sweep.parameters[]");
    SweepParameter p;
    p.name = get_string(pj, "name", "");
    p.start = require_number(pj, "start", "sweep.parameters[]");
    p.stop = require_number(pj, "stop", "sweep.parameters[]");
    p.points = get_int(pj, "points", 0);
    if (!sweepable.count(p.name)) {
      throw ConfigError("sweep: parameter '" + p.name + "' is not sweepable");
    }
    if (p.points < 1) {
      throw ConfigError("sweep: points must be at least 1");
    }
    total *= p.points;
    sweep.parameters.push_back(p);
  }
  if (total > 10000) {
    throw ConfigError("sweep: cartesian grid exceeds 10^4 points");
  }
  if (j.contains("observables")) {
    if (!j["observables"].is_array() || j["observables"].empty()) {
      throw ConfigError("sweep: 'observables' must be a non-empty array");
    }
    for (const auto& o : j["observables"]) {
      if (!o.is_string() || !known_observables.count(o.get<std::string>())) {
        throw ConfigError("sweep: unknown observable");
      }
      sweep.observables.push_back(o.get<std::string>());
    }
  } else {
    sweep.observables = {"semiclassical_mean_photons"};
  }
  return sweep;
}

FitConfig parse_fit(const nlohmann::json& j) {
  check_keys(j, {"input", "initial", "fit_scale"}, "fit");
  FitConfig fit;
  fit.input = get_string(j, "input", "");
  if (fit.input.empty()) {
    throw ConfigError("fit: missing 'input' data path");
  }
  if (!j.contains("initial") || !j["initial"].is_object()) {
    throw ConfigError("fit: missing 'initial' guess object");
  }
  fit.initial = j["initial"];
  if (j.contains("fit_scale")) {
    if (!j["fit_scale"].is_boolean()) {
      throw ConfigError("fit.fit_scale must be a boolean");
    }
    fit.fit_scale = j["fit_scale"].get<bool>();
  }
  return fit;
}

}  // namespace

std::string task_name(Task task) {
  switch (task) {
    case Task::Spectrum: return "spectrum";
    case Task::G2: return "g2";
    case Task::G3Map: return "g3map";
    case Task::G3Diag: return "g3diag";
    case Task::Distribution: return "distribution";
    case Task::Certify: return "certify";
    case Task::FitSpectrum: return "fit-spectrum";
    case Task::FitLongtime: return "fit-longtime";
    case Task::Sweep: return "sweep";
  }
  return "unknown";
}

DriveKind SystemConfig::drive_kind() const {
  if (drive == "atom") return DriveKind::Atom;
  if (drive == "cavity") return DriveKind::Cavity;
  return DriveKind::None;
}

SystemParams SystemConfig::to_params() const {
  SystemParams p;
  p.g = units::omega_from_mhz(g_mhz);
  p.kappa = units::omega_from_mhz(kappa_mhz);
  p.gamma = units::omega_from_mhz(gamma_mhz);
  p.delta_c = units::omega_from_mhz(delta_c_mhz);
  p.delta_a = units::omega_from_mhz(delta_c_mhz - delta_ac_mhz);
  p.drive = drive_kind();
  p.eta = units::omega_from_mhz(eta_mhz);
  p.dims = make_dims(n_max + 1);
  return p;
}

std::vector<double> DelayGrid::seconds() const {
  if (preset == "dynamics") {
    return default_dynamics_grid();
  }
  if (preset == "long-time") {
    return long_time_grid();
  }
  return linear_grid(units::seconds_from_ns(start_ns), units::seconds_from_ns(stop_ns),
                     units::seconds_from_ns(step_ns));
}

std::vector<double> DetuningGrid::radians() const {
  std::vector<double> grid(points);
  const double step = points > 1 ? (stop_mhz - start_mhz) / (points - 1) : 0.0;
  for (int i = 0; i < points; ++i) {
    grid[i] = units::omega_from_mhz(start_mhz + i * step);
  }
  return grid;
}

RunConfig parse_config(const nlohmann::json& j) {
  check_keys(j,
             {"task", "system", "delay_grid", "detuning_grid", "spectrum", "certify", "window",
              "fit", "sweep", "output", "format"},
             "config");
  RunConfig config;
  config.raw = j;
  if (!j.contains("task") || !j["task"].is_string()) {
    throw ConfigError("config: missing 'task'");
  }
  config.task = parse_task(j["task"].get<std::string>());

  if (!j.contains("system") && config.task != Task::FitLongtime) {
    throw ConfigError("config: missing 'system'");
  }
  if (j.contains("system")) {
    config.system = parse_system(j["system"]);
  }

  if (j.contains("delay_grid")) {
    config.delays = parse_delays(j["delay_grid"]);
  } else if (config.task == Task::G2 || config.task == Task::G3Map ||
             config.task == Task::G3Diag) {
    throw ConfigError(task_name(config.task) + ": missing 'delay_grid'");
  }

  if (j.contains("detuning_grid")) {
    config.detunings = parse_detunings(j["detuning_grid"]);
  } else if (config.task == Task::Spectrum) {
    throw ConfigError("spectrum: missing 'detuning_grid'");
  }

  if (j.contains("spectrum")) {
    check_keys(j["spectrum"], {"temperature_mhz", "a_ec"}, "spectrum");
    config.temperature_mhz = get_number(j["spectrum"], "temperature_mhz", 0.0);
    config.a_ec = get_number(j["spectrum"], "a_ec", 0.0);
  }

  if (j.contains("certify")) {
    check_keys(j["certify"], {"order"}, "certify");
    config.certify_order = get_int(j["certify"], "order", 2);
  }

  if (j.contains("window")) {
    check_keys(j["window"], {"start_us", "stop_us"}, "window");
    WindowConfig window;
    window.start_us = require_number(j["window"], "start_us", "window");
    window.stop_us = require_number(j["window"], "stop_us", "window");
    config.window = window;
  }

  if (j.contains("fit")) {
    config.fit = parse_fit(j["fit"]);
  } else if (config.task == Task::FitSpectrum || config.task == Task::FitLongtime) {
    throw ConfigError(task_name(config.task) + ": missing 'fit'");
  }

  if (j.contains("sweep")) {
    config.sweep = parse_sweep(j["sweep"]);
  } else if (config.task == Task::Sweep) {
    throw ConfigError("sweep: missing 'sweep'");
  }

  config.output = get_string(j, "output", "");
  config.format = get_string(j, "format", "csv");
  if (config.format != "csv" && config.format != "json") {
    throw ConfigError("format must be 'csv' or 'json'");
  }
  return config;
}

RunConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open config file '" + path + "'");
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

}  // namespace cqed::cli
