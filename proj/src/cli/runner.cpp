#include "cli/runner.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "cqed/blockade.hpp"
#include "cqed/fitting.hpp"
#include "cqed/units.hpp"

namespace cqed::cli {

namespace {

using nlohmann::json;

json provenance(const RunConfig& config) {
  return json{{"engine_version", kEngineVersion}, {"config_hash", fnv1a_hex(config.raw.dump())}};
}

// Tabular results carry columns plus rows of cells; a cell is a number,
// an empty marker, or an error string (sweep failure column).
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

json table_payload(const RunConfig& config, const Table& table) {
  json rows = json::array();
  for (const auto& row : table.rows) {
    rows.push_back(row);
  }
  return json{{"task", task_name(config.task)},
              {"provenance", provenance(config)},
              {"columns", table.columns},
              {"rows", rows}};
}

std::string table_csv(const RunConfig& config, const Table& table) {
  std::ostringstream out;
  out << "# engine_version=" << kEngineVersion << "\n";
  out << "# config_hash=" << fnv1a_hex(config.raw.dump()) << "\n";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << table.columns[c];
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) {
        out << ",";
      }
      if (row[c].is_number()) {
        out << format_double(row[c].get<double>());
      } else if (row[c].is_string()) {
        out << row[c].get<std::string>();
      }  // null -> empty cell
    }
    out << "\n";
  }
  return out.str();
}

std::string keyvalue_csv(const RunConfig& config, const json& payload) {
  std::ostringstream out;
  out << "# engine_version=" << kEngineVersion << "\n";
  out << "# config_hash=" << fnv1a_hex(config.raw.dump()) << "\n";
  out << "key,value\n";
  const json flat = payload.flatten();
  for (const auto& [key, value] : flat.items()) {
    if (key.rfind("/provenance", 0) == 0 || key.rfind("/task", 0) == 0) {
      continue;
    }
    out << key << ",";
    if (value.is_number()) {
      out << format_double(value.get<double>());
    } else {
      out << value.dump();
    }
    out << "\n";
  }
  return out.str();
}

TaskOutput make_table_output(const RunConfig& config, const Table& table) {
  TaskOutput out;
  out.payload = table_payload(config, table);
  out.csv = table_csv(config, table);
  return out;
}

double delay_to_ns(double tau_seconds) { return units::ns_from_seconds(tau_seconds); }

TaskOutput run_spectrum(const RunConfig& config) {
  SpectrumModel model;
  const SystemParams params = config.system.to_params();
  model.g = params.g;
  model.kappa = params.kappa;
  model.gamma = params.gamma;
  model.delta_ac = units::omega_from_mhz(config.system.delta_ac_mhz);
  model.eta = params.eta;
  model.temperature_scale = units::omega_from_mhz(config.temperature_mhz);
  model.a_ec = config.a_ec;
  model.drive = config.system.drive_kind();
  if (model.drive == DriveKind::None) {
    throw ConfigError("spectrum: system.drive must be 'atom' or 'cavity'");
  }

  const auto grid = config.detunings.radians();
  const SpectrumSeries series = composite_spectrum(model, grid);

  Table table;
  table.columns = {"delta_c_mhz", "mean_photons"};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    table.rows.push_back({units::mhz_from_omega(series.detunings[i]), series.mean_photons[i]});
  }
  return make_table_output(config, table);
}

TaskOutput run_correlation(const RunConfig& config) {
  const SystemParams params = config.system.to_params();
  const auto taus = config.delays.seconds();

  Table table;
  CorrelationSeries series;
  switch (config.task) {
    case Task::G2:
      series = g2(params, taus);
      table.columns = {"tau_ns", "g2"};
      break;
    case Task::G3Map:
      series = g3_zero_tau(params, taus);
      table.columns = {"tau_ns", "g3_0_tau"};
      break;
    case Task::G3Diag:
      series = g3_diag(params, taus);
      table.columns = {"tau_ns", "g3_tau_tau"};
      break;
    default:
      throw ConfigError("run_correlation: not a correlation task");
  }
  for (std::size_t i = 0; i < series.taus.size(); ++i) {
    table.rows.push_back({delay_to_ns(series.taus[i]), series.values[i]});
  }

  TaskOutput out = make_table_output(config, table);
  out.payload["order"] = series.order;
  out.payload["normalization"] = series.normalization;
  if (config.window) {
    const auto avg = windowed_average(series, units::seconds_from_us(config.window->start_us),
                                      units::seconds_from_us(config.window->stop_us));
    out.payload["window_average"] = {{"mean", avg.mean},
                                     {"standard_error", avg.standard_error},
                                     {"count", avg.count}};
  }
  return out;
}

TaskOutput run_distribution(const RunConfig& config) {
  const SystemParams params = config.system.to_params();
  const auto rho = steady_state(liouvillian(params));
  const auto dist = photon_distribution(rho);
  const auto poisson = poisson_reference(dist.mean, params.dims.fock_dim);
  std::vector<double> deviation;
  if (dist.mean > 0.0) {
    deviation = relative_deviation(dist, dist.mean);
  }

  Table table;
  table.columns = {"n", "p", "poisson", "relative_deviation"};
  for (int n = 0; n < params.dims.fock_dim; ++n) {
    std::vector<json> row = {static_cast<double>(n), dist.probs[n], poisson.probs[n]};
    if (n < static_cast<int>(deviation.size())) {
      row.push_back(deviation[n]);
    } else {
      row.push_back(nullptr);
    }
    table.rows.push_back(std::move(row));
  }
  TaskOutput out = make_table_output(config, table);
  out.payload["mean"] = dist.mean;
  return out;
}

TaskOutput run_certify(const RunConfig& config) {
  const SystemParams params = config.system.to_params();
  const BlockadeReport report = certify_from_params(params, config.certify_order);

  json checks = json::array();
  for (const auto& check : report.distribution_check) {
    checks.push_back({{"m", check.m}, {"pass", check.pass}});
  }
  TaskOutput out;
  out.payload = {{"task", task_name(config.task)},
                 {"provenance", provenance(config)},
                 {"report",
                  {{"order", report.order},
                   {"mean", report.mean},
                   {"g_n", report.g_n},
                   {"g_np1", report.g_np1},
                   {"strict_pass", report.strict_pass},
                   {"inequality_pass", report.inequality_pass},
                   {"margin_upper", report.margin_upper},
                   {"margin_lower", report.margin_lower},
                   {"distribution_check", checks},
                   {"warnings", report.warnings}}}};
  out.csv = keyvalue_csv(config, out.payload);
  return out;
}

// Reads a two-column table emitted by this tool, CSV or JSON.
std::pair<std::vector<double>, std::vector<double>> read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("fit: cannot open input '" + path + "'");
  }
  std::vector<double> x, y;
  if (path.size() > 5 && path.substr(path.size() - 5) == ".json") {
    json j;
    try {
      in >> j;
    } catch (const json::exception& e) {
      throw ConfigError("fit: input is not valid JSON: " + std::string(e.what()));
    }
    if (!j.contains("rows") || !j["rows"].is_array()) {
      throw ConfigError("fit: JSON input has no 'rows' table");
    }
    for (const auto& row : j["rows"]) {
      if (!row.is_array() || row.size() < 2 || !row[0].is_number() || !row[1].is_number()) {
        throw ConfigError("fit: JSON rows must start with two numbers");
      }
      x.push_back(row[0].get<double>());
      y.push_back(row[1].get<double>());
    }
  } else {
    std::string line;
    bool header_skipped = false;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') {
        continue;
      }
      if (!header_skipped) {
        header_skipped = true;  // first non-comment line is the header
        continue;
      }
      const auto comma = line.find(',');
      if (comma == std::string::npos) {
        throw ConfigError("fit: CSV row without two columns");
      }
      try {
        x.push_back(std::stod(line.substr(0, comma)));
        const std::string rest = line.substr(comma + 1);
        const auto next = rest.find(',');
        y.push_back(std::stod(next == std::string::npos ? rest : rest.substr(0, next)));
      } catch (const std::exception&) {
        throw ConfigError("fit: CSV row is not numeric: " + line);
      }
    }
  }
  if (x.size() < 2) {
    throw ConfigError("fit: input table has fewer than 2 rows");
  }
  return {std::move(x), std::move(y)};
}

json fit_stats_json(const FitResult& stats) {
  json parameters = json::object();
  json errors = json::object();
  for (std::size_t i = 0; i < stats.parameter_names.size(); ++i) {
    parameters[stats.parameter_names[i]] = stats.parameters(static_cast<int>(i));
    errors[stats.parameter_names[i]] = stats.standard_errors(static_cast<int>(i));
  }
  return json{{"parameters", parameters},
              {"standard_errors", errors},
              {"residual_norm", stats.residual_norm},
              {"gradient_norm", stats.gradient_norm},
              {"converged", stats.converged},
              {"iterations", stats.iterations},
              {"message", stats.message}};
}

TaskOutput run_fit_spectrum(const RunConfig& config) {
  const auto [x_mhz, y] = read_table(config.fit->input);
  SpectrumSeries data;
  for (std::size_t i = 0; i < x_mhz.size(); ++i) {
    data.detunings.push_back(units::omega_from_mhz(x_mhz[i]));
    data.mean_photons.push_back(y[i]);
  }

  const json& init = config.fit->initial;
  SpectrumModel initial;
  initial.kappa = units::omega_from_mhz(config.system.kappa_mhz);
  initial.gamma = units::omega_from_mhz(config.system.gamma_mhz);
  initial.drive = config.system.drive_kind();
  if (initial.drive == DriveKind::None) {
    throw ConfigError("fit-spectrum: system.drive must be 'atom' or 'cavity'");
  }
  auto init_number = [&](const std::string& key, double fallback) {
    if (!init.contains(key)) return fallback;
    if (!init[key].is_number()) throw ConfigError("fit.initial." + key + " must be a number");
    return init[key].get<double>();
  };
  initial.g = units::omega_from_mhz(init_number("g_mhz", 0.0));
  initial.delta_ac = units::omega_from_mhz(init_number("delta_ac_mhz", 0.0));
  initial.eta = units::omega_from_mhz(init_number("eta_mhz", 0.0));
  initial.temperature_scale = units::omega_from_mhz(init_number("temperature_mhz", 0.0));
  initial.a_ec = init_number("a_ec", 0.0);

  SpectrumFitOptions options;
  options.fit_scale = config.fit->fit_scale;
  const SpectrumFitResult result = fit_spectrum(data, initial, options);

  TaskOutput out;
  out.payload = {{"task", task_name(config.task)},
                 {"provenance", provenance(config)},
                 {"fit", fit_stats_json(result.stats)},
                 {"model",
                  {{"g_mhz", units::mhz_from_omega(result.model.g)},
                   {"delta_ac_mhz", units::mhz_from_omega(result.model.delta_ac)},
                   {"eta_mhz", units::mhz_from_omega(result.model.eta)},
                   {"temperature_mhz", units::mhz_from_omega(result.model.temperature_scale)},
                   {"a_ec", result.model.a_ec},
                   {"scale", result.scale},
                   {"kappa_mhz", units::mhz_from_omega(result.model.kappa)},
                   {"gamma_mhz", units::mhz_from_omega(result.model.gamma)},
                   {"drive", config.system.drive}}}};
  out.csv = keyvalue_csv(config, out.payload);
  return out;
}

TaskOutput run_fit_longtime(const RunConfig& config) {
  const auto [tau_ns, values] = read_table(config.fit->input);
  CorrelationSeries data;
  for (std::size_t i = 0; i < tau_ns.size(); ++i) {
    data.taus.push_back(units::seconds_from_ns(tau_ns[i]));
    data.values.push_back(values[i]);
  }

  const json& init = config.fit->initial;
  auto init_number = [&](const std::string& key, double fallback) {
    if (!init.contains(key)) return fallback;
    if (!init[key].is_number()) throw ConfigError("fit.initial." + key + " must be a number");
    return init[key].get<double>();
  };
  LongTimeFit initial;
  initial.a_coherent = init_number("a_coherent", 0.1);
  initial.tau_coherent = units::seconds_from_us(init_number("tau_coherent_us", 1.0));
  initial.f_coherent = init_number("f_coherent_khz", 0.0) * 1e3;
  initial.a_incoherent = init_number("a_incoherent", 0.1);
  initial.tau_incoherent = units::seconds_from_us(init_number("tau_incoherent_us", 1.0));
  initial.offset = init_number("offset", 1.0);

  const auto [fit, stats] = fit_longtime(data, initial);

  TaskOutput out;
  out.payload = {{"task", task_name(config.task)},
                 {"provenance", provenance(config)},
                 {"fit", fit_stats_json(stats)},
                 {"model",
                  {{"a_coherent", fit.a_coherent},
                   {"tau_coherent_us", units::us_from_seconds(fit.tau_coherent)},
                   {"f_coherent_khz", fit.f_coherent / 1e3},
                   {"a_incoherent", fit.a_incoherent},
                   {"tau_incoherent_us", units::us_from_seconds(fit.tau_incoherent)},
                   {"offset", fit.offset}}}};
  out.csv = keyvalue_csv(config, out.payload);
  return out;
}

void apply_override(SystemConfig& sys, const std::string& name, double value) {
  if (name == "g_mhz") sys.g_mhz = value;
  else if (name == "kappa_mhz") sys.kappa_mhz = value;
  else if (name == "gamma_mhz") sys.gamma_mhz = value;
  else if (name == "delta_c_mhz") sys.delta_c_mhz = value;
  else if (name == "delta_ac_mhz") sys.delta_ac_mhz = value;
  else if (name == "eta_mhz") sys.eta_mhz = value;
  else throw ConfigError("sweep: cannot override '" + name + "'");
}

TaskOutput run_sweep(const RunConfig& config, int threads) {
  const SweepConfig& sweep = *config.sweep;
  const int n_params = static_cast<int>(sweep.parameters.size());

  long total = 1;
  for (const auto& p : sweep.parameters) {
    total *= p.points;
  }

  auto point_values = [&](long flat) {
    std::vector<double> values(n_params);
    long rem = flat;
    for (int k = n_params - 1; k >= 0; --k) {
      const auto& p = sweep.parameters[k];
      const long idx = rem % p.points;
      rem /= p.points;
      const double step = p.points > 1 ? (p.stop - p.start) / (p.points - 1) : 0.0;
      values[k] = p.start + idx * step;
    }
    return values;
  };

  std::vector<std::vector<json>> rows(total);
  auto evaluate = [&](long flat) {
    const auto values = point_values(flat);
    std::vector<json> row(values.begin(), values.end());
    try {
      SystemConfig sys = config.system;
      for (int k = 0; k < n_params; ++k) {
        apply_override(sys, sweep.parameters[k].name, values[k]);
      }
      const SystemParams params = sys.to_params();

      PhotonDistribution dist;
      bool have_dist = false;
      for (const auto& obs : sweep.observables) {
        if (obs == "semiclassical_mean_photons") {
          SpectrumModel model{params.g,
                              params.kappa,
                              params.gamma,
                              units::omega_from_mhz(sys.delta_ac_mhz),
                              params.eta,
                              units::omega_from_mhz(config.temperature_mhz),
                              config.a_ec,
                              sys.drive_kind()};
          const auto series = composite_spectrum(model, {params.delta_c});
          row.push_back(series.mean_photons[0]);
        } else {
          if (!have_dist) {
            dist = photon_distribution(steady_state(liouvillian(params)));
            have_dist = true;
          }
          if (obs == "quantum_mean_photons") {
            row.push_back(dist.mean);
          } else if (obs == "g2_zero") {
            row.push_back(gk_from_distribution(dist, 2));
          } else if (obs == "g3_zero") {
            row.push_back(gk_from_distribution(dist, 3));
          }
        }
      }
      row.push_back(nullptr);  // error column empty on success
    } catch (const std::exception& e) {
      row.resize(n_params);
      for (std::size_t k = 0; k < sweep.observables.size(); ++k) {
        row.push_back(nullptr);
      }
      row.push_back(std::string(e.what()));
    }
    rows[flat] = std::move(row);
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(total)));
  if (workers == 1) {
    for (long flat = 0; flat < total; ++flat) {
      evaluate(flat);
    }
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&, w]() {
        for (long flat = w; flat < total; flat += workers) {
          evaluate(flat);
        }
      });
    }
    for (auto& t : pool) {
      t.join();
    }
  }

  Table table;
  for (const auto& p : sweep.parameters) {
    table.columns.push_back(p.name);
  }
  for (const auto& obs : sweep.observables) {
    table.columns.push_back(obs);
  }
  table.columns.push_back("error");
  table.rows = std::move(rows);
  return make_table_output(config, table);
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : text) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_double(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

TaskOutput run_task(const RunConfig& config, int threads) {
  switch (config.task) {
    case Task::Spectrum: return run_spectrum(config);
    case Task::G2:
    case Task::G3Map:
    case Task::G3Diag: return run_correlation(config);
    case Task::Distribution: return run_distribution(config);
    case Task::Certify: return run_certify(config);
    case Task::FitSpectrum: return run_fit_spectrum(config);
    case Task::FitLongtime: return run_fit_longtime(config);
    case Task::Sweep: return run_sweep(config, threads);
  }
  throw ConfigError("run_task: unknown task");
}

std::string render(const TaskOutput& output, const std::string& format) {
  if (format == "json") {
    return output.payload.dump(2) + "\n";
  }
  return output.csv;
}

int run_main(const std::string& config_path, const std::string& output_override,
             const std::string& format_override, int threads) {
  RunConfig config;
  try {
    config = load_config_file(config_path);
    if (!output_override.empty()) {
      config.output = output_override;
    }
    if (!format_override.empty()) {
      if (format_override != "csv" && format_override != "json") {
        throw ConfigError("--format must be csv or json");
      }
      config.format = format_override;
    }
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  }

  try {
    const TaskOutput output = run_task(config, threads);
    const std::string text = render(output, config.format);
    if (config.output.empty()) {
      std::cout << text;
    } else {
      std::ofstream out(config.output, std::ios::binary);
      if (!out) {
        std::cerr << nlohmann::json{{"error", "config"},
                                    {"detail", "cannot open output '" + config.output + "'"}}
                         .dump()
                  << "\n";
        return 2;
      }
      out << text;
    }
    return 0;
  } catch (const ConfigError& e) {
    std::cerr << nlohmann::json{{"error", "config"}, {"detail", e.what()}}.dump() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << nlohmann::json{{"error", "numerical"}, {"detail", e.what()}}.dump() << "\n";
    return 3;
  }
}

}  // namespace cqed::cli
