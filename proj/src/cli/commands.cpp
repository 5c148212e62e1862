#include "well_revival/cli/commands.hpp"

#include <cstdio>
#include <fstream>
#include <functional>

namespace well_revival::cli {

namespace {

void emit(const RunConfig& config, std::ostream& sink, const std::function<void(std::ostream&)>& body) {
  if (!config.out) {
    body(sink);
    return;
  }
  std::ofstream file(*config.out, std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("--out", "out", "cannot write '" + config.out->string() + "'");
  body(file);
}

template <class T>
void write(std::ostream& out, OutputFormat format, const T& value) {
  if (format == OutputFormat::json) {
    out << to_json(value).dump(2) << '\n';
  } else {
    write_csv(out, value);
  }
}

std::vector<Tau> requested_taus(const RunConfig& config, const SpectralState& state) {
  std::vector<Tau> taus;
  if (config.units == UnitSystem::si) {
    for (double t : config.times) taus.push_back(to_tau(state, t));
  } else {
    for (double tau : config.taus) taus.push_back({tau});
  }
  return taus;
}

SpectralState make_state(const RunConfig& config) {
  return build_spectral_state(config.geometry(), config.scales(), config.deficit, config.mode_cap);
}

int simulate(const RunConfig& config) {
  const SpectralState state = make_state(config);
  const auto taus = requested_taus(config, state);
  const auto& dir = *config.out;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw ConfigError("--out", "out", "cannot create output directory '" + dir.string() + "'");
  }
  const std::string ext = config.format == OutputFormat::json ? ".json" : ".csv";
  for (std::size_t i = 0; i < taus.size(); ++i) {
    DensitySnapshot snap = density_snapshot(state, config.grid_points, taus[i]);
    if (config.units == UnitSystem::si) snap.time = config.times[i];
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu", i);
    std::ofstream file(dir / (name + ext), std::ios::binary | std::ios::trunc);
    if (!file) throw ConfigError("--out", "out", "cannot write into '" + dir.string() + "'");
    write(file, config.format, snap);
  }
  ProbabilityTimeseries series =
      probability_timeseries(state, config.interval.resolve(state.geometry()), std::span<const Tau>(taus));
  if (config.units == UnitSystem::si) series.times = config.times;
  std::ofstream file(dir / ("timeseries" + ext), std::ios::binary | std::ios::trunc);
  if (!file) throw ConfigError("--out", "out", "cannot write into '" + dir.string() + "'");
  write(file, config.format, series);
  return kExitOk;
}

int revival(const RunConfig& config, std::ostream& sink) {
  const SpectralState state = make_state(config);
  const RevivalReport report = revival_report(state, config.odd_multiple, config.grid_points);
  emit(config, sink, [&](std::ostream& out) { write(out, config.format, report); });
  return report.passed() ? kExitOk : kExitNumeric;
}

int relativity(const RunConfig& config, std::ostream& sink) {
  const RelativityReport report =
      build_relativity_report(*config.mass, *config.length_l, config.length_delta, config.scales());
  emit(config, sink, [&](std::ostream& out) { write(out, config.format, report); });
  return kExitOk;
}

int oracle_check(const RunConfig& config, std::ostream& sink) {
  const WellGeometry geometry = config.geometry();
  const PhysicalScales scales = config.scales();
  const double t_hat = revival_time(scales, geometry.big_l());
  const double t_target = config.units == UnitSystem::si ? config.times.at(0) : config.taus.at(0) * t_hat;
  if (!(t_target > 0.0)) throw ConfigError("config", "tau", "oracle-check needs a positive target time");

  std::vector<Resolution> resolutions;
  const double base_dt = t_target / static_cast<double>(config.base_steps);
  const double base_j = static_cast<double>(config.resolutions.front());
  for (std::size_t j : config.resolutions) resolutions.push_back({j, base_dt * base_j / static_cast<double>(j)});
  const ConvergenceReport report = convergence_order(geometry, scales, t_target, resolutions);
  emit(config, sink, [&](std::ostream& out) { write(out, config.format, report); });
  return report.monotone() ? kExitOk : kExitNumeric;
}

int sweep(const RunConfig& config, std::ostream& sink) {
  const auto rows = run_sweep(config);
  emit(config, sink, [&](std::ostream& out) { write(out, config.format, rows); });
  bool all_passed = true;
  for (const auto& row : rows) {
    all_passed = all_passed && row.far_probability >= 1.0 - revival_slack(row.deficit);
  }
  return all_passed ? kExitOk : kExitNumeric;
}

}  // namespace

std::vector<SweepRow> run_sweep(const RunConfig& config) {
  std::vector<SweepRow> rows;
  for (double eta : config.etas) {
    const SpectralState state =
        build_spectral_state(natural_geometry(eta), natural_scales(), config.deficit, config.mode_cap);
    const RevivalReport report = revival_report(state, 1, config.grid_points);
    rows.push_back({eta, state.mode_count(), state.deficit(), report.far_probability, report.mirror_error});
  }
  return rows;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& stdout_sink) {
  if (command == "simulate") return simulate(config);
  if (command == "revival") return revival(config, stdout_sink);
  if (command == "sweep") return sweep(config, stdout_sink);
  if (command == "relativity") return relativity(config, stdout_sink);
  if (command == "oracle-check") return oracle_check(config, stdout_sink);
  throw ConfigError("command", command, "unknown command");
}

int dispatch(const std::string& command, const std::string& config_path, const RawConfig& flags,
             std::ostream& out, std::ostream& err) {
  try {
    RawConfig raw = config_path.empty() ? RawConfig{} : parse_config_file(config_path);
    raw = merge(std::move(raw), flags);
    const RunConfig config = build_run_config(command, raw);
    return run_command(command, config, out);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const NumericFailure& e) {
    err << "numeric failure: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace well_revival::cli
