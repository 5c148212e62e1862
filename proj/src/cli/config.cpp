#include "well_revival/cli/config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

namespace well_revival::cli {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return {};
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream stream(s);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item = trim(item);
    if (!item.empty()) parts.push_back(item);
  }
  return parts;
}

double parse_double(const std::string& text, const RawValue& origin, const std::string& key) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v)) {
    throw ConfigError(origin.source, key, "expected a finite number, got '" + t + "'");
  }
  return v;
}

long parse_long(const std::string& text, const RawValue& origin, const std::string& key) {
  const std::string t = trim(text);
  char* end = nullptr;
  errno = 0;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE) {
    throw ConfigError(origin.source, key, "expected an integer, got '" + t + "'");
  }
  return v;
}

class Reader {
 public:
  explicit Reader(const RawConfig& raw) : raw_(raw) {}

  bool has(const std::string& key) const { return raw_.count(key) > 0; }

  const RawValue& last(const std::string& key) const { return raw_.at(key).back(); }

  std::string where(const std::string& key) const { return has(key) ? last(key).source : "config"; }

  std::optional<double> scalar(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return parse_double(last(key).value, last(key), key);
  }

  std::optional<long> integer(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return parse_long(last(key).value, last(key), key);
  }

  std::optional<std::string> text(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return trim(last(key).value);
  }

  std::vector<double> list(const std::string& key) const {
    std::vector<double> values;
    if (!has(key)) return values;
    for (const auto& entry : raw_.at(key)) {
      for (const auto& item : split_list(entry.value)) values.push_back(parse_double(item, entry, key));
    }
    return values;
  }

  std::vector<long> integer_list(const std::string& key) const {
    std::vector<long> values;
    if (!has(key)) return values;
    for (const auto& entry : raw_.at(key)) {
      for (const auto& item : split_list(entry.value)) values.push_back(parse_long(item, entry, key));
    }
    return values;
  }

 private:
  const RawConfig& raw_;
};

IntervalSpec parse_interval(const std::string& text, const RawValue& origin) {
  IntervalSpec spec;
  if (text == "far") return spec;
  if (text == "near") {
    spec.kind = IntervalSpec::Kind::near;
    return spec;
  }
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw ConfigError(origin.source, "interval", "expected far, near or lo:hi, got '" + text + "'");
  }
  spec.kind = IntervalSpec::Kind::explicit_range;
  spec.lo = parse_double(text.substr(0, colon), origin, "interval");
  spec.hi = parse_double(text.substr(colon + 1), origin, "interval");
  return spec;
}

}  // namespace

ConfigError::ConfigError(std::string where, const std::string& field, const std::string& message)
    : std::runtime_error(where + ": " + field + ": " + message), where_(std::move(where)), field_(field) {}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "eta",   "deficit", "grid-points", "tau",    "time",         "interval",    "units",
      "mass",  "length-l", "length-delta", "format", "out", "odd-multiple", "resolutions",
      "base-steps", "mode-cap"};
  return keys;
}

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
  RawConfig raw;
  std::istringstream stream(text);
  std::string line;
  int number = 0;
  const auto& keys = known_keys();
  while (std::getline(stream, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = origin + ":" + std::to_string(number);
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(where, line, "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
      throw ConfigError(where, key, "unknown key");
    }
    raw[key].push_back({trim(line.substr(eq + 1)), where});
  }
  return raw;
}

RawConfig parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string(), "config", "cannot open file");
  std::ostringstream contents;
  contents << in.rdbuf();
  return parse_config_text(contents.str(), path.string());
}

RawConfig merge(RawConfig base, const RawConfig& overrides) {
  for (const auto& [key, values] : overrides) base[key] = values;
  return base;
}

Interval IntervalSpec::resolve(const WellGeometry& geometry) const {
  switch (kind) {
    case Kind::far: return far_interval(geometry);
    case Kind::near: return near_interval(geometry);
    default: return {lo, hi};
  }
}

WellGeometry RunConfig::geometry() const {
  if (units == UnitSystem::si) return {*length_delta, *length_l};
  return natural_geometry(etas.at(0));
}

PhysicalScales RunConfig::scales() const {
  return units == UnitSystem::si ? si_scales(*mass) : natural_scales();
}

RunConfig build_run_config(const std::string& command, const RawConfig& raw) {
  static const std::set<std::string> commands = {"simulate", "revival", "sweep", "relativity", "oracle-check"};
  if (!commands.count(command)) throw ConfigError("command", command, "unknown command");

  const Reader r(raw);
  RunConfig cfg;

  if (auto units = r.text("units")) {
    try {
      cfg.units = parse_unit_system(*units);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(r.where("units"), "units", e.what());
    }
  }
  const bool si = cfg.units == UnitSystem::si;

  if (command == "relativity" && !si) {
    throw ConfigError(r.where("units"), "units", "relativity runs require --units si");
  }
  if (command == "sweep" && si) {
    throw ConfigError(r.where("units"), "units", "sweep runs in natural units only");
  }

  cfg.mass = r.scalar("mass");
  cfg.length_l = r.scalar("length-l");
  cfg.length_delta = r.scalar("length-delta");
  cfg.etas = r.list("eta");

  if (si) {
    if (!cfg.etas.empty()) {
      throw ConfigError(r.where("eta"), "eta", "SI runs derive eta from length-delta / length-l; do not set eta");
    }
    if (!cfg.mass) throw ConfigError("config", "mass", "required with --units si");
    if (!cfg.length_l) throw ConfigError("config", "length-l", "required with --units si");
    if (!(*cfg.mass > 0.0)) throw ConfigError(r.where("mass"), "mass", "must be positive");
    if (!(*cfg.length_l > 0.0)) throw ConfigError(r.where("length-l"), "length-l", "must be positive");
    if (cfg.length_delta) {
      if (!(*cfg.length_delta > 0.0 && *cfg.length_delta <= *cfg.length_l)) {
        throw ConfigError(r.where("length-delta"), "length-delta", "must lie in (0, length-l]");
      }
    } else if (command != "relativity") {
      throw ConfigError("config", "length-delta", "required with --units si");
    }
  } else {
    for (const char* key : {"mass", "length-l", "length-delta"}) {
      if (r.has(key)) throw ConfigError(r.where(key), key, "only valid with --units si");
    }
    if (command != "relativity") {
      if (cfg.etas.empty()) throw ConfigError("config", "eta", "required in natural units");
      if (command != "sweep" && cfg.etas.size() != 1) {
        throw ConfigError(r.where("eta"), "eta", "exactly one value expected for " + command);
      }
      for (double eta : cfg.etas) {
        if (!(eta > 0.0 && eta <= 1.0)) throw ConfigError(r.where("eta"), "eta", "must lie in (0, 1]");
      }
    }
  }

  cfg.taus = r.list("tau");
  cfg.times = r.list("time");
  if (si && !cfg.taus.empty()) {
    throw ConfigError(r.where("tau"), "tau", "SI runs take times in seconds via 'time'");
  }
  if (!si && !cfg.times.empty()) {
    throw ConfigError(r.where("time"), "time", "natural-unit runs take revival-scaled times via 'tau'");
  }
  const std::string time_key = si ? "time" : "tau";
  const auto& time_values = si ? cfg.times : cfg.taus;
  if (command == "simulate" && time_values.empty()) {
    throw ConfigError("config", time_key, "at least one time is required");
  }
  if (!std::is_sorted(time_values.begin(), time_values.end())) {
    throw ConfigError(r.where(time_key), time_key, "times must be non-decreasing");
  }
  for (double v : time_values) {
    if (v < 0.0) throw ConfigError(r.where(time_key), time_key, "times must be non-negative");
  }
  if (command == "oracle-check") {
    if (time_values.size() > 1) throw ConfigError(r.where(time_key), time_key, "oracle-check takes one target time");
    if (time_values.empty()) cfg.taus = {0.05};
  }

  if (auto d = r.scalar("deficit")) {
    if (!(*d > 0.0 && *d < 1.0)) throw ConfigError(r.where("deficit"), "deficit", "must lie in (0, 1)");
    cfg.deficit = *d;
  }
  if (auto g = r.integer("grid-points")) {
    if (*g < 2) throw ConfigError(r.where("grid-points"), "grid-points", "must be at least 2");
    cfg.grid_points = static_cast<std::size_t>(*g);
  }
  if (auto cap = r.integer("mode-cap")) {
    if (*cap < 1) throw ConfigError(r.where("mode-cap"), "mode-cap", "must be positive");
    cfg.mode_cap = *cap;
  }
  if (auto k = r.integer("odd-multiple")) {
    if (*k < 1 || *k % 2 == 0) throw ConfigError(r.where("odd-multiple"), "odd-multiple", "must be an odd positive integer");
    cfg.odd_multiple = *k;
  }
  if (r.has("resolutions")) {
    cfg.resolutions.clear();
    for (long j : r.integer_list("resolutions")) {
      if (j < 8) throw ConfigError(r.where("resolutions"), "resolutions", "each resolution needs at least 8 intervals");
      cfg.resolutions.push_back(static_cast<std::size_t>(j));
    }
  }
  if (command == "oracle-check") {
    if (cfg.resolutions.size() < 3) {
      throw ConfigError(r.where("resolutions"), "resolutions", "at least 3 resolutions are required");
    }
    for (std::size_t i = 1; i < cfg.resolutions.size(); ++i) {
      if (cfg.resolutions[i] <= cfg.resolutions[i - 1]) {
        throw ConfigError(r.where("resolutions"), "resolutions", "resolutions must strictly increase");
      }
    }
  }
  if (auto steps = r.integer("base-steps")) {
    if (*steps < 1) throw ConfigError(r.where("base-steps"), "base-steps", "must be positive");
    cfg.base_steps = static_cast<std::size_t>(*steps);
  }
  if (auto text = r.text("interval")) cfg.interval = parse_interval(*text, r.last("interval"));
  if (auto fmt = r.text("format")) {
    if (*fmt == "csv") {
      cfg.format = OutputFormat::csv;
    } else if (*fmt == "json") {
      cfg.format = OutputFormat::json;
    } else {
      throw ConfigError(r.where("format"), "format", "expected csv or json, got '" + *fmt + "'");
    }
  }
  if (auto out = r.text("out")) cfg.out = std::filesystem::path(*out);
  if (command == "simulate" && !cfg.out) {
    throw ConfigError("config", "out", "simulate writes one file per time; give an output directory");
  }

  if (command == "simulate" || command == "revival" || command == "oracle-check") {
    const WellGeometry geometry = cfg.geometry();
    try {
      validate_interval(cfg.interval.resolve(geometry), geometry.big_l());
    } catch (const std::invalid_argument& e) {
      throw ConfigError(r.where("interval"), "interval", e.what());
    }
  }
  return cfg;
}

}  // namespace well_revival::cli
