#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "well_revival/model.hpp"
#include "well_revival/spectral.hpp"

namespace well_revival::cli {

/// Invalid configuration; `where` names the offending line or flag.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string where, const std::string& field, const std::string& message);
  const std::string& where() const { return where_; }
  const std::string& field() const { return field_; }

 private:
  std::string where_;
  std::string field_;
};

/// One raw `key = value` occurrence and where it came from.
struct RawValue {
  std::string value;
  std::string source;  // "path:line" or "--flag"
};

/// Key -> values, in order of appearance. Keys use the flag spelling without
/// leading dashes (e.g. "grid-points").
using RawConfig = std::map<std::string, std::vector<RawValue>>;

RawConfig parse_config_text(const std::string& text, const std::string& origin);
RawConfig parse_config_file(const std::filesystem::path& path);

/// Keys present in `overrides` replace the same keys in `base`.
RawConfig merge(RawConfig base, const RawConfig& overrides);

enum class OutputFormat { csv, json };

struct IntervalSpec {
  enum class Kind { far, near, explicit_range } kind = Kind::far;
  double lo = 0.0;
  double hi = 0.0;

  Interval resolve(const WellGeometry& geometry) const;
};

struct RunConfig {
  std::vector<double> etas;
  UnitSystem units = UnitSystem::natural;
  std::optional<double> mass;
  std::optional<double> length_l;
  std::optional<double> length_delta;
  double deficit = 1e-8;
  std::size_t grid_points = 1001;
  long mode_cap = kDefaultModeCap;
  std::vector<double> taus;   // natural runs
  std::vector<double> times;  // SI runs, seconds
  IntervalSpec interval;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::filesystem::path> out;
  long odd_multiple = 1;
  std::vector<std::size_t> resolutions = {2048, 4096, 8192};
  std::size_t base_steps = 64;

  /// Geometry for single-eta commands.
  WellGeometry geometry() const;
  PhysicalScales scales() const;
};

/// Keys accepted by every command.
const std::vector<std::string>& known_keys();

/// Validates a merged raw configuration for `command` (simulate, revival,
/// sweep, relativity, oracle-check). Throws ConfigError.
RunConfig build_run_config(const std::string& command, const RawConfig& raw);

}  // namespace well_revival::cli
