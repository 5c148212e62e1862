#pragma once

#include <cstddef>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "well_revival/grid_oracle.hpp"
#include "well_revival/relativity.hpp"
#include "well_revival/spectral.hpp"

namespace well_revival::cli {

using Json = nlohmann::ordered_json;

/// 17 significant digits; round-trips every double.
std::string format_double(double value);

struct SweepRow {
  double eta = 0.0;
  std::size_t modes = 0;
  double deficit = 0.0;
  double far_probability = 0.0;
  double mirror_error = 0.0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

void write_csv(std::ostream& out, const DensitySnapshot& snapshot);
void write_csv(std::ostream& out, const ProbabilityTimeseries& series);
void write_csv(std::ostream& out, const RevivalReport& report);
void write_csv(std::ostream& out, const RelativityReport& report);
void write_csv(std::ostream& out, const ConvergenceReport& report);
void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);

Json to_json(const DensitySnapshot& snapshot);
Json to_json(const ProbabilityTimeseries& series);
Json to_json(const RevivalReport& report);
Json to_json(const RelativityReport& report);
Json to_json(const ConvergenceReport& report);
Json to_json(const std::vector<SweepRow>& rows);

DensitySnapshot snapshot_from_json(const Json& j);
ProbabilityTimeseries timeseries_from_json(const Json& j);
RevivalReport revival_from_json(const Json& j);
RelativityReport relativity_from_json(const Json& j);
ConvergenceReport convergence_from_json(const Json& j);
std::vector<SweepRow> sweep_from_json(const Json& j);

}  // namespace well_revival::cli
