#pragma once

#include <optional>

#include "well_revival/model.hpp"

namespace well_revival {

/// Compares the first revival time with the time light needs to cross the
/// expanded well. A margin above one means the particle reassembles at the far
/// wall before a light signal could get there.
struct RelativityReport {
  double t_hat = 0.0;           // s
  double light_crossing = 0.0;  // s, L / c
  double margin = 0.0;          // light_crossing / t_hat = pi hbar / (2 m L c)
  bool superluminal = false;    // margin > 1
  double mass = 0.0;            // kg
  double big_l = 0.0;           // m
  std::optional<double> delta;  // m, context only

  friend bool operator==(const RelativityReport&, const RelativityReport&) = default;
};

double light_crossing_time(double big_l, double c);

/// pi hbar / (2 m L c), using hbar and c from `scales`.
double superluminal_margin(double mass, double big_l, const PhysicalScales& scales);

/// Well length at which the margin equals one.
double break_even_length(double mass, const PhysicalScales& scales);

RelativityReport build_relativity_report(double mass, double big_l, std::optional<double> delta,
                                         const PhysicalScales& scales);

}  // namespace well_revival
