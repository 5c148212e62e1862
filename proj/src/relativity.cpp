#include "well_revival/relativity.hpp"

#include <cmath>
#include <stdexcept>

#include "well_revival/spectral.hpp"

namespace well_revival {

double light_crossing_time(double big_l, double c) {
  if (!(big_l > 0.0)) throw std::invalid_argument("L must be positive");
  if (!(c > 0.0)) throw std::invalid_argument("c must be positive");
  return big_l / c;
}

double superluminal_margin(double mass, double big_l, const PhysicalScales& scales) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(big_l > 0.0)) throw std::invalid_argument("L must be positive");
  return M_PI * scales.hbar() / (2.0 * mass * big_l * scales.c());
}

double break_even_length(double mass, const PhysicalScales& scales) {
  if (!(mass > 0.0)) throw std::invalid_argument("mass must be positive");
  return M_PI * scales.hbar() / (2.0 * mass * scales.c());
}

RelativityReport build_relativity_report(double mass, double big_l, std::optional<double> delta,
                                         const PhysicalScales& scales) {
  if (delta && !(*delta > 0.0 && *delta <= big_l)) throw std::invalid_argument("delta must lie in (0, L]");
  const PhysicalScales particle = scales.with_mass(mass);
  RelativityReport report;
  report.t_hat = revival_time(particle, big_l);
  report.light_crossing = light_crossing_time(big_l, scales.c());
  report.margin = superluminal_margin(mass, big_l, scales);
  report.superluminal = report.margin > 1.0;
  report.mass = mass;
  report.big_l = big_l;
  report.delta = delta;
  return report;
}

}  // namespace well_revival
