#pragma once

// CODATA 2018 exact/recommended values, SI.
namespace well_revival::constants {

inline constexpr double kHbar = 1.054571817e-34;           // J s
inline constexpr double kSpeedOfLight = 2.99792458e8;      // m / s
inline constexpr double kElectronMass = 9.1093837015e-31;  // kg

}  // namespace well_revival::constants
