#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace well_revival {

/// Raised when a requested accuracy cannot be met within configured limits.
class NumericFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Initial well [0, delta] expanded to [0, big_l] at t = 0.
class WellGeometry {
 public:
  WellGeometry(double delta, double big_l);

  double delta() const { return delta_; }
  double big_l() const { return big_l_; }
  double eta() const { return delta_ / big_l_; }

  friend bool operator==(const WellGeometry&, const WellGeometry&) = default;

 private:
  double delta_;
  double big_l_;
};

/// Particle mass, reduced Planck constant and light speed.
class PhysicalScales {
 public:
  PhysicalScales(double mass, double hbar, double c);

  double mass() const { return mass_; }
  double hbar() const { return hbar_; }
  double c() const { return c_; }

  PhysicalScales with_mass(double mass) const { return {mass, hbar_, c_}; }

  friend bool operator==(const PhysicalScales&, const PhysicalScales&) = default;

 private:
  double mass_;
  double hbar_;
  double c_;
};

enum class UnitSystem { natural, si };

/// hbar = m = 1 (callers use L = 1); c = 1 is a placeholder, natural runs
/// never evaluate the light-speed bound.
PhysicalScales natural_scales();
/// CODATA hbar and c with the given particle mass in kg.
PhysicalScales si_scales(double mass_kg);

/// Geometry with L = 1 and delta = eta.
WellGeometry natural_geometry(double eta);

std::string to_string(UnitSystem units);
UnitSystem parse_unit_system(const std::string& text);

/// Ground state of the initial well; zero outside [0, delta].
double initial_wavefunction(double x, const WellGeometry& geometry);

double eigen_energy(long n, const WellGeometry& geometry, const PhysicalScales& scales);

/// Energy of the pre-quench ground state, pi^2 hbar^2 / (2 m delta^2).
double initial_energy(const WellGeometry& geometry, const PhysicalScales& scales);

/// Post-quench eigenfunction sqrt(2/L) sin(n pi x / L); zero outside [0, L].
double eigenfunction(long n, double x, const WellGeometry& geometry);

/// Closed-form projection of the initial ground state onto eigenfunction n.
/// Continuous across the removable singularity n * eta = 1, where it equals
/// sqrt(eta).
double overlap_coefficient(long n, double eta);

/// Minimum panel count accepted by coefficient_oracle for mode n.
long minimum_oracle_panels(long n, double eta);

/// Overlap integral over [0, delta] by composite 5-point Gauss-Legendre
/// quadrature on `panels` equal panels. Independent of overlap_coefficient.
double coefficient_oracle(long n, const WellGeometry& geometry, long panels);

/// Truncated eigen-expansion of the quenched state. Immutable.
class SpectralState {
 public:
  SpectralState(WellGeometry geometry, PhysicalScales scales, std::vector<double> coefficients);

  const WellGeometry& geometry() const { return geometry_; }
  const PhysicalScales& scales() const { return scales_; }
  /// a_1 .. a_N; coefficients()[n - 1] is a_n.
  const std::vector<double>& coefficients() const { return coefficients_; }
  std::size_t mode_count() const { return coefficients_.size(); }
  double coefficient(long n) const { return coefficients_.at(static_cast<std::size_t>(n - 1)); }

  /// 1 - sum of retained a_n^2, clamped at zero.
  double deficit() const { return deficit_; }

  /// Upper bound on sup_x |psi(x) - Psi_N(x, 0)| from the discarded modes.
  double truncation_sup_bound() const;

 private:
  WellGeometry geometry_;
  PhysicalScales scales_;
  std::vector<double> coefficients_;
  double deficit_;
};

/// 1 - sum_{n <= count} a_n^2, clamped at zero.
double normalization_deficit(const std::vector<double>& coefficients, std::size_t count);

inline constexpr long kDefaultModeCap = 1'000'000;

/// Smallest expansion whose normalization deficit is <= target_deficit.
/// Throws NumericFailure if more than mode_cap modes would be needed.
SpectralState build_spectral_state(const WellGeometry& geometry, const PhysicalScales& scales,
                                   double target_deficit, long mode_cap = kDefaultModeCap);

}  // namespace well_revival
