#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "well_revival/model.hpp"

namespace well_revival {

/// Wavefunction sampled on J + 1 uniform points of [0, L] with Dirichlet walls.
struct GridState {
  WellGeometry geometry;
  std::vector<double> xs;
  std::vector<std::complex<double>> psi;
  double time = 0.0;
  double dx = 0.0;
  /// Size of the most recent step (0 before any step).
  double dt = 0.0;
  /// Discrete norm of the raw samples minus one, recorded before renormalization.
  double initial_norm_error = 0.0;

  std::size_t intervals() const { return xs.size() - 1; }
};

/// Samples the initial ground state at x_j = j L / J and renormalizes to unit
/// discrete norm. Requires J >= 8.
GridState initialize_grid(const WellGeometry& geometry, std::size_t intervals);

/// Same as initialize_grid with an arbitrary initial profile; walls are forced to zero.
GridState initialize_grid(const WellGeometry& geometry, std::size_t intervals,
                          const std::function<std::complex<double>(double)>& profile);

/// sum_j |psi_j|^2 dx
double discrete_norm(const GridState& state);

/// Crank-Nicolson propagator for fixed (dx, dt):
/// (I + i D) psi_new = (I - i D) psi_old with D = (dt / 2 hbar) H_h and H_h the
/// three-point Laplacian times -hbar^2 / 2m. The constant tridiagonal factorization
/// is computed once.
class CrankNicolsonStepper {
 public:
  CrankNicolsonStepper(std::size_t intervals, double dx, double dt, const PhysicalScales& scales);

  /// Advances one step in place; psi has intervals + 1 entries with zero walls.
  void advance(std::span<std::complex<double>> psi) const;

  double dt() const { return dt_; }

 private:
  std::size_t intervals_;
  double dt_;
  std::complex<double> off_diag_;     // lower = upper entry of I + iD
  std::complex<double> rhs_diag_;     // diagonal of I - iD
  std::complex<double> rhs_off_diag_; // off-diagonal of I - iD
  std::vector<std::complex<double>> upper_prime_;
  std::vector<std::complex<double>> inv_pivot_;
};

GridState step_crank_nicolson(const GridState& state, double dt, const PhysicalScales& scales);

/// Full steps of size dt, then one shortened step landing exactly on t_final.
GridState evolve_to(GridState state, double t_final, double dt, const PhysicalScales& scales);

struct ErrorNorms {
  double l2 = 0.0;
  double linf = 0.0;
};

/// Discrete L2 and max-norm distance between the grid solution and the
/// spectral wavefunction at the grid's own points and time t.
ErrorNorms compare_with_spectral(const GridState& grid, const SpectralState& spectral, double t);

struct Resolution {
  std::size_t intervals = 0;
  double dt = 0.0;
};

struct ConvergenceReport {
  std::vector<double> dxs;
  std::vector<double> dts;
  std::vector<double> errors;
  double fitted_order = 0.0;

  /// Errors strictly decrease with every refinement.
  bool monotone() const;
};

/// Least-squares slope of log(error) against log(dx).
double fit_order(std::span<const double> dxs, std::span<const double> errors);

/// Evolves the quenched state at every resolution to t_target and fits the
/// L2 error against a spectral reference built with `reference_deficit`.
/// Consecutive resolutions must refine dx and dt by the same factor > 1.
ConvergenceReport convergence_order(const WellGeometry& geometry, const PhysicalScales& scales, double t_target,
                                    std::span<const Resolution> resolutions, double reference_deficit = 1e-10);

}  // namespace well_revival
