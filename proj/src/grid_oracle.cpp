#include "well_revival/grid_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "well_revival/numerics.hpp"
#include "well_revival/parallel.hpp"
#include "well_revival/spectral.hpp"

namespace well_revival {

GridState initialize_grid(const WellGeometry& geometry, std::size_t intervals) {
  return initialize_grid(geometry, intervals,
                         [&](double x) { return std::complex<double>(initial_wavefunction(x, geometry)); });
}

GridState initialize_grid(const WellGeometry& geometry, std::size_t intervals,
                          const std::function<std::complex<double>(double)>& profile) {
  if (intervals < 8) throw std::invalid_argument("grid needs at least 8 intervals");
  GridState state{geometry, {}, {}, 0.0, geometry.big_l() / static_cast<double>(intervals), 0.0, 0.0};
  state.xs.resize(intervals + 1);
  state.psi.resize(intervals + 1);
  for (std::size_t j = 0; j <= intervals; ++j) {
    state.xs[j] = geometry.big_l() * (static_cast<double>(j) / static_cast<double>(intervals));
  }
  state.xs.back() = geometry.big_l();
  for (std::size_t j = 1; j < intervals; ++j) state.psi[j] = profile(state.xs[j]);

  const double norm = discrete_norm(state);
  if (!(norm > 0.0)) throw std::invalid_argument("initial profile vanishes on the grid");
  state.initial_norm_error = norm - 1.0;
  const double scale = 1.0 / std::sqrt(norm);
  for (auto& v : state.psi) v *= scale;
  return state;
}

double discrete_norm(const GridState& state) {
  numerics::CompensatedSum sum;
  for (const auto& v : state.psi) sum.add(std::norm(v));
  return sum.value() * state.dx;
}

CrankNicolsonStepper::CrankNicolsonStepper(std::size_t intervals, double dx, double dt,
                                           const PhysicalScales& scales)
    : intervals_(intervals), dt_(dt) {
  if (intervals < 2) throw std::invalid_argument("grid needs interior points");
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  // D = beta * tridiag(-1, 2, -1)
  const double beta = dt * scales.hbar() / (4.0 * scales.mass() * dx * dx);
  const std::complex<double> i_beta(0.0, beta);
  const std::complex<double> diag = 1.0 + 2.0 * i_beta;
  off_diag_ = -i_beta;
  rhs_diag_ = 1.0 - 2.0 * i_beta;
  rhs_off_diag_ = i_beta;

  const std::size_t n = intervals - 1;
  upper_prime_.resize(n);
  inv_pivot_.resize(n);
  std::complex<double> prev_upper(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> pivot = diag - off_diag_ * prev_upper;
    if (std::abs(pivot) < 1e-300) {
      throw NumericFailure("Crank-Nicolson tridiagonal system is singular at row " + std::to_string(i));
    }
    inv_pivot_[i] = 1.0 / pivot;
    upper_prime_[i] = off_diag_ * inv_pivot_[i];
    prev_upper = upper_prime_[i];
  }
}

void CrankNicolsonStepper::advance(std::span<std::complex<double>> psi) const {
  if (psi.size() != intervals_ + 1) throw std::invalid_argument("state size does not match the stepper");
  const std::size_t n = intervals_ - 1;
  std::vector<std::complex<double>> work(n);
  // Forward sweep over interior points 1 .. J-1 with Dirichlet walls.
  std::complex<double> prev(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + 1;
    const std::complex<double> rhs = rhs_diag_ * psi[j] + rhs_off_diag_ * (psi[j - 1] + psi[j + 1]);
    prev = (rhs - off_diag_ * prev) * inv_pivot_[i];
    work[i] = prev;
  }
  for (std::size_t i = n - 1; i-- > 0;) work[i] -= upper_prime_[i] * work[i + 1];
  psi[0] = 0.0;
  psi[intervals_] = 0.0;
  std::copy(work.begin(), work.end(), psi.begin() + 1);
}

GridState step_crank_nicolson(const GridState& state, double dt, const PhysicalScales& scales) {
  const CrankNicolsonStepper stepper(state.intervals(), state.dx, dt, scales);
  GridState next = state;
  stepper.advance(next.psi);
  next.time = state.time + dt;
  next.dt = dt;
  return next;
}

GridState evolve_to(GridState state, double t_final, double dt, const PhysicalScales& scales) {
  if (!(dt > 0.0)) throw std::invalid_argument("time step must be positive");
  const double start = state.time;
  const double remaining = t_final - start;
  if (remaining < 0.0) throw std::invalid_argument("t_final precedes the grid state's time");
  if (remaining == 0.0) return state;

  auto full_steps = static_cast<std::size_t>(std::floor(remaining / dt));
  double leftover = remaining - static_cast<double>(full_steps) * dt;
  if (leftover >= dt * (1.0 - 1e-12)) {
    ++full_steps;
    leftover = 0.0;
  }
  if (leftover <= dt * 1e-12) leftover = 0.0;

  if (full_steps > 0) {
    const CrankNicolsonStepper stepper(state.intervals(), state.dx, dt, scales);
    for (std::size_t k = 0; k < full_steps; ++k) stepper.advance(state.psi);
    state.dt = dt;
  }
  if (leftover > 0.0) {
    const CrankNicolsonStepper stepper(state.intervals(), state.dx, leftover, scales);
    stepper.advance(state.psi);
    state.dt = leftover;
  }
  state.time = t_final;
  return state;
}

ErrorNorms compare_with_spectral(const GridState& grid, const SpectralState& spectral, double t) {
  if (!(grid.geometry == spectral.geometry())) {
    throw std::invalid_argument("grid and spectral states describe different wells");
  }
  if (std::fabs(grid.time - t) > 1e-12 * std::max(1.0, std::fabs(t))) {
    throw std::invalid_argument("grid state time does not match the comparison time");
  }
  const auto reference = wavefunction_on(spectral, grid.xs, to_tau(spectral, t));
  numerics::CompensatedSum sq;
  double worst = 0.0;
  for (std::size_t j = 0; j < grid.psi.size(); ++j) {
    const double d = std::abs(grid.psi[j] - reference[j]);
    sq.add(d * d);
    worst = std::max(worst, d);
  }
  return {std::sqrt(sq.value() * grid.dx), worst};
}

bool ConvergenceReport::monotone() const {
  for (std::size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i] < errors[i - 1])) return false;
  }
  return !errors.empty();
}

double fit_order(std::span<const double> dxs, std::span<const double> errors) {
  if (dxs.size() != errors.size() || dxs.size() < 2) throw std::invalid_argument("fit needs matching samples");
  double mx = 0.0, my = 0.0;
  const double k = static_cast<double>(dxs.size());
  for (std::size_t i = 0; i < dxs.size(); ++i) {
    mx += std::log(dxs[i]);
    my += std::log(errors[i]);
  }
  mx /= k;
  my /= k;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < dxs.size(); ++i) {
    const double dx = std::log(dxs[i]) - mx;
    sxy += dx * (std::log(errors[i]) - my);
    sxx += dx * dx;
  }
  if (sxx == 0.0) throw std::invalid_argument("fit needs distinct resolutions");
  return sxy / sxx;
}

ConvergenceReport convergence_order(const WellGeometry& geometry, const PhysicalScales& scales, double t_target,
                                    std::span<const Resolution> resolutions, double reference_deficit) {
  if (resolutions.size() < 3) throw std::invalid_argument("convergence study needs at least 3 resolutions");
  if (!(t_target >= 0.0)) throw std::invalid_argument("target time must be non-negative");
  for (const auto& r : resolutions) {
    if (r.intervals < 8 || !(r.dt > 0.0)) throw std::invalid_argument("each resolution needs J >= 8 and dt > 0");
  }
  for (std::size_t i = 1; i < resolutions.size(); ++i) {
    const double fdx = static_cast<double>(resolutions[i].intervals) / static_cast<double>(resolutions[i - 1].intervals);
    const double fdt = resolutions[i - 1].dt / resolutions[i].dt;
    if (!(fdx > 1.0 + 1e-12)) throw std::invalid_argument("resolutions must refine dx at every level");
    if (std::fabs(fdx - fdt) > 1e-9 * fdx) {
      throw std::invalid_argument("dx and dt must be refined by the same factor");
    }
  }

  const SpectralState reference = build_spectral_state(geometry, scales, reference_deficit);
  ConvergenceReport report;
  report.errors.resize(resolutions.size());
  parallel_for(resolutions.size(), [&](std::size_t i) {
    GridState grid = initialize_grid(geometry, resolutions[i].intervals);
    grid = evolve_to(std::move(grid), t_target, resolutions[i].dt, scales);
    report.errors[i] = compare_with_spectral(grid, reference, t_target).l2;
  });
  for (const auto& r : resolutions) {
    report.dxs.push_back(geometry.big_l() / static_cast<double>(r.intervals));
    report.dts.push_back(r.dt);
  }
  report.fitted_order = fit_order(report.dxs, report.errors);
  return report;
}

}  // namespace well_revival
