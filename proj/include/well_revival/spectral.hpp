#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "well_revival/model.hpp"

namespace well_revival {

/// Time measured in units of the first revival time t_hat = 2 m L^2 / (pi hbar).
struct Tau {
  double value = 0.0;
};

/// Sub-interval [lo, hi] of the expanded well.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Throws std::invalid_argument unless 0 <= lo < hi <= L.
void validate_interval(const Interval& interval, double big_l);

/// [L - delta, L], where the state reassembles at odd multiples of t_hat.
Interval far_interval(const WellGeometry& geometry);
/// [0, delta], the support of the initial state.
Interval near_interval(const WellGeometry& geometry);

/// (2k + 1) * 2 m L^2 / (pi hbar).
double revival_time(const PhysicalScales& scales, double big_l, long k = 0);

/// t / t_hat for the state's mass and well length.
Tau to_tau(const SpectralState& state, double t);
double from_tau(const SpectralState& state, Tau tau);

/// exp(-i E_n t_hat / hbar) = exp(-i pi n^2): +1 for even n, -1 for odd n.
double phase_at_revival(long n);

/// Psi(x, t) = sum_n a_n phi_n(x) exp(-i E_n t / hbar) over the retained modes.
///
/// The standard sign convention exp(-i E t / hbar) is used; the
/// conjugate convention yields the same densities because every a_n is real.
/// Phases are reduced as pi * (n^2 tau mod 2) with the product carried in
/// extended precision, so tau = 2 reproduces tau = 0 bit for bit.
std::complex<double> wavefunction_at(const SpectralState& state, double x, Tau tau);
std::complex<double> wavefunction_at(const SpectralState& state, double x, double t);

/// wavefunction_at over many points; mode phases are computed once.
std::vector<std::complex<double>> wavefunction_on(const SpectralState& state, std::span<const double> xs,
                                                  Tau tau);

/// (2/L) * integral over the interval of sin(n pi x / L) sin(m pi x / L), closed form.
double pair_integral(long n, long m, const Interval& interval, double big_l);

/// Bound on how far a truncated interval probability may leave [0, 1]:
/// 2 d + d^2 for normalization deficit d.
double probability_slack(double deficit);

/// Evaluates sum_{n,m} a_n a_m cos((E_n - E_m) t / hbar) P_nm for a fixed
/// interval, with the pair integrals P_nm computed once at construction.
///
/// The double sum runs over n <= m with doubled off-diagonal weight. Rows are
/// evaluated in parallel and combined by a pairwise tree whose shape depends
/// only on the mode count, so results do not depend on the thread count.
class IntervalProbabilityKernel {
 public:
  IntervalProbabilityKernel(const SpectralState& state, Interval interval);

  double operator()(Tau tau) const;
  const Interval& interval() const { return interval_; }

 private:
  double pair_weight(std::size_t row, std::size_t col) const;

  const SpectralState* state_;
  Interval interval_;
  std::size_t modes_;
  // sin(k pi s) at s = lo / L and s = hi / L for k = 0 .. 2N.
  std::vector<double> sin_lo_;
  std::vector<double> sin_hi_;
  double s_lo_;
  double s_hi_;
  // Packed upper triangle of doubled-off-diagonal pair integrals, when it fits.
  std::vector<double> packed_;
};

/// Raw (unclamped) probability of finding the particle in `interval`.
double interval_probability(const SpectralState& state, const Interval& interval, Tau tau);
double interval_probability(const SpectralState& state, const Interval& interval, double t);

struct DensitySnapshot {
  double time = 0.0;
  double tau = 0.0;
  std::vector<double> xs;
  std::vector<double> densities;
  double deficit = 0.0;
};

/// |Psi|^2 on grid_points uniformly spaced points, both walls included.
DensitySnapshot density_snapshot(const SpectralState& state, std::size_t grid_points, Tau tau);
DensitySnapshot density_snapshot(const SpectralState& state, std::size_t grid_points, double t);

/// Trapezoid integral of the snapshot density over [0, L].
double snapshot_norm(const DensitySnapshot& snapshot);

/// Allowed |snapshot_norm - 1|: max(2 d, trapezoid error bound for the grid).
double snapshot_norm_tolerance(const SpectralState& state, std::size_t grid_points);

struct ProbabilityTimeseries {
  Interval interval;
  std::vector<double> times;
  std::vector<double> taus;
  std::vector<double> probs;
  double slack = 0.0;
};

ProbabilityTimeseries probability_timeseries(const SpectralState& state, const Interval& interval,
                                             std::span<const Tau> taus);
ProbabilityTimeseries probability_timeseries(const SpectralState& state, const Interval& interval,
                                             std::span<const double> times);

/// Sum a_n^2 E_n over the retained modes.
double mean_energy(const SpectralState& state);

/// Partial sums of sum a_n^2 E_n^2 after every `stride` modes. The full series
/// diverges (terms tend to a constant), so these grow without bound.
std::vector<double> energy_second_moment_partials(const SpectralState& state, std::size_t stride);

struct RevivalReport {
  double t_hat = 0.0;
  long odd_multiple = 1;
  double far_probability = 0.0;
  /// max over the grid of | |Psi(L - x, t)|^2 - |psi(x)|^2 | against the exact initial density.
  double mirror_error = 0.0;
  double deficit = 0.0;
  /// far_probability is expected to be >= 1 - slack.
  double slack = 0.0;
  std::size_t modes = 0;
  double eta = 0.0;

  bool passed() const { return far_probability >= 1.0 - slack; }

  friend bool operator==(const RevivalReport&, const RevivalReport&) = default;
};

/// Lower-bound slack for the far-interval probability at a revival:
/// 4 d + 2 sqrt(d).
double revival_slack(double deficit);

RevivalReport revival_report(const SpectralState& state, long odd_multiple = 1,
                             std::size_t grid_points = 1001);

}  // namespace well_revival
