#include "well_revival/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <tuple>

#include "well_revival/numerics.hpp"
#include "well_revival/parallel.hpp"

namespace well_revival {

namespace {

// Largest packed pair-integral triangle kept in memory (entries).
constexpr std::size_t kMaxPackedEntries = std::size_t{8} << 20;

std::size_t packed_index(std::size_t row, std::size_t col, std::size_t modes) {
  // Row-major upper triangle, col >= row.
  return row * modes - row * (row - 1) / 2 + (col - row);
}

// exp(-i pi n^2 tau) as (cos, sin) of pi n^2 tau.
std::pair<double, double> mode_phase(std::size_t n, Tau tau) {
  const double nn = static_cast<double>(n);
  const auto [s, c] = numerics::sincospi(numerics::product_mod2(nn * nn, tau.value));
  return {c, s};
}

double basis_sin(std::size_t n, double s) {
  return numerics::sinpi(numerics::product_mod2(static_cast<double>(n), s));
}

// Antiderivative of (2/L) sin(n pi x / L) sin(m pi x / L) in s = x / L, from
// a table of sin(k pi s).
double pair_antiderivative(std::size_t n, std::size_t m, double s, const std::vector<double>& sin_table) {
  if (n == m) {
    return s - sin_table[2 * n] / (2.0 * static_cast<double>(n) * M_PI);
  }
  const std::size_t diff = n > m ? n - m : m - n;
  const std::size_t sum = n + m;
  return sin_table[diff] / (static_cast<double>(diff) * M_PI) -
         sin_table[sum] / (static_cast<double>(sum) * M_PI);
}

}  // namespace

void validate_interval(const Interval& interval, double big_l) {
  if (!(std::isfinite(interval.lo) && std::isfinite(interval.hi)) || interval.lo < 0.0 ||
      interval.hi > big_l || !(interval.lo < interval.hi)) {
    throw std::invalid_argument("interval must satisfy 0 <= lo < hi <= L");
  }
}

Interval far_interval(const WellGeometry& geometry) {
  return {geometry.big_l() - geometry.delta(), geometry.big_l()};
}

Interval near_interval(const WellGeometry& geometry) { return {0.0, geometry.delta()}; }

double revival_time(const PhysicalScales& scales, double big_l, long k) {
  if (k < 0) throw std::invalid_argument("revival index k must be >= 0");
  if (!(big_l > 0.0)) throw std::invalid_argument("L must be positive");
  const double base = 2.0 * scales.mass() * big_l * big_l / (M_PI * scales.hbar());
  return static_cast<double>(2 * k + 1) * base;
}

Tau to_tau(const SpectralState& state, double t) {
  return {t / revival_time(state.scales(), state.geometry().big_l())};
}

double from_tau(const SpectralState& state, Tau tau) {
  return tau.value * revival_time(state.scales(), state.geometry().big_l());
}

double phase_at_revival(long n) {
  if (n < 1) throw std::invalid_argument("mode index must be >= 1");
  return n % 2 == 0 ? 1.0 : -1.0;
}

std::vector<std::complex<double>> wavefunction_on(const SpectralState& state, std::span<const double> xs,
                                                  Tau tau) {
  const double l = state.geometry().big_l();
  for (double x : xs) {
    if (!(x >= 0.0 && x <= l)) throw std::invalid_argument("x must lie in [0, L]");
  }
  const auto& a = state.coefficients();
  std::vector<double> cos_t(a.size());
  std::vector<double> sin_t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::tie(cos_t[i], sin_t[i]) = mode_phase(i + 1, tau);
  }
  const double norm = std::sqrt(2.0 / l);
  std::vector<std::complex<double>> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t j) {
    const double s = xs[j] / l;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const double amp = a[i] * basis_sin(i + 1, s);
      re += amp * cos_t[i];
      im -= amp * sin_t[i];
    }
    out[j] = {norm * re, norm * im};
  });
  return out;
}

std::complex<double> wavefunction_at(const SpectralState& state, double x, Tau tau) {
  return wavefunction_on(state, std::span<const double>(&x, 1), tau).front();
}

std::complex<double> wavefunction_at(const SpectralState& state, double x, double t) {
  return wavefunction_at(state, x, to_tau(state, t));
}

double pair_integral(long n, long m, const Interval& interval, double big_l) {
  if (n < 1 || m < 1) throw std::invalid_argument("mode index must be >= 1");
  validate_interval(interval, big_l);
  const auto un = static_cast<std::size_t>(n);
  const auto um = static_cast<std::size_t>(m);
  const double s_lo = interval.lo / big_l;
  const double s_hi = interval.hi / big_l;
  auto at = [&](double s) {
    const std::size_t diff = un > um ? un - um : um - un;
    std::vector<double> table(un + um + 1, 0.0);
    table[diff] = basis_sin(diff, s);
    table[un + um] = basis_sin(un + um, s);
    return pair_antiderivative(un, um, s, table);
  };
  return at(s_hi) - at(s_lo);
}

double probability_slack(double deficit) { return 2.0 * deficit + deficit * deficit; }

IntervalProbabilityKernel::IntervalProbabilityKernel(const SpectralState& state, Interval interval)
    : state_(&state), interval_(interval), modes_(state.mode_count()) {
  const double l = state.geometry().big_l();
  validate_interval(interval, l);
  s_lo_ = interval.lo / l;
  s_hi_ = interval.hi / l;
  sin_lo_.resize(2 * modes_ + 1);
  sin_hi_.resize(2 * modes_ + 1);
  for (std::size_t k = 0; k <= 2 * modes_; ++k) {
    sin_lo_[k] = basis_sin(k, s_lo_);
    sin_hi_[k] = basis_sin(k, s_hi_);
  }
  const std::size_t entries = modes_ * (modes_ + 1) / 2;
  if (entries <= kMaxPackedEntries) {
    packed_.resize(entries);
    parallel_for(modes_, [&](std::size_t row) {
      for (std::size_t col = row; col < modes_; ++col) {
        packed_[packed_index(row, col, modes_)] = pair_weight(row, col);
      }
    });
  }
}

double IntervalProbabilityKernel::pair_weight(std::size_t row, std::size_t col) const {
  const std::size_t n = row + 1;
  const std::size_t m = col + 1;
  const double p = pair_antiderivative(n, m, s_hi_, sin_hi_) - pair_antiderivative(n, m, s_lo_, sin_lo_);
  return row == col ? p : 2.0 * p;
}

double IntervalProbabilityKernel::operator()(Tau tau) const {
  const auto& a = state_->coefficients();
  std::vector<double> u(modes_);
  std::vector<double> v(modes_);
  for (std::size_t i = 0; i < modes_; ++i) {
    const auto [c, s] = mode_phase(i + 1, tau);
    u[i] = a[i] * c;
    v[i] = a[i] * s;
  }
  std::vector<double> rows(modes_);
  parallel_for(modes_, [&](std::size_t row) {
    double acc = 0.0;
    if (!packed_.empty()) {
      const double* w = packed_.data() + packed_index(row, row, modes_);
      for (std::size_t col = row; col < modes_; ++col) {
        acc += w[col - row] * (u[row] * u[col] + v[row] * v[col]);
      }
    } else {
      for (std::size_t col = row; col < modes_; ++col) {
        acc += pair_weight(row, col) * (u[row] * u[col] + v[row] * v[col]);
      }
    }
    rows[row] = acc;
  });
  return numerics::pairwise_sum(rows);
}

double interval_probability(const SpectralState& state, const Interval& interval, Tau tau) {
  return IntervalProbabilityKernel(state, interval)(tau);
}

double interval_probability(const SpectralState& state, const Interval& interval, double t) {
  return interval_probability(state, interval, to_tau(state, t));
}

DensitySnapshot density_snapshot(const SpectralState& state, std::size_t grid_points, Tau tau) {
  if (grid_points < 2) throw std::invalid_argument("density snapshot needs at least 2 grid points");
  const double l = state.geometry().big_l();
  DensitySnapshot snap;
  snap.tau = tau.value;
  snap.time = from_tau(state, tau);
  snap.deficit = state.deficit();
  snap.xs.resize(grid_points);
  snap.densities.resize(grid_points);
  const double last = static_cast<double>(grid_points - 1);
  for (std::size_t j = 0; j < grid_points; ++j) {
    snap.xs[j] = l * (static_cast<double>(j) / last);
  }
  snap.xs.back() = l;
  const auto psi = wavefunction_on(state, snap.xs, tau);
  for (std::size_t j = 0; j < grid_points; ++j) snap.densities[j] = std::norm(psi[j]);
  return snap;
}

DensitySnapshot density_snapshot(const SpectralState& state, std::size_t grid_points, double t) {
  DensitySnapshot snap = density_snapshot(state, grid_points, to_tau(state, t));
  snap.time = t;
  return snap;
}

double snapshot_norm(const DensitySnapshot& snapshot) {
  const auto& x = snapshot.xs;
  const auto& f = snapshot.densities;
  numerics::CompensatedSum sum;
  for (std::size_t j = 1; j < x.size(); ++j) sum.add(0.5 * (x[j] - x[j - 1]) * (f[j] + f[j - 1]));
  return sum.value();
}

double snapshot_norm_tolerance(const SpectralState& state, std::size_t grid_points) {
  if (grid_points < 2) throw std::invalid_argument("density snapshot needs at least 2 grid points");
  const double l = state.geometry().big_l();
  const double norm = std::sqrt(2.0 / l);
  double a0 = 0.0, a1 = 0.0, a2 = 0.0;
  const auto& a = state.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double k = static_cast<double>(i + 1) * M_PI / l;
    a0 += std::fabs(a[i]);
    a1 += std::fabs(a[i]) * k;
    a2 += std::fabs(a[i]) * k * k;
  }
  a0 *= norm;
  a1 *= norm;
  a2 *= norm;
  // |d^2/dx^2 |Psi|^2| <= 2 (|Psi'|^2 + |Psi| |Psi''|)
  const double second = 2.0 * (a1 * a1 + a0 * a2);
  const double h = l / static_cast<double>(grid_points - 1);
  return std::max(2.0 * state.deficit(), l * h * h * second / 12.0);
}

ProbabilityTimeseries probability_timeseries(const SpectralState& state, const Interval& interval,
                                             std::span<const Tau> taus) {
  if (taus.empty()) throw std::invalid_argument("probability timeseries needs at least one time");
  for (std::size_t i = 1; i < taus.size(); ++i) {
    if (taus[i].value < taus[i - 1].value) throw std::invalid_argument("times must be non-decreasing");
  }
  const IntervalProbabilityKernel kernel(state, interval);
  ProbabilityTimeseries series;
  series.interval = interval;
  series.slack = probability_slack(state.deficit());
  for (const Tau tau : taus) {
    series.taus.push_back(tau.value);
    series.times.push_back(from_tau(state, tau));
    series.probs.push_back(kernel(tau));
  }
  return series;
}

ProbabilityTimeseries probability_timeseries(const SpectralState& state, const Interval& interval,
                                             std::span<const double> times) {
  std::vector<Tau> taus;
  taus.reserve(times.size());
  for (double t : times) taus.push_back(to_tau(state, t));
  ProbabilityTimeseries series = probability_timeseries(state, interval, taus);
  series.times.assign(times.begin(), times.end());
  return series;
}

double mean_energy(const SpectralState& state) {
  numerics::CompensatedSum sum;
  const auto& a = state.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) {
    sum.add(a[i] * a[i] * eigen_energy(static_cast<long>(i + 1), state.geometry(), state.scales()));
  }
  return sum.value();
}

std::vector<double> energy_second_moment_partials(const SpectralState& state, std::size_t stride) {
  if (stride == 0) throw std::invalid_argument("stride must be positive");
  std::vector<double> partials;
  numerics::CompensatedSum sum;
  const auto& a = state.coefficients();
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double e = eigen_energy(static_cast<long>(i + 1), state.geometry(), state.scales());
    sum.add(a[i] * a[i] * e * e);
    if ((i + 1) % stride == 0) partials.push_back(sum.value());
  }
  return partials;
}

double revival_slack(double deficit) { return 4.0 * deficit + 2.0 * std::sqrt(deficit); }

RevivalReport revival_report(const SpectralState& state, long odd_multiple, std::size_t grid_points) {
  if (odd_multiple < 1 || odd_multiple % 2 == 0) {
    throw std::invalid_argument("revival multiple must be an odd positive integer");
  }
  if (grid_points < 2) throw std::invalid_argument("mirror check needs at least 2 grid points");
  const auto& geometry = state.geometry();
  const Tau tau{static_cast<double>(odd_multiple)};

  RevivalReport report;
  report.t_hat = revival_time(state.scales(), geometry.big_l());
  report.odd_multiple = odd_multiple;
  report.far_probability = interval_probability(state, far_interval(geometry), tau);
  report.deficit = state.deficit();
  report.slack = revival_slack(state.deficit());
  report.modes = state.mode_count();
  report.eta = geometry.eta();

  const double l = geometry.big_l();
  const double last = static_cast<double>(grid_points - 1);
  std::vector<double> xs(grid_points);
  std::vector<double> mirrored(grid_points);
  for (std::size_t j = 0; j < grid_points; ++j) {
    xs[j] = j + 1 == grid_points ? l : l * (static_cast<double>(j) / last);
    mirrored[j] = std::clamp(l - xs[j], 0.0, l);
  }
  const auto psi = wavefunction_on(state, mirrored, tau);
  double worst = 0.0;
  for (std::size_t j = 0; j < grid_points; ++j) {
    const double initial = initial_wavefunction(xs[j], geometry);
    worst = std::max(worst, std::fabs(std::norm(psi[j]) - initial * initial));
  }
  report.mirror_error = worst;
  return report;
}

}  // namespace well_revival
