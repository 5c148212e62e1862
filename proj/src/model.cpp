#include "well_revival/model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "well_revival/constants.hpp"
#include "well_revival/numerics.hpp"

namespace well_revival {

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

void require_mode(long n) { require(n >= 1, "mode index must be >= 1"); }

// Half-width of the window around n * eta = 1 where the ratio
// sin(pi x) / (1 - x^2) is evaluated from its Taylor expansion.
constexpr double kSingularWindow = 1e-9;

}  // namespace

WellGeometry::WellGeometry(double delta, double big_l) : delta_(delta), big_l_(big_l) {
  require(std::isfinite(delta) && std::isfinite(big_l), "well lengths must be finite");
  require(delta > 0.0, "delta must be positive");
  require(delta <= big_l, "delta must not exceed L");
}

PhysicalScales::PhysicalScales(double mass, double hbar, double c) : mass_(mass), hbar_(hbar), c_(c) {
  require(std::isfinite(mass) && mass > 0.0, "mass must be positive");
  require(std::isfinite(hbar) && hbar > 0.0, "hbar must be positive");
  require(std::isfinite(c) && c > 0.0, "c must be positive");
}

PhysicalScales natural_scales() { return {1.0, 1.0, 1.0}; }

PhysicalScales si_scales(double mass_kg) {
  return {mass_kg, constants::kHbar, constants::kSpeedOfLight};
}

WellGeometry natural_geometry(double eta) {
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  return {eta, 1.0};
}

std::string to_string(UnitSystem units) { return units == UnitSystem::natural ? "natural" : "si"; }

UnitSystem parse_unit_system(const std::string& text) {
  if (text == "natural") return UnitSystem::natural;
  if (text == "si") return UnitSystem::si;
  throw std::invalid_argument("unknown unit system '" + text + "' (expected natural or si)");
}

double initial_wavefunction(double x, const WellGeometry& geometry) {
  const double delta = geometry.delta();
  if (x <= 0.0 || x >= delta) return 0.0;
  return std::sqrt(2.0 / delta) * std::sin(M_PI * x / delta);
}

double eigen_energy(long n, const WellGeometry& geometry, const PhysicalScales& scales) {
  require_mode(n);
  const double nn = static_cast<double>(n);
  const double l = geometry.big_l();
  return M_PI * M_PI * scales.hbar() * scales.hbar() * nn * nn / (2.0 * scales.mass() * l * l);
}

double initial_energy(const WellGeometry& geometry, const PhysicalScales& scales) {
  const double d = geometry.delta();
  return M_PI * M_PI * scales.hbar() * scales.hbar() / (2.0 * scales.mass() * d * d);
}

double eigenfunction(long n, double x, const WellGeometry& geometry) {
  require_mode(n);
  const double l = geometry.big_l();
  if (x <= 0.0 || x >= l) return 0.0;
  return std::sqrt(2.0 / l) * std::sin(static_cast<double>(n) * M_PI * x / l);
}

double overlap_coefficient(long n, double eta) {
  require_mode(n);
  require(eta > 0.0 && eta <= 1.0, "eta must lie in (0, 1]");
  const double nn = static_cast<double>(n);
  // x = n * eta carried as hi + lo so that 1 - x is exact near the singularity.
  const double hi = nn * eta;
  const double lo = std::fma(nn, eta, -hi);
  const double u = (1.0 - hi) - lo;
  const double prefactor = (2.0 / M_PI) * std::sqrt(eta);
  if (u == 0.0) return std::sqrt(eta);

  const double denom = u * (1.0 + hi + lo);
  double ratio;
  if (std::fabs(denom) < kSingularWindow) {
    // sin(pi x) / ((1 - x)(1 + x)) = sin(pi u) / (u (2 - u))
    const double z2 = (M_PI * u) * (M_PI * u);
    const double sinc = 1.0 - z2 / 6.0 * (1.0 - z2 / 20.0 * (1.0 - z2 / 42.0));
    ratio = M_PI * sinc / (2.0 - u);
  } else {
    // sin(pi (hi + lo)) reduced about the nearest integer k, keeping the
    // relative accuracy of the numerator as x approaches 1.
    const double k = std::nearbyint(hi);
    const double f = (hi - k) + lo;
    const double s = std::sin(M_PI * f);
    ratio = (std::fmod(k, 2.0) != 0.0 ? -s : s) / denom;
  }
  return prefactor * ratio;
}

long minimum_oracle_panels(long n, double eta) {
  require_mode(n);
  return 20 * static_cast<long>(std::ceil(static_cast<double>(n) * eta)) + 50;
}

double coefficient_oracle(long n, const WellGeometry& geometry, long panels) {
  require_mode(n);
  if (panels < minimum_oracle_panels(n, geometry.eta())) {
    throw std::invalid_argument("coefficient_oracle: " + std::to_string(panels) +
                                " panels cannot resolve mode " + std::to_string(n));
  }
  // 5-point Gauss-Legendre on [-1, 1].
  static constexpr std::array<double, 5> nodes = {
      0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640, 0.9061798459386640};
  static constexpr std::array<double, 5> weights = {
      0.5688888888888889, 0.4786286704993665, 0.4786286704993665, 0.2369268850561891,
      0.2369268850561891};

  const double h = geometry.delta() / static_cast<double>(panels);
  numerics::CompensatedSum total;
  for (long p = 0; p < panels; ++p) {
    const double mid = (static_cast<double>(p) + 0.5) * h;
    double panel = 0.0;
    for (std::size_t k = 0; k < nodes.size(); ++k) {
      const double x = mid + 0.5 * h * nodes[k];
      panel += weights[k] * initial_wavefunction(x, geometry) * eigenfunction(n, x, geometry);
    }
    total.add(0.5 * h * panel);
  }
  return total.value();
}

double normalization_deficit(const std::vector<double>& coefficients, std::size_t count) {
  count = std::min(count, coefficients.size());
  numerics::CompensatedSum sum;
  for (std::size_t i = 0; i < count; ++i) sum.add(coefficients[i] * coefficients[i]);
  return std::max(0.0, 1.0 - sum.value());
}

SpectralState::SpectralState(WellGeometry geometry, PhysicalScales scales, std::vector<double> coefficients)
    : geometry_(geometry), scales_(scales), coefficients_(std::move(coefficients)) {
  require(!coefficients_.empty(), "spectral state needs at least one mode");
  deficit_ = normalization_deficit(coefficients_, coefficients_.size());
}

double SpectralState::truncation_sup_bound() const {
  const double eta = geometry_.eta();
  if (eta == 1.0) return 0.0;  // a_n = 0 for every n >= 2
  const long count = static_cast<long>(coefficients_.size());
  // Explicit terms until n * eta > 1, where |a_n| <= (2/pi) sqrt(eta) / (n^2 eta^2 - 1)
  // is decreasing and the remaining sum is dominated by its integral.
  const long first_tail = std::max(count, static_cast<long>(std::floor(2.0 / eta)) + 1);
  double sum = 0.0;
  for (long n = count + 1; n <= first_tail; ++n) sum += std::fabs(overlap_coefficient(n, eta));
  const double m_eta = static_cast<double>(first_tail) * eta;
  sum += std::log((m_eta + 1.0) / (m_eta - 1.0)) / (M_PI * std::sqrt(eta));
  return std::sqrt(2.0 / geometry_.big_l()) * sum;
}

SpectralState build_spectral_state(const WellGeometry& geometry, const PhysicalScales& scales,
                                   double target_deficit, long mode_cap) {
  require(target_deficit > 0.0 && target_deficit < 1.0, "target deficit must lie in (0, 1)");
  require(mode_cap >= 1, "mode cap must be positive");
  const double eta = geometry.eta();
  std::vector<double> coefficients;
  numerics::CompensatedSum norm;
  for (long n = 1;; ++n) {
    if (n > mode_cap) {
      std::ostringstream msg;
      msg << "deficit target " << target_deficit << " not reached within " << mode_cap
          << " modes (eta = " << eta << ", deficit = " << 1.0 - norm.value() << ")";
      throw NumericFailure(msg.str());
    }
    const double a = overlap_coefficient(n, eta);
    coefficients.push_back(a);
    norm.add(a * a);
    if (1.0 - norm.value() <= target_deficit) break;
  }
  return SpectralState(geometry, scales, std::move(coefficients));
}

}  // namespace well_revival
