// Unit tests for the quench model: initial state, post-quench basis, overlap
// coefficients and the truncated spectral state.
//
// Frozen reference values below were produced by direct evaluation of the
// overlap formula and direct summation of a_n^2 at 40-digit precision.

#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "well_revival/model.hpp"

using namespace well_revival;

TEST_CASE("initial wavefunction is the ground state of [0, delta]") {
  const WellGeometry g(1.0, 4.0);
  CHECK(initial_wavefunction(0.5, g) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(initial_wavefunction(0.0, g) == 0.0);
  CHECK(initial_wavefunction(1.0, g) == 0.0);
  CHECK(initial_wavefunction(0.25, g) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(initial_wavefunction(-0.3, g) == 0.0);
  CHECK(initial_wavefunction(2.5, g) == 0.0);

  // Normalized on [0, delta]: midpoint rule on a smooth periodic integrand.
  const WellGeometry h(0.3, 1.0);
  const int panels = 2000;
  double norm = 0.0;
  for (int i = 0; i < panels; ++i) {
    const double x = (i + 0.5) * h.delta() / panels;
    norm += initial_wavefunction(x, h) * initial_wavefunction(x, h) * h.delta() / panels;
  }
  CHECK(norm == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("geometry and scales reject invalid values") {
  CHECK_THROWS_AS(WellGeometry(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WellGeometry(2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(WellGeometry(-1.0, 1.0), std::invalid_argument);
  CHECK_NOTHROW(WellGeometry(1.0, 1.0));
  CHECK_THROWS_AS(PhysicalScales(0.0, 1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalScales(1.0, -1.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PhysicalScales(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(natural_geometry(1.5), std::invalid_argument);
  CHECK(natural_geometry(0.25).eta() == 0.25);
  CHECK(parse_unit_system("si") == UnitSystem::si);
  CHECK_THROWS_AS(parse_unit_system("cgs"), std::invalid_argument);
}

TEST_CASE("eigen energies are quadratic in n") {
  const auto s = natural_scales();
  const auto g = natural_geometry(0.5);
  CHECK(eigen_energy(1, g, s) == doctest::Approx(M_PI * M_PI / 2.0).epsilon(1e-15));
  CHECK(eigen_energy(3, g, s) == doctest::Approx(9.0 * eigen_energy(1, g, s)).epsilon(1e-15));
  for (long n = 1; n < 50; ++n) CHECK(eigen_energy(n + 1, g, s) > eigen_energy(n, g, s));
  CHECK_THROWS_AS(eigen_energy(0, g, s), std::invalid_argument);
  CHECK_THROWS_AS(eigen_energy(-2, g, s), std::invalid_argument);

  // L = delta reproduces the initial energy.
  const PhysicalScales si = si_scales(9e-31);
  const WellGeometry same(1e-15, 1e-15);
  CHECK(eigen_energy(1, same, si) == doctest::Approx(initial_energy(same, si)).epsilon(1e-15));
}

TEST_CASE("eigenfunctions: nodes, antinodes, reflection parity") {
  const WellGeometry g(0.5, 2.0);
  const double l = g.big_l();
  CHECK(std::fabs(eigenfunction(2, l / 2, g)) < 1e-15);
  CHECK(eigenfunction(1, l / 2, g) == doctest::Approx(std::sqrt(2.0 / l)).epsilon(1e-15));
  CHECK(eigenfunction(5, 0.0, g) == 0.0);
  CHECK(eigenfunction(5, l, g) == 0.0);
  CHECK(eigenfunction(2, l - l / 8, g) == doctest::Approx(-eigenfunction(2, l / 8, g)).epsilon(1e-14));
  for (long n = 1; n <= 12; ++n) {
    const double sign = n % 2 == 1 ? 1.0 : -1.0;
    for (double x : {0.1, 0.37, 0.9, 1.4}) {
      CHECK(eigenfunction(n, l - x, g) == doctest::Approx(sign * eigenfunction(n, x, g)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(eigenfunction(0, 0.1, g), std::invalid_argument);
}

TEST_CASE("overlap coefficient: trivial quench and branch point") {
  CHECK(overlap_coefficient(1, 1.0) == 1.0);
  for (long n = 2; n <= 20; ++n) CHECK(overlap_coefficient(n, 1.0) == 0.0);
  CHECK(overlap_coefficient(2, 0.5) == doctest::Approx(std::sqrt(0.5)).epsilon(1e-15));
  CHECK(overlap_coefficient(4, 0.25) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(overlap_coefficient(1, 0.1) == doctest::Approx(0.062838714560758816963).epsilon(1e-14));
  CHECK_THROWS_AS(overlap_coefficient(1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(overlap_coefficient(1, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(overlap_coefficient(0, 0.5), std::invalid_argument);
}

TEST_CASE("overlap coefficient stays accurate next to n eta = 1") {
  struct Probe {
    long n;
    double eta;
    double expected;
  };
  // eta values are the doubles nearest to 1/n + offset; expected from 40-digit evaluation.
  const std::vector<Probe> probes = {
      {3, 0.3333333334333333, 0.57735026918962576442},  {3, 0.3333333332333333, 0.57735026918962576442},
      {7, 0.14285714285744286, 0.37796447300922722721}, {2, 0.5000001, 0.70710678118649746311},
      {2, 0.4999999, 0.7071067811864974631},            {10, 0.100000001, 0.31622776601683787723},
  };
  for (const auto& p : probes) {
    CHECK(std::fabs(overlap_coefficient(p.n, p.eta) - p.expected) < 1e-14);
  }

  // Continuity across the switch into the series branch, probed on a fine
  // ladder. Near eta = (1 + e) / n the coefficient is n^-1/2 (1 - e^2 / 4).
  for (long n : {2L, 5L, 17L}) {
    const double center = 1.0 / static_cast<double>(n);
    double previous = overlap_coefficient(n, center * (1.0 - 2e-9));
    for (int k = -200; k <= 200; ++k) {
      const double eta = center * (1.0 + k * 1e-11);
      const double value = overlap_coefficient(n, eta);
      CHECK(std::fabs(value - previous) < 1e-12);
      CHECK(std::fabs(value - 1.0 / std::sqrt(static_cast<double>(n))) < 1e-12);
      previous = value;
    }
  }

  // Numeric probe at 1/n +- 1e-7.
  for (long n : {2L, 3L, 8L, 40L}) {
    for (double off : {-1e-7, 1e-7}) {
      const double eta = 1.0 / static_cast<double>(n) + off;
      CHECK(std::fabs(overlap_coefficient(n, eta) - std::sqrt(eta)) < 1e-5);
    }
  }
}

TEST_CASE("coefficient oracle") {
  const WellGeometry full(1.0, 1.0);
  CHECK(coefficient_oracle(1, full, 70) == doctest::Approx(1.0).epsilon(1e-12));

  const WellGeometry half(0.5, 1.0);
  CHECK(std::fabs(coefficient_oracle(2, half, 10000) - std::sqrt(0.5)) < 1e-10);

  const WellGeometry quarter(0.25, 1.0);
  double worst = 0.0;
  for (long n = 1; n <= 50; ++n) {
    worst = std::max(worst, std::fabs(coefficient_oracle(n, quarter, 2000) - overlap_coefficient(n, 0.25)));
  }
  CHECK(worst < 1e-9);

  CHECK(minimum_oracle_panels(200, 0.1) == 450);
  CHECK_THROWS_AS(coefficient_oracle(200, WellGeometry(0.1, 1.0), 449), std::invalid_argument);
  CHECK_NOTHROW(coefficient_oracle(200, WellGeometry(0.1, 1.0), 450));
}

TEST_CASE("closed form agrees with quadrature for n <= 200") {
  for (double eta : {0.1, 0.25, 0.5, 0.9, 1.0}) {
    const WellGeometry g(eta, 1.0);
    double worst = 0.0;
    for (long n = 1; n <= 200; ++n) {
      const long panels = std::max(4000L, minimum_oracle_panels(n, eta));
      worst = std::max(worst, std::fabs(overlap_coefficient(n, eta) - coefficient_oracle(n, g, panels)));
    }
    CAPTURE(eta);
    CHECK(worst < 1e-9);
  }
}

TEST_CASE("spectral state truncation by normalization deficit") {
  const auto s = natural_scales();

  const auto trivial = build_spectral_state(natural_geometry(1.0), s, 1e-12);
  CHECK(trivial.mode_count() == 1);
  CHECK(trivial.deficit() == 0.0);
  CHECK(trivial.truncation_sup_bound() == 0.0);

  const auto half = build_spectral_state(natural_geometry(0.5), s, 1e-6);
  CHECK(half.mode_count() == 81);
  CHECK(half.deficit() <= 1e-6);
  CHECK(half.deficit() == doctest::Approx(9.804789415e-7).epsilon(1e-8));
  CHECK(normalization_deficit(half.coefficients(), 80) > 1e-6);
  CHECK(normalization_deficit(half.coefficients(), 80) == doctest::Approx(1.055890839e-6).epsilon(1e-8));

  const auto tenth = build_spectral_state(natural_geometry(0.1), s, 1e-8);
  CHECK(tenth.mode_count() == 1892);
  const std::size_t n = tenth.mode_count() / 2;
  CHECK(normalization_deficit(tenth.coefficients(), 2 * (n / 2)) <= normalization_deficit(tenth.coefficients(), n / 2));

  CHECK(build_spectral_state(natural_geometry(0.3), s, 1e-8).mode_count() == 631);

  CHECK_THROWS_AS(build_spectral_state(natural_geometry(0.5), s, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spectral_state(natural_geometry(0.5), s, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(build_spectral_state(natural_geometry(0.01), s, 1e-12, 1000), NumericFailure);
}

TEST_CASE("deficit is non-increasing and decays like N^-3") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> pick(0.05, 0.95);
  for (int trial = 0; trial < 8; ++trial) {
    const double eta = pick(rng);
    const auto state = build_spectral_state(natural_geometry(eta), natural_scales(), 1e-9);
    const auto& a = state.coefficients();
    double previous = 1.0;
    double c_max = 0.0;
    double c_min = 1e300;
    for (std::size_t count = 1; count <= a.size(); ++count) {
      const double d = normalization_deficit(a, count);
      CHECK(d <= previous);
      CHECK(d >= 0.0);
      CHECK(d < 1.0);
      previous = d;
      if (static_cast<double>(count) * eta > 2.0) {
        const double c = d * std::pow(static_cast<double>(count), 3);
        c_max = std::max(c_max, c);
        c_min = std::min(c_min, c);
      }
    }
    CAPTURE(eta);
    // d(N) N^3 stays within a bounded band: the fitted constant is O(1 / eta^3).
    CHECK(c_max * std::pow(eta, 3) < 0.2);
    CHECK(c_min > 0.0);
  }
}

TEST_CASE("truncation sup bound dominates the reconstruction error at t = 0") {
  for (double eta : {0.1, 0.3, 0.5}) {
    const WellGeometry g = natural_geometry(eta);
    const auto state = build_spectral_state(g, natural_scales(), 1e-6);
    const double bound = state.truncation_sup_bound();
    double worst = 0.0;
    for (int j = 0; j <= 2000; ++j) {
      const double x = j / 2000.0;
      double sum = 0.0;
      for (std::size_t i = 0; i < state.mode_count(); ++i) {
        sum += state.coefficients()[i] * eigenfunction(static_cast<long>(i + 1), x, g);
      }
      worst = std::max(worst, std::fabs(sum - initial_wavefunction(x, g)));
    }
    CAPTURE(eta);
    CHECK(worst <= bound);
    CHECK(bound < 10.0 * worst);
  }
}
