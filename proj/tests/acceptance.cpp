// Acceptance suite: one PASS/FAIL line per criterion; exit status is the
// number of failed criteria.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "well_revival/constants.hpp"
#include "well_revival/grid_oracle.hpp"
#include "well_revival/relativity.hpp"
#include "well_revival/spectral.hpp"

using namespace well_revival;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const std::string& name, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::printf("[%s] %2d %-28s %s (%.2fs)\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), o.detail.c_str(), secs);
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

std::string fmt(const char* format, double a) {
  char buf[128];
  std::snprintf(buf, sizeof buf, format, a);
  return buf;
}

SpectralState natural_state(double eta, double deficit = 1e-8) {
  return build_spectral_state(natural_geometry(eta), natural_scales(), deficit);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace

int main() {
  criterion(1, "far-interval revival", [] {
    bool ok = true;
    std::ostringstream d;
    for (double eta : {0.1, 0.3, 0.5}) {
      const auto state = natural_state(eta);
      const auto& g = state.geometry();
      const double far = interval_probability(state, far_interval(g), Tau{1.0});
      const double rest = interval_probability(state, {0.0, g.big_l() - g.delta()}, Tau{1.0});
      ok = ok && far >= 0.999 && rest <= 1e-3;
      d << "eta=" << eta << " N=" << state.mode_count() << " far=" << far << " rest=" << rest << "; ";
    }
    return Outcome{ok, d.str()};
  });

  criterion(2, "mirror symmetry", [] {
    const auto report = revival_report(natural_state(0.3), 1, 1001);
    return Outcome{report.mirror_error < 1e-3, fmt("max |dens(L-x,t_hat) - |psi(x)|^2| = %.3e < 1e-3", report.mirror_error)};
  });

  criterion(3, "exact 2 t_hat recurrence", [] {
    const auto state = natural_state(0.3);
    const double t_hat = revival_time(state.scales(), 1.0);
    double worst = 0.0;
    for (int j = 0; j <= 1000; ++j) {
      const double x = j / 1000.0;
      worst = std::max(worst, std::abs(wavefunction_at(state, x, 2.0 * t_hat) - wavefunction_at(state, x, 0.0)));
    }
    return Outcome{worst < 1e-9, fmt("max |Psi(x,2t_hat) - Psi(x,0)| = %.3e < 1e-9", worst)};
  });

  criterion(4, "odd-multiple recurrence", [] {
    bool ok = true;
    double worst = 0.0;
    for (double eta : {0.1, 0.3, 0.5}) {
      const auto state = natural_state(eta);
      std::vector<double> times;
      for (long k : {0L, 1L, 2L}) times.push_back(revival_time(state.scales(), 1.0, k));
      const auto series = probability_timeseries(state, far_interval(state.geometry()), std::span<const double>(times));
      for (double p : series.probs) worst = std::max(worst, std::fabs(p - series.probs[0]));
    }
    ok = worst < 1e-9;
    return Outcome{ok, fmt("max spread of far probability over t_hat, 3t_hat, 5t_hat = %.3e < 1e-9", worst)};
  });

  criterion(5, "energy conservation", [] {
    bool ok = true;
    std::ostringstream d;
    for (double eta : {0.1, 0.3, 0.5, 0.9, 1.0}) {
      const auto state = natural_state(eta);
      const double e_prime = initial_energy(state.geometry(), state.scales());
      const double rel = std::fabs(mean_energy(state) - e_prime) / e_prime;
      ok = ok && rel < 1e-3;
      d << "eta=" << eta << " rel=" << rel << "; ";
    }
    return Outcome{ok, d.str() + "(tolerance 1e-3)"};
  });

  criterion(6, "coefficient oracle", [] {
    double worst = 0.0;
    int singular_points = 0;
    for (double eta : {0.1, 0.25, 0.5, 0.9, 1.0}) {
      const WellGeometry g(eta, 1.0);
      for (long n = 1; n <= 200; ++n) {
        const long panels = std::max(4000L, minimum_oracle_panels(n, eta));
        worst = std::max(worst, std::fabs(overlap_coefficient(n, eta) - coefficient_oracle(n, g, panels)));
        if (static_cast<double>(n) * eta == 1.0) ++singular_points;
      }
    }
    return Outcome{worst < 1e-9 && singular_points == 4,
                   fmt("max |closed form - quadrature| = %.3e < 1e-9", worst) + " over n<=200 incl. " +
                       std::to_string(singular_points) + " points with n*eta = 1"};
  });

  criterion(7, "grid-oracle agreement", [] {
    const auto start = std::chrono::steady_clock::now();
    const auto scales = natural_scales();
    const double t = 0.05 * revival_time(scales, 1.0);
    const std::vector<Resolution> res = {{2048, t / 256}, {4096, t / 512}, {8192, t / 1024}};
    const auto report = convergence_order(natural_geometry(0.5), scales, t, res);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::ostringstream d;
    d << "L2 errors " << report.errors[0] << " " << report.errors[1] << " " << report.errors[2]
      << " monotone=" << report.monotone() << " fitted order " << report.fitted_order << " (need >= 1.3)";
    return Outcome{report.monotone() && report.fitted_order >= 1.3 && secs < 60.0, d.str()};
  });

  criterion(8, "electron scenario", [] {
    const double m = 9e-31, l = 1e-13, delta = 1e-15;
    const auto scales = si_scales(m);
    const auto r = build_relativity_report(m, l, delta, scales);
    const double expected = 2.0 * m * l * l / (M_PI * constants::kHbar);
    const bool t_ok = r.t_hat >= 1e-23 && r.t_hat <= 1e-21 && std::fabs(r.t_hat - expected) <= 1e-12 * expected;
    const double crossing = l / constants::kSpeedOfLight;
    const bool c_ok = std::fabs(r.light_crossing - crossing) <= 1e-12 * crossing && r.light_crossing > 1e-22 &&
                      r.light_crossing < 1e-21;
    // "roughly ten": nearest power of ten of the margin.
    const bool m_ok = r.margin > 1.0 && r.superluminal && std::lround(std::log10(r.margin)) == 1;
    std::ostringstream d;
    d << "t_hat=" << r.t_hat << " s, L/c=" << r.light_crossing << " s, margin=" << r.margin;
    return Outcome{t_ok && c_ok && m_ok, d.str()};
  });

  criterion(9, "dimensionless collapse", [] {
    const double m = 1.3, l = 0.8, eta = 0.3;
    const PhysicalScales s1(m, 1.0, 1.0), s2(4.0 * m, 1.0, 1.0);
    const auto a = build_spectral_state(WellGeometry(eta * l, l), s1, 1e-8);
    const auto b = build_spectral_state(WellGeometry(eta * l / 2.0, l / 2.0), s2, 1e-8);
    std::vector<Tau> taus;
    for (int k = 0; k <= 20; ++k) taus.push_back({0.1 * k});
    const auto ra = probability_timeseries(a, far_interval(a.geometry()), taus);
    const auto rb = probability_timeseries(b, far_interval(b.geometry()), taus);
    double worst = 0.0;
    for (std::size_t i = 0; i < taus.size(); ++i) worst = std::max(worst, std::fabs(ra.probs[i] - rb.probs[i]));
    return Outcome{worst < 1e-9, fmt("max difference over 21 tau samples = %.3e < 1e-9", worst)};
  });

  criterion(10, "CLI determinism", [] {
    const fs::path dir = fs::temp_directory_path() / "well_revival_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::vector<std::string> runs = {"1", "4", "4"};
    bool ok = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const fs::path out = dir / ("run" + std::to_string(i));
      fs::create_directories(out);
      const std::string env = "WELL_REVIVAL_THREADS=" + runs[i] + " ";
      const std::string tool = WELL_REVIVAL_TOOL;
      const std::vector<std::string> commands = {
          env + tool + " simulate --eta 0.3 --tau 0 --tau 0.5 --tau 1 --out " + (out / "sim").string(),
          env + tool + " revival --eta 0.3 --format json --out " + (out / "revival.json").string(),
          env + tool + " sweep --eta 0.1,0.5,1 --out " + (out / "sweep.csv").string(),
          env + tool + " relativity --units si --mass 9e-31 --length-l 1e-13 --length-delta 1e-15 --format json --out " +
              (out / "relativity.json").string(),
      };
      for (const auto& c : commands) ok = ok && std::system(c.c_str()) == 0;
    }
    std::size_t compared = 0;
    for (const auto& entry : fs::recursive_directory_iterator(dir / "run0")) {
      if (!entry.is_regular_file()) continue;
      const auto rel = fs::relative(entry.path(), dir / "run0");
      const std::string ref = slurp(entry.path());
      for (std::size_t i = 1; i < runs.size(); ++i) ok = ok && slurp(dir / ("run" + std::to_string(i)) / rel) == ref;
      ++compared;
    }
    ok = ok && compared == 7;
    return Outcome{ok, std::to_string(compared) + " output files byte-identical across WELL_REVIVAL_THREADS=1,4,4"};
  });

  std::printf("%d criterion(s) failed\n", failures);
  return failures;
}
