#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

namespace well_revival::numerics {

/// (sin(pi r), cos(pi r)), exact at every multiple of 1/2.
inline std::pair<double, double> sincospi(double r) {
  const double q = std::nearbyint(2.0 * r);
  const double f = r - 0.5 * q;  // |f| <= 1/4
  const double s = std::sin(M_PI * f);
  const double c = std::cos(M_PI * f);
  switch (static_cast<std::int64_t>(q) & 3) {
    case 0: return {s, c};
    case 1: return {c, -s};
    case 2: return {-s, -c};
    default: return {-c, s};
  }
}

inline double sinpi(double r) { return sincospi(r).first; }

/// k * s reduced modulo 2 into [-1, 1), carrying the rounding error of the
/// product. k must be an integer with |k| < 2^53.
inline double product_mod2(double k, double s) {
  const double p = k * s;
  const double err = std::fma(k, s, -p);
  double r = std::fmod(p, 2.0) + err;
  r = std::fmod(r, 2.0);
  if (r >= 1.0) r -= 2.0;
  if (r < -1.0) r += 2.0;
  return r;
}

/// Neumaier compensated accumulator.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::fabs(sum_) >= std::fabs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Pairwise tree reduction; the grouping depends only on values.size().
inline double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.subspan(0, half)) + pairwise_sum(values.subspan(half));
}

}  // namespace well_revival::numerics
