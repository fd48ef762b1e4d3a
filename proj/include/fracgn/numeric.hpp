#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace fracgn {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Fixed-tree pairwise summation. The reduction order depends only on the
/// length, so results are bit-stable however the caller splits the work.
inline double pairwise_sum(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n <= 16) {
    double s = 0.0;
    for (double v : x) s += v;
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(x.first(half)) + pairwise_sum(x.subspan(half));
}

inline double max_abs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline bool is_power_of_two_ratio(double lambda, int& exponent) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) return false;
  int e = 0;
  const double mant = std::frexp(lambda, &e);
  if (mant != 0.5) return false;
  exponent = e - 1;
  return true;
}

/// Least-squares slope and intercept of y against x; residual is the RMS misfit.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

inline LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit fit;
  const double den = n * sxx - sx * sx;
  fit.slope = den != 0.0 ? (n * sxy - sx * sy) / den : 0.0;
  fit.intercept = (sy - fit.slope * sx) / n;
  double r2 = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double e = y[i] - (fit.slope * x[i] + fit.intercept);
    r2 += e * e;
  }
  fit.residual = std::sqrt(r2 / n);
  return fit;
}

}  // namespace fracgn
