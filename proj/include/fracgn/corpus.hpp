#pragma once

// Sampled functions on a periodic box [-L/2, L/2)^dim and the generators of
// the test corpus. The box stands in for R^n: corpus functions are supported
// well inside it, so box integrals are R^n integrals.

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "fracgn/error.hpp"
#include "fracgn/numeric.hpp"

namespace fracgn {

struct Grid {
  int dim = 1;
  std::size_t n_per_axis = 0;
  double box_length = 0.0;

  double spacing() const { return box_length / static_cast<double>(n_per_axis); }
  std::size_t size() const { return dim == 1 ? n_per_axis : n_per_axis * n_per_axis; }
  double cell_volume() const { return std::pow(spacing(), dim); }
  /// Coordinate of sample index i along one axis.
  double coordinate(std::size_t i) const { return -0.5 * box_length + static_cast<double>(i) * spacing(); }
  /// Signed lattice index of FFT bin k: [0, n/2) maps to itself, the rest to k - n.
  std::ptrdiff_t signed_mode(std::size_t k) const {
    const auto n = static_cast<std::ptrdiff_t>(n_per_axis);
    const auto s = static_cast<std::ptrdiff_t>(k);
    return s < n / 2 ? s : s - n;
  }
  double frequency(std::size_t k) const {
    return 2.0 * std::numbers::pi * static_cast<double>(signed_mode(k)) / box_length;
  }
  double nyquist() const { return std::numbers::pi / spacing(); }
  /// Euclidean length of the lattice frequency at flat index idx.
  double frequency_magnitude(std::size_t idx) const {
    if (dim == 1) return std::abs(frequency(idx));
    const double a = frequency(idx / n_per_axis);
    const double b = frequency(idx % n_per_axis);
    return std::hypot(a, b);
  }
  /// Euclidean distance of sample idx from the box center.
  double radius_of(std::size_t idx) const {
    if (dim == 1) return std::abs(coordinate(idx));
    return std::hypot(coordinate(idx / n_per_axis), coordinate(idx % n_per_axis));
  }

  bool operator==(const Grid&) const = default;
};

inline Grid make_grid(int dim, std::size_t n_per_axis, double box_length) {
  require(dim == 1 || dim == 2, ErrorCode::invalid_argument, "dim must be 1 or 2");
  require(n_per_axis >= 8 && std::has_single_bit(n_per_axis), ErrorCode::invalid_argument,
          "n_per_axis must be a power of two >= 8, got " + std::to_string(n_per_axis));
  require(box_length > 0.0 && std::isfinite(box_length), ErrorCode::invalid_argument,
          "box_length must be positive");
  return Grid{dim, n_per_axis, box_length};
}

enum class GeneratorKind { gaussian, bump, wavepacket, random_trig, smoothed_step };

inline std::string_view to_string(GeneratorKind k) {
  switch (k) {
    case GeneratorKind::gaussian: return "gaussian";
    case GeneratorKind::bump: return "bump";
    case GeneratorKind::wavepacket: return "wavepacket";
    case GeneratorKind::random_trig: return "random_trig";
    case GeneratorKind::smoothed_step: return "smoothed_step";
  }
  return "?";
}

inline GeneratorKind generator_kind_from(std::string_view s) {
  for (auto k : {GeneratorKind::gaussian, GeneratorKind::bump, GeneratorKind::wavepacket,
                 GeneratorKind::random_trig, GeneratorKind::smoothed_step})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::invalid_argument, "unknown generator kind '" + std::string(s) + "'");
}

/// Parameters are shared across kinds; each kind reads the subset it needs.
///   gaussian:      center, width                  exp(-|x-c|^2 / (2 width^2))
///   bump:          center, width (= radius)       exp(1 - 1/(1-|x-c|^2/width^2))
///   wavepacket:    center, width, frequency       gaussian * cos(frequency (x_1 - c_1))
///   random_trig:   seed, decay, modes, scale      sum over |m|<=modes of |m|^-decay trig terms
///   smoothed_step: center, half_width, width      antisymmetric +1/-1 plateau pair, erf edges of scale width
struct GeneratorSpec {
  GeneratorKind kind = GeneratorKind::gaussian;
  std::array<double, 2> center{0.0, 0.0};
  double width = 1.0;
  double frequency = 0.0;
  double half_width = 1.0;
  double decay = 2.0;
  int modes = 8;
  std::uint64_t seed = 0;
  int scale = 1;
  double amplitude = 1.0;

  bool operator==(const GeneratorSpec&) const = default;
};

/// splitmix64: the seed expansion used by random_trig. Coefficient k of a
/// corpus is uniform(-1, 1) built from the k-th output's top 53 bits.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double symmetric() { return 2.0 * uniform01() - 1.0; }
};

struct SampledFunction {
  Grid grid;
  std::vector<double> values;
  std::string label;
  std::optional<double> effective_support_radius;
  /// Present when the samples came from generate(); lets dilate() regenerate analytically.
  std::optional<GeneratorSpec> origin;

  SampledFunction() = default;
  SampledFunction(Grid g, std::vector<double> v, std::string lbl,
                  std::optional<double> support = std::nullopt,
                  std::optional<GeneratorSpec> from = std::nullopt)
      : grid(g), values(std::move(v)), label(std::move(lbl)), effective_support_radius(support),
        origin(from) {
    require(values.size() == grid.size(), ErrorCode::invalid_argument, "value count does not match grid");
    for (double x : values) require(std::isfinite(x), ErrorCode::invalid_argument, "non-finite sample in " + label);
    if (effective_support_radius) {
      require(*effective_support_radius > 0.0, ErrorCode::invalid_argument, "support radius must be positive");
      const double tol = 1e-10 * max_abs(values);
      for (std::size_t i = 0; i < values.size(); ++i) {
        if (grid.radius_of(i) > *effective_support_radius && std::abs(values[i]) >= tol && tol > 0.0)
          throw Error(ErrorCode::support_overflow,
                      label + " is not negligible outside its declared support radius");
      }
    }
  }

  double max_abs_value() const { return max_abs(values); }
};

/// Same samples times c; support and provenance are kept (the generator spec
/// records the amplitude).
inline SampledFunction scaled(const SampledFunction& f, double c) {
  std::vector<double> v(f.values);
  for (auto& x : v) x *= c;
  std::optional<GeneratorSpec> origin = f.origin;
  if (origin) origin->amplitude *= c;
  SampledFunction out;
  out.grid = f.grid;
  out.values = std::move(v);
  out.label = f.label;
  out.effective_support_radius = c == 0.0 ? std::nullopt : f.effective_support_radius;
  out.origin = origin;
  return out;
}

inline SampledFunction add(const SampledFunction& f, const SampledFunction& g) {
  require(f.grid == g.grid, ErrorCode::invalid_argument, "grids differ");
  std::vector<double> v(f.values);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += g.values[i];
  std::optional<double> r;
  if (f.effective_support_radius && g.effective_support_radius)
    r = std::max(*f.effective_support_radius, *g.effective_support_radius);
  SampledFunction out;
  out.grid = f.grid;
  out.values = std::move(v);
  out.label = f.label + "+" + g.label;
  out.effective_support_radius = r;
  return out;
}

inline SampledFunction constant_function(const Grid& grid, double c, std::string label = "constant") {
  return SampledFunction(grid, std::vector<double>(grid.size(), c), std::move(label));
}

namespace detail {

// 2*erfc(z) < 1e-10 for z >= 5 with margin; gaussians drop below 1e-10 at 6.786 widths.
inline constexpr double kErfTailWidths = 5.0;
inline constexpr double kGaussTailWidths = 6.8;

inline double smooth_step(double t, double w) { return 0.5 * std::erfc(-t / w); }

inline double antisymmetric_plateau(double t, double a, double w) {
  return smooth_step(t + a, w) - 2.0 * smooth_step(t, w) + smooth_step(t - a, w);
}

inline double plateau(double t, double a, double w) { return smooth_step(t + a, w) - smooth_step(t - a, w); }

struct Shape {
  double radius;  // support radius about the generator center; 0 means none
};

inline Shape shape_of(const GeneratorSpec& s, int dim) {
  switch (s.kind) {
    case GeneratorKind::gaussian:
    case GeneratorKind::wavepacket: return {kGaussTailWidths * s.width};
    case GeneratorKind::bump: return {s.width};
    case GeneratorKind::smoothed_step: {
      const double r = s.half_width + kErfTailWidths * s.width;
      return {dim == 1 ? r : std::sqrt(2.0) * r};
    }
    case GeneratorKind::random_trig: return {0.0};
  }
  return {0.0};
}

}  // namespace detail

inline void validate(const GeneratorSpec& spec, const Grid& grid) {
  const bool needs_width = spec.kind != GeneratorKind::random_trig;
  if (needs_width)
    require(spec.width > 0.0, ErrorCode::invalid_argument, "width must be strictly positive");
  if (spec.kind == GeneratorKind::smoothed_step)
    require(spec.half_width > 0.0, ErrorCode::invalid_argument, "half_width must be strictly positive");
  if (spec.kind == GeneratorKind::wavepacket)
    require(std::abs(spec.frequency) < grid.nyquist(), ErrorCode::invalid_argument,
            "wavepacket frequency at or above Nyquist");
  if (spec.kind == GeneratorKind::random_trig) {
    require(spec.modes >= 1 && spec.scale >= 1, ErrorCode::invalid_argument, "random_trig needs modes, scale >= 1");
    const double top = 2.0 * std::numbers::pi * spec.modes * spec.scale / grid.box_length;
    require(top < grid.nyquist(), ErrorCode::invalid_argument, "random_trig modes reach Nyquist");
  }
}

inline SampledFunction generate(const GeneratorSpec& spec, const Grid& grid, std::string label = {}) {
  validate(spec, grid);
  if (label.empty()) label = std::string(to_string(spec.kind));
  const std::size_t n = grid.n_per_axis;
  std::vector<double> v(grid.size());

  const auto shape = detail::shape_of(spec, grid.dim);
  std::optional<double> support;
  if (shape.radius > 0.0) {
    const double c = grid.dim == 1 ? std::abs(spec.center[0]) : std::hypot(spec.center[0], spec.center[1]);
    const double r = c + shape.radius;
    require(r <= 0.5 * grid.box_length, ErrorCode::support_overflow,
            label + ": support radius " + std::to_string(r) + " exceeds box/2");
    support = r;
  }

  std::vector<double> coeff_a, coeff_b;
  std::vector<std::array<int, 2>> modes;
  if (spec.kind == GeneratorKind::random_trig) {
    SplitMix64 rng(spec.seed);
    const int m = spec.modes;
    if (grid.dim == 1) {
      for (int k = 1; k <= m; ++k) modes.push_back({k, 0});
    } else {
      // half-plane enumeration so each real mode appears once
      for (int a = 0; a <= m; ++a)
        for (int b = -m; b <= m; ++b)
          if (a > 0 || b > 0) modes.push_back({a, b});
    }
    for (const auto& md : modes) {
      const double mag = std::hypot(double(md[0]), double(md[1]));
      const double w = std::pow(mag, -spec.decay);
      coeff_a.push_back(w * rng.symmetric());
      coeff_b.push_back(w * rng.symmetric());
    }
  }

  auto eval = [&](double x0, double x1) -> double {
    const double d0 = x0 - spec.center[0];
    const double d1 = grid.dim == 2 ? x1 - spec.center[1] : 0.0;
    const double r2 = d0 * d0 + d1 * d1;
    switch (spec.kind) {
      case GeneratorKind::gaussian: return std::exp(-r2 / (2.0 * spec.width * spec.width));
      case GeneratorKind::wavepacket:
        return std::exp(-r2 / (2.0 * spec.width * spec.width)) * std::cos(spec.frequency * d0);
      case GeneratorKind::bump: {
        const double t = r2 / (spec.width * spec.width);
        return t < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - t)) : 0.0;
      }
      case GeneratorKind::smoothed_step: {
        const double a = detail::antisymmetric_plateau(d0, spec.half_width, spec.width);
        return grid.dim == 1 ? a : a * detail::plateau(d1, spec.half_width, spec.width);
      }
      case GeneratorKind::random_trig: {
        const double base = 2.0 * std::numbers::pi * spec.scale / grid.box_length;
        double acc = 0.0;
        for (std::size_t k = 0; k < modes.size(); ++k) {
          const double ph = base * (modes[k][0] * x0 + (grid.dim == 2 ? modes[k][1] * x1 : 0.0));
          acc += coeff_a[k] * std::cos(ph) + coeff_b[k] * std::sin(ph);
        }
        return acc;
      }
    }
    return 0.0;
  };

  if (grid.dim == 1) {
    for (std::size_t i = 0; i < n; ++i) v[i] = spec.amplitude * eval(grid.coordinate(i), 0.0);
  } else {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) v[i * n + j] = spec.amplitude * eval(grid.coordinate(i), grid.coordinate(j));
  }
  return SampledFunction(grid, std::move(v), std::move(label), support, spec);
}

/// f_lambda(x) = f(lambda x) on the same grid, lambda a power of two.
/// Generated functions are regenerated analytically; bare samples are
/// resampled by index stride (lambda >= 1 only).
inline SampledFunction dilate(const SampledFunction& f, double lambda) {
  int e = 0;
  require(is_power_of_two_ratio(lambda, e), ErrorCode::unsupported_dilation,
          "dilation factor must be a power of two");
  if (e == 0) return f;
  const std::string label = f.label + "@" + (e > 0 ? std::to_string(1 << e) : "1/" + std::to_string(1 << -e));

  if (f.origin) {
    GeneratorSpec s = *f.origin;
    if (s.kind == GeneratorKind::random_trig) {
      require(e > 0, ErrorCode::unsupported_dilation, "periodic corpus functions only dilate by lambda >= 1");
      s.scale *= (1 << e);
    } else {
      s.center[0] /= lambda;
      s.center[1] /= lambda;
      s.width /= lambda;
      s.half_width /= lambda;
      s.frequency *= lambda;
    }
    return generate(s, f.grid, label);
  }

  require(e > 0, ErrorCode::unsupported_dilation, "stride resampling needs lambda >= 1");
  if (f.effective_support_radius)
    require(*f.effective_support_radius / lambda <= 0.5 * f.grid.box_length, ErrorCode::support_overflow,
            "dilated support exceeds box/2");
  const auto n = static_cast<std::ptrdiff_t>(f.grid.n_per_axis);
  const auto lam = static_cast<std::ptrdiff_t>(1) << e;
  const bool periodic = !f.effective_support_radius;
  // x_i = -L/2 + i h  ->  lambda x_i is grid index lambda*i - (lambda-1)*n/2
  auto source = [&](std::ptrdiff_t i) -> std::ptrdiff_t {
    std::ptrdiff_t j = lam * i - (lam - 1) * n / 2;
    if (periodic) return ((j % n) + n) % n;
    return (j < 0 || j >= n) ? -1 : j;
  };
  std::vector<double> v(f.values.size(), 0.0);
  if (f.grid.dim == 1) {
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      const auto j = source(i);
      if (j >= 0) v[i] = f.values[j];
    }
  } else {
    for (std::ptrdiff_t i = 0; i < n; ++i)
      for (std::ptrdiff_t k = 0; k < n; ++k) {
        const auto a = source(i), b = source(k);
        if (a >= 0 && b >= 0) v[i * n + k] = f.values[a * n + b];
      }
  }
  std::optional<double> support;
  if (f.effective_support_radius) support = *f.effective_support_radius / lambda;
  return SampledFunction(f.grid, std::move(v), label, support);
}

/// Riemann-sum L^p norm; p = kInf gives the max.
inline double lp_norm(std::span<const double> values, const Grid& grid, double p) {
  require(p >= 1.0, ErrorCode::invalid_argument, "p must be >= 1");
  if (std::isinf(p)) return max_abs(values);
  std::vector<double> t(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) t[i] = std::pow(std::abs(values[i]), p);
  return std::pow(pairwise_sum(t) * grid.cell_volume(), 1.0 / p);
}

inline double lp_norm(const SampledFunction& f, double p) { return lp_norm(f.values, f.grid, p); }

}  // namespace fracgn
