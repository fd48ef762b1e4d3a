#pragma once

// Dyadic Littlewood-Paley filter bank (defined on the Fourier side), the
// compactly supported mollifier family with vanishing moments (defined on the
// spatial side), and spectral differentiation.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <ostream>
#include <vector>

#include "fracgn/corpus.hpp"
#include "fracgn/fft.hpp"

namespace fracgn {

namespace detail {

/// C-infinity bump on (1/2, 2).
inline double dyadic_bump(double r) {
  if (r <= 0.5 || r >= 2.0) return 0.0;
  return std::exp(-1.0 / ((r - 0.5) * (2.0 - r)));
}

/// phi_hat(2^-j xi) normalized by the full dyadic sum; at most two terms are nonzero.
inline double lp_transfer(double xi, int j) {
  if (xi <= 0.0) return 0.0;
  const double num = dyadic_bump(std::ldexp(xi, -j));
  if (num == 0.0) return 0.0;
  const int c = static_cast<int>(std::floor(std::log2(xi)));
  double den = 0.0;
  for (int k = c - 2; k <= c + 2; ++k) den += dyadic_bump(std::ldexp(xi, -k));
  return num / den;
}

inline std::vector<fft::cplx> spectrum(const SampledFunction& f) {
  return fft::forward_real(f.values, f.grid.dim, f.grid.n_per_axis);
}

inline SampledFunction from_spectrum(std::vector<fft::cplx> spec, const SampledFunction& like, std::string label) {
  auto v = fft::inverse_real(std::move(spec), like.grid.dim, like.grid.n_per_axis);
  SampledFunction out;
  out.grid = like.grid;
  out.values = std::move(v);
  out.label = std::move(label);
  return out;
}

}  // namespace detail

struct FilterBank {
  Grid grid;
  int j_min = 0;
  int j_max = 0;
  std::vector<std::vector<double>> transfer;  // transfer[j - j_min][flat frequency index]
  double partition_residual = 0.0;

  const std::vector<double>& at(int j) const { return transfer.at(static_cast<std::size_t>(j - j_min)); }
  int band_count() const { return j_max - j_min + 1; }
  /// Frequencies in [covered_low, covered_high] are partitioned exactly.
  double covered_low() const { return std::ldexp(1.0, j_min); }
  double covered_high() const { return std::ldexp(1.0, j_max); }
};

inline FilterBank build_filter_bank(const Grid& grid) {
  double xi_min = kInf;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = grid.frequency_magnitude(i);
    if (m > 0.0) xi_min = std::min(xi_min, m);
  }
  FilterBank bank;
  bank.grid = grid;
  // smallest j whose open annulus (2^{j-1}, 2^{j+1}) holds a lattice frequency
  int j = static_cast<int>(std::floor(std::log2(xi_min))) - 2;
  while (!(std::ldexp(1.0, j - 1) < xi_min && xi_min < std::ldexp(1.0, j + 1))) ++j;
  bank.j_min = j;
  // largest j whose whole annulus lies at or below the axis Nyquist frequency
  int top = static_cast<int>(std::floor(std::log2(grid.nyquist()))) + 1;
  while (std::ldexp(1.0, top + 1) > grid.nyquist()) --top;
  bank.j_max = top;
  require(bank.j_max - bank.j_min + 1 >= 3, ErrorCode::grid_too_coarse,
          "grid hosts " + std::to_string(std::max(0, bank.j_max - bank.j_min + 1)) + " dyadic bands, need 3");

  for (int b = bank.j_min; b <= bank.j_max; ++b) {
    std::vector<double> t(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) t[i] = detail::lp_transfer(grid.frequency_magnitude(i), b);
    bank.transfer.push_back(std::move(t));
  }
  double resid = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double m = grid.frequency_magnitude(i);
    if (m < bank.covered_low() || m > bank.covered_high()) continue;
    double s = 0.0;
    for (const auto& t : bank.transfer) s += t[i];
    resid = std::max(resid, std::abs(s - 1.0));
  }
  bank.partition_residual = resid;
  return bank;
}

/// phi_j * f.
inline SampledFunction band(const SampledFunction& f, int j, const FilterBank& bank) {
  require(f.grid == bank.grid, ErrorCode::invalid_argument, "filter bank built for a different grid");
  require(j >= bank.j_min && j <= bank.j_max, ErrorCode::band_out_of_range,
          "band " + std::to_string(j) + " outside [" + std::to_string(bank.j_min) + ", " + std::to_string(bank.j_max) + "]");
  auto s = detail::spectrum(f);
  const auto& t = bank.at(j);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= t[i];
  return detail::from_spectrum(std::move(s), f, f.label + "#band" + std::to_string(j));
}

/// Every band of f from a single forward transform. When keep_mean is set the
/// DC mode is attributed to the lowest band.
inline std::vector<std::vector<double>> all_bands(const SampledFunction& f, const FilterBank& bank,
                                                  bool keep_mean = false) {
  require(f.grid == bank.grid, ErrorCode::invalid_argument, "filter bank built for a different grid");
  const auto s = detail::spectrum(f);
  std::vector<std::vector<double>> out;
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    auto sj = s;
    const auto& t = bank.at(j);
    for (std::size_t i = 0; i < sj.size(); ++i) sj[i] *= t[i];
    if (keep_mean && j == bank.j_min) sj[0] = s[0];
    out.push_back(fft::inverse_real(std::move(sj), f.grid.dim, f.grid.n_per_axis));
  }
  return out;
}

/// Energy bookkeeping for the spectrum outside the covered annuli.
struct SpectrumDiagnostics {
  double dc_fraction = 0.0;
  double dropped_fraction = 0.0;  // non-DC energy not reproduced by the summed bands
  double above_covered_fraction = 0.0;  // energy at |xi| > 2^{j_max}
};

inline SpectrumDiagnostics spectrum_diagnostics(const SampledFunction& f, const FilterBank& bank) {
  const auto s = detail::spectrum(f);
  std::vector<double> total(s.size()), dropped(s.size()), above(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = std::norm(s[i]);
    total[i] = e;
    if (i == 0) continue;
    double sum = 0.0;
    for (const auto& t : bank.transfer) sum += t[i];
    dropped[i] = e * (1.0 - sum) * (1.0 - sum);
    if (bank.grid.frequency_magnitude(i) > bank.covered_high()) above[i] = e;
  }
  const double tot = pairwise_sum(total);
  SpectrumDiagnostics d;
  if (tot > 0.0) {
    d.dc_fraction = total[0] / tot;
    d.dropped_fraction = pairwise_sum(dropped) / tot;
    d.above_covered_fraction = pairwise_sum(above) / tot;
  }
  return d;
}

inline void write_filter_csv(std::ostream& os, const FilterBank& bank) {
  std::map<double, std::size_t> representative;
  for (std::size_t i = 0; i < bank.grid.size(); ++i) representative.emplace(bank.grid.frequency_magnitude(i), i);
  os << "j,frequency,value\n";
  os.precision(17);
  for (int j = bank.j_min; j <= bank.j_max; ++j)
    for (const auto& [xi, idx] : representative) os << j << ',' << xi << ',' << bank.at(j)[idx] << '\n';
}

// ---------------------------------------------------------------------------
// Mollifiers

struct MollifierFamily {
  Grid grid;
  /// phi rescaled to support radius 1, sampled on grid.box_length / eps_min so
  /// that the difference stencil lands on lattice points.
  SampledFunction mother;
  int moment_order = 1;
  std::vector<double> epsilons;  // descending, ratio 2
  double annulus_floor = 0.0;
  /// phi_eps stored by lattice offset (index d mod n holds phi_eps(d h)), and its spectrum times h^dim.
  std::vector<std::vector<double>> kernels;
  std::vector<std::vector<fft::cplx>> kernel_spectra;

  std::size_t index_of(double eps) const {
    for (std::size_t i = 0; i < epsilons.size(); ++i)
      if (std::abs(epsilons[i] - eps) <= 1e-12 * epsilons[i]) return i;
    throw Error(ErrorCode::invalid_epsilon, "epsilon " + std::to_string(eps) + " not in family");
  }
};

namespace detail {

inline constexpr double kMollifierCoreRadius = 0.75;

inline double core_bump(double r) {
  const double t = r / kMollifierCoreRadius;
  return t < 1.0 ? std::exp(-1.0 / (1.0 - t * t)) : 0.0;
}

/// Unit difference step b1: the stencil grows the support by 1/4 in total.
/// 1D: k-fold centered difference, b1 = 1/(2k).
/// 2D: m = ceil(k/2) applications of the 5-point Laplacian with step b1 = 1/(4m).
inline double unit_step(int dim, int k) {
  if (dim == 1) return 1.0 / (2.0 * k);
  const int m = (k + 1) / 2;
  return 1.0 / (4.0 * m);
}

inline std::size_t wrap(std::ptrdiff_t d, std::size_t n) {
  const auto nn = static_cast<std::ptrdiff_t>(n);
  return static_cast<std::size_t>(((d % nn) + nn) % nn);
}

/// Kernel by lattice offset. step_cells = eps * b1 / h is an even integer.
inline std::vector<double> mollifier_kernel(const Grid& grid, int k, double eps, long step_cells) {
  const std::size_t n = grid.n_per_axis;
  const double h = grid.spacing();
  const double norm = std::pow(eps, -grid.dim);
  std::vector<double> g(grid.size());
  const auto half = static_cast<std::ptrdiff_t>(n / 2);
  if (grid.dim == 1) {
    for (std::ptrdiff_t d = -half; d < half; ++d) g[wrap(d, n)] = norm * core_bump(std::abs(d * h) / eps);
    const long s = step_cells / 2;
    for (int rep = 0; rep < k; ++rep) {
      std::vector<double> next(n);
      for (std::ptrdiff_t d = -half; d < half; ++d) next[wrap(d, n)] = g[wrap(d + s, n)] - g[wrap(d - s, n)];
      g = std::move(next);
    }
  } else {
    for (std::ptrdiff_t a = -half; a < half; ++a)
      for (std::ptrdiff_t b = -half; b < half; ++b)
        g[wrap(a, n) * n + wrap(b, n)] = norm * core_bump(std::hypot(double(a), double(b)) * h / eps);
    const long s = step_cells;
    const int m = (k + 1) / 2;
    for (int rep = 0; rep < m; ++rep) {
      std::vector<double> next(g.size());
      for (std::ptrdiff_t a = -half; a < half; ++a)
        for (std::ptrdiff_t b = -half; b < half; ++b) {
          auto at = [&](std::ptrdiff_t x, std::ptrdiff_t y) { return g[wrap(x, n) * n + wrap(y, n)]; };
          next[wrap(a, n) * n + wrap(b, n)] =
              at(a + s, b) + at(a - s, b) + at(a, b + s) + at(a, b - s) - 4.0 * at(a, b);
        }
      g = std::move(next);
    }
  }
  return g;
}

}  // namespace detail

/// Mollifier family phi_eps(x) = eps^-dim phi(x / eps) with supp phi in the
/// unit ball and all moments of order < k vanishing. Epsilons are dyadic and
/// chosen so the stencil stays on the lattice and the smallest spans >= 8 cells.
inline MollifierFamily build_mollifiers(const Grid& grid, int k, int eps_count) {
  require(k >= 1, ErrorCode::invalid_argument, "moment order k must be >= 1");
  require(eps_count >= 4, ErrorCode::invalid_argument, "need at least 4 epsilons");
  const double h = grid.spacing();
  const double b1 = detail::unit_step(grid.dim, k);
  // eps must be a multiple of 2h / b1; smallest multiple covering 8 cells
  const double unit = 2.0 * h / b1;
  const double eps_min = unit * std::ceil(8.0 * h / unit - 1e-12);
  const double eps_max = std::ldexp(eps_min, eps_count - 1);
  require(eps_max <= 0.5 * grid.box_length * (1.0 + 1e-12), ErrorCode::epsilon_under_resolved,
          std::to_string(eps_count) + " dyadic epsilons from " + std::to_string(eps_min) +
              " exceed box/2; grid too coarse for k=" + std::to_string(k));

  MollifierFamily fam;
  fam.grid = grid;
  fam.moment_order = k;
  for (int i = eps_count - 1; i >= 0; --i) fam.epsilons.push_back(std::ldexp(eps_min, i));

  for (double eps : fam.epsilons) {
    const long step_cells = std::lround(eps * b1 / h);
    fam.kernels.push_back(detail::mollifier_kernel(grid, k, eps, step_cells));
  }

  // Mother: the smallest kernel in unit coordinates.
  const Grid unit_grid{grid.dim, grid.n_per_axis, grid.box_length / eps_min};
  const std::size_t n = grid.n_per_axis;
  std::vector<double> mother(grid.size());
  const double back = std::pow(eps_min, grid.dim);
  const auto& kmin = fam.kernels.back();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    // offset-indexed -> grid-indexed (origin at n/2)
    if (grid.dim == 1) {
      mother[(i + n / 2) % n] = back * kmin[i];
    } else {
      const std::size_t a = i / n, b = i % n;
      mother[((a + n / 2) % n) * n + (b + n / 2) % n] = back * kmin[i];
    }
  }

  // Normalize so that |phi_hat| = 1 at |xi| = 1 (along the first axis).
  fft::cplx at_one{0.0, 0.0};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double y = grid.dim == 1 ? unit_grid.coordinate(i) : unit_grid.coordinate(i / n);
    at_one += mother[i] * std::exp(fft::cplx(0.0, -y));
  }
  const double scale = std::abs(at_one) * unit_grid.cell_volume();
  require(scale > 0.0, ErrorCode::degenerate_mollifier, "mollifier transform vanishes at |xi| = 1");
  for (auto& v : mother) v /= scale;
  for (auto& ker : fam.kernels)
    for (auto& v : ker) v /= scale;
  fam.mother = SampledFunction(unit_grid, std::move(mother), "mollifier_mother_k" + std::to_string(k), 1.0);

  double floor = kInf;
  for (std::size_t e = 0; e < fam.epsilons.size(); ++e) {
    auto spec = fft::forward_real(fam.kernels[e], grid.dim, n);
    for (auto& c : spec) c *= grid.cell_volume();
    const double eps = fam.epsilons[e];
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double xi = grid.frequency_magnitude(i);
      if (xi >= 0.5 / eps && xi <= 2.0 / eps) floor = std::min(floor, std::abs(spec[i]));
    }
    fam.kernel_spectra.push_back(std::move(spec));
  }
  require(std::isfinite(floor), ErrorCode::degenerate_mollifier, "no lattice frequency inside any mollifier annulus");
  require(floor > 0.0, ErrorCode::degenerate_mollifier, "mollifier transform vanishes on its annulus");
  fam.annulus_floor = floor;
  return fam;
}

/// phi_eps * f (circular).
inline SampledFunction mollify(const SampledFunction& f, double eps, const MollifierFamily& fam) {
  require(f.grid == fam.grid, ErrorCode::invalid_argument, "mollifier family built for a different grid");
  const std::size_t e = fam.index_of(eps);
  auto s = detail::spectrum(f);
  const auto& k = fam.kernel_spectra[e];
  for (std::size_t i = 0; i < s.size(); ++i) s[i] *= k[i];
  return detail::from_spectrum(std::move(s), f, f.label + "#mollified");
}

/// Multi-indices gamma with |gamma| = order in the given dimension.
inline std::vector<std::array<int, 2>> multi_indices(int dim, int order) {
  std::vector<std::array<int, 2>> out;
  if (dim == 1) {
    out.push_back({order, 0});
  } else {
    for (int a = order; a >= 0; --a) out.push_back({a, order - a});
  }
  return out;
}

/// Largest |int x^gamma phi(x) dx| over |gamma| < k, by quadrature on the mother.
inline double moment_of(const SampledFunction& phi, std::array<int, 2> gamma) {
  const Grid& g = phi.grid;
  const std::size_t n = g.n_per_axis;
  std::vector<double> t(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double y0 = g.dim == 1 ? g.coordinate(i) : g.coordinate(i / n);
    const double y1 = g.dim == 1 ? 0.0 : g.coordinate(i % n);
    t[i] = std::pow(y0, gamma[0]) * (g.dim == 2 ? std::pow(y1, gamma[1]) : 1.0) * phi.values[i];
  }
  return pairwise_sum(t) * g.cell_volume();
}

inline double verify_moments(const SampledFunction& mother, int k) {
  double worst = 0.0;
  for (int order = 0; order < k; ++order)
    for (const auto& gamma : multi_indices(mother.grid.dim, order))
      worst = std::max(worst, std::abs(moment_of(mother, gamma)));
  return worst;
}

inline double verify_moments(const MollifierFamily& fam) { return verify_moments(fam.mother, fam.moment_order); }

// ---------------------------------------------------------------------------
// Spectral differentiation

/// Fraction of energy in the top 10% of the spectrum (per axis).
inline double spectral_tail_fraction(const SampledFunction& f) {
  const auto s = detail::spectrum(f);
  const Grid& g = f.grid;
  const std::size_t n = g.n_per_axis;
  const double cut = 0.9 * static_cast<double>(n / 2);
  std::vector<double> tot(s.size()), tail(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    tot[i] = std::norm(s[i]);
    double m = std::abs(double(g.signed_mode(g.dim == 1 ? i : i / n)));
    if (g.dim == 2) m = std::max(m, std::abs(double(g.signed_mode(i % n))));
    if (m > cut) tail[i] = tot[i];
  }
  const double t = pairwise_sum(tot);
  return t > 0.0 ? pairwise_sum(tail) / t : 0.0;
}

inline constexpr double kBandLimitTolerance = 1e-8;

inline void require_band_limited(const SampledFunction& f) {
  const double tail = spectral_tail_fraction(f);
  require(tail < kBandLimitTolerance, ErrorCode::not_band_limited,
          f.label + ": top 10% of spectrum carries " + std::to_string(tail) + " of the energy");
}

/// D^gamma f via the multiplier (i xi)^gamma.
inline SampledFunction spectral_derivative(const SampledFunction& f, std::array<int, 2> gamma) {
  if (gamma[0] == 0 && gamma[1] == 0) return f;
  require(gamma[0] >= 0 && gamma[1] >= 0, ErrorCode::invalid_argument, "negative multi-index");
  require(f.grid.dim == 2 || gamma[1] == 0, ErrorCode::invalid_argument, "second axis index on a 1D grid");
  require_band_limited(f);
  const Grid& g = f.grid;
  const std::size_t n = g.n_per_axis;
  auto s = detail::spectrum(f);
  auto factor = [&](std::size_t k, int order) -> fft::cplx {
    if (order == 0) return 1.0;
    // the Nyquist bin has no sign; odd orders annihilate it
    if (g.signed_mode(k) == -static_cast<std::ptrdiff_t>(n / 2) && order % 2 == 1) return 0.0;
    return std::pow(fft::cplx(0.0, g.frequency(k)), order);
  };
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (g.dim == 1) {
      s[i] *= factor(i, gamma[0]);
    } else {
      s[i] *= factor(i / n, gamma[0]) * factor(i % n, gamma[1]);
    }
  }
  std::string lbl = "D";
  lbl += std::to_string(gamma[0]);
  if (g.dim == 2) lbl += "," + std::to_string(gamma[1]);
  auto out = detail::from_spectrum(std::move(s), f, lbl + "(" + f.label + ")");
  out.effective_support_radius = std::nullopt;
  return out;
}

/// All components of D^m f (|gamma| = m).
inline std::vector<SampledFunction> derivative_components(const SampledFunction& f, int m) {
  std::vector<SampledFunction> out;
  for (const auto& gamma : multi_indices(f.grid.dim, m)) out.push_back(spectral_derivative(f, gamma));
  return out;
}

/// |D^m f| as the pointwise Euclidean magnitude over |gamma| = m.
inline SampledFunction derivative_magnitude(const SampledFunction& f, int m) {
  if (m == 0) {
    SampledFunction a = f;
    for (auto& v : a.values) v = std::abs(v);
    return a;
  }
  const auto comps = derivative_components(f, m);
  std::vector<double> v(f.values.size(), 0.0);
  for (const auto& c : comps)
    for (std::size_t i = 0; i < v.size(); ++i) v[i] += c.values[i] * c.values[i];
  for (auto& x : v) x = std::sqrt(x);
  SampledFunction out;
  out.grid = f.grid;
  out.values = std::move(v);
  out.label = "|D^" + std::to_string(m) + "(" + f.label + ")|";
  return out;
}

}  // namespace fracgn
