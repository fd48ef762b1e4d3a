#pragma once

// Homogeneous norms on sampled functions: fractional Sobolev (double integral
// and directional-difference forms, every order), Hoelder, Besov through the
// filter bank, the mollifier sup characterization, and BMO.
//
// Every singular integral is truncated at |h| >= spacing with no tail
// correction; the cutoff is recorded in the result.

#include <bit>
#include <cmath>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracgn/corpus.hpp"
#include "fracgn/lpdecomp.hpp"

namespace fracgn {

enum class NormKind { sobolev, sobolev_directional, holder, besov, besov_sup_mollifier, bmo, lp };

inline std::string_view to_string(NormKind k) {
  switch (k) {
    case NormKind::sobolev: return "sobolev";
    case NormKind::sobolev_directional: return "sobolev_directional";
    case NormKind::holder: return "holder";
    case NormKind::besov: return "besov";
    case NormKind::besov_sup_mollifier: return "besov_sup_mollifier";
    case NormKind::bmo: return "bmo";
    case NormKind::lp: return "lp";
  }
  return "?";
}

inline NormKind norm_kind_from(std::string_view s) {
  for (auto k : {NormKind::sobolev, NormKind::sobolev_directional, NormKind::holder, NormKind::besov,
                 NormKind::besov_sup_mollifier, NormKind::bmo, NormKind::lp})
    if (to_string(k) == s) return k;
  throw Error(ErrorCode::invalid_argument, "unknown norm kind '" + std::string(s) + "'");
}

/// How the mean (DC mode) enters Besov sums. The default drops it, the torus
/// analogue of working modulo polynomials.
enum class MeanConvention { subtract, raw };

inline std::string_view to_string(MeanConvention c) { return c == MeanConvention::subtract ? "subtract" : "raw"; }

struct Truncation {
  std::optional<double> h_min, h_max;
  std::optional<int> j_min, j_max;
  std::optional<double> eps_min, eps_max;
  std::optional<double> eps_attained;  // mollifier route: epsilon realizing the sup
  std::optional<int> derivative_order;
  std::optional<double> dc_fraction, dropped_fraction, above_covered_fraction;
  std::string method;
  std::string mean_convention;
};

struct NormParams {
  double s = 0.0;  // alpha or s
  std::optional<double> p;
  std::optional<double> q;
};

struct NormResult {
  double value = 0.0;
  NormKind kind = NormKind::lp;
  NormParams params;
  Truncation truncation;
};

// ---------------------------------------------------------------------------

namespace detail {

/// Offsets (in cells) with spacing <= |h| <= box/2, each torus offset once.
struct Offset {
  std::ptrdiff_t a, b;
  double length;  // |h| in length units
};

inline std::vector<Offset> difference_offsets(const Grid& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.n_per_axis);
  const double h = g.spacing();
  const double hmax = 0.5 * g.box_length * (1.0 + 1e-12);
  std::vector<Offset> out;
  if (g.dim == 1) {
    for (std::ptrdiff_t a = -n / 2 + 1; a <= n / 2; ++a)
      if (a != 0) out.push_back({a, 0, std::abs(double(a)) * h});
  } else {
    for (std::ptrdiff_t a = -n / 2 + 1; a <= n / 2; ++a)
      for (std::ptrdiff_t b = -n / 2 + 1; b <= n / 2; ++b) {
        if (a == 0 && b == 0) continue;
        const double len = std::hypot(double(a), double(b)) * h;
        if (len <= hmax) out.push_back({a, b, len});
      }
  }
  return out;
}

inline double abs_pow(double x, double p) {
  x = std::abs(x);
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return std::pow(x, p);
}

/// Index of the sample at x + offset (periodic).
inline std::size_t shifted(const Grid& g, std::size_t idx, std::ptrdiff_t a, std::ptrdiff_t b) {
  const auto n = static_cast<std::ptrdiff_t>(g.n_per_axis);
  if (g.dim == 1) return static_cast<std::size_t>(((static_cast<std::ptrdiff_t>(idx) + a) % n + n) % n);
  const auto r = static_cast<std::ptrdiff_t>(idx) / n, c = static_cast<std::ptrdiff_t>(idx) % n;
  const auto rr = ((r + a) % n + n) % n, cc = ((c + b) % n + n) % n;
  return static_cast<std::size_t>(rr * n + cc);
}

inline void require_alpha_unit(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, ErrorCode::invalid_argument,
          "alpha must lie in (0,1); use sobolev_norm_general for other orders");
}

}  // namespace detail

/// (sum_x sum_h |f(x+h)-f(x)|^p / |h|^{n+alpha p} h^{2n})^{1/p}
inline NormResult sobolev_seminorm(const SampledFunction& f, double alpha, double p) {
  detail::require_alpha_unit(alpha);
  require(p >= 1.0, ErrorCode::invalid_argument, "p must be >= 1");
  require(std::isfinite(p), ErrorCode::invalid_argument, "p = inf: use holder_seminorm");
  const Grid& g = f.grid;
  const auto offsets = detail::difference_offsets(g);
  const double vol = g.cell_volume();
  std::vector<double> per_offset(offsets.size());
  std::vector<double> terms(f.values.size());
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const auto& o = offsets[k];
    for (std::size_t i = 0; i < f.values.size(); ++i)
      terms[i] = detail::abs_pow(f.values[detail::shifted(g, i, o.a, o.b)] - f.values[i], p);
    per_offset[k] = pairwise_sum(terms) / std::pow(o.length, g.dim + alpha * p);
  }
  NormResult r;
  r.kind = NormKind::sobolev;
  r.params = {alpha, p, std::nullopt};
  r.value = std::pow(pairwise_sum(per_offset) * vol * vol, 1.0 / p);
  r.truncation.h_min = g.spacing();
  r.truncation.h_max = 0.5 * g.box_length;
  r.truncation.method = "double Riemann sum, periodic wrap, h=0 cell excluded";
  return r;
}

/// max over spacing <= |h| <= box/2 of |f(x+h)-f(x)| / |h|^alpha
inline NormResult holder_seminorm(const SampledFunction& f, double alpha) {
  detail::require_alpha_unit(alpha);
  const Grid& g = f.grid;
  double best = 0.0;
  for (const auto& o : detail::difference_offsets(g)) {
    double m = 0.0;
    for (std::size_t i = 0; i < f.values.size(); ++i)
      m = std::max(m, std::abs(f.values[detail::shifted(g, i, o.a, o.b)] - f.values[i]));
    best = std::max(best, m / std::pow(o.length, alpha));
  }
  NormResult r;
  r.kind = NormKind::holder;
  r.params = {alpha, kInf, std::nullopt};
  r.value = best;
  r.truncation.h_min = g.spacing();
  r.truncation.h_max = 0.5 * g.box_length;
  r.truncation.method = "max over grid pairs";
  return r;
}

/// (sum_k int_0^inf ||Delta_{t e_k} f||_p^p dt / t^{1+sp})^{1/p} on a geometric
/// t-grid of ratio 2^{1/8} from spacing to box/2.
inline NormResult directional_difference_seminorm(const SampledFunction& f, double s, double p) {
  detail::require_alpha_unit(s);
  require(p >= 1.0 && std::isfinite(p), ErrorCode::invalid_argument, "p must lie in [1, inf)");
  const Grid& g = f.grid;
  const double h = g.spacing();
  constexpr int kPerOctave = 8;
  const int octaves = static_cast<int>(std::lround(std::log2(0.5 * g.box_length / h)));
  const double weight = std::log(2.0) / kPerOctave;
  std::vector<double> contrib;
  std::vector<double> terms(f.values.size());
  for (int axis = 0; axis < g.dim; ++axis) {
    for (int i = 0; i <= octaves * kPerOctave; ++i) {
      const double cells = std::exp2(static_cast<double>(i) / kPerOctave);
      const double t = cells * h;
      const auto m = static_cast<std::ptrdiff_t>(std::floor(cells + 1e-12));
      const double theta = i % kPerOctave == 0 ? 0.0 : cells - static_cast<double>(m);
      for (std::size_t x = 0; x < f.values.size(); ++x) {
        const auto s0 = axis == 0 ? detail::shifted(g, x, m, 0) : detail::shifted(g, x, 0, m);
        double shifted_value = f.values[s0];
        if (theta != 0.0) {
          const auto s1 = axis == 0 ? detail::shifted(g, x, m + 1, 0) : detail::shifted(g, x, 0, m + 1);
          shifted_value = (1.0 - theta) * f.values[s0] + theta * f.values[s1];
        }
        terms[x] = detail::abs_pow(shifted_value - f.values[x], p);
      }
      contrib.push_back(pairwise_sum(terms) * g.cell_volume() * std::pow(t, -s * p) * weight);
    }
  }
  NormResult r;
  r.kind = NormKind::sobolev_directional;
  r.params = {s, p, std::nullopt};
  r.value = std::pow(pairwise_sum(contrib), 1.0 / p);
  r.truncation.h_min = h;
  r.truncation.h_max = 0.5 * g.box_length;
  r.truncation.method = "geometric t-grid ratio 2^(1/8); exact roll at multiples of spacing, linear interpolation otherwise";
  return r;
}

/// Band sequence a_j = 2^{js} ||phi_j * f||_p for j in the bank's range.
inline std::vector<double> besov_sequence(const SampledFunction& f, double s, double p, const FilterBank& bank,
                                          MeanConvention conv = MeanConvention::subtract) {
  const auto bands = all_bands(f, bank, conv == MeanConvention::raw);
  std::vector<double> a;
  for (int j = bank.j_min; j <= bank.j_max; ++j)
    a.push_back(std::exp2(j * s) * lp_norm(bands[static_cast<std::size_t>(j - bank.j_min)], f.grid, p));
  return a;
}

inline double lq_aggregate(const std::vector<double>& a, double q) {
  if (std::isinf(q)) {
    double m = 0.0;
    for (double v : a) m = std::max(m, v);
    return m;
  }
  std::vector<double> t(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) t[i] = std::pow(a[i], q);
  return std::pow(pairwise_sum(t), 1.0 / q);
}

inline NormResult besov_norm(const SampledFunction& f, double s, double p, double q, const FilterBank& bank,
                             MeanConvention conv = MeanConvention::subtract) {
  require(p >= 1.0 && q >= 1.0, ErrorCode::invalid_argument, "p, q must be >= 1");
  NormResult r;
  r.kind = NormKind::besov;
  r.params = {s, p, q};
  r.value = lq_aggregate(besov_sequence(f, s, p, bank, conv), q);
  const auto d = spectrum_diagnostics(f, bank);
  r.truncation.j_min = bank.j_min;
  r.truncation.j_max = bank.j_max;
  r.truncation.dc_fraction = d.dc_fraction;
  r.truncation.dropped_fraction = d.dropped_fraction;
  r.truncation.above_covered_fraction = d.above_covered_fraction;
  r.truncation.method = "filter bank, bands outside [j_min, j_max] dropped";
  r.truncation.mean_convention = std::string(to_string(conv));
  return r;
}

/// sup_eps eps^{-s} ||phi_eps * f||_inf over the family's epsilons.
inline NormResult besov_sup_mollifier(const SampledFunction& f, double s, const MollifierFamily& fam) {
  require(s < fam.moment_order, ErrorCode::moment_order_too_low,
          "s = " + std::to_string(s) + " needs more than " + std::to_string(fam.moment_order) + " vanishing moments");
  double best = 0.0, at = fam.epsilons.front();
  for (double eps : fam.epsilons) {
    const double v = std::pow(eps, -s) * mollify(f, eps, fam).max_abs_value();
    if (v > best) best = v, at = eps;
  }
  NormResult r;
  r.kind = NormKind::besov_sup_mollifier;
  r.params = {s, kInf, kInf};
  r.value = best;
  r.truncation.eps_min = fam.epsilons.back();
  r.truncation.eps_max = fam.epsilons.front();
  r.truncation.eps_attained = at;
  r.truncation.method = "sup over dyadic epsilons, moment order " + std::to_string(fam.moment_order);
  r.truncation.mean_convention = "subtract";
  return r;
}

/// Max mean oscillation over dyadic cubes of side box/2^i, i = 1..log2(n)-2,
/// anchored on the half-side lattice (periodic).
inline NormResult bmo_norm(const SampledFunction& f) {
  const Grid& g = f.grid;
  const std::size_t n = g.n_per_axis;
  const int levels = std::bit_width(n) - 1;
  double best = 0.0;
  std::vector<double> cube;
  for (int i = 1; i <= levels - 2; ++i) {
    const std::size_t side = n >> i;
    const std::size_t stride = side / 2;
    const std::size_t anchors = n / stride;
    const std::size_t a_count = g.dim == 1 ? 1 : anchors;
    for (std::size_t a0 = 0; a0 < anchors; ++a0)
      for (std::size_t a1 = 0; a1 < a_count; ++a1) {
        cube.clear();
        if (g.dim == 1) {
          for (std::size_t k = 0; k < side; ++k) cube.push_back(f.values[(a0 * stride + k) % n]);
        } else {
          for (std::size_t r = 0; r < side; ++r)
            for (std::size_t c = 0; c < side; ++c)
              cube.push_back(f.values[((a0 * stride + r) % n) * n + (a1 * stride + c) % n]);
        }
        const double mean = pairwise_sum(cube) / static_cast<double>(cube.size());
        for (auto& v : cube) v = std::abs(v - mean);
        best = std::max(best, pairwise_sum(cube) / static_cast<double>(cube.size()));
      }
  }
  NormResult r;
  r.kind = NormKind::bmo;
  r.params = {0.0, std::nullopt, std::nullopt};
  r.value = best;
  r.truncation.method = "dyadic cubes side box/2^i, i=1.." + std::to_string(levels - 2) + ", half-side anchors";
  return r;
}

/// ||f||_{W^{alpha,p}} for any alpha >= 0: L^p at alpha = 0, ||D^alpha f||_p at
/// integer alpha, otherwise the (0,1) seminorm of D^{floor(alpha)} f with the
/// multi-index components joined in l^2. p = inf selects the Hoelder seminorm.
inline NormResult sobolev_norm_general(const SampledFunction& f, double alpha, double p) {
  require(alpha >= 0.0, ErrorCode::invalid_argument, "alpha must be >= 0");
  require(p >= 1.0, ErrorCode::invalid_argument, "p must be >= 1");
  const int order = static_cast<int>(std::floor(alpha));
  const double frac = alpha - order;
  NormResult r;
  if (frac == 0.0) {
    if (order == 0) {
      r.value = lp_norm(f, p);
      r.kind = NormKind::lp;
    } else {
      r.value = lp_norm(derivative_magnitude(f, order), p);
      r.kind = NormKind::sobolev;
    }
    r.truncation.method = order == 0 ? "Riemann sum" : "spectral derivative, Riemann sum";
  } else {
    const auto comps = order == 0 ? std::vector<SampledFunction>{f} : derivative_components(f, order);
    double acc = 0.0;
    for (const auto& c : comps) {
      const NormResult part = std::isinf(p) ? holder_seminorm(c, frac) : sobolev_seminorm(c, frac, p);
      acc += part.value * part.value;
      r.truncation = part.truncation;
    }
    r.value = std::sqrt(acc);
    r.kind = std::isinf(p) ? NormKind::holder : NormKind::sobolev;
  }
  r.params = {alpha, p, std::nullopt};
  r.truncation.derivative_order = order;
  return r;
}

// ---------------------------------------------------------------------------

/// A norm recipe: which norm, at which exponents. moment_order only matters
/// for the mollifier route (0 picks floor(s)+1).
struct NormSpec {
  NormKind kind = NormKind::lp;
  double s = 0.0;
  double p = 2.0;
  double q = kInf;
  int moment_order = 0;

  /// Dilation exponent: N(f(lambda .)) = lambda^{s - dim/p} N(f).
  double scaling_exponent(int dim) const {
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    return s - dim * ip;
  }

  std::string describe() const {
    auto num = [](double x) {
      if (std::isinf(x)) return std::string("inf");
      char buf[32];
      std::snprintf(buf, sizeof buf, "%g", x);
      return std::string(buf);
    };
    switch (kind) {
      case NormKind::lp: return "L^" + num(p);
      case NormKind::sobolev: return "W^{" + num(s) + "," + num(p) + "}";
      case NormKind::sobolev_directional: return "Wdir^{" + num(s) + "," + num(p) + "}";
      case NormKind::holder: return "C^{" + num(s) + "}";
      case NormKind::besov: return "B^{" + num(s) + "}_{" + num(p) + "," + num(q) + "}";
      case NormKind::besov_sup_mollifier: return "Bmol^{" + num(s) + "}";
      case NormKind::bmo: return "BMO";
    }
    return "?";
  }
};

inline NormSpec lp_spec(double p) { return {NormKind::lp, 0.0, p, kInf, 0}; }
inline NormSpec sobolev_spec(double alpha, double p) { return {NormKind::sobolev, alpha, p, kInf, 0}; }
inline NormSpec holder_spec(double alpha) { return {NormKind::holder, alpha, kInf, kInf, 0}; }
inline NormSpec besov_spec(double s, double p = kInf, double q = kInf) { return {NormKind::besov, s, p, q, 0}; }
inline NormSpec peetre_spec(double s, int k = 0) { return {NormKind::besov_sup_mollifier, s, kInf, kInf, k}; }
inline NormSpec bmo_spec() { return {NormKind::bmo, 0.0, kInf, kInf, 0}; }

/// Per-grid evaluation context: the filter bank plus lazily built mollifier
/// families. Not thread-safe; use one per thread.
class NormEngine {
 public:
  explicit NormEngine(const Grid& grid, MeanConvention conv = MeanConvention::subtract)
      : grid_(grid), bank_(build_filter_bank(grid)), conv_(conv) {}

  const Grid& grid() const { return grid_; }
  const FilterBank& bank() const { return bank_; }
  MeanConvention convention() const { return conv_; }

  /// Family with moment order k, as many dyadic epsilons as fit (>= 4).
  const MollifierFamily& family(int k) {
    auto it = families_.find(k);
    if (it != families_.end()) return it->second;
    std::optional<MollifierFamily> best;
    for (int count = 4;; ++count) {
      try {
        best = build_mollifiers(grid_, k, count);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::epsilon_under_resolved || !best) throw;
        break;
      }
    }
    return families_.emplace(k, std::move(*best)).first->second;
  }

  static int default_moment_order(double s) { return std::max(1, static_cast<int>(std::floor(s)) + 1); }

  NormResult compute(const NormSpec& spec, const SampledFunction& f) {
    require(f.grid == grid_, ErrorCode::invalid_argument, "function lives on a different grid");
    switch (spec.kind) {
      case NormKind::lp: {
        NormResult r;
        r.kind = NormKind::lp;
        r.params = {0.0, spec.p, std::nullopt};
        r.value = lp_norm(f, spec.p);
        r.truncation.method = "Riemann sum";
        return r;
      }
      case NormKind::sobolev: return sobolev_norm_general(f, spec.s, spec.p);
      case NormKind::holder: return sobolev_norm_general(f, spec.s, kInf);
      case NormKind::sobolev_directional: return directional_difference_seminorm(f, spec.s, spec.p);
      case NormKind::besov: return besov_norm(f, spec.s, spec.p, spec.q, bank_, conv_);
      case NormKind::besov_sup_mollifier:
        return besov_sup_mollifier(f, spec.s,
                                   family(spec.moment_order > 0 ? spec.moment_order : default_moment_order(spec.s)));
      case NormKind::bmo: return bmo_norm(f);
    }
    throw Error(ErrorCode::invalid_argument, "unhandled norm kind");
  }

 private:
  Grid grid_;
  FilterBank bank_;
  MeanConvention conv_;
  std::map<int, MollifierFamily> families_;
};

}  // namespace fracgn
