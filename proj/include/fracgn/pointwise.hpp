#pragma once

// Pointwise fields: the maximal function M f, the functional G_{alpha,p}, and
// the field form of the pointwise estimates.
//
// Ball averages are over the lattice offsets inside the ball, with periodic
// wrap. Radii are the dyadic set spacing * 2^i <= box/2.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <string>
#include <vector>

#include "fracgn/norms.hpp"

namespace fracgn {

enum class FieldKind { maximal, g_functional, bound_lhs, bound_rhs };

inline std::string_view to_string(FieldKind k) {
  switch (k) {
    case FieldKind::maximal: return "maximal";
    case FieldKind::g_functional: return "g_functional";
    case FieldKind::bound_lhs: return "bound_lhs";
    case FieldKind::bound_rhs: return "bound_rhs";
  }
  return "?";
}

struct PointwiseField {
  Grid grid;
  std::vector<double> values;
  FieldKind kind = FieldKind::maximal;
  double alpha = 0.0;
  double p = 1.0;
  std::vector<double> radii;
};

namespace detail {

/// Lattice offsets sorted by length, with the flat-index shift for each.
struct SortedOffsets {
  std::vector<std::ptrdiff_t> a, b;
  std::vector<double> length;
};

inline SortedOffsets sorted_offsets(const Grid& g) {
  const auto n = static_cast<std::ptrdiff_t>(g.n_per_axis);
  const double h = g.spacing();
  std::vector<std::array<std::ptrdiff_t, 2>> raw;
  if (g.dim == 1) {
    for (std::ptrdiff_t a = -n / 2 + 1; a <= n / 2; ++a) raw.push_back({a, 0});
  } else {
    for (std::ptrdiff_t a = -n / 2 + 1; a <= n / 2; ++a)
      for (std::ptrdiff_t b = -n / 2 + 1; b <= n / 2; ++b) raw.push_back({a, b});
  }
  auto len = [&](const std::array<std::ptrdiff_t, 2>& o) { return std::hypot(double(o[0]), double(o[1])) * h; };
  std::stable_sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) { return len(x) < len(y); });
  SortedOffsets out;
  for (const auto& o : raw) {
    out.a.push_back(o[0]);
    out.b.push_back(o[1]);
    out.length.push_back(len(o));
  }
  return out;
}

/// Number of sorted offsets with length <= r (small relative slack for lattice radii).
inline std::size_t count_within(const SortedOffsets& s, double r) {
  return static_cast<std::size_t>(
      std::upper_bound(s.length.begin(), s.length.end(), r * (1.0 + 1e-12)) - s.length.begin());
}

inline std::vector<double> dyadic_radii(const Grid& g) {
  std::vector<double> r;
  for (double x = g.spacing(); x <= 0.5 * g.box_length * (1.0 + 1e-12); x *= 2.0) r.push_back(x);
  return r;
}

}  // namespace detail

/// M f(x) = max over dyadic radii of the ball average of |f| at x.
inline PointwiseField maximal_function(const SampledFunction& f) {
  const Grid& g = f.grid;
  const auto offs = detail::sorted_offsets(g);
  PointwiseField out{g, std::vector<double>(g.size(), 0.0), FieldKind::maximal, 0.0, 1.0, detail::dyadic_radii(g)};
  std::vector<std::size_t> counts;
  for (double r : out.radii) counts.push_back(detail::count_within(offs, r));
  for (std::size_t x = 0; x < g.size(); ++x) {
    double acc = 0.0, best = 0.0;
    std::size_t k = 0;
    for (std::size_t c : counts) {
      for (; k < c; ++k) acc += std::abs(f.values[detail::shifted(g, x, offs.a[k], offs.b[k])]);
      best = std::max(best, acc / static_cast<double>(c));
    }
    out.values[x] = best;
  }
  return out;
}

/// G_{alpha,p} f(x) = max over dyadic eps of (avg_{|y|<=eps} |f(x)-f(x-y)|^p)^{1/p} / eps^alpha.
inline PointwiseField g_functional(const SampledFunction& f, double alpha, double p) {
  require(alpha > 0.0 && alpha <= 1.0, ErrorCode::invalid_argument, "alpha must lie in (0,1]");
  require(p >= 1.0 && std::isfinite(p), ErrorCode::invalid_argument, "p must lie in [1, inf)");
  const Grid& g = f.grid;
  const auto offs = detail::sorted_offsets(g);
  PointwiseField out{g, std::vector<double>(g.size(), 0.0), FieldKind::g_functional, alpha, p, detail::dyadic_radii(g)};
  std::vector<std::size_t> counts;
  for (double r : out.radii) counts.push_back(detail::count_within(offs, r));
  for (std::size_t x = 0; x < g.size(); ++x) {
    double acc = 0.0, best = 0.0;
    std::size_t k = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      for (; k < counts[i]; ++k)
        acc += detail::abs_pow(f.values[x] - f.values[detail::shifted(g, x, -offs.a[k], -offs.b[k])], p);
      const double avg = acc / static_cast<double>(counts[i]);
      best = std::max(best, std::pow(avg, 1.0 / p) / std::pow(out.radii[i], alpha));
    }
    out.values[x] = best;
  }
  return out;
}

/// L(x) = sum over lattice z, spacing <= |z| <= box/4, of
///   (avg_{|y| <= 2|z|} |f(x) - f(x+y)|)^{p1} h^n / |z|^{n + alpha1 p1}.
inline PointwiseField averaged_difference_field(const SampledFunction& f, double alpha1, double p1) {
  const Grid& g = f.grid;
  const auto offs = detail::sorted_offsets(g);
  const double h = g.spacing();
  // z offsets (skip the origin) and the ball count at radius 2|z|
  std::vector<double> weight;
  std::vector<std::size_t> ball;
  for (std::size_t k = 1; k < offs.length.size(); ++k) {
    const double len = offs.length[k];
    if (len > 0.25 * g.box_length * (1.0 + 1e-12)) break;
    weight.push_back(g.cell_volume() / std::pow(len, g.dim + alpha1 * p1));
    ball.push_back(detail::count_within(offs, 2.0 * len));
  }
  PointwiseField out{g, std::vector<double>(g.size(), 0.0), FieldKind::bound_lhs, alpha1, p1, {}};
  out.radii = {h, 0.25 * g.box_length};
  const std::size_t need = ball.empty() ? 0 : ball.back();
  std::vector<double> cum(need + 1), terms(weight.size());
  for (std::size_t x = 0; x < g.size(); ++x) {
    cum[0] = 0.0;
    for (std::size_t k = 0; k < need; ++k)
      cum[k + 1] = cum[k] + std::abs(f.values[x] - f.values[detail::shifted(g, x, offs.a[k], offs.b[k])]);
    for (std::size_t i = 0; i < weight.size(); ++i)
      terms[i] = detail::abs_pow(cum[ball[i]] / static_cast<double>(ball[i]), p1) * weight[i];
    out.values[x] = pairwise_sum(terms);
  }
  return out;
}

inline void write_field_csv(std::ostream& os, const PointwiseField& field) {
  const Grid& g = field.grid;
  const std::size_t n = g.n_per_axis;
  os.precision(17);
  if (g.dim == 1) {
    os << "x,value\n";
    for (std::size_t i = 0; i < n; ++i) os << g.coordinate(i) << ',' << field.values[i] << '\n';
  } else {
    os << "x1,x2,value\n";
    for (std::size_t i = 0; i < g.size(); ++i)
      os << g.coordinate(i / n) << ',' << g.coordinate(i % n) << ',' << field.values[i] << '\n';
  }
}

// ---------------------------------------------------------------------------

enum class BoundId { eq1_1, eq1_1b, eq1_13, eq1_23, eq2_5a, eq2_5 };

inline std::string_view to_string(BoundId b) {
  switch (b) {
    case BoundId::eq1_1: return "eq1.1";
    case BoundId::eq1_1b: return "eq1.1b";
    case BoundId::eq1_13: return "eq1.13";
    case BoundId::eq1_23: return "eq1.23";
    case BoundId::eq2_5a: return "eq2.5a";
    case BoundId::eq2_5: return "eq2.5";
  }
  return "?";
}

inline BoundId bound_id_from(std::string_view s) {
  for (auto b : {BoundId::eq1_1, BoundId::eq1_1b, BoundId::eq1_13, BoundId::eq1_23, BoundId::eq2_5a, BoundId::eq2_5})
    if (to_string(b) == s) return b;
  throw Error(ErrorCode::invalid_argument, "unknown bound id '" + std::string(s) + "'");
}

/// Parameters read per bound:
///   eq1.1   s, alpha, p            eq1.1b  s
///   eq1.13  alpha1, alpha2, p1, p  eq1.23  alpha1, p1
///   eq2.5a  alpha0, alpha1, alpha2, p0, p1, p2   (alpha2 < 1)
///   eq2.5   alpha0, alpha1, p0, p1               (alpha2 = 1)
struct BoundParams {
  double s = 1.0;
  double alpha = 0.5;
  double p = 2.0;
  double alpha0 = 0.2;
  double alpha1 = 0.5;
  double alpha2 = 0.75;
  double p0 = 2.0;
  double p1 = 2.0;
  double p2 = 2.0;
};

struct BoundCheck {
  BoundId id = BoundId::eq1_1;
  PointwiseField lhs, rhs;
  double empirical_c = 0.0;
  std::size_t excluded = 0;  // points with rhs below 1e-12 * max(rhs)
  /// eq1.13 only: min over the dyadic t-grid of t^{(a2-a1)p1} G_{a2,1}^{p1} + t^{-a1 p1} M^{p1}.
  std::optional<PointwiseField> minimized_rhs;
};

namespace detail {

inline void require_exponents(bool ok, const std::string& what) {
  require(ok, ErrorCode::exponent_mismatch, what);
}

inline PointwiseField combine(const Grid& g, std::initializer_list<std::pair<const std::vector<double>*, double>> parts,
                              double scalar) {
  PointwiseField out{g, std::vector<double>(g.size(), scalar), FieldKind::bound_rhs, 0.0, 1.0, {}};
  for (const auto& [vals, power] : parts)
    for (std::size_t i = 0; i < out.values.size(); ++i) out.values[i] *= std::pow((*vals)[i], power);
  return out;
}

inline PointwiseField abs_field(const SampledFunction& f) {
  PointwiseField out{f.grid, f.values, FieldKind::bound_lhs, 0.0, 1.0, {}};
  for (auto& v : out.values) v = std::abs(v);
  return out;
}

}  // namespace detail

inline BoundCheck pointwise_bound_check(const SampledFunction& f, BoundId id, const BoundParams& bp,
                                        NormEngine& engine) {
  const Grid& g = f.grid;
  BoundCheck out;
  out.id = id;
  switch (id) {
    case BoundId::eq1_1: {
      detail::require_exponents(bp.s > 0.0 && bp.alpha > 0.0 && bp.alpha < 1.0 && bp.p >= 1.0,
                                "eq1.1 needs s > 0, 0 < alpha < 1, p >= 1");
      const double bneg = engine.compute(besov_spec(-bp.s), f).value;
      const auto gf = g_functional(f, bp.alpha, bp.p);
      out.lhs = detail::abs_field(f);
      out.rhs = detail::combine(g, {{&gf.values, bp.s / (bp.s + bp.alpha)}}, std::pow(bneg, bp.alpha / (bp.s + bp.alpha)));
      out.rhs.radii = gf.radii;
      break;
    }
    case BoundId::eq1_1b: {
      detail::require_exponents(bp.s > 0.0, "eq1.1b needs s > 0");
      const double bneg = engine.compute(besov_spec(-bp.s), f).value;
      const auto m = maximal_function(derivative_magnitude(f, 1));
      out.lhs = detail::abs_field(f);
      out.rhs = detail::combine(g, {{&m.values, bp.s / (bp.s + 1.0)}}, std::pow(bneg, 1.0 / (bp.s + 1.0)));
      out.rhs.radii = m.radii;
      break;
    }
    case BoundId::eq1_13: {
      detail::require_exponents(0.0 < bp.alpha1 && bp.alpha1 < bp.alpha2 && bp.alpha2 <= 1.0 && bp.p1 >= 1.0 && bp.p >= 1.0,
                                "eq1.13 needs 0 < alpha1 < alpha2 <= 1, p1, p >= 1");
      const auto m = maximal_function(f);
      const auto gf = g_functional(f, bp.alpha2, bp.p);
      out.lhs = averaged_difference_field(f, bp.alpha1, bp.p1);
      out.rhs = detail::combine(g, {{&m.values, (bp.alpha2 - bp.alpha1) * bp.p1 / bp.alpha2},
                                    {&gf.values, bp.alpha1 * bp.p1 / bp.alpha2}}, 1.0);
      out.rhs.radii = m.radii;
      const auto g1 = g_functional(f, bp.alpha2, 1.0);
      PointwiseField mn{g, std::vector<double>(g.size(), kInf), FieldKind::bound_rhs, bp.alpha1, bp.p1, m.radii};
      for (double t : m.radii)
        for (std::size_t i = 0; i < g.size(); ++i)
          mn.values[i] = std::min(mn.values[i], std::pow(t, (bp.alpha2 - bp.alpha1) * bp.p1) * std::pow(g1.values[i], bp.p1) +
                                                    std::pow(t, -bp.alpha1 * bp.p1) * std::pow(m.values[i], bp.p1));
      out.minimized_rhs = std::move(mn);
      break;
    }
    case BoundId::eq1_23: {
      detail::require_exponents(0.0 < bp.alpha1 && bp.alpha1 < 1.0 && bp.p1 >= 1.0, "eq1.23 needs 0 < alpha1 < 1, p1 >= 1");
      const auto m = maximal_function(f);
      const auto md = maximal_function(derivative_magnitude(f, 1));
      out.lhs = averaged_difference_field(f, bp.alpha1, bp.p1);
      out.rhs = detail::combine(g, {{&m.values, (1.0 - bp.alpha1) * bp.p1}, {&md.values, bp.alpha1 * bp.p1}}, 1.0);
      out.rhs.radii = m.radii;
      break;
    }
    case BoundId::eq2_5a: {
      detail::require_exponents(0.0 < bp.alpha0 && bp.alpha0 < bp.alpha1 && bp.alpha1 < bp.alpha2 && bp.alpha2 < 1.0,
                                "eq2.5a needs 0 < alpha0 < alpha1 < alpha2 < 1");
      detail::require_exponents(bp.p0 >= 1.0 && bp.p1 >= 1.0 && bp.p2 >= 1.0, "eq2.5a needs p0, p1, p2 >= 1");
      const double theta = (bp.alpha2 - bp.alpha1) / (bp.alpha2 - bp.alpha0);
      const auto g0 = g_functional(f, bp.alpha0, bp.p0);
      const auto g2 = g_functional(f, bp.alpha2, bp.p2);
      out.lhs = averaged_difference_field(f, bp.alpha1, bp.p1);
      out.rhs = detail::combine(g, {{&g0.values, theta * bp.p1}, {&g2.values, (1.0 - theta) * bp.p1}}, 1.0);
      out.rhs.radii = g0.radii;
      break;
    }
    case BoundId::eq2_5: {
      detail::require_exponents(0.0 < bp.alpha0 && bp.alpha0 < bp.alpha1 && bp.alpha1 < 1.0,
                                "eq2.5 needs 0 < alpha0 < alpha1 < 1");
      detail::require_exponents(bp.p0 >= 1.0 && bp.p1 >= 1.0, "eq2.5 needs p0, p1 >= 1");
      const double theta = (1.0 - bp.alpha1) / (1.0 - bp.alpha0);
      const auto g0 = g_functional(f, bp.alpha0, bp.p0);
      const auto md = maximal_function(derivative_magnitude(f, 1));
      out.lhs = averaged_difference_field(f, bp.alpha1, bp.p1);
      out.rhs = detail::combine(g, {{&g0.values, theta * bp.p1}, {&md.values, (1.0 - theta) * bp.p1}}, 1.0);
      out.rhs.radii = g0.radii;
      break;
    }
  }
  const double top = max_abs(out.rhs.values);
  double c = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (top > 0.0 && out.rhs.values[i] > 1e-12 * top) {
      c = std::max(c, out.lhs.values[i] / out.rhs.values[i]);
    } else {
      ++out.excluded;
    }
  }
  out.empirical_c = c;
  return out;
}

}  // namespace fracgn
