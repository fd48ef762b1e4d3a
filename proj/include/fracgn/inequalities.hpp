#pragma once

// The inequality catalog evaluated on sampled functions, plus the structural
// checks: exact band Hoelder step, Sobolev/Besov equivalence, lifting,
// the two-scale mollifier bound, and the L^inf -> BMO -> B^0 chain.

#include <cmath>
#include <string>
#include <vector>

#include "fracgn/exponents.hpp"
#include "fracgn/norms.hpp"

namespace fracgn {

struct InequalityCase {
  CaseId id = CaseId::thm1_2;
  ExponentSet exponents;  // completed
  CaseRecipe recipe;

  std::string describe() const {
    std::string s = recipe.lhs.spec().describe() + " <~";
    for (const auto& f : recipe.rhs) s += " " + f.spec().describe() + "^" + to_string(f.power);
    return s;
  }
};

inline InequalityCase make_case(CaseId id, const ExponentSet& given) {
  InequalityCase c;
  c.id = id;
  c.exponents = derive_exponents(id, given);
  c.recipe = case_recipe(id, c.exponents);
  return c;
}

inline InequalityCase reference_case(CaseId id) { return make_case(id, reference_exponents(id)); }

struct RhsFactor {
  std::string norm;  // NormSpec::describe()
  NormKind kind = NormKind::lp;
  double value = 0.0;
  double power = 1.0;
};

struct RatioRecord {
  std::string case_id;
  std::string function_label;
  double lhs = 0.0;
  std::vector<RhsFactor> rhs_factors;
  double rhs = 0.0;
  double ratio = 0.0;
  /// "ok", "degenerate" (lhs = rhs = 0) or "degenerate-rhs" (rhs = 0 < lhs).
  std::string status = "ok";
  std::string mean_convention = "subtract";
  std::string lhs_norm;
  Truncation grid_meta;
  /// Some mollifier sup was attained at an end of the epsilon range, so the
  /// value is limited by the family rather than by f.
  bool sup_at_edge = false;
};

inline bool attained_at_edge(const Truncation& t) {
  if (!t.eps_attained) return false;
  const double e = *t.eps_attained;
  return std::abs(e - *t.eps_min) <= 1e-12 * e || std::abs(e - *t.eps_max) <= 1e-12 * e;
}

/// Tolerance under which a vanishing rhs is treated as 0/0.
inline constexpr double kDegenerateTolerance = 1e-12;

inline RatioRecord evaluate(const InequalityCase& c, const SampledFunction& f, NormEngine& engine) {
  RatioRecord r;
  r.case_id = std::string(to_string(c.id));
  r.function_label = f.label;
  r.mean_convention = std::string(to_string(engine.convention()));
  auto compute = [&](const FactorRecipe& fr, const char* role) {
    try {
      return engine.compute(fr.spec(), f);
    } catch (const Error& e) {
      throw Error(e.code(), std::string(role) + " " + fr.spec().describe() + ": " + e.detail());
    }
  };
  const NormResult lhs = compute(c.recipe.lhs, "lhs");
  r.lhs = lhs.value;
  r.lhs_norm = c.recipe.lhs.spec().describe();
  r.grid_meta = lhs.truncation;
  r.sup_at_edge = attained_at_edge(lhs.truncation);
  r.rhs = 1.0;
  for (const auto& fr : c.recipe.rhs) {
    const NormResult v = compute(fr, "rhs factor");
    const double pw = to_double(fr.power);
    r.rhs_factors.push_back({fr.spec().describe(), v.kind, v.value, pw});
    r.rhs *= std::pow(v.value, pw);
    r.sup_at_edge = r.sup_at_edge || attained_at_edge(v.truncation);
    if (v.truncation.j_min) {
      r.grid_meta.j_min = v.truncation.j_min;
      r.grid_meta.j_max = v.truncation.j_max;
    }
    if (v.truncation.eps_min) {
      r.grid_meta.eps_min = v.truncation.eps_min;
      r.grid_meta.eps_max = v.truncation.eps_max;
    }
  }
  const double scale = std::max(1.0, max_abs(f.values));
  if (r.rhs > 0.0) {
    r.ratio = r.lhs / r.rhs;
  } else if (r.lhs <= kDegenerateTolerance * scale) {
    r.status = "degenerate";
    r.ratio = 0.0;
  } else {
    r.status = "degenerate-rhs";
    r.ratio = 0.0;
  }
  return r;
}

// ---------------------------------------------------------------------------

struct BandHolderReport {
  std::vector<int> j;
  std::vector<double> lhs, rhs;
  double b0 = 0.0;
  double max_violation = 0.0;  // max over j of (lhs - rhs) / rhs, clipped at 0
  std::size_t violations = 0;  // bands with relative excess above 1e-12
};

/// 2^{j a1 p1} ||f_j||_{p1}^{p1} <= 2^{j a2 p2} ||f_j||_{p2}^{p2} ||f||_{B^0}^{p1-p2} for every band.
inline BandHolderReport band_holder_check(const SampledFunction& f, double a1, double p1, double a2, double p2,
                                          const FilterBank& bank) {
  require(std::abs(a1 * p1 - a2 * p2) <= 1e-12 * std::max(1.0, a2 * p2), ErrorCode::exponent_mismatch,
          "band Hoelder step needs alpha1 p1 = alpha2 p2");
  require(p1 >= p2 && p2 >= 1.0 && std::isfinite(p1), ErrorCode::exponent_mismatch, "band Hoelder step needs p1 >= p2 >= 1");
  const auto bands = all_bands(f, bank);
  BandHolderReport rep;
  for (const auto& b : bands) rep.b0 = std::max(rep.b0, max_abs(b));
  const double weight_exp = a2 * p2;
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    const auto& b = bands[static_cast<std::size_t>(j - bank.j_min)];
    const double w = std::exp2(j * weight_exp);
    const double l = w * std::pow(lp_norm(b, f.grid, p1), p1);
    const double r = w * std::pow(lp_norm(b, f.grid, p2), p2) * std::pow(rep.b0, p1 - p2);
    rep.j.push_back(j);
    rep.lhs.push_back(l);
    rep.rhs.push_back(r);
    const double excess = r > 0.0 ? (l - r) / r : (l > 0.0 ? kInf : 0.0);
    rep.max_violation = std::max(rep.max_violation, std::max(0.0, excess));
    if (excess > 1e-12) ++rep.violations;
  }
  return rep;
}

struct EquivalenceReport {
  double sobolev = 0.0, directional = 0.0, besov = 0.0;
  double sobolev_over_besov = 0.0;
  double directional_over_besov = 0.0;
  bool degenerate = false;
};

/// W^{s,p} and its directional form against B^s_{p,p}.
inline EquivalenceReport equivalence_check(const SampledFunction& f, double s, double p, NormEngine& engine) {
  EquivalenceReport rep;
  rep.sobolev = sobolev_seminorm(f, s, p).value;
  rep.directional = directional_difference_seminorm(f, s, p).value;
  rep.besov = besov_norm(f, s, p, p, engine.bank(), engine.convention()).value;
  const double scale = std::max(1.0, max_abs(f.values));
  if (rep.besov <= kDegenerateTolerance * scale) {
    rep.degenerate = true;
    return rep;
  }
  rep.sobolev_over_besov = rep.sobolev / rep.besov;
  rep.directional_over_besov = rep.directional / rep.besov;
  return rep;
}

struct LiftingReport {
  std::vector<double> ratios;  // one per |gamma| = m
  double max_ratio = 0.0;
  bool degenerate = false;
};

/// ||D^gamma f||_{B^{s-m}} / ||f||_{B^s} for each |gamma| = m.
inline LiftingReport lifting_check(const SampledFunction& f, double s, int m, const FilterBank& bank) {
  require(m >= 1, ErrorCode::invalid_argument, "lifting order must be >= 1");
  LiftingReport rep;
  const double base = besov_norm(f, s, kInf, kInf, bank).value;
  if (base <= kDegenerateTolerance * std::max(1.0, max_abs(f.values))) {
    rep.degenerate = true;
    return rep;
  }
  for (const auto& gamma : multi_indices(f.grid.dim, m)) {
    const double v = besov_norm(spectral_derivative(f, gamma), s - m, kInf, kInf, bank).value;
    rep.ratios.push_back(v / base);
    rep.max_ratio = std::max(rep.max_ratio, v / base);
  }
  return rep;
}

struct TwoScaleReport {
  std::vector<double> epsilons, deltas;
  std::vector<double> lhs;  // eps^{-a1} ||phi_eps * f||_inf per eps
  double besov_high = 0.0, besov_low = 0.0;
  double max_ratio = 0.0;   // max over (eps, delta) of lhs / rhs
};

/// eps^{-a1} ||phi_eps * f||_inf against delta^{a2-a1} ||f||_{B^{a2}} + delta^{-(a1+sigma)} ||f||_{B^{-sigma}}
/// over all dyadic (eps, delta) from the family.
inline TwoScaleReport two_scale_bound_check(const SampledFunction& f, double a1, double a2, double sigma,
                                            const MollifierFamily& fam, const FilterBank& bank) {
  require(a1 < a2, ErrorCode::invalid_argument, "two-scale bound needs alpha1 < alpha2");
  require(fam.moment_order > a2, ErrorCode::moment_order_too_low, "mollifier moment order must exceed alpha2");
  TwoScaleReport rep;
  rep.epsilons = fam.epsilons;
  rep.deltas = fam.epsilons;
  rep.besov_high = besov_norm(f, a2, kInf, kInf, bank).value;
  rep.besov_low = besov_norm(f, -sigma, kInf, kInf, bank).value;
  for (double eps : fam.epsilons) rep.lhs.push_back(std::pow(eps, -a1) * mollify(f, eps, fam).max_abs_value());
  for (std::size_t e = 0; e < rep.epsilons.size(); ++e)
    for (double d : rep.deltas) {
      const double rhs = std::pow(d, a2 - a1) * rep.besov_high + std::pow(d, -(a1 + sigma)) * rep.besov_low;
      if (rhs > 0.0) rep.max_ratio = std::max(rep.max_ratio, rep.lhs[e] / rhs);
    }
  return rep;
}

struct EmbeddingReport {
  double b0 = 0.0, bmo = 0.0, linf = 0.0;
  double b0_over_bmo = 0.0, bmo_over_linf = 0.0;
  bool degenerate = false;
};

inline EmbeddingReport embedding_chain_check(const SampledFunction& f, const FilterBank& bank) {
  EmbeddingReport rep;
  rep.b0 = besov_norm(f, 0.0, kInf, kInf, bank).value;
  rep.bmo = bmo_norm(f).value;
  rep.linf = max_abs(f.values);
  const double tol = kDegenerateTolerance * std::max(1.0, rep.linf);
  if (rep.bmo <= tol || rep.linf <= tol) {
    rep.degenerate = true;
    return rep;
  }
  rep.b0_over_bmo = rep.b0 / rep.bmo;
  rep.bmo_over_linf = rep.bmo / rep.linf;
  return rep;
}

}  // namespace fracgn
