#pragma once

// Experiments built on the catalog: scaling-exponent fits, constant scans,
// ratio extremization over generator parameters, and the blow-up probe.

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fracgn/inequalities.hpp"

namespace fracgn {

enum class StudyKind { scaling, constant_scan, extremize, blowup };
enum class Verdict { pass, fail, inconclusive };

inline std::string_view to_string(StudyKind k) {
  switch (k) {
    case StudyKind::scaling: return "scaling";
    case StudyKind::constant_scan: return "constant_scan";
    case StudyKind::extremize: return "extremize";
    case StudyKind::blowup: return "blowup";
  }
  return "?";
}

inline std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

struct SeriesPoint {
  double parameter = 0.0;
  double value = 0.0;
  std::string label;
};

struct StudyReport {
  StudyKind kind = StudyKind::scaling;
  std::map<std::string, std::string> inputs;
  std::vector<SeriesPoint> series;
  std::optional<LineFit> fit;
  Verdict verdict = Verdict::inconclusive;
  std::map<std::string, double> thresholds;
  std::string reason;
  std::map<std::string, double> best_parameters;
};

/// Dilation exponent s - dim/p of a norm recipe.
inline double predicted_slope(double s, double p, int dim) { return s - (std::isinf(p) ? 0.0 : dim / p); }

inline double predicted_slope(const NormSpec& spec, int dim) {
  switch (spec.kind) {
    case NormKind::lp: return predicted_slope(0.0, spec.p, dim);
    case NormKind::holder:
    case NormKind::besov_sup_mollifier: return spec.s;
    case NormKind::bmo: return 0.0;
    default: return predicted_slope(spec.s, spec.p, dim);
  }
}

// ---------------------------------------------------------------------------

inline constexpr double kScalingTolerance = 0.05;
inline constexpr double kResolvedTail = 1e-8;

/// Resolution at one dilation: support fits (checked by dilate), negligible
/// top-of-spectrum energy, negligible energy above the filter bank.
inline void require_resolved(const SampledFunction& f, const FilterBank& bank) {
  const double tail = spectral_tail_fraction(f);
  require(tail < kResolvedTail, ErrorCode::unresolvable_at_scale,
          f.label + ": spectral tail " + std::to_string(tail) + " above " + std::to_string(kResolvedTail));
  const double above = spectrum_diagnostics(f, bank).above_covered_fraction;
  require(above < kResolvedTail, ErrorCode::unresolvable_at_scale,
          f.label + ": energy above 2^j_max is " + std::to_string(above));
}

inline SampledFunction dilate_resolved(const SampledFunction& f, double lambda, const FilterBank& bank) {
  SampledFunction g;
  try {
    g = dilate(f, lambda);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::support_overflow || e.code() == ErrorCode::unsupported_dilation)
      throw Error(ErrorCode::unresolvable_at_scale, e.detail());
    throw;
  }
  require_resolved(g, bank);
  return g;
}

/// Slope of log2 N(f_lambda) against log2 lambda.
inline StudyReport scaling_sweep(const SampledFunction& f, const NormSpec& spec, NormEngine& engine,
                                 const std::vector<double>& lambdas = {1.0, 2.0, 4.0, 8.0}) {
  require(lambdas.size() >= 2, ErrorCode::invalid_argument, "scaling sweep needs >= 2 dilations");
  StudyReport rep;
  rep.kind = StudyKind::scaling;
  rep.inputs = {{"function", f.label}, {"norm", spec.describe()}, {"dim", std::to_string(f.grid.dim)}};
  std::vector<SampledFunction> dilated;
  for (double l : lambdas) dilated.push_back(dilate_resolved(f, l, engine.bank()));
  std::vector<double> x, y;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double v = engine.compute(spec, dilated[i]).value;
    require(v > 0.0, ErrorCode::unresolvable_at_scale, "norm vanishes at lambda = " + std::to_string(lambdas[i]));
    rep.series.push_back({lambdas[i], v, dilated[i].label});
    x.push_back(std::log2(lambdas[i]));
    y.push_back(std::log2(v));
  }
  rep.fit = fit_line(x, y);
  const double predicted = predicted_slope(spec, f.grid.dim);
  rep.thresholds = {{"predicted_slope", predicted}, {"tolerance", kScalingTolerance}};
  rep.verdict = std::abs(rep.fit->slope - predicted) <= kScalingTolerance ? Verdict::pass : Verdict::fail;
  return rep;
}

// ---------------------------------------------------------------------------

inline constexpr std::size_t kScanMinimumCorpus = 5;
inline constexpr double kScanSpreadLimit = 10.0;
inline constexpr double kCalibrationSlack = 1.25;

inline double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

/// Ratios of one case across a corpus. Per-function failures are recorded in
/// the series label and skipped.
inline StudyReport constant_scan(CaseId id, const ExponentSet& given, const std::vector<SampledFunction>& corpus,
                                 NormEngine& engine, std::optional<double> frozen_max = std::nullopt) {
  StudyReport rep;
  rep.kind = StudyKind::constant_scan;
  rep.inputs = {{"case", std::string(to_string(id))}, {"corpus_size", std::to_string(corpus.size())}};
  for (const auto& [k, v] : given.to_map()) rep.inputs["given." + k] = v;
  rep.thresholds = {{"max_over_median", kScanSpreadLimit}, {"slack", kCalibrationSlack}};
  if (frozen_max) rep.thresholds["frozen_max"] = *frozen_max;
  InequalityCase c;
  try {
    c = make_case(id, given);
  } catch (const Error& e) {
    rep.verdict = Verdict::fail;
    rep.reason = e.what();
    return rep;
  }
  std::vector<double> ratios;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    try {
      const auto r = evaluate(c, corpus[i], engine);
      rep.series.push_back({static_cast<double>(i), r.ratio, corpus[i].label});
      if (r.status == "ok") ratios.push_back(r.ratio);
    } catch (const Error& e) {
      rep.series.push_back({static_cast<double>(i), std::nan(""), corpus[i].label + " (" + e.what() + ")"});
    }
  }
  if (ratios.size() < kScanMinimumCorpus) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "needs >= " + std::to_string(kScanMinimumCorpus) + " evaluable functions";
    return rep;
  }
  const double mx = *std::max_element(ratios.begin(), ratios.end());
  const double med = median_of(ratios);
  const bool spread_ok = mx <= kScanSpreadLimit * med;
  const bool bound_ok = !frozen_max || mx <= kCalibrationSlack * *frozen_max;
  rep.verdict = spread_ok && bound_ok ? Verdict::pass : Verdict::fail;
  if (!spread_ok) rep.reason = "max/median above " + std::to_string(kScanSpreadLimit);
  else if (!bound_ok) rep.reason = "max above frozen bound x slack";
  return rep;
}

// ---------------------------------------------------------------------------

struct FreeParameter {
  std::string name;  // width, frequency, half_width, center0, decay
  double lo = 0.0;
  double hi = 1.0;
};

inline void set_parameter(GeneratorSpec& s, const std::string& name, double v) {
  if (name == "width") s.width = v;
  else if (name == "frequency") s.frequency = v;
  else if (name == "half_width") s.half_width = v;
  else if (name == "center0") s.center[0] = v;
  else if (name == "decay") s.decay = v;
  else throw Error(ErrorCode::invalid_argument, "unknown free parameter '" + name + "'");
}

inline constexpr double kFlatSpread = 1.25;

/// Coordinate-wise golden-section ascent of evaluate(case, generate(spec)).ratio.
/// The start point is drawn from the seed; budget counts evaluations.
inline StudyReport extremize_ratio(const InequalityCase& c, const GeneratorSpec& base, const Grid& grid,
                                   const std::vector<FreeParameter>& params, int budget, std::uint64_t seed,
                                   NormEngine& engine, std::optional<double> frozen_max = std::nullopt) {
  require(!params.empty() && params.size() <= 3, ErrorCode::invalid_argument, "extremize needs 1-3 free parameters");
  for (const auto& p : params)
    require(p.lo < p.hi, ErrorCode::invalid_argument, "parameter " + p.name + " needs lo < hi");
  StudyReport rep;
  rep.kind = StudyKind::extremize;
  rep.inputs = {{"case", std::string(to_string(c.id))},
                {"family", std::string(to_string(base.kind))},
                {"budget", std::to_string(budget)},
                {"seed", std::to_string(seed)}};
  rep.thresholds = {{"flat_spread", kFlatSpread}, {"slack", kCalibrationSlack}};
  if (frozen_max) rep.thresholds["frozen_max"] = *frozen_max;
  if (budget <= 0) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "zero budget";
    return rep;
  }

  SplitMix64 rng(seed);
  std::vector<double> x;
  for (const auto& p : params) x.push_back(p.lo + (p.hi - p.lo) * rng.uniform01());

  int used = 0;
  auto objective = [&](const std::vector<double>& at) -> double {
    GeneratorSpec s = base;
    for (std::size_t i = 0; i < params.size(); ++i) set_parameter(s, params[i].name, at[i]);
    double v = -kInf;
    try {
      const auto r = evaluate(c, generate(s, grid, "extremize"), engine);
      if (r.status == "ok") v = r.ratio;
    } catch (const Error&) {
    }
    rep.series.push_back({static_cast<double>(used), v, ""});
    ++used;
    return v;
  };

  double best = objective(x);
  const double start = best;
  constexpr double kInvPhi = 0.6180339887498949;
  constexpr int kPerLine = 8;
  for (std::size_t coord = 0; used < budget; coord = (coord + 1) % params.size()) {
    double a = params[coord].lo, b = params[coord].hi;
    auto at = [&](double t) {
      auto y = x;
      y[coord] = t;
      return y;
    };
    double c1 = b - kInvPhi * (b - a), c2 = a + kInvPhi * (b - a);
    if (used >= budget) break;
    double f1 = objective(at(c1));
    if (used >= budget) {
      if (f1 > best) best = f1, x = at(c1);
      break;
    }
    double f2 = objective(at(c2));
    for (int k = 2; k < kPerLine && used < budget; ++k) {
      if (f1 >= f2) {
        b = c2;
        c2 = c1;
        f2 = f1;
        c1 = b - kInvPhi * (b - a);
        f1 = objective(at(c1));
      } else {
        a = c1;
        c1 = c2;
        f1 = f2;
        c2 = a + kInvPhi * (b - a);
        f2 = objective(at(c2));
      }
    }
    if (f1 > best || f2 > best) {
      const bool first = f1 >= f2;
      best = first ? f1 : f2;
      x = at(first ? c1 : c2);
    }
  }
  for (std::size_t i = 0; i < params.size(); ++i) rep.best_parameters[params[i].name] = x[i];
  rep.best_parameters["ratio"] = best;

  std::vector<double> valid;
  for (const auto& pt : rep.series)
    if (std::isfinite(pt.value)) valid.push_back(pt.value);
  if (valid.empty()) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "no evaluable point";
    return rep;
  }
  const double lo = *std::min_element(valid.begin(), valid.end());
  const double hi = *std::max_element(valid.begin(), valid.end());
  if (frozen_max && hi > kCalibrationSlack * *frozen_max) {
    rep.verdict = Verdict::fail;
    rep.reason = "ratio above frozen bound x slack";
  } else if (lo > 0.0 && hi / lo <= kFlatSpread) {
    rep.verdict = Verdict::pass;
    rep.reason = "flat";
  } else if (!(best > start)) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "budget exhausted without improvement";
  } else {
    rep.verdict = Verdict::pass;
    rep.reason = "bounded";
  }
  return rep;
}

// ---------------------------------------------------------------------------

/// ||f||_{W^{a1,p1}} <~ ||f||_{W^{a,p}}^theta ||f||_{W^{a2,p2}}^{1-theta}, reciprocals for p.
struct InterpolationTriple {
  Rational a1, ip1, a, ip, a2, ip2, theta;

  /// The ||f||_{W^{1/2,2}} against ||f||_inf^{1/2} ||Df||_1^{1/2} case.
  static InterpolationTriple forbidden_reference() {
    return {Rational(1, 2), Rational(1, 2), Rational(0), Rational(0), Rational(1), Rational(1), Rational(1, 2)};
  }
  bool satisfies_condition() const { return interpolation_condition(a, ip, a2, ip2); }
};

inline constexpr double kBlowupFactor = 10.0;
inline constexpr double kMinCellsPerWidth = 8.0;

/// Verdict rule shared by the probe and its control runs: strictly increasing
/// as the width shrinks and a total growth of at least kBlowupFactor.
inline void blowup_verdict(StudyReport& rep) {
  bool monotone = true;
  for (std::size_t i = 1; i < rep.series.size(); ++i)
    if (!(rep.series[i].value > rep.series[i - 1].value)) monotone = false;
  const double growth = rep.series.back().value / rep.series.front().value;
  rep.thresholds = {{"growth_factor", kBlowupFactor}, {"observed_growth", growth}};
  rep.verdict = monotone && growth >= kBlowupFactor ? Verdict::pass : Verdict::fail;
  if (!monotone) rep.reason = "ratio not monotone in width";
  else if (growth < kBlowupFactor) rep.reason = "growth below " + std::to_string(kBlowupFactor) + "x";
}

namespace detail {

inline std::vector<SampledFunction> sharpening_family(const GeneratorSpec& base, const Grid& grid,
                                                      const std::vector<double>& widths) {
  for (double w : widths)
    require(w >= kMinCellsPerWidth * grid.spacing(), ErrorCode::unresolvable_at_scale,
            "transition width " + std::to_string(w) + " below " + std::to_string(kMinCellsPerWidth) + " cells");
  std::vector<SampledFunction> out;
  for (double w : widths) {
    GeneratorSpec s = base;
    s.width = w;
    out.push_back(generate(s, grid, std::string(to_string(s.kind)) + "_w" + std::to_string(w)));
  }
  return out;
}

inline bool is_sharpening(const std::vector<double>& widths) {
  for (std::size_t i = 1; i < widths.size(); ++i)
    if (!(widths[i] < widths[i - 1])) return false;
  return true;
}

}  // namespace detail

/// Sweep a forbidden interpolation triple along a sharpening smoothed_step family.
inline StudyReport blowup_probe(const InterpolationTriple& t, const GeneratorSpec& base, const Grid& grid,
                                const std::vector<double>& widths, NormEngine& engine) {
  require(!t.satisfies_condition(), ErrorCode::condition_violated,
          "condition-violated required: the probe needs alpha - 1/p >= alpha2 - 1/p2");
  require(t.a1 == t.theta * t.a + (kOne - t.theta) * t.a2 && t.ip1 == t.theta * t.ip + (kOne - t.theta) * t.ip2,
          ErrorCode::exponent_mismatch, "triple does not interpolate");
  require(widths.size() >= 4, ErrorCode::invalid_argument, "blow-up sweep needs >= 4 widths");
  StudyReport rep;
  rep.kind = StudyKind::blowup;
  rep.inputs = {{"lhs", "W^{" + to_string(t.a1) + "," + reciprocal_to_string(t.ip1) + "}"},
                {"rhs0", "W^{" + to_string(t.a) + "," + reciprocal_to_string(t.ip) + "}"},
                {"rhs1", "W^{" + to_string(t.a2) + "," + reciprocal_to_string(t.ip2) + "}"},
                {"theta", to_string(t.theta)},
                {"family", std::string(to_string(base.kind))}};
  const auto fam = detail::sharpening_family(base, grid, widths);
  if (!detail::is_sharpening(widths)) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "family does not sharpen";
    for (std::size_t i = 0; i < widths.size(); ++i) rep.series.push_back({widths[i], 0.0, fam[i].label});
    return rep;
  }
  const FactorRecipe lhs = detail::W(t.a1, t.ip1), r0 = detail::W(t.a, t.ip), r1 = detail::W(t.a2, t.ip2);
  const double th = to_double(t.theta);
  for (std::size_t i = 0; i < widths.size(); ++i) {
    const double l = engine.compute(lhs.spec(), fam[i]).value;
    const double r = std::pow(engine.compute(r0.spec(), fam[i]).value, th) *
                     std::pow(engine.compute(r1.spec(), fam[i]).value, 1.0 - th);
    rep.series.push_back({widths[i], l / r, fam[i].label});
  }
  blowup_verdict(rep);
  return rep;
}

/// Control run: the same sweep and verdict rule applied to a catalog case.
inline StudyReport blowup_control(const InequalityCase& c, const GeneratorSpec& base, const Grid& grid,
                                  const std::vector<double>& widths, NormEngine& engine) {
  StudyReport rep;
  rep.kind = StudyKind::blowup;
  rep.inputs = {{"case", std::string(to_string(c.id))}, {"family", std::string(to_string(base.kind))}};
  const auto fam = detail::sharpening_family(base, grid, widths);
  for (std::size_t i = 0; i < widths.size(); ++i)
    rep.series.push_back({widths[i], evaluate(c, fam[i], engine).ratio, fam[i].label});
  if (!detail::is_sharpening(widths)) {
    rep.verdict = Verdict::inconclusive;
    rep.reason = "family does not sharpen";
    return rep;
  }
  blowup_verdict(rep);
  return rep;
}

}  // namespace fracgn

namespace fracgn {

// ---------------------------------------------------------------------------

struct ScalingCase {
  NormSpec spec;
  int dim = 1;
};

/// The twelve (norm, dim) combinations of the default scaling suite.
inline std::vector<ScalingCase> default_scaling_suite() {
  return {
      {lp_spec(2.0), 1},
      {lp_spec(1.0), 1},
      {lp_spec(kInf), 1},
      {sobolev_spec(0.5, 2.0), 1},
      {sobolev_spec(0.7, 1.0), 1},
      {sobolev_spec(1.5, 2.0), 1},
      {holder_spec(0.3), 1},
      {besov_spec(-1.0), 1},
      {besov_spec(0.5, 2.0, 2.0), 1},
      {peetre_spec(0.5), 1},
      {lp_spec(2.0), 2},
      {besov_spec(-1.0), 2},
  };
}

/// Grid and test function for a scaling sweep over lambda in {1, 2, 4, 8}:
/// a centered gaussian wide enough at lambda = 1 and resolved at lambda = 8.
inline SampledFunction scaling_test_function(int dim) {
  GeneratorSpec s;
  s.kind = GeneratorKind::gaussian;
  if (dim == 1) {
    s.width = 1.0;
    return generate(s, make_grid(1, 4096, 32.0), "scaling_gaussian_w1");
  }
  s.width = 4.0;
  return generate(s, make_grid(2, 1024, 64.0), "scaling_gaussian2d_w4");
}

}  // namespace fracgn
