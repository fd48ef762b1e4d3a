#pragma once

// The default verification suite: calibration of regression intervals on a
// corpus, and the verify run that checks every group against them.

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fracgn/io.hpp"

namespace fracgn {

inline const std::vector<std::string>& suite_groups() {
  static const std::vector<std::string> g = {"cases",   "band_holder", "equivalence", "lifting", "embedding",
                                             "peetre",  "pointwise",   "scaling",     "blowup"};
  return g;
}

/// Samples of every calibrated quantity, keyed as in constants.json.
using Samples = std::map<std::string, std::vector<double>>;

struct BandHolderExponents {
  double a1, p1, a2, p2;
};

/// alpha1 p1 = alpha2 p2 with p1 in {2, 4}, alpha2 in {0.6, 1}, p2 in {1, 2} and p2 < p1.
inline std::vector<BandHolderExponents> band_holder_grid() {
  std::vector<BandHolderExponents> out;
  for (double p1 : {2.0, 4.0})
    for (double a2 : {0.6, 1.0})
      for (double p2 : {1.0, 2.0})
        if (p2 < p1) out.push_back({a2 * p2 / p1, p1, a2, p2});
  return out;
}

inline std::string key(const std::string& group, const std::string& a, double x, const std::string& b = {},
                       double y = 0.0) {
  std::ostringstream os;
  os << group << "/" << a << x;
  if (!b.empty()) os << "/" << b << y;
  return os.str();
}

namespace detail {

inline void put(Samples& s, const std::string& k, double v) { s[k].push_back(v); }

}  // namespace detail

/// Everything that gets a frozen interval, measured on one corpus.
/// Ratio records of the catalog are returned through records.
inline Samples measure(const std::vector<SampledFunction>& fs, NormEngine& engine,
                       const std::set<std::string>& groups, std::vector<RatioRecord>* records = nullptr) {
  Samples s;
  if (groups.count("cases")) {
    for (auto id : kAllCases) {
      const auto c = reference_case(id);
      for (const auto& f : fs) {
        const auto r = evaluate(c, f, engine);
        if (records) records->push_back(r);
        if (r.status == "ok") detail::put(s, std::string(to_string(id)), r.ratio);
      }
    }
  }
  if (groups.count("equivalence")) {
    for (double sm : {0.3, 0.5, 0.7})
      for (double p : {1.0, 2.0})
        for (const auto& f : fs) {
          const auto r = equivalence_check(f, sm, p, engine);
          if (r.degenerate) continue;
          detail::put(s, key("equivalence", "s", sm, "p", p), r.sobolev_over_besov);
          detail::put(s, key("directional", "s", sm, "p", p), r.directional / r.sobolev);
        }
  }
  if (groups.count("lifting")) {
    for (double sm : {-0.5, 0.5})
      for (int m : {1, 2})
        for (const auto& f : fs) {
          const auto r = lifting_check(f, sm, m, engine.bank());
          if (!r.degenerate) detail::put(s, key("lifting", "s", sm, "m", m), r.max_ratio);
        }
  }
  if (groups.count("embedding")) {
    for (const auto& f : fs) {
      const auto r = embedding_chain_check(f, engine.bank());
      if (r.degenerate) continue;
      detail::put(s, "embedding/b0_over_bmo", r.b0_over_bmo);
      detail::put(s, "embedding/bmo_over_linf", r.bmo_over_linf);
    }
  }
  if (groups.count("peetre")) {
    for (double sm : {-0.5, 0.0, 0.5})
      for (const auto& f : fs) {
        const double b = engine.compute(besov_spec(sm), f).value;
        if (b > 0.0) detail::put(s, key("peetre", "s", sm), engine.compute(peetre_spec(sm), f).value / b);
      }
  }
  if (groups.count("pointwise")) {
    const BoundParams bp;
    for (auto id : {BoundId::eq1_1, BoundId::eq1_1b, BoundId::eq1_13, BoundId::eq1_23})
      for (const auto& f : fs)
        detail::put(s, "pointwise/" + std::string(to_string(id)), pointwise_bound_check(f, id, bp, engine).empirical_c);
  }
  return s;
}

inline io::Constants calibrate(const io::Corpus& corpus) {
  NormEngine engine(corpus.grid);
  const auto fs = corpus.generate_all();
  const std::set<std::string> groups(suite_groups().begin(), suite_groups().end());
  io::Constants out;
  for (const auto& [k, v] : measure(fs, engine, groups)) {
    if (v.empty()) continue;
    out[k] = {*std::min_element(v.begin(), v.end()), *std::max_element(v.begin(), v.end()),
              io::grid_fingerprint(corpus.grid)};
  }
  return out;
}

// ---------------------------------------------------------------------------

struct CheckOutcome {
  std::string group;
  std::string name;
  Verdict verdict = Verdict::pass;
  std::string detail;
};

struct VerifyOutput {
  std::vector<RatioRecord> records;
  std::vector<std::pair<std::string, StudyReport>> reports;  // file stem -> report
  std::vector<CheckOutcome> outcomes;

  bool any_fail() const {
    for (const auto& o : outcomes)
      if (o.verdict == Verdict::fail) return true;
    return false;
  }
};

/// Grid and family of the blow-up sweep: smoothed_step, transition widths
/// {1/4, 1/8, 1/16, 1/32} * box/4 on grid(1, 1024, 16).
struct BlowupSetup {
  Grid grid = make_grid(1, 1024, 16.0);
  GeneratorSpec family;
  std::vector<double> widths;

  BlowupSetup() {
    family.kind = GeneratorKind::smoothed_step;
    family.half_width = 2.0;
    for (int i = 2; i <= 5; ++i) widths.push_back(grid.box_length / 4.0 / (1 << i));
  }
};

inline VerifyOutput run_verify(const io::Corpus& corpus, const io::Constants& constants,
                               const std::set<std::string>& groups) {
  VerifyOutput out;
  NormEngine engine(corpus.grid);
  const auto fs = corpus.generate_all();
  const std::string fp = io::grid_fingerprint(corpus.grid);

  const Samples samples = measure(fs, engine, groups, &out.records);
  for (const auto& [k, vals] : samples) {
    const std::string group = k.substr(0, k.find('/')) == k ? "cases" : k.substr(0, k.find('/'));
    CheckOutcome o{group, k, Verdict::pass, ""};
    auto it = constants.find(k);
    if (it == constants.end()) {
      throw Error(ErrorCode::schema_error, "constants.json has no entry for " + k);
    }
    require(it->second.grid_fingerprint == fp, ErrorCode::schema_error,
            "constants for " + k + " were calibrated on " + it->second.grid_fingerprint + ", corpus grid is " + fp);
    const double lo = it->second.min_ratio / kCalibrationSlack, hi = it->second.max_ratio * kCalibrationSlack;
    std::size_t bad = 0;
    for (double v : vals)
      if (!(v >= lo && v <= hi)) ++bad;
    if (bad) {
      o.verdict = Verdict::fail;
      o.detail = std::to_string(bad) + " value(s) outside [" + std::to_string(lo) + ", " + std::to_string(hi) + "]";
    }
    out.outcomes.push_back(o);
  }

  if (groups.count("cases")) {
    for (auto id : kAllCases) {
      auto it = constants.find(std::string(to_string(id)));
      auto rep = constant_scan(id, reference_exponents(id), fs, engine,
                               it == constants.end() ? std::nullopt : std::optional<double>(it->second.max_ratio));
      out.outcomes.push_back({"cases", "scan/" + std::string(to_string(id)), rep.verdict, rep.reason});
      out.reports.emplace_back("scan_" + std::string(to_string(id)), std::move(rep));
    }
  }

  if (groups.count("band_holder")) {
    for (const auto& e : band_holder_grid()) {
      std::size_t violations = 0;
      for (const auto& f : fs) violations += band_holder_check(f, e.a1, e.p1, e.a2, e.p2, engine.bank()).violations;
      out.outcomes.push_back({"band_holder", key("band_holder", "p1_", e.p1, "a2_", e.a2) + "/p2_" + std::to_string(int(e.p2)),
                              violations ? Verdict::fail : Verdict::pass, std::to_string(violations) + " violations"});
    }
  }

  if (groups.count("scaling")) {
    int i = 0;
    for (const auto& sc : default_scaling_suite()) {
      const auto f = scaling_test_function(sc.dim);
      NormEngine eng(f.grid);
      StudyReport rep;
      try {
        rep = scaling_sweep(f, sc.spec, eng);
      } catch (const Error& e) {
        rep.kind = StudyKind::scaling;
        rep.verdict = Verdict::fail;
        rep.reason = e.what();
      }
      out.outcomes.push_back({"scaling", sc.spec.describe() + " dim " + std::to_string(sc.dim), rep.verdict,
                              rep.fit ? "slope " + std::to_string(rep.fit->slope) : rep.reason});
      out.reports.emplace_back("scaling_" + std::to_string(i++), std::move(rep));
    }
  }

  if (groups.count("blowup")) {
    const BlowupSetup b;
    NormEngine eng(b.grid);
    auto probe = blowup_probe(InterpolationTriple::forbidden_reference(), b.family, b.grid, b.widths, eng);
    out.outcomes.push_back({"blowup", "forbidden W^{1/2,2} vs L^inf, W^{1,1}", probe.verdict, probe.reason});
    out.reports.emplace_back("blowup_forbidden", std::move(probe));
    for (auto id : kAllCases) {
      auto ctl = blowup_control(reference_case(id), b.family, b.grid, b.widths, eng);
      // A catalog case must not look like a blow-up.
      const Verdict v = ctl.verdict == Verdict::pass ? Verdict::fail : Verdict::pass;
      out.outcomes.push_back({"blowup", "control/" + std::string(to_string(id)), v,
                              "growth " + std::to_string(ctl.thresholds["observed_growth"])});
      out.reports.emplace_back("blowup_control_" + std::string(to_string(id)), std::move(ctl));
    }
  }
  return out;
}

}  // namespace fracgn
