#pragma once

// JSON forms of the corpus, norm results, ratio records, study reports and
// calibration constants. Every document carries "schema_version": 1; p = inf
// is written as the string "inf".

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "fracgn/studies.hpp"

namespace fracgn::io {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline json number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (std::isnan(x)) return nullptr;
  return x;
}

inline double read_number(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    throw Error(ErrorCode::schema_error, "expected a number, got '" + s + "'");
  }
  if (!j.is_number()) throw Error(ErrorCode::schema_error, "expected a number");
  return j.get<double>();
}

inline void require_schema(const json& j, const std::string& what) {
  require(j.is_object(), ErrorCode::schema_error, what + ": not a JSON object");
  require(j.contains("schema_version") && j["schema_version"] == kSchemaVersion, ErrorCode::schema_error,
          what + ": schema_version must be 1");
}

// --- grid and corpus -------------------------------------------------------

inline json to_json(const Grid& g) { return {{"dim", g.dim}, {"n_per_axis", g.n_per_axis}, {"box_length", g.box_length}}; }

inline Grid grid_from_json(const json& j) {
  try {
    return make_grid(j.at("dim").get<int>(), j.at("n_per_axis").get<std::size_t>(), read_number(j.at("box_length")));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_error, std::string("grid: ") + e.what());
  }
}

inline std::string grid_fingerprint(const Grid& g) {
  std::ostringstream os;
  os << "dim" << g.dim << "-n" << g.n_per_axis << "-box" << g.box_length;
  return os.str();
}

inline json params_to_json(const GeneratorSpec& s) {
  json p;
  switch (s.kind) {
    case GeneratorKind::gaussian:
    case GeneratorKind::bump: p = {{"center", s.center}, {"width", s.width}}; break;
    case GeneratorKind::wavepacket: p = {{"center", s.center}, {"width", s.width}, {"frequency", s.frequency}}; break;
    case GeneratorKind::random_trig:
      p = {{"seed", s.seed}, {"decay", s.decay}, {"modes", s.modes}, {"scale", s.scale}};
      break;
    case GeneratorKind::smoothed_step:
      p = {{"center", s.center}, {"half_width", s.half_width}, {"width", s.width}};
      break;
  }
  if (s.amplitude != 1.0) p["amplitude"] = s.amplitude;
  return p;
}

inline GeneratorSpec spec_from_json(const json& j) {
  try {
    GeneratorSpec s;
    s.kind = generator_kind_from(j.at("kind").get<std::string>());
    const json& p = j.at("params");
    if (p.contains("center")) s.center = p["center"].get<std::array<double, 2>>();
    if (p.contains("width")) s.width = read_number(p["width"]);
    if (p.contains("frequency")) s.frequency = read_number(p["frequency"]);
    if (p.contains("half_width")) s.half_width = read_number(p["half_width"]);
    if (p.contains("decay")) s.decay = read_number(p["decay"]);
    if (p.contains("modes")) s.modes = p["modes"].get<int>();
    if (p.contains("seed")) s.seed = p["seed"].get<std::uint64_t>();
    if (p.contains("scale")) s.scale = p["scale"].get<int>();
    if (p.contains("amplitude")) s.amplitude = read_number(p["amplitude"]);
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_error, std::string("generator: ") + e.what());
  }
}

struct CorpusEntry {
  GeneratorSpec spec;
  std::string label;
};

struct Corpus {
  Grid grid;
  std::vector<CorpusEntry> functions;

  std::vector<SampledFunction> generate_all() const {
    std::vector<SampledFunction> out;
    for (const auto& e : functions) out.push_back(generate(e.spec, grid, e.label));
    return out;
  }

  const CorpusEntry& find(const std::string& label) const {
    for (const auto& e : functions)
      if (e.label == label) return e;
    throw Error(ErrorCode::invalid_argument, "no function labelled '" + label + "' in corpus");
  }
};

inline json to_json(const Corpus& c) {
  json fs = json::array();
  for (const auto& e : c.functions)
    fs.push_back({{"kind", to_string(e.spec.kind)}, {"params", params_to_json(e.spec)}, {"label", e.label}});
  return {{"schema_version", kSchemaVersion}, {"grid", to_json(c.grid)}, {"functions", fs}};
}

inline Corpus corpus_from_json(const json& j) {
  require_schema(j, "corpus");
  Corpus c;
  try {
    c.grid = grid_from_json(j.at("grid"));
    for (const auto& f : j.at("functions")) c.functions.push_back({spec_from_json(f), f.at("label").get<std::string>()});
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_error, std::string("corpus: ") + e.what());
  }
  return c;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorCode::invalid_argument, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::schema_error, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::invalid_argument, "cannot write " + path);
  out << j.dump(2) << '\n';
}

inline Corpus load_corpus(const std::string& path) { return corpus_from_json(read_json_file(path)); }

/// The reference corpus: two of each generator kind on grid(1, 256, 16).
inline Corpus reference_corpus() {
  Corpus c;
  c.grid = make_grid(1, 256, 16.0);
  auto add = [&](GeneratorSpec s, std::string label) { c.functions.push_back({s, std::move(label)}); };
  GeneratorSpec s;
  s.kind = GeneratorKind::gaussian;
  s.width = 1.0;
  add(s, "gaussian_w1");
  s.width = 0.5;
  s.center = {0.75, 0.0};
  add(s, "gaussian_w0.5_c0.75");

  s = {};
  s.kind = GeneratorKind::bump;
  s.width = 3.0;
  add(s, "bump_r3");
  s.width = 2.0;
  s.center = {-1.0, 0.0};
  add(s, "bump_r2_c-1");

  s = {};
  s.kind = GeneratorKind::wavepacket;
  s.width = 1.0;
  s.frequency = 2.0 * std::numbers::pi;
  add(s, "wavepacket_f2pi");
  s.width = 0.75;
  s.frequency = 5.0;
  s.center = {0.5, 0.0};
  add(s, "wavepacket_f5");

  s = {};
  s.kind = GeneratorKind::random_trig;
  s.seed = 7;
  s.decay = 2.0;
  s.modes = 8;
  add(s, "random_trig_s7");
  s.seed = 11;
  s.decay = 1.5;
  s.modes = 12;
  add(s, "random_trig_s11");

  s = {};
  s.kind = GeneratorKind::smoothed_step;
  s.half_width = 2.0;
  s.width = 0.5;
  add(s, "smoothed_step_a2");
  s.half_width = 1.5;
  s.width = 0.3;
  s.center = {0.5, 0.0};
  add(s, "smoothed_step_a1.5");
  return c;
}

// --- norm results and ratio records ----------------------------------------

inline json to_json(const Truncation& t) {
  json j = json::object();
  auto put = [&](const char* k, const auto& v) {
    if (v) j[k] = number(static_cast<double>(*v));
  };
  put("h_min", t.h_min);
  put("h_max", t.h_max);
  if (t.j_min) j["j_min"] = *t.j_min;
  if (t.j_max) j["j_max"] = *t.j_max;
  put("eps_min", t.eps_min);
  put("eps_max", t.eps_max);
  if (t.derivative_order) j["derivative_order"] = *t.derivative_order;
  put("dc_fraction", t.dc_fraction);
  put("dropped_fraction", t.dropped_fraction);
  put("above_covered_fraction", t.above_covered_fraction);
  j["method"] = t.method;
  if (!t.mean_convention.empty()) j["mean_convention"] = t.mean_convention;
  return j;
}

inline json to_json(const NormResult& r) {
  json params = {{"s", r.params.s}};
  if (r.params.p) params["p"] = number(*r.params.p);
  if (r.params.q) params["q"] = number(*r.params.q);
  return {{"schema_version", kSchemaVersion},
          {"value", number(r.value)},
          {"kind", to_string(r.kind)},
          {"params", params},
          {"truncation", to_json(r.truncation)}};
}

inline json to_json(const RatioRecord& r) {
  json factors = json::array();
  for (const auto& f : r.rhs_factors)
    factors.push_back({{"norm", f.norm}, {"kind", to_string(f.kind)}, {"value", number(f.value)}, {"power", f.power}});
  return {{"schema_version", kSchemaVersion},
          {"case_id", r.case_id},
          {"function_label", r.function_label},
          {"lhs_norm", r.lhs_norm},
          {"lhs", number(r.lhs)},
          {"rhs_factors", factors},
          {"rhs", number(r.rhs)},
          {"ratio", number(r.ratio)},
          {"status", r.status},
          {"mean_convention", r.mean_convention},
          {"grid_meta", to_json(r.grid_meta)}};
}

inline void write_jsonl(const std::string& path, const std::vector<RatioRecord>& records) {
  std::ofstream out(path);
  require(out.good(), ErrorCode::invalid_argument, "cannot write " + path);
  for (const auto& r : records) out << to_json(r).dump() << '\n';
}

// --- study reports ---------------------------------------------------------

inline json to_json(const StudyReport& r) {
  json series = json::array();
  for (const auto& p : r.series) {
    json pt = {{"parameter", number(p.parameter)}, {"value", number(p.value)}};
    if (!p.label.empty()) pt["label"] = p.label;
    series.push_back(pt);
  }
  json j = {{"schema_version", kSchemaVersion},
            {"study_kind", to_string(r.kind)},
            {"inputs", r.inputs},
            {"series", series},
            {"fit", nullptr},
            {"verdict", to_string(r.verdict)},
            {"thresholds", json::object()},
            {"reason", r.reason}};
  if (r.fit) j["fit"] = {{"slope", r.fit->slope}, {"intercept", r.fit->intercept}, {"residual", r.fit->residual}};
  for (const auto& [k, v] : r.thresholds) j["thresholds"][k] = number(v);
  if (!r.best_parameters.empty()) {
    j["best_parameters"] = json::object();
    for (const auto& [k, v] : r.best_parameters) j["best_parameters"][k] = number(v);
  }
  return j;
}

// --- calibration constants -------------------------------------------------

struct Interval {
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  std::string grid_fingerprint;
};

/// Keys are case ids ("thm1_2") or check ids ("equivalence/s0.5/p2").
using Constants = std::map<std::string, Interval>;

inline json to_json(const Constants& c) {
  json j = {{"schema_version", kSchemaVersion}};
  for (const auto& [k, v] : c)
    j[k] = {{"min_ratio", v.min_ratio}, {"max_ratio", v.max_ratio}, {"grid_fingerprint", v.grid_fingerprint}};
  return j;
}

inline Constants constants_from_json(const json& j) {
  require_schema(j, "constants");
  Constants c;
  for (const auto& [k, v] : j.items()) {
    if (k == "schema_version") continue;
    try {
      Interval iv{v.at("min_ratio").get<double>(), v.at("max_ratio").get<double>(),
                  v.at("grid_fingerprint").get<std::string>()};
      require(std::isfinite(iv.min_ratio) && std::isfinite(iv.max_ratio) && iv.min_ratio <= iv.max_ratio &&
                  iv.min_ratio >= 0.0,
              ErrorCode::schema_error, "constants: bad interval for " + k);
      c[k] = iv;
    } catch (const json::exception& e) {
      throw Error(ErrorCode::schema_error, "constants: entry " + k + ": " + e.what());
    }
  }
  return c;
}

inline Constants load_constants(const std::string& path) { return constants_from_json(read_json_file(path)); }

}  // namespace fracgn::io
