// fracgn: command-line front end for the norm toolkit and verification suite.
//
// Exit codes: 0 success, 1 verification failure, 2 usage or precondition
// error, 3 missing or corrupt calibration.

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fracgn/fracgn.hpp"

namespace fs = std::filesystem;
using namespace fracgn;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCalibration = 3;

struct CalibrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return kInf;
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  require(used == s.size() && v >= 1.0, ErrorCode::invalid_argument, "exponent must be a number >= 1 or 'inf', got '" + s + "'");
  return v;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, sep);)
    if (!part.empty()) out.push_back(part);
  return out;
}

Grid parse_grid(const std::string& s) {
  const auto parts = split(s, ',');
  require(parts.size() == 3, ErrorCode::invalid_argument, "--grid expects dim,n_per_axis,box_length");
  return make_grid(std::stoi(parts[0]), std::stoul(parts[1]), std::stod(parts[2]));
}

void write_report(const std::string& path, const StudyReport& rep) {
  if (path.empty() || path == "-") {
    std::cout << io::to_json(rep).dump(2) << '\n';
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  io::write_json_file(path, io::to_json(rep));
}

io::Constants load_calibration(const std::string& path) {
  if (!fs::exists(path)) throw CalibrationError("no calibration at " + path + "; run `fracgn calibrate` first");
  try {
    return io::load_constants(path);
  } catch (const Error& e) {
    throw CalibrationError("calibration file " + path + " is corrupt (" + e.what() + "); run `fracgn calibrate`");
  }
}

// --- compute-norm -----------------------------------------------------------

struct NormArgs {
  std::string kind;
  std::optional<double> s;
  std::optional<std::string> p, q;
  int k = 0;
  std::string function;
  std::string corpus = "data/reference_corpus.json";
  std::optional<std::string> grid;
  std::string mean = "subtract";
};

int cmd_compute_norm(const NormArgs& a) {
  const NormKind kind = a.kind == "peetre" ? NormKind::besov_sup_mollifier : norm_kind_from(a.kind);
  auto need_s = [&] {
    require(a.s.has_value(), ErrorCode::invalid_argument, "--kind " + a.kind + " needs --s");
    return *a.s;
  };
  auto need_p = [&](const std::optional<std::string>& v, const char* flag) {
    require(v.has_value(), ErrorCode::invalid_argument, "--kind " + a.kind + " needs " + flag);
    return parse_p(*v);
  };
  NormSpec spec;
  switch (kind) {
    case NormKind::lp: spec = lp_spec(need_p(a.p, "--p")); break;
    case NormKind::sobolev: spec = sobolev_spec(need_s(), need_p(a.p, "--p")); break;
    case NormKind::sobolev_directional: spec = {kind, need_s(), need_p(a.p, "--p"), kInf, 0}; break;
    case NormKind::holder: spec = holder_spec(need_s()); break;
    case NormKind::besov: spec = besov_spec(need_s(), need_p(a.p, "--p"), need_p(a.q, "--q")); break;
    case NormKind::besov_sup_mollifier: spec = peetre_spec(need_s(), a.k); break;
    case NormKind::bmo: spec = bmo_spec(); break;
  }
  require(a.mean == "subtract" || a.mean == "raw", ErrorCode::invalid_argument, "--mean is subtract or raw");

  SampledFunction f;
  if (a.function.rfind("constant:", 0) == 0) {
    require(a.grid.has_value(), ErrorCode::invalid_argument, "constant functions need --grid");
    f = constant_function(parse_grid(*a.grid), std::stod(a.function.substr(9)), a.function);
  } else {
    const auto corpus = io::load_corpus(a.corpus);
    const Grid g = a.grid ? parse_grid(*a.grid) : corpus.grid;
    f = generate(corpus.find(a.function).spec, g, a.function);
  }
  NormEngine engine(f.grid, a.mean == "raw" ? MeanConvention::raw : MeanConvention::subtract);
  std::cout << io::to_json(engine.compute(spec, f)).dump(2) << '\n';
  return 0;
}

// --- verify / calibrate ------------------------------------------------------

struct VerifyArgs {
  std::string corpus = "data/reference_corpus.json";
  std::string constants = "data/constants.json";
  std::string out = "out";
  bool calibrate = false;
  std::string only;
  std::uint64_t seed = 0;
};

int cmd_calibrate(const VerifyArgs& a) {
  const auto corpus = io::load_corpus(a.corpus);
  const auto c = calibrate(corpus);
  if (fs::path(a.constants).has_parent_path()) fs::create_directories(fs::path(a.constants).parent_path());
  io::write_json_file(a.constants, io::to_json(c));
  std::cerr << "wrote " << c.size() << " intervals to " << a.constants << '\n';
  return 0;
}

int cmd_verify(const VerifyArgs& a) {
  if (a.calibrate) {
    const int rc = cmd_calibrate(a);
    if (rc) return rc;
  }
  const auto corpus = io::load_corpus(a.corpus);
  const auto constants = load_calibration(a.constants);
  std::set<std::string> groups;
  if (a.only.empty()) {
    groups.insert(suite_groups().begin(), suite_groups().end());
  } else {
    for (const auto& g : split(a.only, ',')) {
      require(std::find(suite_groups().begin(), suite_groups().end(), g) != suite_groups().end(),
              ErrorCode::invalid_argument, "unknown group '" + g + "'");
      groups.insert(g);
    }
  }
  VerifyOutput v;
  try {
    v = run_verify(corpus, constants, groups);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::schema_error) throw CalibrationError(std::string(e.what()) + "; run `fracgn calibrate`");
    throw;
  }

  fs::create_directories(fs::path(a.out) / "report");
  io::write_jsonl((fs::path(a.out) / "results.jsonl").string(), v.records);
  for (const auto& [stem, rep] : v.reports)
    io::write_json_file((fs::path(a.out) / "report" / (stem + ".json")).string(), io::to_json(rep));

  io::json checks = io::json::array();
  std::map<std::string, int> tally;
  for (const auto& o : v.outcomes) {
    checks.push_back({{"group", o.group}, {"name", o.name}, {"verdict", to_string(o.verdict)}, {"detail", o.detail}});
    ++tally[std::string(to_string(o.verdict))];
    if (o.verdict == Verdict::fail) std::cerr << "FAIL " << o.group << " " << o.name << ": " << o.detail << '\n';
  }
  io::json summary = {{"schema_version", io::kSchemaVersion},
                      {"corpus", a.corpus},
                      {"grid_fingerprint", io::grid_fingerprint(corpus.grid)},
                      {"seed", a.seed},
                      {"tally", tally},
                      {"checks", checks}};
  io::write_json_file((fs::path(a.out) / "verdicts.json").string(), summary);
  std::cerr << "pass " << tally["pass"] << ", fail " << tally["fail"] << ", inconclusive " << tally["inconclusive"]
            << '\n';
  return v.any_fail() ? kExitFail : 0;
}

// --- scan ------------------------------------------------------------------

struct ScanArgs {
  std::string case_id;
  std::vector<std::string> set;
  std::string corpus = "data/reference_corpus.json";
  std::string constants;
  std::string out;
  std::string family;
  std::vector<std::string> free;
  std::vector<std::string> base;
  int budget = 24;
  std::uint64_t seed = 0;
};

int cmd_scan(const ScanArgs& a) {
  const CaseId id = case_id_from(a.case_id);
  ExponentSet given = reference_exponents(id);
  for (const auto& kv : a.set) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos, ErrorCode::invalid_argument, "--set expects name=value");
    given.set(kv.substr(0, eq), kv.substr(eq + 1));
  }
  const auto corpus = io::load_corpus(a.corpus);
  NormEngine engine(corpus.grid);
  std::optional<double> frozen;
  if (!a.constants.empty()) {
    const auto c = load_calibration(a.constants);
    if (auto it = c.find(a.case_id); it != c.end()) frozen = it->second.max_ratio;
  }
  if (a.family.empty()) {
    write_report(a.out, constant_scan(id, given, corpus.generate_all(), engine, frozen));
    return 0;
  }
  GeneratorSpec base;
  base.kind = generator_kind_from(a.family);
  for (const auto& kv : a.base) {
    const auto eq = kv.find('=');
    require(eq != std::string::npos, ErrorCode::invalid_argument, "--base expects name=value");
    set_parameter(base, kv.substr(0, eq), std::stod(kv.substr(eq + 1)));
  }
  std::vector<FreeParameter> params;
  for (const auto& fp : a.free) {
    const auto parts = split(fp, ':');
    require(parts.size() == 3, ErrorCode::invalid_argument, "--free expects name:lo:hi");
    params.push_back({parts[0], std::stod(parts[1]), std::stod(parts[2])});
  }
  write_report(a.out, extremize_ratio(make_case(id, given), base, corpus.grid, params, a.budget, a.seed, engine, frozen));
  return 0;
}

// --- blowup ----------------------------------------------------------------

struct BlowupArgs {
  std::string case_id;
  std::string a1 = "1/2", p1 = "2", a = "0", p = "inf", a2 = "1", p2 = "1", theta = "1/2";
  std::size_t n = 1024;
  double box = 16.0;
  double half_width = 2.0;
  std::vector<double> widths;
  std::string out;
};

int cmd_blowup(const BlowupArgs& b) {
  BlowupSetup setup;
  setup.grid = make_grid(1, b.n, b.box);
  setup.family.half_width = b.half_width;
  if (!b.widths.empty()) {
    setup.widths = b.widths;
  } else {
    setup.widths.clear();
    for (int i = 2; i <= 5; ++i) setup.widths.push_back(b.box / 4.0 / (1 << i));
  }
  if (!b.case_id.empty()) {
    const CaseId id = case_id_from(b.case_id);
    throw Error(ErrorCode::condition_violated, "condition-violated required: catalog case " + std::string(to_string(id)) +
                                                   " satisfies its exponent conditions");
  }
  const InterpolationTriple t{parse_rational(b.a1), parse_reciprocal(b.p1), parse_rational(b.a),
                              parse_reciprocal(b.p),  parse_rational(b.a2), parse_reciprocal(b.p2),
                              parse_rational(b.theta)};
  NormEngine engine(setup.grid);
  write_report(b.out, blowup_probe(t, setup.family, setup.grid, setup.widths, engine));
  return 0;
}

// --- scaling ---------------------------------------------------------------

struct ScalingArgs {
  std::string norm;
  std::optional<double> s;
  std::optional<std::string> p, q;
  int dim = 1;
  std::vector<double> lambdas{1.0, 2.0, 4.0, 8.0};
  std::string out;
};

int cmd_scaling(const ScalingArgs& a) {
  const NormKind kind = a.norm == "peetre" ? NormKind::besov_sup_mollifier : norm_kind_from(a.norm);
  auto s = [&] {
    require(a.s.has_value() || kind == NormKind::lp || kind == NormKind::bmo, ErrorCode::invalid_argument,
            "--norm " + a.norm + " needs --s");
    return a.s.value_or(0.0);
  };
  auto p = [&](const std::optional<std::string>& v, const char* flag) {
    require(v.has_value(), ErrorCode::invalid_argument, "--norm " + a.norm + " needs " + flag);
    return parse_p(*v);
  };
  NormSpec spec;
  switch (kind) {
    case NormKind::lp: spec = lp_spec(p(a.p, "--p")); break;
    case NormKind::sobolev: spec = sobolev_spec(s(), p(a.p, "--p")); break;
    case NormKind::sobolev_directional: spec = {kind, s(), p(a.p, "--p"), kInf, 0}; break;
    case NormKind::holder: spec = holder_spec(s()); break;
    case NormKind::besov: spec = besov_spec(s(), a.p ? parse_p(*a.p) : kInf, a.q ? parse_p(*a.q) : kInf); break;
    case NormKind::besov_sup_mollifier: spec = peetre_spec(s()); break;
    case NormKind::bmo: spec = bmo_spec(); break;
  }
  const auto f = scaling_test_function(a.dim);
  NormEngine engine(f.grid);
  write_report(a.out, scaling_sweep(f, spec, engine, a.lambdas));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fracgn: fractional Sobolev, Besov, Hoelder and BMO norms and interpolation-inequality checks"};
  app.require_subcommand(1);

  NormArgs na;
  auto* cn = app.add_subcommand("compute-norm", "Evaluate one norm of one function; prints a NormResult JSON object");
  cn->add_option("--kind", na.kind, "lp, sobolev, sobolev_directional, holder, besov, peetre, bmo")->required();
  cn->add_option("--s,--alpha", na.s, "smoothness index");
  cn->add_option("--p", na.p, "integrability exponent (number or inf)");
  cn->add_option("--q", na.q, "Besov summation exponent (number or inf)");
  cn->add_option("--k", na.k, "mollifier moment order (peetre)");
  cn->add_option("--function", na.function, "corpus label, or constant:VALUE")->required();
  cn->add_option("--corpus", na.corpus, "corpus JSON file");
  cn->add_option("--grid", na.grid, "dim,n_per_axis,box_length (overrides the corpus grid)");
  cn->add_option("--mean", na.mean, "subtract or raw");

  VerifyArgs va;
  auto* ver = app.add_subcommand("verify", "Run the default suite against frozen calibration constants");
  auto* cal = app.add_subcommand("calibrate", "Measure the reference corpus and write constants.json");
  for (auto* sc : {ver, cal}) {
    sc->add_option("--corpus", va.corpus, "corpus JSON file");
    sc->add_option("--constants", va.constants, "calibration constants file");
  }
  ver->add_option("--out", va.out, "output directory for results.jsonl, verdicts.json and report/");
  ver->add_flag("--calibrate", va.calibrate, "calibrate first, then verify");
  ver->add_option("--only", va.only, "comma-separated groups to run");
  ver->add_option("--seed", va.seed, "random seed (recorded)");

  ScanArgs sa;
  auto* scan = app.add_subcommand("scan", "Constant scan over a corpus, or ratio extremization with --family");
  scan->add_option("--case", sa.case_id, "catalog case id")->required();
  scan->add_option("--set", sa.set, "exponent override name=value (repeatable)");
  scan->add_option("--corpus", sa.corpus, "corpus JSON file");
  scan->add_option("--constants", sa.constants, "calibration file providing the frozen bound");
  scan->add_option("--out", sa.out, "report file (stdout if omitted)");
  scan->add_option("--family", sa.family, "generator kind to extremize over");
  scan->add_option("--free", sa.free, "free parameter name:lo:hi (repeatable)");
  scan->add_option("--base", sa.base, "fixed generator parameter name=value (repeatable)");
  scan->add_option("--budget", sa.budget, "evaluation budget");
  scan->add_option("--seed", sa.seed, "random seed");

  BlowupArgs ba;
  auto* bl = app.add_subcommand("blowup", "Sharpening-step sweep of an interpolation triple that violates the condition");
  bl->add_option("--case", ba.case_id, "catalog case id (always rejected: catalog cases satisfy the condition)");
  bl->add_option("--alpha1", ba.a1);
  bl->add_option("--p1", ba.p1);
  bl->add_option("--alpha", ba.a);
  bl->add_option("--p", ba.p);
  bl->add_option("--alpha2", ba.a2);
  bl->add_option("--p2", ba.p2);
  bl->add_option("--theta", ba.theta);
  bl->add_option("--n", ba.n, "samples on the 1D grid");
  bl->add_option("--box", ba.box, "box length");
  bl->add_option("--half-width", ba.half_width, "plateau half width");
  bl->add_option("--widths", ba.widths, "transition widths, decreasing");
  bl->add_option("--out", ba.out, "report file (stdout if omitted)");

  ScalingArgs sc;
  auto* scl = app.add_subcommand("scaling", "Fit the dilation exponent of one norm");
  scl->add_option("--norm", sc.norm, "norm kind")->required();
  scl->add_option("--s,--alpha", sc.s);
  scl->add_option("--p", sc.p);
  scl->add_option("--q", sc.q);
  scl->add_option("--dim", sc.dim);
  scl->add_option("--lambdas", sc.lambdas);
  scl->add_option("--out", sc.out, "report file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    if (cn->parsed()) return cmd_compute_norm(na);
    if (ver->parsed()) return cmd_verify(va);
    if (cal->parsed()) return cmd_calibrate(va);
    if (scan->parsed()) return cmd_scan(sa);
    if (bl->parsed()) return cmd_blowup(ba);
    if (scl->parsed()) return cmd_scaling(sc);
  } catch (const CalibrationError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCalibration;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
