#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "common.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = FRACGN_CLI;
const std::string kData = FRACGN_DATA;

struct Run {
  int code;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = kCli + " " + args + " 2>/dev/null";
  Run r{-1, {}};
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, p)) > 0;) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

fs::path scratch(const std::string& name) {
  auto d = fs::temp_directory_path() / ("fracgn_cli_" + name);
  fs::remove_all(d);
  fs::create_directories(d);
  return d;
}

std::string corpus_arg() { return " --corpus " + kData + "/reference_corpus.json"; }

}  // namespace

TEST(Cli, ComputeNormConstant) {
  const auto r = run("compute-norm --kind lp --p 2 --function constant:1 --grid 1,256,16");
  ASSERT_EQ(r.code, 0);
  const auto j = fracgn::io::json::parse(r.out);
  EXPECT_NEAR(j.at("value").get<double>(), 4.0, 1e-12);
  EXPECT_EQ(j.at("schema_version"), 1);
}

TEST(Cli, ComputeNormBesovOnCorpus) {
  const auto r = run("compute-norm --kind besov --s 0.5 --p inf --q inf --function gaussian_w1" + corpus_arg());
  ASSERT_EQ(r.code, 0);
  const auto j = fracgn::io::json::parse(r.out);
  EXPECT_TRUE(std::isfinite(j.at("value").get<double>()));
  EXPECT_TRUE(j.at("truncation").contains("j_min"));
  EXPECT_TRUE(j.at("truncation").contains("j_max"));
}

TEST(Cli, ComputeNormMissingP) {
  EXPECT_EQ(run("compute-norm --kind besov --s 0.5 --function gaussian_w1" + corpus_arg()).code, 2);
}

TEST(Cli, UnknownSubcommandIsUsage) { EXPECT_EQ(run("frobnicate").code, 2); }

TEST(Cli, VerifyWithCorruptConstants) {
  const auto d = scratch("corrupt");
  {
    std::ofstream(d / "constants.json") << "{\"schema_version\": 1, \"thm1_2\": {\"min_ratio\": 1}}";
  }
  EXPECT_EQ(run("verify --only cases" + corpus_arg() + " --constants " + (d / "constants.json").string() + " --out " +
                (d / "out").string())
                .code,
            3);
  EXPECT_EQ(run("verify" + corpus_arg() + " --constants " + (d / "missing.json").string() + " --out " +
                (d / "out").string())
                .code,
            3);
}

TEST(Cli, CalibrateThenVerifySubset) {
  const auto d = scratch("calibrate");
  const std::string consts = (d / "constants.json").string();
  ASSERT_EQ(run("calibrate" + corpus_arg() + " --constants " + consts).code, 0);
  const auto c = fracgn::io::load_constants(consts);
  EXPECT_GT(c.size(), 30u);
  const auto r = run("verify --only cases,band_holder,equivalence,lifting,embedding,peetre,pointwise" + corpus_arg() +
                     " --constants " + consts + " --out " + (d / "out").string());
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(fs::exists(d / "out" / "results.jsonl"));
  EXPECT_TRUE(fs::exists(d / "out" / "verdicts.json"));
  EXPECT_TRUE(fs::exists(d / "out" / "report" / "scan_thm1_2.json"));
}

TEST(Cli, BlowupWithCatalogCase) {
  EXPECT_EQ(run("blowup --case thm1_3").code, 2);
  // a triple that satisfies the condition is refused too
  EXPECT_EQ(run("blowup --alpha 0 --p 4 --p1 8/3").code, 2);
}

TEST(Cli, ScalingSobolevFlat) {
  const auto r = run("scaling --norm sobolev --s 0.5 --p 2");
  ASSERT_EQ(r.code, 0);
  const auto j = fracgn::io::json::parse(r.out);
  EXPECT_NEAR(j.at("fit").at("slope").get<double>(), 0.0, 0.05);
  EXPECT_EQ(j.at("verdict"), "pass");
}

TEST(Cli, ScanDeterministic) {
  const std::string args = "scan --case gn_classic --family wavepacket --free frequency:0.5:6 --budget 8 --seed 9" + corpus_arg();
  const auto a = run(args), b = run(args);
  ASSERT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
}
