#include <gtest/gtest.h>

#include <filesystem>

#include "common.hpp"

using namespace fracgn;

TEST(Io, GridFingerprint) { EXPECT_EQ(io::grid_fingerprint(make_grid(1, 256, 16.0)), "dim1-n256-box16"); }

TEST(Io, CorpusRoundTrip) {
  const auto& c = testutil::corpus();
  const auto back = io::corpus_from_json(io::json::parse(io::to_json(c).dump()));
  ASSERT_EQ(back.functions.size(), c.functions.size());
  EXPECT_EQ(back.grid, c.grid);
  for (std::size_t i = 0; i < c.functions.size(); ++i) {
    EXPECT_EQ(back.functions[i].label, c.functions[i].label);
    EXPECT_EQ(generate(back.functions[i].spec, back.grid).values, generate(c.functions[i].spec, c.grid).values);
  }
}

TEST(Io, ShippedCorpusIsReference) {
  const auto shipped = io::load_corpus(std::string(FRACGN_DATA) + "/reference_corpus.json");
  EXPECT_EQ(io::to_json(shipped).dump(), io::to_json(testutil::corpus()).dump());
}

TEST(Io, ConstantsRoundTrip) {
  io::Constants c{{"thm1_2", {0.5, 1.5, "dim1-n256-box16"}}, {"peetre/s0.5", {1, 2, "dim1-n256-box16"}}};
  const auto j = io::to_json(c);
  EXPECT_EQ(j.at("schema_version"), 1);
  const auto back = io::constants_from_json(j);
  ASSERT_EQ(back.size(), 2u);
  EXPECT_EQ(back.at("thm1_2").max_ratio, 1.5);
  EXPECT_EQ(back.at("peetre/s0.5").grid_fingerprint, "dim1-n256-box16");
}

TEST(Io, ShippedConstantsCoverSuite) {
  const auto c = io::load_constants(std::string(FRACGN_DATA) + "/constants.json");
  for (auto id : kAllCases) EXPECT_TRUE(c.count(std::string(to_string(id)))) << to_string(id);
  for (const auto& [k, v] : c) EXPECT_EQ(v.grid_fingerprint, "dim1-n256-box16") << k;
}

TEST(Io, CorruptConstantsRejected) {
  auto expect_schema = [](const io::json& j) {
    try {
      io::constants_from_json(j);
      FAIL() << j.dump();
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::schema_error);
    }
  };
  expect_schema(io::json{{"thm1_2", {{"min_ratio", 1}, {"max_ratio", 2}, {"grid_fingerprint", "x"}}}});
  expect_schema(io::json{{"schema_version", 2}});
  expect_schema(io::json{{"schema_version", 1}, {"thm1_2", {{"min_ratio", 3}, {"max_ratio", 2}, {"grid_fingerprint", "x"}}}});
  expect_schema(io::json{{"schema_version", 1}, {"thm1_2", {{"min_ratio", 1}}}});
  expect_schema(io::json{{"schema_version", 1}, {"thm1_2", {{"min_ratio", "a"}, {"max_ratio", 2}, {"grid_fingerprint", "x"}}}});
}

TEST(Io, UnparsableFile) {
  const auto path = std::filesystem::temp_directory_path() / "fracgn_bad.json";
  {
    std::ofstream(path) << "{ not json";
  }
  try {
    io::read_json_file(path.string());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::schema_error);
  }
}

TEST(Io, NormResultSchema) {
  const auto g = make_grid(1, 256, 16.0);
  NormEngine e(g);
  const auto j = io::to_json(e.compute(besov_spec(0.5), testutil::gaussian(g, 1.0)));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("kind"), "besov");
  EXPECT_EQ(j.at("params").at("p"), "inf");
  EXPECT_EQ(j.at("truncation").at("j_min"), -2);
}

TEST(Io, RatioRecordSchema) {
  const auto g = make_grid(1, 256, 16.0);
  NormEngine e(g);
  const auto j = io::to_json(evaluate(reference_case(CaseId::thm1_2), testutil::gaussian(g, 1.0), e));
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("case_id"), "thm1_2");
  EXPECT_EQ(j.at("rhs_factors").size(), 2u);
}

TEST(Io, StudyReportSchema) {
  StudyReport r;
  r.kind = StudyKind::blowup;
  r.series = {{0.25, 2.0, "a"}};
  const auto j = io::to_json(r);
  EXPECT_EQ(j.at("schema_version"), 1);
  EXPECT_EQ(j.at("study_kind"), "blowup");
  EXPECT_EQ(j.at("verdict"), "inconclusive");
}
