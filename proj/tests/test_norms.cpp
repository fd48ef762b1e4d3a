#include <gtest/gtest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace fracgn;
using testutil::gaussian;
using testutil::mode;
using testutil::sobolev_oracle;
using testutil::transfer_oracle;
using testutil::rel;

namespace {

SampledFunction corpus_on(const Grid& g, const std::string& label) {
  const auto& c = testutil::corpus();
  for (const auto& e : c.functions)
    if (e.label == label) return generate(e.spec, g, label);
  throw std::runtime_error(label);
}

}  // namespace

TEST(Sobolev, ConstantIsZero) {
  EXPECT_EQ(sobolev_seminorm(constant_function(make_grid(1, 64, 8), 2.5), 0.5, 2).value, 0.0);
}

TEST(Sobolev, MatchesNaiveOracleAtN64) {
  const auto g = make_grid(1, 64, 16.0);
  EXPECT_LE(rel(sobolev_seminorm(gaussian(g, 1.0), 0.5, 2).value, sobolev_oracle(gaussian(g, 1.0), 0.5, 2)), 1e-10);
  for (const char* label : {"gaussian_w1", "bump_r3", "wavepacket_f2pi"}) {
    const auto f = corpus_on(g, label);
    for (auto [a, p] : {std::pair{0.5, 2.0}, {0.3, 1.0}, {0.7, 3.0}})
      EXPECT_LE(rel(sobolev_seminorm(f, a, p).value, sobolev_oracle(f, a, p)), 1e-10) << label << " " << a << " " << p;
  }
}

TEST(Sobolev, Homogeneous) {
  const auto f = gaussian(make_grid(1, 128, 16.0), 1.0);
  const double v = sobolev_seminorm(f, 0.4, 1.5).value;
  EXPECT_LE(rel(sobolev_seminorm(scaled(f, -3.0), 0.4, 1.5).value, 3.0 * v), 1e-14);
}

TEST(Sobolev, RejectsAlphaOutsideUnit) {
  const auto f = gaussian(make_grid(1, 64, 16.0), 1.0);
  EXPECT_THROW(sobolev_seminorm(f, 1.0, 2), Error);
  EXPECT_THROW(sobolev_seminorm(f, 0.5, 0.5), Error);
}

TEST(SobolevGeneral, AlphaZeroIsLp) {
  const auto f = gaussian(make_grid(1, 256, 16.0), 1.0);
  EXPECT_EQ(sobolev_norm_general(f, 0.0, 3.0).value, lp_norm(f, 3.0));
}

TEST(SobolevGeneral, DerivativeNormOfSine) {
  const auto g = make_grid(1, 64, 1.0);
  EXPECT_NEAR(sobolev_norm_general(mode(g, 1, true), 1.0, 2.0).value, 2 * std::numbers::pi / std::sqrt(2.0), 1e-10);
}

TEST(SobolevGeneral, FractionalAboveOne) {
  const auto f = gaussian(make_grid(1, 256, 16.0), 1.0);
  const double oracle = sobolev_seminorm(spectral_derivative(f, {1, 0}), 0.5, 2).value;
  EXPECT_LE(rel(sobolev_norm_general(f, 1.5, 2.0).value, oracle), 1e-12);
}

TEST(Holder, ConstantIsZero) { EXPECT_EQ(holder_seminorm(constant_function(make_grid(1, 64, 8), 1), 0.5).value, 0.0); }

TEST(Holder, CosineLowerBound) {
  const auto g = make_grid(1, 64, 1.0);
  for (double a : {0.2, 0.5, 0.9})
    EXPECT_GE(holder_seminorm(mode(g, 1), a).value, 2.0 * std::pow(2.0, a) * (1 - 1e-14));
}

TEST(Holder, DilationOnGaussians) {
  const auto g = make_grid(1, 256, 16.0);
  for (const char* label : {"gaussian_w1", "gaussian_w0.5_c0.75"})
    for (double a : {0.3, 0.5}) {
      const auto f = corpus_on(g, label);
      const double r = holder_seminorm(dilate(f, 2), a).value / holder_seminorm(f, a).value;
      EXPECT_NEAR(r / std::pow(2.0, a), 1.0, 0.05) << label << " " << a;
    }
}

TEST(Besov, SingleModeFormula) {
  const auto g = make_grid(1, 256, 16.0);
  const auto bank = build_filter_bank(g);
  for (int m : {3, 5, 11, 40}) {
    const auto f = mode(g, m);
    const double xi0 = 2 * std::numbers::pi * m / 16.0;
    for (double s : {-1.0, 0.0, 0.5})
      for (double p : {2.0, kInf})
        for (double q : {1.0, 2.0, kInf}) {
          std::vector<double> terms;
          for (int j = bank.j_min; j <= bank.j_max; ++j) {
            const double t = transfer_oracle(xi0, j);
            if (t > 0) terms.push_back(std::exp2(j * s) * t);
          }
          ASSERT_LE(terms.size(), 2u);
          double seq = 0.0;
          for (double t : terms) seq = std::isinf(q) ? std::max(seq, t) : seq + std::pow(t, q);
          if (!std::isinf(q)) seq = std::pow(seq, 1.0 / q);
          const double mode_norm = std::isinf(p) ? 1.0 : std::sqrt(16.0 / 2.0);
          EXPECT_LE(rel(besov_norm(f, s, p, q, bank).value, seq * mode_norm), 1e-8) << m << " " << s << " " << p << " " << q;
        }
  }
}

TEST(Besov, ZeroFunction) {
  const auto g = make_grid(1, 256, 16.0);
  EXPECT_EQ(besov_norm(constant_function(g, 0.0), 0.5, 2, 2, build_filter_bank(g)).value, 0.0);
}

TEST(Besov, QInfinityIsMaxOverBands) {
  const auto g = make_grid(1, 256, 16.0);
  const auto bank = build_filter_bank(g);
  const auto f = corpus_on(g, "random_trig_s7");
  double m = 0.0;
  for (int j = bank.j_min; j <= bank.j_max; ++j) m = std::max(m, std::exp2(0.3 * j) * lp_norm(band(f, j, bank), 2.0));
  EXPECT_LE(rel(besov_norm(f, 0.3, 2, kInf, bank).value, m), 1e-14);
}

TEST(Besov, TruncationMetadata) {
  const auto g = make_grid(1, 256, 16.0);
  const auto r = besov_norm(gaussian(g, 1.0), 0.5, kInf, kInf, build_filter_bank(g));
  EXPECT_EQ(*r.truncation.j_min, -2);
  EXPECT_EQ(*r.truncation.j_max, 4);
  EXPECT_TRUE(r.truncation.dropped_fraction);
}

TEST(Peetre, ConstantIsZero) {
  const auto g = make_grid(1, 256, 16.0);
  NormEngine e(g);
  for (double s : {0.0, 0.5, 1.5}) EXPECT_LE(e.compute(peetre_spec(s), constant_function(g, 2.0)).value, 2e-10);
}

TEST(Peetre, MomentOrderTooLow) {
  const auto g = make_grid(1, 256, 16.0);
  NormEngine e(g);
  try {
    e.compute(peetre_spec(1.0, 1), gaussian(g, 1.0));
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::moment_order_too_low);
  }
}

TEST(Peetre, EquivalentToFilterBankOnSmoothCorpus) {
  // frozen on the gaussian and wavepacket corpus entries: ratio within [1/C, C], C <= 100
  const auto& fs = testutil::corpus_functions();
  NormEngine e(fs.front().grid);
  for (double s : {-0.5, 0.0, 0.5})
    for (const auto& f : fs) {
      if (f.origin->kind != GeneratorKind::gaussian && f.origin->kind != GeneratorKind::wavepacket) continue;
      const double r = e.compute(peetre_spec(s), f).value / e.compute(besov_spec(s), f).value;
      EXPECT_GT(r, 1.0 / 100) << f.label;
      EXPECT_LT(r, 100.0) << f.label;
    }
}

TEST(Bmo, ConstantIsZero) { EXPECT_EQ(bmo_norm(constant_function(make_grid(1, 256, 16), 4.0)).value, 0.0); }

TEST(Bmo, BoundedByTwiceSup) {
  for (const auto& f : testutil::corpus_functions()) EXPECT_LE(bmo_norm(f).value, 2 * f.max_abs_value()) << f.label;
}

TEST(Bmo, SharpStep) {
  const auto g = make_grid(1, 256, 16.0);
  GeneratorSpec s;
  s.kind = GeneratorKind::smoothed_step;
  s.half_width = 2.0;
  s.width = 16.0 / 32;
  const auto f = generate(s, g);
  EXPECT_GT(bmo_norm(f).value, 0.5 * f.max_abs_value());
}

TEST(Directional, ConstantIsZero) {
  EXPECT_EQ(directional_difference_seminorm(constant_function(make_grid(1, 64, 8), 1), 0.5, 2).value, 0.0);
}

TEST(Directional, ComparableToSobolev) {
  for (const auto& f : testutil::corpus_functions()) {
    const double r = directional_difference_seminorm(f, 0.5, 2).value / sobolev_seminorm(f, 0.5, 2).value;
    EXPECT_GT(r, 0.1) << f.label;
    EXPECT_LT(r, 10.0) << f.label;
  }
}

TEST(Directional, Homogeneous) {
  const auto f = gaussian(make_grid(1, 256, 16.0), 1.0);
  EXPECT_LE(rel(directional_difference_seminorm(scaled(f, -2), 0.5, 2).value,
                2 * directional_difference_seminorm(f, 0.5, 2).value), 1e-14);
}

TEST(Engine, RejectsForeignGrid) {
  NormEngine e(make_grid(1, 256, 16.0));
  EXPECT_THROW(e.compute(lp_spec(2), gaussian(make_grid(1, 128, 16.0), 1.0)), Error);
}
