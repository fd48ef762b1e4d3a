#include <gtest/gtest.h>

#include "common.hpp"
#include "oracles.hpp"

using namespace fracgn;
using testutil::gaussian;
using testutil::mode;
using testutil::sobolev_oracle;
using testutil::transfer_oracle;

namespace {

std::vector<fft::cplx> naive_dft(const std::vector<fft::cplx>& x) {
  const std::size_t n = x.size();
  std::vector<fft::cplx> out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      out[k] += x[j] * std::polar(1.0, -2.0 * std::numbers::pi * double(j * k % n) / double(n));
  return out;
}

}  // namespace

TEST(Fft, MatchesNaiveDft) {
  SplitMix64 r(3);
  for (std::size_t n : {1u, 2u, 8u, 64u, 256u}) {
    std::vector<fft::cplx> x(n);
    for (auto& v : x) v = {r.symmetric(), r.symmetric()};
    auto y = x;
    fft::transform(y, false);
    const auto ref = naive_dft(x);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(y[k] - ref[k]), 1e-12 * double(n)) << n;
    fft::transform(y, true);
    for (std::size_t k = 0; k < n; ++k) EXPECT_LT(std::abs(y[k] - x[k]), 1e-14 * double(n));
  }
}

TEST(Fft, RejectsNonPowerOfTwo) {
  std::vector<fft::cplx> x(12);
  EXPECT_THROW(fft::transform(x, false), Error);
}

TEST(FilterBank, BandCountOnReferenceGrid) {
  // lattice frequencies 2 pi m / 16 for m = 1..128 reach annuli j = -2 (xi ~ 0.39)
  // up to the last j with 2^{j+1} <= pi / h ~ 50.3, i.e. j = 4
  const auto bank = build_filter_bank(make_grid(1, 256, 16.0));
  EXPECT_EQ(bank.j_min, -2);
  EXPECT_EQ(bank.j_max, 4);
  EXPECT_GE(bank.j_max - bank.j_min, 5);
}

TEST(FilterBank, PartitionResidual) {
  for (const auto& g : {make_grid(1, 256, 16.0), make_grid(1, 1024, 16.0), make_grid(2, 64, 8.0)})
    EXPECT_LE(build_filter_bank(g).partition_residual, 1e-12);
}

TEST(FilterBank, TransferMatchesOracle) {
  const auto g = make_grid(1, 256, 16.0);
  const auto bank = build_filter_bank(g);
  for (int j = bank.j_min; j <= bank.j_max; ++j)
    for (std::size_t i = 0; i < g.size(); ++i) {
      const double xi = g.frequency_magnitude(i);
      EXPECT_NEAR(bank.at(j)[i], transfer_oracle(xi, j), 1e-14);
      if (xi <= std::ldexp(1.0, j - 1) || xi >= std::ldexp(1.0, j + 1)) EXPECT_EQ(bank.at(j)[i], 0.0);
    }
}

TEST(FilterBank, TooCoarse) {
  try {
    build_filter_bank(make_grid(1, 8, 1.0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::grid_too_coarse);
  }
}

TEST(Band, SingleModeDiagonal) {
  const auto g = make_grid(1, 256, 16.0);
  const auto bank = build_filter_bank(g);
  const auto f = mode(g, 5);  // xi0 = 2 pi 5 / 16 ~ 1.96, bands 0 and 1
  const double xi0 = 2 * std::numbers::pi * 5 / 16;
  for (int j = bank.j_min; j <= bank.j_max; ++j) {
    const auto b = band(f, j, bank);
    const double t = transfer_oracle(xi0, j);
    for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(b.values[i], t * f.values[i], 1e-12);
  }
}

TEST(Band, SumReconstructs) {
  const auto g = make_grid(1, 256, 16.0);
  const auto bank = build_filter_bank(g);
  std::vector<double> v(g.size(), 0.75);
  // up to xi = 2 pi 36 / 16 < 2^j_max
  for (int m = 1; m <= 36; m += 7) {
    const auto md = mode(g, m, m % 2);
    for (std::size_t i = 0; i < g.size(); ++i) v[i] += md.values[i] / m;
  }
  const SampledFunction f(g, v, "mix");
  std::vector<double> sum(g.size(), 0.0);
  for (const auto& b : all_bands(f, bank))
    for (std::size_t i = 0; i < g.size(); ++i) sum[i] += b[i];
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(sum[i], v[i] - 0.75, 1e-10 * max_abs(v));
}

TEST(Mollifier, FirstMomentOrder) {
  const auto fam = build_mollifiers(make_grid(1, 256, 16.0), 1, 4);
  EXPECT_LE(std::abs(moment_of(fam.mother, {0, 0})), 1e-12);
}

TEST(Mollifier, MomentsVanishK3) {
  const auto fam = build_mollifiers(make_grid(1, 256, 16.0), 3, 4);
  const double l1 = lp_norm(fam.mother, 1.0);
  for (int o = 0; o < 3; ++o) EXPECT_LE(std::abs(moment_of(fam.mother, {o, 0})), 1e-10 * l1) << o;
  EXPECT_LE(verify_moments(fam), 1e-10 * l1);
  EXPECT_GT(fam.annulus_floor, 0.0);
}

TEST(Mollifier, MomentsVanish2D) {
  const auto fam = build_mollifiers(make_grid(2, 128, 16.0), 2, 4);
  EXPECT_LE(verify_moments(fam), 1e-10 * lp_norm(fam.mother, 1.0));
  EXPECT_GT(fam.annulus_floor, 0.0);
}

TEST(Mollifier, CorruptedMotherDetected) {
  const auto fam = build_mollifiers(make_grid(1, 256, 16.0), 2, 4);
  auto v = fam.mother.values;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (fam.mother.grid.radius_of(i) <= 1.0) v[i] += 0.1;
  const SampledFunction bad(fam.mother.grid, v, "corrupt");
  EXPECT_GT(verify_moments(bad, 2), 1e-3);
}

TEST(Mollifier, EpsilonsDyadicAndResolved) {
  const auto g = make_grid(1, 256, 16.0);
  const auto fam = build_mollifiers(g, 1, 4);
  ASSERT_EQ(fam.epsilons.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_GE(fam.epsilons[i], 8 * g.spacing());
    if (i) EXPECT_DOUBLE_EQ(fam.epsilons[i - 1], 2 * fam.epsilons[i]);
  }
}

TEST(Mollifier, UnderResolved) {
  try {
    build_mollifiers(make_grid(1, 64, 4.0), 3, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::epsilon_under_resolved);
  }
}

TEST(Mollify, KillsConstants) {
  const auto g = make_grid(1, 256, 16.0);
  const auto c = constant_function(g, 3.0);
  for (int k : {1, 2, 3}) {
    const auto fam = build_mollifiers(g, k, 4);
    for (double eps : fam.epsilons) EXPECT_LE(mollify(c, eps, fam).max_abs_value(), 1e-10 * 3.0);
  }
}

TEST(Mollify, Linear) {
  const auto g = make_grid(1, 256, 16.0);
  const auto fam = build_mollifiers(g, 2, 4);
  const auto f = gaussian(g, 1.0), h = mode(g, 3);
  const auto lhs = mollify(add(scaled(f, 2.0), scaled(h, -0.5)), fam.epsilons[1], fam);
  const auto a = mollify(f, fam.epsilons[1], fam), b = mollify(h, fam.epsilons[1], fam);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(lhs.values[i], 2 * a.values[i] - 0.5 * b.values[i], 1e-12);
}

TEST(Mollify, SlowModeDecaysAsEpsSquared) {
  // k = 2 kills constants and linear terms; a slow cosine is locally quadratic
  const auto g = make_grid(1, 1024, 64.0);
  const auto fam = build_mollifiers(g, 2, 4);
  const auto f = mode(g, 1);
  std::vector<double> x, y;
  for (double eps : fam.epsilons) {
    x.push_back(std::log(eps));
    y.push_back(std::log(mollify(f, eps, fam).max_abs_value()));
  }
  EXPECT_NEAR(fit_line(x, y).slope, 2.0, 0.1);
}

TEST(Mollify, UnknownEpsilon) {
  const auto g = make_grid(1, 256, 16.0);
  const auto fam = build_mollifiers(g, 1, 4);
  try {
    mollify(gaussian(g, 1.0), 0.3, fam);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::invalid_epsilon);
  }
}

TEST(SpectralDerivative, Sine) {
  const auto g = make_grid(1, 64, 1.0);
  const auto d = spectral_derivative(mode(g, 1, true), {1, 0});
  const auto c = mode(g, 1);
  for (std::size_t i = 0; i < g.size(); ++i) EXPECT_NEAR(d.values[i], 2 * std::numbers::pi * c.values[i], 1e-10);
}

TEST(SpectralDerivative, ZeroOrderIsIdentity) {
  const auto f = gaussian(make_grid(1, 256, 16.0), 1.0);
  EXPECT_EQ(spectral_derivative(f, {0, 0}).values, f.values);
}

TEST(SpectralDerivative, GaussianSecondDerivative) {
  const auto g = make_grid(1, 256, 16.0);
  const auto d = spectral_derivative(gaussian(g, 1.0), {2, 0});
  double err = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coordinate(i);
    err = std::max(err, std::abs(d.values[i] - (x * x - 1) * std::exp(-x * x / 2)));
  }
  EXPECT_LE(err, 1e-8);
}

TEST(SpectralDerivative, RejectsUnresolved) {
  const auto g = make_grid(1, 64, 16.0);
  std::vector<double> v(g.size(), 0.0);
  v[10] = 1.0;
  try {
    spectral_derivative(SampledFunction(g, v, "spike"), {1, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::not_band_limited);
  }
}
