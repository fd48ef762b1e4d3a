#include <gtest/gtest.h>

#include "common.hpp"

using namespace fracgn;
using testutil::gaussian;
using testutil::rel;

namespace {

const Grid kRef = make_grid(1, 256, 16.0);

}  // namespace

TEST(Maximal, ConstantIsAbsValue) {
  const auto m = maximal_function(constant_function(kRef, -1.5));
  for (double v : m.values) EXPECT_NEAR(v, 1.5, 1e-14);
}

TEST(Maximal, DominatesSmallestBall) {
  for (const auto& f : testutil::corpus_functions()) {
    const auto m = maximal_function(f);
    const std::size_t n = kRef.n_per_axis;
    for (std::size_t i = 0; i < n; ++i) {
      // radius = spacing: the point and its two neighbours
      const double avg = (std::abs(f.values[i]) + std::abs(f.values[(i + 1) % n]) + std::abs(f.values[(i + n - 1) % n])) / 3;
      EXPECT_GE(m.values[i], avg * (1 - 1e-14)) << f.label;
    }
  }
}

TEST(Maximal, BoundedOnCorpus) {
  double cm = 0.0;
  for (const auto& f : testutil::corpus_functions()) {
    const auto m = maximal_function(f);
    EXPECT_LE(max_abs(m.values), f.max_abs_value() * (1 + 1e-14));
    cm = std::max(cm, lp_norm(m.values, kRef, 2) / lp_norm(f, 2));
  }
  // measured 1.199 on the reference corpus
  EXPECT_LE(cm, 1.5);
  EXPECT_LE(cm, 10.0);
}

TEST(GFunctional, ConstantIsZero) {
  for (double v : g_functional(constant_function(kRef, 2.0), 0.5, 2).values) EXPECT_EQ(v, 0.0);
}

TEST(GFunctional, MonotoneInP) {
  for (const auto& f : testutil::corpus_functions()) {
    const auto g1 = g_functional(f, 0.5, 1), g2 = g_functional(f, 0.5, 2);
    for (std::size_t i = 0; i < g1.values.size(); ++i) EXPECT_LE(g1.values[i], g2.values[i] * (1 + 1e-12)) << f.label;
  }
}

TEST(GFunctional, BoundedBySobolevOnGaussians) {
  double cg = 0.0;
  for (const auto& f : testutil::corpus_functions()) {
    if (f.origin->kind != GeneratorKind::gaussian) continue;
    cg = std::max(cg, lp_norm(g_functional(f, 0.5, 2).values, kRef, 2) / sobolev_seminorm(f, 0.5, 2).value);
  }
  // measured 0.366 on the two corpus gaussians
  EXPECT_GT(cg, 0.0);
  EXPECT_LE(cg, 0.46);
}

TEST(Bound, ZeroFunction) {
  NormEngine e(kRef);
  for (auto id : {BoundId::eq1_1, BoundId::eq1_1b, BoundId::eq1_13, BoundId::eq1_23}) {
    const auto r = pointwise_bound_check(constant_function(kRef, 0.0), id, {}, e);
    EXPECT_EQ(r.empirical_c, 0.0);
    for (double v : r.lhs.values) EXPECT_EQ(v, 0.0);
  }
}

TEST(Bound, EqOneOneScaleInvariant) {
  NormEngine e(kRef);
  BoundParams bp;
  bp.s = 1;
  bp.alpha = 0.5;
  bp.p = 2;
  const auto f = gaussian(kRef, 1.0);
  const auto a = pointwise_bound_check(f, BoundId::eq1_1, bp, e);
  const auto b = pointwise_bound_check(scaled(f, 2.0), BoundId::eq1_1, bp, e);
  EXPECT_TRUE(std::isfinite(a.empirical_c));
  EXPECT_GT(a.empirical_c, 0.0);
  EXPECT_LE(rel(b.empirical_c, a.empirical_c), 1e-10);
}

TEST(Bound, EqOneOneDilation) {
  NormEngine e(kRef);
  for (const auto& f : testutil::corpus_functions()) {
    if (f.origin->kind != GeneratorKind::gaussian) continue;
    const double a = pointwise_bound_check(f, BoundId::eq1_1, {}, e).empirical_c;
    const double b = pointwise_bound_check(dilate(f, 2), BoundId::eq1_1, {}, e).empirical_c;
    EXPECT_NEAR(b / a, 1.0, 0.15) << f.label;
  }
}

TEST(Bound, AllFieldsFiniteOnCorpus) {
  NormEngine e(kRef);
  for (auto id : {BoundId::eq1_1, BoundId::eq1_1b, BoundId::eq1_13, BoundId::eq1_23, BoundId::eq2_5a, BoundId::eq2_5})
    for (const auto& f : testutil::corpus_functions()) {
      const auto r = pointwise_bound_check(f, id, {}, e);
      EXPECT_TRUE(std::isfinite(r.empirical_c)) << to_string(id) << " " << f.label;
      EXPECT_GT(r.empirical_c, 0.0);
    }
}

TEST(Bound, MinimizedRhsBelowCombined) {
  // the t-minimized form is at most the value at the balancing t, itself comparable to the product form
  NormEngine e(kRef);
  const auto r = pointwise_bound_check(gaussian(kRef, 1.0), BoundId::eq1_13, {}, e);
  ASSERT_TRUE(r.minimized_rhs);
  for (double v : r.minimized_rhs->values) EXPECT_TRUE(std::isfinite(v));
}

TEST(Bound, BadExponents) {
  NormEngine e(kRef);
  BoundParams bp;
  bp.alpha1 = 0.8;
  bp.alpha2 = 0.5;
  try {
    pointwise_bound_check(gaussian(kRef, 1.0), BoundId::eq1_13, bp, e);
    FAIL();
  } catch (const Error& err) {
    EXPECT_EQ(err.code(), ErrorCode::exponent_mismatch);
  }
}
