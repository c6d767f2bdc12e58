#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "toy_grids.hpp"
#include "vortlab/error.hpp"
#include "vortlab/presets.hpp"
#include "vortlab/rearrange.hpp"

using namespace vortlab;

namespace {

constexpr double kPi = oracle::kPi;

ConvexDomain unit_disk() { return ConvexDomain::disk({0.0, 0.0}, 1.0); }

}  // namespace

TEST(MonotoneProfile, InterpolatesAndExtrapolates) {
  MonotoneProfile p({0, 1, 1, 3}, {0, 1, 2, 4}, Direction::Increasing);
  EXPECT_EQ(p.abscissae().size(), 3u);
  EXPECT_EQ(p(1.0), 2.0);
  EXPECT_EQ(p(2.0), 3.0);
  EXPECT_EQ(p(-5.0), 0.0);
  EXPECT_EQ(p(9.0), 4.0);
  EXPECT_THROW(MonotoneProfile({0, 1}, {1, 0}, Direction::Increasing), Error);
  EXPECT_NO_THROW(MonotoneProfile({0, 1}, {1, 0}, Direction::Decreasing));
  EXPECT_THROW(MonotoneProfile({}, {}, Direction::Increasing), Error);
}

TEST(DistributionFunction, RadialParaboloid) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto psi = ScalarField::sample(g, [](Point p) { return dot(p, p) - 1.0; });
  auto d = distribution_function(psi);
  const double area_err = std::abs(g->measure() - kPi);
  for (double t = -0.95; t < 0.0; t += 0.05) {
    EXPECT_NEAR(d(t), kPi * (t + 1.0), area_err + 4.0 * kPi * g->h());
  }
  EXPECT_EQ(d(-2.0), 0.0);
  EXPECT_EQ(d(0.0), g->measure());
}

TEST(DistributionFunction, ConstantFieldIsOneAtom) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto d = distribution_function(ScalarField(g, 2.5));
  EXPECT_EQ(d(2.4999), 0.0);
  EXPECT_EQ(d(2.5), g->measure());
  ASSERT_EQ(d.levels().size(), 1u);
  EXPECT_TRUE(d.plateaus()[0]);
}

TEST(DistributionFunction, LinearFieldOnUnitSquare) {
  const double h = 1.0 / 64;
  auto g = build_grid(ConvexDomain::rectangle({0, 0}, {1, 1}), h);
  auto d = distribution_function(ScalarField::sample(g, [](Point p) { return p.x; }));
  for (double t = 0.0; t <= 1.0; t += 0.03) {
    EXPECT_NEAR(d(t), t, h);
    EXPECT_NEAR(d.linearized(t), t, h);
  }
}

TEST(LeftInverse, RadialSquare) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto w = ScalarField::sample(g, [](Point p) { return dot(p, p); });
  auto inv = left_inverse(distribution_function(w));
  EXPECT_EQ(inv.lower(), 0.0);
  EXPECT_DOUBLE_EQ(inv.upper(), g->measure());
  for (double s = 0.0; s <= 3.1; s += 0.1) EXPECT_NEAR(inv(s), s / kPi, 0.02);
}

TEST(LeftInverse, ConstantAndEmpty) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto inv = left_inverse(distribution_function(ScalarField(g, 3.0)));
  for (double s = 0.0; s <= g->measure(); s += 0.2) EXPECT_EQ(inv(s), 3.0);
}

TEST(LeftInverse, InvertsTheDistributionAtSampledValues) {
  auto g = build_grid(ConvexDomain::regular_polygon(5, {0, 0}, 1.0), 1.0 / 48);
  auto w = ScalarField::sample(g, [](Point p) { return std::round(8 * (p.x + p.y * p.y)) / 8; });
  auto d = distribution_function(w);
  auto inv = left_inverse(d);
  for (double t : d.levels()) EXPECT_EQ(inv(d(t)), t);
}

TEST(LeftInverse, HoelderQuotientStableUnderRefinement) {
  // omega in C^1 gives an inverse in C^{1/2}
  std::vector<double> q;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    auto g = build_grid(unit_disk(), h);
    auto inv = left_inverse(distribution_function(sample_preset({"appendix-A", {}, {}}, g)));
    q.push_back(holder_seminorm_sampled(inv, 0.5, 0.0, g->measure(), 1024));
  }
  EXPECT_LE(q[1], 1.1 * q[0]);
  EXPECT_LE(q[2], 1.1 * q[1]);
}

TEST(RearrangeAlong, RadialMinimizerProfile) {
  const double h = 1.0 / 64;
  auto g = build_grid(unit_disk(), h);
  auto w0 = sample_preset({"radial-poly", {}, {}}, g);
  auto psi = ScalarField::sample(g, [](Point p) { return dot(p, p) - 1.0; });
  auto w = rearrange_along(w0, psi, Direction::Increasing);
  EXPECT_TRUE(same_distribution(w, w0));
  auto target = ScalarField::sample(g, [](Point p) { return 1.0 + dot(p, p); });
  EXPECT_LE(l1_distance(w, target), 3.0 * h * g->measure());
}

TEST(RearrangeAlong, IdempotentAndOrderPreserving) {
  auto g = build_grid(ConvexDomain::regular_polygon(6, {0.1, 0}, 1.0), 1.0 / 40);
  auto w0 = sample_preset({"two-bump", {}, {}}, g);
  auto psi = ScalarField::sample(g, [](Point p) { return std::sin(2 * p.x) + p.y * p.y; });
  for (Direction dir : {Direction::Increasing, Direction::Decreasing}) {
    auto w = rearrange_along(w0, psi, dir);
    EXPECT_EQ(rearrange_along(w, psi, dir).vector(), w.vector());
    for (std::size_t a = 0; a < g->size(); a += 7) {
      for (std::size_t b = 0; b < g->size(); b += 11) {
        if (psi[a] < psi[b]) {
          if (dir == Direction::Increasing) EXPECT_LE(w[a], w[b]);
          else EXPECT_GE(w[a], w[b]);
        }
      }
    }
  }
}

TEST(RearrangeAlong, ConstantStaysConstantAndGridsMustMatch) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto psi = ScalarField::sample(g, [](Point p) { return p.x; });
  EXPECT_EQ(rearrange_along(ScalarField(g, 2.0), psi, Direction::Increasing).max(), 2.0);
  auto g2 = build_grid(unit_disk(), 1.0 / 33);
  EXPECT_THROW(rearrange_along(ScalarField(g2, 2.0), psi, Direction::Increasing), Error);
}

TEST(RearrangeAlong, PreservesMultisetOnEveryPreset) {
  auto g = build_grid(unit_disk(), 1.0 / 48);
  auto psi = ScalarField::sample(g, [](Point p) { return p.x * p.y + 0.1 * p.x; });
  for (const std::string& name : {"constant", "radial-poly", "appendix-A", "two-bump",
                                  "boundary-nonconstant", "cusp-patch"}) {
    auto w0 = sample_preset({name, {}, {}}, g);
    EXPECT_TRUE(same_distribution(rearrange_along(w0, psi, Direction::Increasing), w0)) << name;
    EXPECT_TRUE(same_distribution(rearrange_along(w0, psi, Direction::Decreasing), w0)) << name;
  }
}

TEST(RearrangeAlong, HardyLittlewoodByExhaustivePermutation) {
  int grids = 0;
  for (const GridPtr& g : toy::grids()) {
    ASSERT_LE(g->size(), 8u);
    ASSERT_GE(g->size(), 3u);
    ++grids;
    auto psi = ScalarField::sample(g, [](Point p) { return std::sin(1.3 * p.x + 0.7) - 0.4 * p.y * p.y; });
    std::vector<double> vals(g->size());
    for (std::size_t k = 0; k < vals.size(); ++k) vals[k] = 1.0 + 0.37 * ((k * 5) % 7);
    ScalarField w0(g, vals);
    const double inc = inner(psi, rearrange_along(w0, psi, Direction::Increasing));
    const double dec = inner(psi, rearrange_along(w0, psi, Direction::Decreasing));
    std::sort(vals.begin(), vals.end());
    double best = -INFINITY, worst = INFINITY;
    do {
      const double v = inner(psi, ScalarField(g, vals));
      best = std::max(best, v);
      worst = std::min(worst, v);
    } while (std::next_permutation(vals.begin(), vals.end()));
    EXPECT_NEAR(inc, best, 1e-12);
    EXPECT_NEAR(dec, worst, 1e-12);
  }
  EXPECT_EQ(grids, 5);
}

TEST(SymmetricRearrangement, AppendixFourThirdsLaw) {
  auto g = build_grid(unit_disk(), 1.0 / 128);
  auto u = symmetric_increasing_rearrangement(sample_preset({"appendix-A", {}, {}}, g));
  EXPECT_TRUE(same_distribution(u, sample_preset({"appendix-A", {}, {}}, g)));
  const double mu0 = oracle::quartic_lens_area();
  EXPECT_NEAR(mu0, 2.0 * oracle::simpson([](double y) { return std::sqrt(1 - y * y * y * y); }, -1, 1, 200000), 1e-5);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double r = norm(g->node(k));
    if (r < 0.1 || r > 0.6) continue;
    const double exact = 1.0 + 2.0 * std::pow(kPi / mu0, 4.0 / 3.0) * std::pow(r, 8.0 / 3.0);
    EXPECT_NEAR(u[k], exact, 0.02 * exact);
  }
}

TEST(SymmetricRearrangement, RadialFieldIsFixed) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto u = ScalarField::sample(g, [](Point p) { return 1.0 + std::pow(dot(p, p), 0.7); });
  auto v = symmetric_increasing_rearrangement(u);
  for (std::size_t k = 0; k < g->size(); ++k) EXPECT_EQ(u[k], v[k]);
}

TEST(SymmetricRearrangement, HalfDiskIndicatorBecomesOuterAnnulus) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto u = ScalarField::sample(g, [](Point p) { return p.y > 0.0 ? 1.0 : 0.0; });
  auto v = symmetric_increasing_rearrangement(u);
  const double area = integrate(u);
  const double r0 = std::sqrt(1.0 - area / kPi);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const double r = norm(g->node(k));
    if (r < r0 - 2 * g->h()) EXPECT_EQ(v[k], 0.0);
    if (r > r0 + 2 * g->h()) EXPECT_EQ(v[k], 1.0);
  }
}

TEST(SymmetricRearrangement, Errors) {
  auto sq = build_grid(ConvexDomain::rectangle({-1, -1}, {1, 1}), 1.0 / 16);
  EXPECT_THROW(symmetric_increasing_rearrangement(ScalarField(sq, 1.0)), Error);
  auto g = build_grid(unit_disk(), 1.0 / 16);
  try {
    symmetric_increasing_rearrangement(ScalarField(g, -1.0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NegativeField);
  }
}

TEST(HolderSeminorm, SquareRootAndLinear) {
  std::vector<double> s, v, lv;
  for (int i = 0; i <= 400; ++i) {
    s.push_back(i / 400.0);
    v.push_back(std::sqrt(i / 400.0));
    lv.push_back(2.5 * i / 400.0);
  }
  MonotoneProfile root(s, v, Direction::Increasing);
  EXPECT_NEAR(holder_seminorm(root, 0.5, 0.0, 1.0), 1.0, 1e-12);
  MonotoneProfile lin(s, lv, Direction::Increasing);
  EXPECT_NEAR(holder_seminorm(lin, 1.0, 0.0, 1.0), 2.5, 1e-12);
  EXPECT_NEAR(holder_seminorm_sampled(lin, 1.0, 0.0, 1.0, 64), 2.5, 1e-12);
  try {
    holder_seminorm(lin, 1.0, 0.5, 0.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInterval);
  }
}
