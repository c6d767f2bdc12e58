#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "vortlab/error.hpp"
#include "vortlab/poisson.hpp"

using namespace vortlab;

namespace {

constexpr double kPi = oracle::kPi;

ConvexDomain unit_disk() { return ConvexDomain::disk({0.0, 0.0}, 1.0); }

double sup_error(const ScalarField& f, const std::function<double(Point)>& exact) {
  double e = 0.0;
  for (std::size_t k = 0; k < f.size(); ++k) e = std::max(e, std::abs(f[k] - exact(f.grid().node(k))));
  return e;
}

}  // namespace

TEST(SolveDirichlet, RadialQuadraticsAreReproduced) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto s4 = solve_dirichlet(ScalarField(g, 4.0));
  EXPECT_LE(s4.residual_norm, kDefaultPoissonTol);
  EXPECT_LE(sup_error(s4.psi, [](Point p) { return dot(p, p) - 1.0; }), 1e-10);
  EXPECT_NEAR(s4.psi.min(), -1.0, 1e-3);
  auto s1 = solve_dirichlet(ScalarField(g, 1.0));
  EXPECT_LE(sup_error(s1.psi, [](Point p) { return (dot(p, p) - 1.0) / 4.0; }), 1e-10);
}

TEST(SolveDirichlet, QuarticSolutionConvergesAtSecondOrder) {
  // psi = r^4 - 1, Delta psi = 16 r^2: not reproduced exactly, so the order is visible
  std::vector<double> errs;
  for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
    auto g = build_grid(unit_disk(), h);
    auto s = solve_dirichlet(ScalarField::sample(g, [](Point p) { return 16.0 * dot(p, p); }));
    errs.push_back(sup_error(s.psi, [](Point p) { return dot(p, p) * dot(p, p) - 1.0; }));
  }
  EXPECT_GE(errs[0] / errs[1], 3.5);
  EXPECT_GE(errs[1] / errs[2], 3.5);
}

TEST(SolveDirichlet, UnitSquareMatchesSineSeries) {
  auto g = build_grid(ConvexDomain::rectangle({0, 0}, {1, 1}), 1.0 / 256);
  auto s = solve_dirichlet(ScalarField(g, 1.0));
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> pick(0, g->size() - 1);
  double err = 0.0;
  for (int t = 0; t < 150; ++t) {
    const std::size_t k = pick(rng);
    const Point p = g->node(k);
    err = std::max(err, std::abs(s.psi[k] - oracle::unit_square_poisson(p.x, p.y)));
  }
  // the center is the extreme point of the solution
  const int c = g->index(127, 127);
  err = std::max(err, std::abs(s.psi[c] - oracle::unit_square_poisson(g->node(c).x, g->node(c).y)));
  EXPECT_LE(err, 1e-4);
}

TEST(SolveDirichlet, MaximumPrincipleAndMonotonicity) {
  auto g = build_grid(ConvexDomain::regular_polygon(5, {0, 0}, 1.0, 0.4), 1.0 / 48);
  auto w1 = ScalarField::sample(g, [](Point p) { return std::exp(p.x) * (1.0 + 0.5 * std::sin(4 * p.y)); });
  auto w2 = w1 + ScalarField::sample(g, [](Point p) { return p.x > 0.2 ? 0.3 : 0.0; });
  auto p1 = solve_dirichlet(w1).psi;
  auto p2 = solve_dirichlet(w2).psi;
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_LT(p1[k], 0.0);
    EXPECT_GE(p1[k], p2[k] - 1e-14);
  }
}

TEST(SolveDirichlet, RejectsBadInput) {
  auto g = build_grid(unit_disk(), 1.0 / 16);
  auto g2 = build_grid(unit_disk(), 1.0 / 17);
  auto lap = laplacian_for(g);
  EXPECT_THROW(solve_dirichlet(*lap, ScalarField(g2, 1.0)), Error);
  EXPECT_THROW(solve_dirichlet(ScalarField(g, 1.0), 0.0), Error);
  // a residual far below round-off cannot be met
  try {
    solve_dirichlet(ScalarField(g, 1e6), 1e-30);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
}

TEST(Gradient, PolynomialExamples) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto psi = ScalarField::sample(g, [](Point p) { return (dot(p, p) - 1.0) / 4.0; });
  auto [gx, gy] = gradient(psi);
  EXPECT_LE(sup_error(gx, [](Point p) { return p.x / 2; }), 1e-12);
  EXPECT_LE(sup_error(gy, [](Point p) { return p.y / 2; }), 1e-12);

  auto [zx, zy] = gradient(ScalarField(g, 0.0));
  EXPECT_EQ(zx.max(), 0.0);
  EXPECT_EQ(zy.min(), 0.0);

  auto sq = build_grid(ConvexDomain::rectangle({-1, -1}, {1, 1}), 1.0 / 32);
  auto xy = ScalarField::sample(sq, [](Point p) { return p.x * p.y; });
  auto [ax, ay] = gradient(xy, std::nullopt);
  EXPECT_LE(sup_error(ax, [](Point p) { return p.y; }), 1e-12);
  EXPECT_LE(sup_error(ay, [](Point p) { return p.x; }), 1e-12);
}

TEST(Gradient, SecondOrderOnSmoothField) {
  std::vector<double> errs;
  for (double h : {1.0 / 32, 1.0 / 64}) {
    auto g = build_grid(unit_disk(), h);
    auto f = ScalarField::sample(g, [](Point p) { return std::sin(2 * p.x) * std::cos(p.y); });
    auto [gx, gy] = gradient(f, std::nullopt);
    errs.push_back(std::max(sup_error(gx, [](Point p) { return 2 * std::cos(2 * p.x) * std::cos(p.y); }),
                            sup_error(gy, [](Point p) { return -std::sin(2 * p.x) * std::sin(p.y); })));
  }
  EXPECT_GE(errs[0] / errs[1], 3.0);
}

TEST(Velocity, IsPerpendicularGradient) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto psi = ScalarField::sample(g, [](Point p) { return (dot(p, p) - 1.0) / 4.0; });
  auto [u, v] = velocity(psi);
  EXPECT_LE(sup_error(u, [](Point p) { return -p.y / 2; }), 1e-12);
  EXPECT_LE(sup_error(v, [](Point p) { return p.x / 2; }), 1e-12);
}

TEST(KineticEnergy, DiskValues) {
  auto g = build_grid(unit_disk(), 1.0 / 128);
  EXPECT_NEAR(kinetic_energy(ScalarField(g, 4.0)), kPi, 0.01 * kPi);
  EXPECT_NEAR(kinetic_energy(ScalarField(g, 1.0)), kPi / 16, 0.01 * kPi / 16);
  EXPECT_EQ(kinetic_energy(ScalarField(g, 0.0)), 0.0);
}

TEST(KineticEnergy, QuadraticScaling) {
  auto g = build_grid(ConvexDomain::regular_polygon(6, {0, 0}, 1.0), 1.0 / 64);
  auto w = ScalarField::sample(g, [](Point p) { return 1.0 + p.x * p.x + 0.3 * p.y; });
  const double e = kinetic_energy(w);
  for (double c : {0.5, 3.0, -2.0}) {
    EXPECT_NEAR(kinetic_energy(c * w), c * c * e, 1e-10 * c * c * e);
  }
}

TEST(KineticEnergy, AgreesWithPairingToFirstOrder) {
  // |E - (-1/2 <psi, omega>)| shrinks under refinement on cut-cell and aligned domains
  for (const auto& d : {unit_disk(), ConvexDomain::rectangle({-1, -1}, {1, 1})}) {
    std::vector<double> gaps;
    for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      auto g = build_grid(d, h);
      auto w = ScalarField::sample(g, [](Point p) { return 2.0 - p.x * p.x + p.y; });
      auto psi = solve_dirichlet(w).psi;
      gaps.push_back(std::abs(dirichlet_energy(psi) - energy_pairing(psi, w)));
      EXPECT_LE(gaps.back(), 2.0 * h * std::abs(energy_pairing(psi, w)));
    }
    EXPECT_LT(gaps[2], gaps[0]);
  }
}

TEST(FirstEigenvalue, UnitSquare) {
  auto e = first_eigenvalue(build_grid(ConvexDomain::rectangle({0, 0}, {1, 1}), 1.0 / 64));
  EXPECT_NEAR(e.lambda1, 2 * kPi * kPi, 0.005 * 2 * kPi * kPi);
  EXPECT_LE(e.rayleigh_residual, 1e-8);
  EXPECT_NEAR(inner(e.eigenfield, e.eigenfield), 1.0, 1e-12);
  EXPECT_GT(e.eigenfield.min(), 0.0);
}

TEST(FirstEigenvalue, UnitDiskMatchesBesselRoot) {
  const double j = oracle::bessel_j0_first_root();
  EXPECT_NEAR(j, 2.404825557695773, 1e-12);
  auto e = first_eigenvalue(build_grid(unit_disk(), 1.0 / 64));
  EXPECT_NEAR(e.lambda1, j * j, 0.005 * j * j);
}

TEST(FirstEigenvalue, Rectangle) {
  auto e = first_eigenvalue(build_grid(ConvexDomain::rectangle({0, 0}, {2, 1}), 1.0 / 64));
  const double exact = kPi * kPi * (0.25 + 1.0);
  EXPECT_NEAR(e.lambda1, exact, 0.005 * exact);
}

TEST(FirstEigenvalue, IterationCap) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  try {
    first_eigenvalue(g, 1e-8, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonConvergence);
  }
}
