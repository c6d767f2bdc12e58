#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <bit>
#include <fstream>
#include <functional>
#include <numbers>

#include "vortlab/error.hpp"
#include "vortlab/field.hpp"
#include "vortlab/grid.hpp"
#include "vortlab/io.hpp"
#include "vortlab/presets.hpp"

using namespace vortlab;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = std::numbers::pi;

ConvexDomain unit_disk() { return ConvexDomain::disk({0.0, 0.0}, 1.0); }
ConvexDomain square(double a) { return ConvexDomain::rectangle({-a, -a}, {a, a}); }

fs::path scratch(const std::string& name) {
  fs::path dir = fs::temp_directory_path() / "vortlab_test_fieldcore";
  fs::create_directories(dir);
  return dir / name;
}

void expect_code(ErrorCode code, const std::function<void()>& fn) {
  try {
    fn();
    ADD_FAILURE() << "expected " << to_string(code);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), code) << e.what();
  }
}

}  // namespace

TEST(Domain, PolygonNormalizesOrientationAndCollinearVertices) {
  auto d = ConvexDomain::polygon({{0, 0}, {0, 1}, {1, 1}, {1, 0.5}, {1, 0}});
  EXPECT_EQ(d.vertices().size(), 4u);
  EXPECT_NEAR(d.area(), 1.0, 1e-15);
  EXPECT_NEAR(d.perimeter(), 4.0, 1e-15);
  EXPECT_NEAR(d.diameter(), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(d.inradius(), 0.5, 1e-12);
}

TEST(Domain, RejectsDegenerateAndNonConvex) {
  expect_code(ErrorCode::DegenerateDomain, [] { ConvexDomain::polygon({{0, 0}, {1, 1}, {2, 2}}); });
  expect_code(ErrorCode::DegenerateDomain, [] { ConvexDomain::disk({0, 0}, 0.0); });
  expect_code(ErrorCode::NonConvexDomain,
              [] { ConvexDomain::polygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}); });
}

TEST(Domain, DistancesAndRayExit) {
  auto sq = square(1.0);
  EXPECT_NEAR(sq.inner_distance({0.5, 0.0}), 0.5, 1e-15);
  EXPECT_NEAR(sq.inner_distance({2.0, 0.0}), -1.0, 1e-15);
  EXPECT_NEAR(sq.outer_distance({2.0, 2.0}), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(sq.ray_exit({0.25, 0.0}, {1, 0}), 0.75, 1e-15);
  auto disk = unit_disk();
  EXPECT_NEAR(disk.ray_exit({0.0, 0.6}, {1, 0}), 0.8, 1e-15);
  EXPECT_NEAR(ConvexDomain::regular_polygon(6, {0, 0}, 1.0).inradius(), std::sqrt(3.0) / 2, 1e-10);
}

TEST(BuildGrid, DiskAreaWithinHalfPercent) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  EXPECT_LT(std::abs(g->measure() - kPi) / kPi, 0.005);
}

TEST(BuildGrid, AlignedSquareAreaExact) {
  auto g = build_grid(square(1.0), 1.0 / 32);
  EXPECT_EQ(g->measure(), 4.0);
  EXPECT_EQ(g->size(), 64u * 64u);
}

TEST(BuildGrid, TriangleAreaWithinOnePercent) {
  auto g = build_grid(ConvexDomain::polygon({{0, 0}, {1, 0}, {0, 1}}), 1.0 / 128);
  EXPECT_LT(std::abs(g->measure() - 0.5) / 0.5, 0.01);
}

TEST(BuildGrid, AreaErrorBoundedByPerimeterTimesH) {
  const std::vector<ConvexDomain> domains{unit_disk(), square(1.0),
                                          ConvexDomain::regular_polygon(5, {0.1, -0.2}, 1.0, 0.3),
                                          ConvexDomain::polygon({{0, 0}, {1, 0}, {0, 1}})};
  for (const auto& d : domains) {
    for (double h : {1.0 / 32, 1.0 / 64, 1.0 / 128}) {
      if (!(h < d.inradius() / 4)) continue;
      auto g = build_grid(d, h);
      EXPECT_LE(std::abs(g->measure() - d.area()), 2.0 * d.perimeter() * h);
    }
  }
}

TEST(BuildGrid, CutArmsInRangeAndNodesInside) {
  auto d = ConvexDomain::regular_polygon(7, {0, 0}, 1.0, 0.1);
  auto g = build_grid(d, 1.0 / 40);
  for (std::size_t k = 0; k < g->size(); ++k) {
    EXPECT_GT(d.inner_distance(g->node(k)), 0.0);
    const Arms& a = g->arms(k);
    for (Dir dir : kAllDirs) {
      EXPECT_GT(a[dir], 0.0);
      EXPECT_LE(a[dir], g->h());
      if (a.is_cut(dir)) {
        const Point u = dir == Dir::East ? Point{1, 0} : dir == Dir::West ? Point{-1, 0}
                      : dir == Dir::North ? Point{0, 1} : Point{0, -1};
        EXPECT_NEAR(d.inner_distance(g->node(k) + a[dir] * u), 0.0, 1e-12);
      }
    }
  }
}

TEST(BuildGrid, RefinementKeepsCoarseInteriorPoints) {
  auto d = ConvexDomain::regular_polygon(5, {0, 0}, 1.0, 0.2);
  auto coarse = build_grid(d, 1.0 / 32);
  auto fine = build_grid(d, 1.0 / 64);
  for (std::size_t k = 0; k < coarse->size(); ++k) {
    const Point p = coarse->node(k);
    // The fine lattice cell holding p must be interior unless p is within one coarse
    // cell of the boundary.
    const int i = static_cast<int>(std::floor((p.x - fine->origin().x) / fine->h() + 0.5));
    const int j = static_cast<int>(std::floor((p.y - fine->origin().y) / fine->h() + 0.5));
    if (d.inner_distance(p) > coarse->h()) EXPECT_GE(fine->index(i, j), 0);
  }
}

TEST(BuildGrid, RejectsCoarseResolution) {
  expect_code(ErrorCode::ResolutionTooCoarse, [] { build_grid(unit_disk(), 0.25); });
  expect_code(ErrorCode::ResolutionTooCoarse, [] { build_grid(unit_disk(), -1.0); });
}

TEST(Integrate, Examples) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  EXPECT_DOUBLE_EQ(integrate(ScalarField(g, 1.0)), g->measure());
  EXPECT_NEAR(integrate(ScalarField(g, 1.0)), kPi, 0.005 * kPi);
  EXPECT_EQ(integrate(ScalarField(g, 0.0)), 0.0);

  const double h = 1.0 / 64;
  auto sq = build_grid(ConvexDomain::rectangle({0, 0}, {1, 1}), h);
  EXPECT_NEAR(integrate(ScalarField::sample(sq, [](Point p) { return p.x; })), 0.5, h);
}

TEST(Field, RejectsNonFiniteAndMismatchedGrids) {
  auto g = build_grid(unit_disk(), 1.0 / 16);
  std::vector<double> v(g->size(), 1.0);
  v[3] = std::nan("");
  expect_code(ErrorCode::NonFiniteValue, [&] { ScalarField(g, v); });
  auto g2 = build_grid(unit_disk(), 1.0 / 20);
  expect_code(ErrorCode::GridMismatch, [&] { l1_distance(ScalarField(g, 1.0), ScalarField(g2, 1.0)); });
}

TEST(Presets, AppendixMatchesPolynomialInsideInnerDisk) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto w = sample_preset({"appendix-A", {}, {}}, g);
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Point p = g->node(k);
    if (norm(p) <= 0.75) {
      EXPECT_DOUBLE_EQ(w[k], 1.0 + 2.0 * (p.x * p.x + std::pow(p.y, 4)));
    }
    if (norm(p) >= 0.875) EXPECT_DOUBLE_EQ(w[k], appendix_outer_value());
  }
}

TEST(Presets, AppendixPointValues) {
  EXPECT_DOUBLE_EQ(appendix_value({0.0, 0.0}), 1.0);
  EXPECT_DOUBLE_EQ(appendix_value({0.5, 0.5}), 1.0 + 2.0 * (0.25 + 0.0625));
}

TEST(Presets, AppendixBlendIsRadiallyIncreasing) {
  for (double theta = 0.0; theta < 2 * kPi; theta += 0.05) {
    double prev = -1.0;
    for (double r = 0.0; r < 1.0; r += 0.001) {
      const double v = appendix_value({r * std::cos(theta), r * std::sin(theta)});
      EXPECT_GE(v, prev);
      prev = v;
    }
  }
}

TEST(Presets, ConstantAndErrors) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto c = sample_preset({"constant", {{"c", 4.0}}, {}}, g);
  EXPECT_EQ(c.min(), 4.0);
  EXPECT_EQ(c.max(), 4.0);
  expect_code(ErrorCode::UnknownPreset, [&] { sample_preset({"nope", {}, {}}, g); });
  expect_code(ErrorCode::BadParams, [&] { sample_preset({"constant", {{"d", 1.0}}, {}}, g); });
  expect_code(ErrorCode::DegeneratePatch,
              [&] { sample_preset({"cusp-patch", {{"tip_x", 5.0}}, {}}, g); });
}

TEST(Presets, TwoBumpHasTwoSeparatedMaxima) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto w = sample_preset({"two-bump", {}, {}}, g);
  EXPECT_NEAR(w.min(), 1.0, 1e-15);
  EXPECT_NEAR(w.max(), 1.2, 0.01);
  int left = 0, right = 0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    if (w[k] > 1.1) (g->node(k).x < 0 ? left : right)++;
  }
  EXPECT_GT(left, 0);
  EXPECT_EQ(left, right);
}

TEST(Persistence, RoundTripIsBitExact) {
  auto g = build_grid(ConvexDomain::regular_polygon(5, {0.1, 0.0}, 1.0, 0.3), 1.0 / 48);
  auto w = ScalarField::sample(g, [](Point p) { return std::sin(3 * p.x) * std::exp(p.y) / 3.0; });
  save_field(scratch("psi"), w, {"radial-poly", {{"c0", 2.0}}});
  auto loaded = load_field(scratch("psi"));
  ASSERT_EQ(loaded.field.size(), w.size());
  EXPECT_TRUE(loaded.field.grid().same_as(*g));
  for (std::size_t k = 0; k < w.size(); ++k) {
    EXPECT_EQ(std::bit_cast<std::uint64_t>(loaded.field[k]), std::bit_cast<std::uint64_t>(w[k]));
  }
  EXPECT_EQ(loaded.meta.preset, "radial-poly");
  EXPECT_EQ(loaded.meta.params.at("c0"), 2.0);
  EXPECT_EQ(integrate(loaded.field), integrate(w));
}

TEST(Persistence, RadialPresetQuadratureSurvivesReload) {
  auto g = build_grid(unit_disk(), 1.0 / 64);
  auto w = sample_preset({"radial-poly", {}, {}}, g);
  save_field(scratch("radial"), w);
  EXPECT_EQ(integrate(load_field(scratch("radial.json"), g).field), integrate(w));
}

TEST(Persistence, CorruptedPayloadFailsChecksum) {
  auto g = build_grid(unit_disk(), 1.0 / 16);
  save_field(scratch("corrupt"), ScalarField(g, 1.5));
  {
    std::fstream f(scratch("corrupt.bin"), std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(8 * 16 * 16);
    f.put('\x7f');
  }
  expect_code(ErrorCode::ChecksumMismatch, [] { load_field(scratch("corrupt")); });
}

TEST(Persistence, VersionAndMissingFile) {
  auto g = build_grid(unit_disk(), 1.0 / 16);
  save_field(scratch("ver"), ScalarField(g, 1.0));
  std::string text = read_text(scratch("ver.json"));
  const auto pos = text.find("\"schema_version\": 1");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 19, "\"schema_version\": 9");
  write_text(scratch("ver.json"), text);
  expect_code(ErrorCode::VersionMismatch, [] { load_field(scratch("ver")); });
  expect_code(ErrorCode::IoError, [] { load_field(scratch("does-not-exist")); });
}

TEST(Persistence, CsvRoundTrip) {
  std::vector<double> a{0.0, 1.0 / 3.0, 2.5e-300}, v{-1.0, std::sqrt(2.0), 1e300};
  save_csv(scratch("p.csv"), a, v);
  auto [a2, v2] = load_csv(scratch("p.csv"));
  EXPECT_EQ(a2, a);
  EXPECT_EQ(v2, v);
}

TEST(Presets, CustomGridFile) {
  auto g = build_grid(unit_disk(), 1.0 / 32);
  auto w = sample_preset({"two-bump", {}, {}}, g);
  save_field(scratch("custom"), w);
  auto back = sample_preset({"custom-grid-file", {}, scratch("custom").string()}, g);
  EXPECT_EQ(back.vector(), w.vector());
  auto other = build_grid(unit_disk(), 1.0 / 16);
  expect_code(ErrorCode::GridMismatch,
              [&] { sample_preset({"custom-grid-file", {}, scratch("custom").string()}, other); });
}
