#include "vortlab/convexgeo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "vortlab/error.hpp"

namespace vortlab {

namespace {

constexpr double kPi = std::numbers::pi;

struct HalfPlane {
  Point n;   // outward unit normal
  double c;  // n.x <= c inside
};

std::vector<HalfPlane> half_planes(const ConvexDomain& a) {
  std::vector<HalfPlane> out;
  const auto v = a.vertices();
  for (std::size_t i = 0, m = v.size(); i < m; ++i) {
    const Point e = v[(i + 1) % m] - v[i];
    const Point n = (1.0 / norm(e)) * Point{e.y, -e.x};
    out.push_back({n, dot(n, v[i])});
  }
  return out;
}

std::vector<Point> clip(const std::vector<Point>& poly, Point n, double c) {
  std::vector<Point> out;
  for (std::size_t i = 0, m = poly.size(); i < m; ++i) {
    const Point a = poly[i];
    const Point b = poly[(i + 1) % m];
    const double da = dot(n, a) - c;
    const double db = dot(n, b) - c;
    if (da <= 0.0) out.push_back(a);
    if ((da < 0.0 && db > 0.0) || (da > 0.0 && db < 0.0)) out.push_back(a + (da / (da - db)) * (b - a));
  }
  return out;
}

struct Farthest {
  double distance = -std::numeric_limits<double>::infinity();
  Point where;
};

// Farthest point from D within the inner parallel body {x in A : dist(x, bd A) >= t}.
// dist(., D) is convex, so over a polygon the maximum sits at a vertex and over a disk
// on its bounding circle.
Farthest farthest_in_parallel_body(const ConvexRing& ring, const std::vector<HalfPlane>& planes,
                                   double t) {
  const ConvexDomain& a = ring.outer;
  const ConvexDomain& d = ring.inner;
  Farthest best;
  auto consider = [&](Point p) {
    const double v = d.outer_distance(p);
    if (v > best.distance) best = {v, p};
  };
  if (!a.is_disk()) {
    std::vector<Point> body(a.vertices().begin(), a.vertices().end());
    for (const HalfPlane& h : planes) {
      body = clip(body, h.n, h.c - t);
      if (body.empty()) return best;
    }
    for (const Point& p : body) consider(p);
    return best;
  }
  const double rho = a.radius() - t;
  if (rho < 0.0) return best;
  const Point c = a.center();
  if (d.is_disk()) {
    Point dir = c - d.center();
    const double len = norm(dir);
    dir = len > 0.0 ? (1.0 / len) * dir : Point{1.0, 0.0};
    consider(c + rho * dir);
    return best;
  }
  constexpr int kSamples = 2048;
  auto at = [&](double th) { return c + rho * Point{std::cos(th), std::sin(th)}; };
  double best_th = 0.0;
  for (int i = 0; i < kSamples; ++i) {
    const double th = 2.0 * kPi * i / kSamples;
    const double before = best.distance;
    consider(at(th));
    if (best.distance > before) best_th = th;
  }
  // golden-section polish within one sample spacing on each side
  double lo = best_th - 2.0 * kPi / kSamples, hi = best_th + 2.0 * kPi / kSamples;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int it = 0; it < 60; ++it) {
    const double m1 = hi - g * (hi - lo), m2 = lo + g * (hi - lo);
    if (d.outer_distance(at(m1)) >= d.outer_distance(at(m2))) hi = m2; else lo = m1;
  }
  consider(at(0.5 * (lo + hi)));
  return best;
}

}  // namespace

double ConvexRing::clearance() const {
  if (inner.is_disk()) return outer.inner_distance(inner.center()) - inner.radius();
  double c = std::numeric_limits<double>::infinity();
  for (const Point& v : inner.vertices()) c = std::min(c, outer.inner_distance(v));
  return c;
}

double ring_constant() { return 1.0 / (8.0 + 3.0 * kPi + kPi * kPi * kPi / 4.0); }

RingBallReport inscribed_ball(const ConvexRing& ring, double tol) {
  const ConvexDomain& a = ring.outer;
  if (!(tol > 0.0)) tol = 1e-6 * a.diameter();
  if (!(ring.clearance() > tol)) {
    throw Error(ErrorCode::EmptyRing, "inner set is not strictly inside the outer one");
  }
  const auto planes = a.is_disk() ? std::vector<HalfPlane>{} : half_planes(a);

  // g(t) = max over the t-parallel body of dist(., D) - t is decreasing in t and the
  // largest inscribed radius is its root.
  double lo = 0.0, hi = a.inradius();
  Farthest at_lo = farthest_in_parallel_body(ring, planes, lo);
  const Farthest at_hi = farthest_in_parallel_body(ring, planes, hi);
  if (at_hi.distance >= hi) {
    lo = hi;
    at_lo = at_hi;
  } else {
    while (hi - lo > 1e-3 * tol) {
      const double mid = 0.5 * (lo + hi);
      const Farthest f = farthest_in_parallel_body(ring, planes, mid);
      if (f.distance >= mid) {
        lo = mid;
        at_lo = f;
      } else {
        hi = mid;
      }
    }
  }
  RingBallReport r;
  r.center = at_lo.where;
  // the certified radius is whatever the chosen center actually clears
  r.radius = std::min(a.inner_distance(r.center), ring.inner.outer_distance(r.center));
  r.ring_area = ring.area();
  r.ratio = r.radius * a.diameter() / r.ring_area;
  r.ratio_inner = r.radius * ring.inner.diameter() / r.ring_area;
  return r;
}

RingBoundReport verify_ring_bound(const ConvexRing& ring, double tol) {
  RingBoundReport rep;
  rep.ball = inscribed_ball(ring, tol);
  rep.required_outer = ring_constant() * rep.ball.ring_area / ring.outer.diameter();
  rep.required_inner = ring_constant() * rep.ball.ring_area / ring.inner.diameter();
  rep.outer_holds = rep.ball.radius >= rep.required_outer;
  rep.inner_holds = rep.ball.radius >= rep.required_inner;
  return rep;
}

double tube_area(const ConvexDomain& a, double r) {
  if (!(r > 0.0)) throw Error(ErrorCode::BadParams, "tube radius must be positive");
  return a.perimeter() * r + kPi * r * r;
}

double tube_area_bound(const ConvexDomain& a, double r) {
  return 2.0 * kPi * r * a.diameter() + kPi * r * r;
}

double convexity_defect(const std::vector<Point>& cell_centers, double h) {
  if (cell_centers.empty()) throw Error(ErrorCode::EmptySet, "no cells");
  std::vector<Point> corners;
  corners.reserve(4 * cell_centers.size());
  const double e = 0.5 * h;
  for (const Point& p : cell_centers) {
    corners.push_back({p.x - e, p.y - e});
    corners.push_back({p.x + e, p.y - e});
    corners.push_back({p.x + e, p.y + e});
    corners.push_back({p.x - e, p.y + e});
  }
  const double set_area = static_cast<double>(cell_centers.size()) * h * h;
  const double hull_area = signed_area(convex_hull(std::move(corners)));
  return std::max(0.0, hull_area - set_area) / set_area;
}

double convexity_defect(const Grid& grid, const std::vector<bool>& mask) {
  // only the extreme cells of each lattice row can contribute hull corners
  std::vector<int> lo(static_cast<std::size_t>(grid.ny()), grid.nx());
  std::vector<int> hi(static_cast<std::size_t>(grid.ny()), -1);
  std::size_t count = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!mask[k]) continue;
    ++count;
    const auto j = static_cast<std::size_t>(grid.node_j(k));
    lo[j] = std::min(lo[j], grid.node_i(k));
    hi[j] = std::max(hi[j], grid.node_i(k));
  }
  if (count == 0) throw Error(ErrorCode::EmptySet, "mask selects no cells");
  std::vector<Point> extremes;
  for (int j = 0; j < grid.ny(); ++j) {
    if (hi[j] < 0) continue;
    extremes.push_back(grid.lattice_point(lo[j], j));
    extremes.push_back(grid.lattice_point(hi[j], j));
  }
  const double h = grid.h();
  const double set_area = static_cast<double>(count) * h * h;
  std::vector<Point> corners;
  for (const Point& p : extremes) {
    corners.push_back({p.x - 0.5 * h, p.y - 0.5 * h});
    corners.push_back({p.x + 0.5 * h, p.y - 0.5 * h});
    corners.push_back({p.x + 0.5 * h, p.y + 0.5 * h});
    corners.push_back({p.x - 0.5 * h, p.y + 0.5 * h});
  }
  const double hull_area = signed_area(convex_hull(std::move(corners)));
  return std::max(0.0, hull_area - set_area) / set_area;
}

}  // namespace vortlab
