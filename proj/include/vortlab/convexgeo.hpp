#pragma once

#include <vector>

#include "vortlab/geometry.hpp"
#include "vortlab/grid.hpp"

namespace vortlab {

/// Outer convex set A with a convex hole D whose closure sits inside A.
struct ConvexRing {
  ConvexDomain outer;
  ConvexDomain inner;

  /// min over closure(D) of dist(x, boundary of A); positive for a valid ring.
  double clearance() const;
  double area() const { return outer.area() - inner.area(); }
};

struct RingBallReport {
  Point center;
  double radius = 0.0;
  double ring_area = 0.0;
  double ratio = 0.0;        // R diam(A) / |A \ D|
  double ratio_inner = 0.0;  // R diam(D) / |A \ D|
};

/// Largest ball inside A \ closure(D), to within tol (default 1e-6 diam A). Throws
/// EmptyRing when the clearance is below tol.
RingBallReport inscribed_ball(const ConvexRing& ring, double tol = 0.0);

/// (8 + 3 pi + pi^3 / 4)^{-1}.
double ring_constant();

struct RingBoundReport {
  RingBallReport ball;
  double required_outer = 0.0;  // ring_constant * |A \ D| / diam(A)
  double required_inner = 0.0;  // ring_constant * |A \ D| / diam(D)
  bool outer_holds = false;
  bool inner_holds = false;
};

RingBoundReport verify_ring_bound(const ConvexRing& ring, double tol = 0.0);

/// |{x outside A : dist(x, A) <= r}| = perimeter r + pi r^2.
double tube_area(const ConvexDomain& a, double r);
/// 2 pi r diam(A) + pi r^2.
double tube_area_bound(const ConvexDomain& a, double r);

/// (hull area - set area) / set area for a union of h-cells given by their centers.
/// Throws EmptySet for no cells.
double convexity_defect(const std::vector<Point>& cell_centers, double h);
/// Same for the cells of grid nodes where mask[k] is true.
double convexity_defect(const Grid& grid, const std::vector<bool>& mask);

}  // namespace vortlab
