#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace vortlab {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }
  friend bool operator==(Point a, Point b) = default;
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }

struct BoundingBox {
  Point lo;
  Point hi;
};

/// Signed area of a closed polygon (positive for counterclockwise order).
double signed_area(std::span<const Point> poly);

/// Convex hull by Andrew's monotone chain; counterclockwise, no collinear points.
std::vector<Point> convex_hull(std::vector<Point> pts);

/// A disk or a strictly convex polygon. Immutable once constructed.
class ConvexDomain {
 public:
  enum class Kind { Disk, Polygon };

  static ConvexDomain disk(Point center, double radius);
  /// Vertices in any orientation; duplicates and collinear vertices are removed.
  static ConvexDomain polygon(std::vector<Point> vertices);
  static ConvexDomain rectangle(Point lo, Point hi);
  static ConvexDomain regular_polygon(int sides, Point center, double circumradius,
                                      double phase = 0.0);

  Kind kind() const { return kind_; }
  bool is_disk() const { return kind_ == Kind::Disk; }
  Point center() const { return center_; }  // disk center, or vertex centroid for polygons
  double radius() const { return radius_; }  // disks only
  std::span<const Point> vertices() const { return vertices_; }

  double area() const;
  double perimeter() const;
  double diameter() const;
  double inradius() const;
  BoundingBox bounding_box() const;

  /// Distance to the boundary for points inside, negative depth outside.
  double inner_distance(Point p) const;
  /// Euclidean distance to the closed set; 0 inside.
  double outer_distance(Point p) const;
  bool contains(Point p) const { return inner_distance(p) > 0.0; }

  /// Distance from an interior point to the boundary along the unit direction dir.
  double ray_exit(Point p, Point dir) const;

  /// Same domain translated/scaled about the origin.
  ConvexDomain transformed(double scale, Point shift) const;

  bool operator==(const ConvexDomain& other) const;

 private:
  ConvexDomain() = default;

  Kind kind_ = Kind::Polygon;
  Point center_;
  double radius_ = 0.0;
  std::vector<Point> vertices_;
  std::vector<Point> normals_;  // outward unit normal of edge i -> i+1
  std::vector<double> offsets_;  // normal_i . x <= offset_i inside
};

}  // namespace vortlab
