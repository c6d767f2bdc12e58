#include "vortlab/geometry.hpp"

#include <algorithm>
#include <limits>
#include <numbers>

#include "vortlab/error.hpp"

namespace vortlab {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DegenerateDomain: return "DegenerateDomain";
    case ErrorCode::NonConvexDomain: return "NonConvexDomain";
    case ErrorCode::ResolutionTooCoarse: return "ResolutionTooCoarse";
    case ErrorCode::UnknownPreset: return "UnknownPreset";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::ChecksumMismatch: return "ChecksumMismatch";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::EmptyDistribution: return "EmptyDistribution";
    case ErrorCode::EmptyInterval: return "EmptyInterval";
    case ErrorCode::NegativeField: return "NegativeField";
    case ErrorCode::NotADisk: return "NotADisk";
    case ErrorCode::EmptyRing: return "EmptyRing";
    case ErrorCode::EmptySet: return "EmptySet";
    case ErrorCode::LevelOutOfRange: return "LevelOutOfRange";
    case ErrorCode::SignViolation: return "SignViolation";
    case ErrorCode::NoViolationFound: return "NoViolationFound";
    case ErrorCode::DegeneratePatch: return "DegeneratePatch";
    case ErrorCode::NonFiniteValue: return "NonFiniteValue";
  }
  return "Unknown";
}

double signed_area(std::span<const Point> poly) {
  double a = 0.0;
  for (std::size_t i = 0, n = poly.size(); i < n; ++i) {
    a += cross(poly[i], poly[(i + 1) % n]);
  }
  return 0.5 * a;
}

std::vector<Point> convex_hull(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end(), [](Point a, Point b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    const Point& p = pts[i];
    while (k >= t && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0.0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

ConvexDomain ConvexDomain::disk(Point center, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw Error(ErrorCode::DegenerateDomain, "disk radius must be positive");
  }
  ConvexDomain d;
  d.kind_ = Kind::Disk;
  d.center_ = center;
  d.radius_ = radius;
  return d;
}

ConvexDomain ConvexDomain::polygon(std::vector<Point> vertices) {
  for (const Point& p : vertices) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
      throw Error(ErrorCode::DegenerateDomain, "non-finite polygon vertex");
    }
  }
  double scale = 0.0;
  for (const Point& p : vertices) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = 1e-12 * std::max(scale, 1.0);

  std::vector<Point> v;
  for (const Point& p : vertices) {
    if (v.empty() || norm(p - v.back()) > eps) v.push_back(p);
  }
  while (v.size() > 1 && norm(v.front() - v.back()) <= eps) v.pop_back();
  if (v.size() >= 3 && signed_area(v) < 0.0) std::reverse(v.begin(), v.end());

  // drop collinear vertices until stable
  bool changed = true;
  while (changed && v.size() >= 3) {
    changed = false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      const Point a = v[(i + v.size() - 1) % v.size()];
      const Point b = v[i];
      const Point c = v[(i + 1) % v.size()];
      if (std::abs(cross(b - a, c - b)) <= eps * (norm(b - a) + norm(c - b))) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
        changed = true;
        break;
      }
    }
  }
  if (v.size() < 3 || !(signed_area(v) > 0.0)) {
    throw Error(ErrorCode::DegenerateDomain, "polygon needs three non-collinear vertices");
  }
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point a = v[(i + v.size() - 1) % v.size()];
    const Point b = v[i];
    const Point c = v[(i + 1) % v.size()];
    if (cross(b - a, c - b) <= 0.0) {
      throw Error(ErrorCode::NonConvexDomain, "polygon vertices are not in convex position");
    }
  }

  ConvexDomain d;
  d.kind_ = Kind::Polygon;
  d.vertices_ = std::move(v);
  const std::size_t n = d.vertices_.size();
  Point c{};
  for (const Point& p : d.vertices_) c = c + p;
  d.center_ = (1.0 / static_cast<double>(n)) * c;
  for (std::size_t i = 0; i < n; ++i) {
    const Point e = d.vertices_[(i + 1) % n] - d.vertices_[i];
    const double len = norm(e);
    const Point nrm{e.y / len, -e.x / len};
    d.normals_.push_back(nrm);
    d.offsets_.push_back(dot(nrm, d.vertices_[i]));
  }
  return d;
}

ConvexDomain ConvexDomain::rectangle(Point lo, Point hi) {
  return polygon({lo, {hi.x, lo.y}, hi, {lo.x, hi.y}});
}

ConvexDomain ConvexDomain::regular_polygon(int sides, Point center, double circumradius,
                                           double phase) {
  if (sides < 3) throw Error(ErrorCode::DegenerateDomain, "regular polygon needs >= 3 sides");
  std::vector<Point> v;
  for (int k = 0; k < sides; ++k) {
    const double t = phase + 2.0 * std::numbers::pi * k / sides;
    v.push_back({center.x + circumradius * std::cos(t), center.y + circumradius * std::sin(t)});
  }
  return polygon(std::move(v));
}

double ConvexDomain::area() const {
  if (is_disk()) return std::numbers::pi * radius_ * radius_;
  return signed_area(vertices_);
}

double ConvexDomain::perimeter() const {
  if (is_disk()) return 2.0 * std::numbers::pi * radius_;
  double p = 0.0;
  for (std::size_t i = 0, n = vertices_.size(); i < n; ++i) {
    p += norm(vertices_[(i + 1) % n] - vertices_[i]);
  }
  return p;
}

double ConvexDomain::diameter() const {
  if (is_disk()) return 2.0 * radius_;
  double d = 0.0;
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    for (std::size_t j = i + 1; j < vertices_.size(); ++j) {
      d = std::max(d, norm(vertices_[i] - vertices_[j]));
    }
  }
  return d;
}

double ConvexDomain::inradius() const {
  if (is_disk()) return radius_;
  // Largest t with n_i.x + t <= c_i for all edges: a bounded 3-variable LP whose optimum
  // sits where three constraints are active, so enumerate edge triples.
  const std::size_t n = normals_.size();
  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      for (std::size_t c = b + 1; c < n; ++c) {
        const std::size_t idx[3] = {a, b, c};
        double m[3][4];
        for (int r = 0; r < 3; ++r) {
          m[r][0] = normals_[idx[r]].x;
          m[r][1] = normals_[idx[r]].y;
          m[r][2] = 1.0;
          m[r][3] = offsets_[idx[r]];
        }
        const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        if (std::abs(det) < 1e-12) continue;
        // Cramer's rule
        double sol[3];
        for (int col = 0; col < 3; ++col) {
          double mm[3][3];
          for (int r = 0; r < 3; ++r) {
            for (int q = 0; q < 3; ++q) mm[r][q] = q == col ? m[r][3] : m[r][q];
          }
          sol[col] = (mm[0][0] * (mm[1][1] * mm[2][2] - mm[1][2] * mm[2][1]) -
                      mm[0][1] * (mm[1][0] * mm[2][2] - mm[1][2] * mm[2][0]) +
                      mm[0][2] * (mm[1][0] * mm[2][1] - mm[1][1] * mm[2][0])) /
                     det;
        }
        const Point x{sol[0], sol[1]};
        const double t = sol[2];
        if (t <= best) continue;
        bool feasible = true;
        for (std::size_t e = 0; e < n && feasible; ++e) {
          feasible = dot(normals_[e], x) + t <= offsets_[e] + 1e-12 * (1.0 + std::abs(offsets_[e]));
        }
        if (feasible) best = t;
      }
    }
  }
  return best;
}

BoundingBox ConvexDomain::bounding_box() const {
  if (is_disk()) {
    return {{center_.x - radius_, center_.y - radius_}, {center_.x + radius_, center_.y + radius_}};
  }
  BoundingBox b{vertices_.front(), vertices_.front()};
  for (const Point& p : vertices_) {
    b.lo.x = std::min(b.lo.x, p.x);
    b.lo.y = std::min(b.lo.y, p.y);
    b.hi.x = std::max(b.hi.x, p.x);
    b.hi.y = std::max(b.hi.y, p.y);
  }
  return b;
}

double ConvexDomain::inner_distance(Point p) const {
  if (is_disk()) return radius_ - norm(p - center_);
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < normals_.size(); ++e) {
    d = std::min(d, offsets_[e] - dot(normals_[e], p));
  }
  if (d >= 0.0) return d;
  return -outer_distance(p);
}

double ConvexDomain::outer_distance(Point p) const {
  if (is_disk()) return std::max(0.0, norm(p - center_) - radius_);
  bool inside = true;
  for (std::size_t e = 0; e < normals_.size(); ++e) {
    if (dot(normals_[e], p) > offsets_[e]) {
      inside = false;
      break;
    }
  }
  if (inside) return 0.0;
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0, n = vertices_.size(); i < n; ++i) {
    const Point a = vertices_[i];
    const Point b = vertices_[(i + 1) % n];
    const Point ab = b - a;
    const double t = std::clamp(dot(p - a, ab) / dot(ab, ab), 0.0, 1.0);
    d = std::min(d, norm(p - (a + t * ab)));
  }
  return d;
}

double ConvexDomain::ray_exit(Point p, Point dir) const {
  if (is_disk()) {
    const Point q = p - center_;
    const double b = dot(dir, q);
    const double c = dot(q, q) - radius_ * radius_;
    return -b + std::sqrt(std::max(0.0, b * b - c));
  }
  double t = std::numeric_limits<double>::infinity();
  for (std::size_t e = 0; e < normals_.size(); ++e) {
    const double nd = dot(normals_[e], dir);
    if (nd > 0.0) t = std::min(t, (offsets_[e] - dot(normals_[e], p)) / nd);
  }
  return t;
}

ConvexDomain ConvexDomain::transformed(double scale, Point shift) const {
  if (is_disk()) return disk(scale * center_ + shift, scale * radius_);
  std::vector<Point> v;
  for (const Point& p : vertices_) v.push_back(scale * p + shift);
  return polygon(std::move(v));
}

bool ConvexDomain::operator==(const ConvexDomain& other) const {
  if (kind_ != other.kind_) return false;
  if (is_disk()) return center_ == other.center_ && radius_ == other.radius_;
  return vertices_ == other.vertices_;
}

}  // namespace vortlab
