#include "vortlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "vortlab/error.hpp"

namespace vortlab {

namespace {

constexpr std::array<Point, 4> kUnit{Point{1.0, 0.0}, Point{-1.0, 0.0}, Point{0.0, 1.0},
                                     Point{0.0, -1.0}};
constexpr std::array<int, 4> kDi{1, -1, 0, 0};
constexpr std::array<int, 4> kDj{0, 0, 1, -1};

// Nodes closer than this (relative to h) to the boundary are treated as exterior so
// that no Shortley-Weller arm degenerates to round-off size.
constexpr double kInteriorMargin = 1e-10;

}  // namespace

bool Grid::is_boundary_adjacent(std::size_t k) const {
  const Arms& a = arms_[k];
  return a.neighbor[0] < 0 || a.neighbor[1] < 0 || a.neighbor[2] < 0 || a.neighbor[3] < 0;
}

bool Grid::same_as(const Grid& other) const {
  if (this == &other) return true;
  return h_ == other.h_ && nx_ == other.nx_ && ny_ == other.ny_ && origin_ == other.origin_ &&
         index_ == other.index_ && domain_ == other.domain_;
}

GridPtr build_grid(const ConvexDomain& domain, double h, GridOptions options) {
  if (!(domain.area() > 0.0) || !(domain.diameter() > 0.0)) {
    throw Error(ErrorCode::DegenerateDomain, "domain has zero area");
  }
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::ResolutionTooCoarse, "cell width must be positive");
  }
  if (options.enforce_resolution && !(h < domain.inradius() / 4.0)) {
    throw Error(ErrorCode::ResolutionTooCoarse,
                "h must be below inradius/4 (inradius " + std::to_string(domain.inradius()) + ")");
  }

  auto grid = std::shared_ptr<Grid>(new Grid());
  Grid& g = *grid;
  g.domain_ = domain;
  g.h_ = h;

  const BoundingBox box = domain.bounding_box();
  const double w = box.hi.x - box.lo.x;
  const double ht = box.hi.y - box.lo.y;
  g.nx_ = std::max(1, static_cast<int>(std::ceil(w / h - 1e-9)));
  g.ny_ = std::max(1, static_cast<int>(std::ceil(ht / h - 1e-9)));
  const Point mid{0.5 * (box.lo.x + box.hi.x), 0.5 * (box.lo.y + box.hi.y)};
  g.origin_ = {mid.x - 0.5 * g.nx_ * h + 0.5 * h, mid.y - 0.5 * g.ny_ * h + 0.5 * h};

  g.index_.assign(static_cast<std::size_t>(g.nx_) * g.ny_, -1);
  for (int j = 0; j < g.ny_; ++j) {
    for (int i = 0; i < g.nx_; ++i) {
      if (domain.inner_distance(g.lattice_point(i, j)) > kInteriorMargin * h) {
        g.index_[static_cast<std::size_t>(j) * g.nx_ + i] = static_cast<int>(g.node_i_.size());
        g.node_i_.push_back(i);
        g.node_j_.push_back(j);
      }
    }
  }
  if (g.node_i_.empty() || (options.enforce_resolution && g.node_i_.size() < 16)) {
    throw Error(ErrorCode::ResolutionTooCoarse,
                "only " + std::to_string(g.node_i_.size()) + " interior nodes");
  }

  g.arms_.resize(g.node_i_.size());
  for (std::size_t k = 0; k < g.node_i_.size(); ++k) {
    const Point p = g.node(k);
    Arms& a = g.arms_[k];
    for (int d = 0; d < 4; ++d) {
      const int nb = g.index(g.node_i_[k] + kDi[d], g.node_j_[k] + kDj[d]);
      a.neighbor[d] = nb;
      if (nb >= 0) {
        a.length[d] = h;
      } else {
        const double exit = domain.ray_exit(p, kUnit[d]);
        a.length[d] = std::clamp(exit, kInteriorMargin * h, h);
      }
    }
  }
  return grid;
}

}  // namespace vortlab
