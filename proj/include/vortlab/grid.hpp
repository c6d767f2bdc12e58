#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "vortlab/geometry.hpp"

namespace vortlab {

enum class Dir { East = 0, West = 1, North = 2, South = 3 };

inline constexpr std::array<Dir, 4> kAllDirs{Dir::East, Dir::West, Dir::North, Dir::South};

/// Spacing from an interior node to its neighbor in one axis direction: h when the
/// neighbor is interior, otherwise the cut distance to the boundary, in (0, h].
struct Arms {
  std::array<double, 4> length{};
  std::array<int, 4> neighbor{-1, -1, -1, -1};  // interior index or -1 when cut

  double operator[](Dir d) const { return length[static_cast<int>(d)]; }
  bool is_cut(Dir d) const { return neighbor[static_cast<int>(d)] < 0; }
};

struct GridOptions {
  /// Enforce h < inradius/4 and at least 16 interior nodes. Disabled only for toy grids.
  bool enforce_resolution = true;
};

/// Cell-centered uniform lattice over the domain bounding box. Interior nodes are
/// cell centers strictly inside the domain; each carries the weight h*h.
class Grid {
 public:
  const ConvexDomain& domain() const { return domain_; }
  double h() const { return h_; }
  double cell_area() const { return h_ * h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Point origin() const { return origin_; }  // center of lattice cell (0, 0)

  std::size_t size() const { return node_i_.size(); }
  double measure() const { return static_cast<double>(size()) * cell_area(); }

  Point lattice_point(int i, int j) const {
    return {origin_.x + i * h_, origin_.y + j * h_};
  }
  Point node(std::size_t k) const { return lattice_point(node_i_[k], node_j_[k]); }
  int node_i(std::size_t k) const { return node_i_[k]; }
  int node_j(std::size_t k) const { return node_j_[k]; }

  /// Interior index of lattice cell (i, j), or -1 for exterior/out-of-range cells.
  int index(int i, int j) const {
    if (i < 0 || j < 0 || i >= nx_ || j >= ny_) return -1;
    return index_[static_cast<std::size_t>(j) * nx_ + i];
  }

  const Arms& arms(std::size_t k) const { return arms_[k]; }
  bool is_boundary_adjacent(std::size_t k) const;

  /// Same lattice and domain (pointer identity not required).
  bool same_as(const Grid& other) const;

 private:
  friend std::shared_ptr<const Grid> build_grid(const ConvexDomain&, double, GridOptions);
  Grid() = default;

  ConvexDomain domain_ = ConvexDomain::disk({0.0, 0.0}, 1.0);
  double h_ = 0.0;
  int nx_ = 0;
  int ny_ = 0;
  Point origin_;
  std::vector<int> index_;
  std::vector<int> node_i_;
  std::vector<int> node_j_;
  std::vector<Arms> arms_;
};

using GridPtr = std::shared_ptr<const Grid>;

GridPtr build_grid(const ConvexDomain& domain, double h, GridOptions options = {});

}  // namespace vortlab
