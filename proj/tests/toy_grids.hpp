#pragma once

#include <vector>

#include "vortlab/grid.hpp"

namespace toy {

// Grids with at most eight interior cells, small enough for exhaustive permutation.
inline std::vector<vortlab::GridPtr> grids() {
  using vortlab::ConvexDomain;
  const vortlab::GridOptions loose{.enforce_resolution = false};
  std::vector<vortlab::GridPtr> out;
  out.push_back(vortlab::build_grid(ConvexDomain::rectangle({0, 0}, {4, 2}), 1.0, loose));
  out.push_back(vortlab::build_grid(ConvexDomain::rectangle({0, 0}, {3, 2}), 1.0, loose));
  out.push_back(vortlab::build_grid(ConvexDomain::polygon({{0, 0}, {4, 0}, {0, 4}}), 1.0, loose));
  out.push_back(vortlab::build_grid(ConvexDomain::disk({0, 0}, 1.2), 1.0, loose));
  out.push_back(vortlab::build_grid(ConvexDomain::regular_polygon(5, {0, 0}, 1.7, 0.3), 1.0, loose));
  return out;
}

}  // namespace toy
