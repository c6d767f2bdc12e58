#pragma once

#include <functional>
#include <span>
#include <vector>

#include "vortlab/grid.hpp"

namespace vortlab {

/// One finite value per interior node of a grid.
class ScalarField {
 public:
  ScalarField(GridPtr grid, std::vector<double> values);
  /// Constant field.
  ScalarField(GridPtr grid, double value);

  /// Samples fn at every interior node.
  static ScalarField sample(GridPtr grid, const std::function<double(Point)>& fn);

  const Grid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t k) const { return values_[k]; }
  std::span<const double> values() const { return values_; }
  const std::vector<double>& vector() const { return values_; }

  double min() const;
  double max() const;

 private:
  GridPtr grid_;
  std::vector<double> values_;
};

/// Throws GridMismatch unless both fields live on the same lattice and domain.
void require_same_grid(const ScalarField& a, const ScalarField& b);

/// Cell-weighted midpoint rule: sum of h^2 * value over interior nodes.
double integrate(const ScalarField& field);

/// Weighted inner product h^2 * sum a_k b_k.
double inner(const ScalarField& a, const ScalarField& b);

ScalarField operator*(double s, const ScalarField& f);
ScalarField operator+(const ScalarField& a, const ScalarField& b);
ScalarField operator-(const ScalarField& a, const ScalarField& b);

/// h^2 * sum |a - b|.
double l1_distance(const ScalarField& a, const ScalarField& b);
double linf_distance(const ScalarField& a, const ScalarField& b);

}  // namespace vortlab
