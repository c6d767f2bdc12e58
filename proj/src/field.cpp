#include "vortlab/field.hpp"

#include <algorithm>
#include <cmath>

#include "vortlab/error.hpp"

namespace vortlab {

ScalarField::ScalarField(GridPtr grid, std::vector<double> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  if (!grid_) throw Error(ErrorCode::GridMismatch, "field without grid");
  if (values_.size() != grid_->size()) {
    throw Error(ErrorCode::GridMismatch, "value count does not match interior node count");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw Error(ErrorCode::NonFiniteValue, "field value is not finite");
  }
}

ScalarField::ScalarField(GridPtr grid, double value)
    : ScalarField(grid, std::vector<double>(grid ? grid->size() : 0, value)) {}

ScalarField ScalarField::sample(GridPtr grid, const std::function<double(Point)>& fn) {
  std::vector<double> v(grid->size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(grid->node(k));
  return ScalarField(std::move(grid), std::move(v));
}

double ScalarField::min() const { return *std::min_element(values_.begin(), values_.end()); }
double ScalarField::max() const { return *std::max_element(values_.begin(), values_.end()); }

void require_same_grid(const ScalarField& a, const ScalarField& b) {
  if (!a.grid().same_as(b.grid())) {
    throw Error(ErrorCode::GridMismatch, "fields live on different grids");
  }
}

double integrate(const ScalarField& field) {
  double s = 0.0;
  for (double v : field.values()) s += v;
  return s * field.grid().cell_area();
}

double inner(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += a[k] * b[k];
  return s * a.grid().cell_area();
}

ScalarField operator*(double s, const ScalarField& f) {
  std::vector<double> v(f.values().begin(), f.values().end());
  for (double& x : v) x *= s;
  return ScalarField(f.grid_ptr(), std::move(v));
}

ScalarField operator+(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] + b[k];
  return ScalarField(a.grid_ptr(), std::move(v));
}

ScalarField operator-(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  std::vector<double> v(a.size());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a[k] - b[k];
  return ScalarField(a.grid_ptr(), std::move(v));
}

double l1_distance(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += std::abs(a[k] - b[k]);
  return s * a.grid().cell_area();
}

double linf_distance(const ScalarField& a, const ScalarField& b) {
  require_same_grid(a, b);
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s = std::max(s, std::abs(a[k] - b[k]));
  return s;
}

}  // namespace vortlab
