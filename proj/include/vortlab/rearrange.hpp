#pragma once

#include <filesystem>
#include <vector>

#include "vortlab/field.hpp"

namespace vortlab {

enum class Direction {
  Increasing,  // pairs large values with large psi (energy minimizer)
  Decreasing,  // pairs large values with small psi (energy maximizer)
};

/// Piecewise-linear monotone function of one variable through (s_j, v_j), constant
/// outside [s_front, s_back].
class MonotoneProfile {
 public:
  /// s must be nondecreasing; repeated abscissae keep the last value (right-continuous).
  /// Throws BadParams if v is not monotone in the given direction, EmptyDistribution
  /// when no points are given.
  MonotoneProfile(std::vector<double> s, std::vector<double> v, Direction direction);

  double operator()(double x) const;
  Direction direction() const { return direction_; }
  const std::vector<double>& abscissae() const { return s_; }
  const std::vector<double>& values() const { return v_; }
  double lower() const { return s_.front(); }
  double upper() const { return s_.back(); }

  void save_csv(const std::filesystem::path& path) const;

 private:
  std::vector<double> s_;
  std::vector<double> v_;
  Direction direction_;
};

/// t -> |{field <= t}| on the grid measure (every node weighs h^2).
class DistributionFunction {
 public:
  explicit DistributionFunction(const ScalarField& field);

  /// Step rule: measure of {field <= t}; right-continuous.
  double operator()(double t) const;
  /// Linear interpolation between consecutive breakpoints (t_i, m_i); 0 below t_0.
  double linearized(double t) const;

  const std::vector<double>& levels() const { return t_; }     // distinct values, ascending
  const std::vector<double>& measures() const { return m_; }   // m_i = |{field <= t_i}|
  /// True where the atom {field = t_i} is larger than one cell.
  const std::vector<bool>& plateaus() const { return plateau_; }
  double total_measure() const { return total_; }
  double cell_area() const { return cell_; }
  /// All field values ascending, with repetition.
  const std::vector<double>& sorted_values() const { return sorted_; }

  /// (t_i, m_i) as a nondecreasing profile.
  MonotoneProfile as_profile() const;
  void save_csv(const std::filesystem::path& path) const;

 private:
  std::vector<double> sorted_;
  std::vector<double> t_;
  std::vector<double> m_;
  std::vector<bool> plateau_;
  double total_ = 0.0;
  double cell_ = 0.0;
};

inline DistributionFunction distribution_function(const ScalarField& field) {
  return DistributionFunction(field);
}

/// Continuous nondecreasing inverse on [0, |Omega|] through (0, v_1) and (k h^2, v_k),
/// v_k the k-th smallest value. Gaps between levels are crossed linearly in measure.
MonotoneProfile left_inverse(const DistributionFunction& d);

/// Node indices sorted by (psi, index).
std::vector<std::size_t> ranking(const ScalarField& psi);

/// Field with omega0's values placed monotonically along psi's ranking.
ScalarField rearrange_along(const ScalarField& omega0, const ScalarField& psi, Direction direction);

/// Radial nondecreasing rearrangement about the disk center; ties in radius by index.
ScalarField symmetric_increasing_rearrangement(const ScalarField& u);

/// max |p(t) - p(s)| / |t - s|^beta over breakpoint pairs inside [a, b] (interval ends
/// included as evaluation points). Quadratic in the number of breakpoints.
double holder_seminorm(const MonotoneProfile& p, double beta, double a, double b);
/// Same quotient over `samples` equally spaced points of [a, b]. Used for grid-derived
/// profiles whose breakpoint count makes the exact pairwise maximum too expensive and
/// whose sub-cell jumps would otherwise dominate.
double holder_seminorm_sampled(const MonotoneProfile& p, double beta, double a, double b,
                               int samples = 1024);

/// True when the two fields carry the same multiset of values (bitwise) on one grid.
bool same_distribution(const ScalarField& a, const ScalarField& b);

}  // namespace vortlab
