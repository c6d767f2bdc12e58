#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vortlab/poisson.hpp"
#include "vortlab/rearrange.hpp"

namespace vortlab {

enum class Extremum { Min, Max };

std::string to_string(Extremum e);
/// Min pairs omega with psi increasingly, Max decreasingly.
Direction direction_of(Extremum e);

struct SteadyOptions {
  /// Bound on ||omega_{k+1} - omega_k||_1 / |Omega|. 0 selects 4 h^2 (max omega0 -
  /// min omega0): the discrete minimizer need not be an exact fixed point, since two
  /// nodes whose psi values differ by less than their mutual interaction may sit in
  /// either order, and the residual stalls at a level of that size.
  double tol = 0.0;
  int max_iters = 200;
  double poisson_tol = kDefaultPoissonTol;
};

/// 4 h^2 (max omega0 - min omega0), floored at 1e-12 max(1, |omega0|_inf).
double default_steady_tol(const ScalarField& omega0);

/// A discrete steady state Delta_h psi ~ omega = f(psi) with omega a rearrangement of
/// the input vorticity.
struct SteadyState {
  ScalarField psi;
  ScalarField omega;
  MonotoneProfile f;
  Extremum direction = Extremum::Min;
  std::vector<double> energy_history;    // dirichlet_energy of each solved iterate
  std::vector<double> residual_history;  // fixed-point residual of each iterate
  double fixed_point_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Rearrangement fixed-point iteration for the energy extremizer in the class of omega0.
/// Starts from psi_0 = Delta^{-1} omega0 and sets omega_k = rearrangement of omega0 along
/// psi_k. The maximizer takes psi_{k+1} = Delta^{-1} omega_k. The minimizer moves psi_k
/// towards Delta^{-1} omega_k with the step that minimizes E over the convex hull of the
/// class (a conditional-gradient step), which keeps it stable on data whose psi has
/// flat regions.
///
/// The returned omega is a class member and psi = Delta^{-1} omega. Running out of
/// iterations is not thrown: the iterate with the most extreme energy comes back with
/// converged == false. Throws SignViolation when omega0 takes both signs, BadParams for
/// tol < 0 or max_iters < 1.
SteadyState extremize_energy(const ScalarField& omega0, Extremum direction,
                             const SteadyOptions& options = {});

/// f = (omega0^*)^{-1} o psi^*, monotone in the given direction. At a node whose psi
/// value is unique, f(psi) equals rearrange_along(omega0, psi, direction) exactly.
MonotoneProfile extract_profile(const ScalarField& psi, const ScalarField& omega0,
                                Direction direction = Direction::Increasing);

/// ||Delta_h psi - f(psi)||_1 / |Omega|, with the solver's Laplacian.
double fixed_point_residual(const SteadyState& state);
double fixed_point_residual_inf(const SteadyState& state);

/// psi^*(t) = |{psi <= t}| as a nondecreasing profile on [min psi, max psi].
MonotoneProfile psi_star(const ScalarField& psi);

struct LevelConvexityReport {
  std::vector<double> levels;
  std::vector<double> defects;
  bool nested = true;
  double max_defect = 0.0;
};

/// Convexity defect of each sublevel set {psi <= c}. Levels must lie in (min psi, 0];
/// otherwise LevelOutOfRange.
LevelConvexityReport level_set_convexity_check(const ScalarField& psi,
                                               const std::vector<double>& levels);
/// Levels whose sublevel sets hold the given fractions of |Omega|.
std::vector<double> measure_quantile_levels(const ScalarField& psi,
                                            const std::vector<double>& fractions = {
                                                0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9});

enum class StagnationShape { Point, Segment, Undetermined };
std::string to_string(StagnationShape s);

struct StagnationLevel {
  double delta = 0.0;
  std::size_t cells = 0;
  double length_major = 0.0;  // principal lengths of {psi <= min psi + delta}
  double length_minor = 0.0;
  double aspect = 0.0;
};

struct StagnationReport {
  double min_psi = 0.0;
  StagnationShape classification = StagnationShape::Undetermined;
  Point location;       // centroid of the smallest resolved set
  Point segment_start;  // ends of the major axis (equal to location for points)
  Point segment_end;
  double gradient_floor = 0.0;  // min |grad psi| outside the smallest resolved set
  std::vector<StagnationLevel> levels;
};

/// Shape of {psi = min psi} from the shrinking sets S_delta = {psi <= min psi + delta}.
/// Without deltas the sequence is range/4 * 2^-k, stopping before S_delta drops under
/// 24 cells. Over the last three resolved deltas: segment when every aspect ratio
/// exceeds 8 and the major length holds at >= 3/4 of its value; point when every
/// aspect ratio is at most 2 and the major length keeps shrinking; otherwise
/// undetermined. The gradient is taken with the given boundary value (nullopt for
/// one-sided boundary differences).
StagnationReport stagnation_set(const ScalarField& psi, std::vector<double> deltas = {},
                                std::optional<double> boundary_value = 0.0);

enum class ArnoldVerdict { WeakType1, WeakType2, Fail };
std::string to_string(ArnoldVerdict v);

struct ArnoldReport {
  Direction f_direction = Direction::Increasing;
  double inf_slope = 0.0;  // resampled difference quotients of f
  double lambda1 = 0.0;
  ArnoldVerdict verdict = ArnoldVerdict::Fail;
  bool single_signed = false;
  /// Observational only: max over nodes with |grad psi| above a floor of
  /// max(q, 1/q) for q = |grad omega| / |grad psi|. NaN when no node qualifies.
  double strong_form_constant = 0.0;
};

ArnoldReport check_arnold(const SteadyState& state, const EigenEstimate& eig);
ArnoldReport check_arnold(const MonotoneProfile& f, const ScalarField& omega, double lambda1);

}  // namespace vortlab
