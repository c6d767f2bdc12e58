#pragma once

#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "vortlab/field.hpp"

namespace vortlab {

/// Five-point Laplacian with Shortley-Weller cut-cell rows and zero Dirichlet data,
/// LU-factored once. Along each axis with arms a (west/south) and b (east/north):
///   u'' ~ 2/(a(a+b)) u_W + 2/(b(a+b)) u_E - 2/(ab) u_0
/// with u = 0 at a cut point.
class DirichletLaplacian {
 public:
  explicit DirichletLaplacian(GridPtr grid);
  ~DirichletLaplacian();
  DirichletLaplacian(const DirichletLaplacian&) = delete;
  DirichletLaplacian& operator=(const DirichletLaplacian&) = delete;

  const GridPtr& grid_ptr() const { return grid_; }
  const Grid& grid() const { return *grid_; }

  /// Delta_h u.
  std::vector<double> apply(std::span<const double> u) const;
  /// One LU back-substitution, no refinement.
  std::vector<double> solve_raw(std::span<const double> rhs) const;

 private:
  struct Impl;
  GridPtr grid_;
  std::unique_ptr<Impl> impl_;
};

/// Shared factorization for a grid; reused while any caller still holds it.
std::shared_ptr<const DirichletLaplacian> laplacian_for(const GridPtr& grid);

struct PoissonSolution {
  ScalarField psi;
  double residual_norm = 0.0;  // ||Delta_h psi - omega||_inf
  int iterations = 0;          // LU solves including refinement steps
};

inline constexpr double kDefaultPoissonTol = 1e-9;

/// Solves Delta_h psi = omega, psi = 0 on the boundary, refining until the residual is
/// at most tol. Throws NonConvergence when refinement stalls or hits 50*max(nx, ny).
PoissonSolution solve_dirichlet(const ScalarField& omega, double tol = kDefaultPoissonTol);
PoissonSolution solve_dirichlet(const DirichletLaplacian& lap, const ScalarField& omega,
                                double tol = kDefaultPoissonTol);

ScalarField apply_laplacian(const DirichletLaplacian& lap, const ScalarField& u);

/// Partial derivatives (d/dx, d/dy). With a boundary value the cut-aware three-point
/// stencil uses it at the cut point; without one, boundary-adjacent nodes fall back to
/// one-sided differences into the interior.
std::pair<ScalarField, ScalarField> gradient(const ScalarField& psi,
                                             std::optional<double> boundary_value = 0.0);

/// Velocity u = (-d psi/dy, d psi/dx).
std::pair<ScalarField, ScalarField> velocity(const ScalarField& psi);

/// 1/2 sum over lattice edges of the squared difference quotient times the edge's dual
/// area; a cut edge to the boundary contributes psi_p^2 h / a.
double dirichlet_energy(const ScalarField& psi);

/// -1/2 <psi, omega>.
double energy_pairing(const ScalarField& psi, const ScalarField& omega);

/// E(omega) = dirichlet_energy(Delta_h^{-1} omega).
double kinetic_energy(const ScalarField& omega, double tol = kDefaultPoissonTol);

struct EigenEstimate {
  double lambda1 = 0.0;
  ScalarField eigenfield;  // unit discrete L2 norm, positive
  double rayleigh_residual = 0.0;
  int iterations = 0;
};

/// Smallest eigenvalue of -Delta_h by inverse power iteration.
EigenEstimate first_eigenvalue(const GridPtr& grid, double tol = 1e-8, int max_iters = 1000);
EigenEstimate first_eigenvalue(const DirichletLaplacian& lap, double tol = 1e-8,
                               int max_iters = 1000);

}  // namespace vortlab
