#include "vortlab/poisson.hpp"

#include <Eigen/OrderingMethods>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "vortlab/error.hpp"

namespace vortlab {

namespace {

struct Stencil {
  std::array<double, 4> off{};  // coefficient of the neighbor in each direction
  double diag = 0.0;
};

Stencil stencil(const Arms& a) {
  Stencil s;
  const double e = a[Dir::East], w = a[Dir::West], n = a[Dir::North], so = a[Dir::South];
  s.off[static_cast<int>(Dir::East)] = 2.0 / (e * (e + w));
  s.off[static_cast<int>(Dir::West)] = 2.0 / (w * (e + w));
  s.off[static_cast<int>(Dir::North)] = 2.0 / (n * (n + so));
  s.off[static_cast<int>(Dir::South)] = 2.0 / (so * (n + so));
  s.diag = -2.0 / (e * w) - 2.0 / (n * so);
  return s;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

}  // namespace

struct DirichletLaplacian::Impl {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>, Eigen::COLAMDOrdering<int>> lu;
};

DirichletLaplacian::DirichletLaplacian(GridPtr grid)
    : grid_(std::move(grid)), impl_(std::make_unique<Impl>()) {
  const Grid& g = *grid_;
  const auto n = static_cast<Eigen::Index>(g.size());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(5 * g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arms& a = g.arms(k);
    const Stencil s = stencil(a);
    const auto row = static_cast<Eigen::Index>(k);
    triplets.emplace_back(row, row, s.diag);
    for (int d = 0; d < 4; ++d) {
      if (a.neighbor[d] >= 0) triplets.emplace_back(row, a.neighbor[d], s.off[d]);
    }
  }
  impl_->matrix.resize(n, n);
  impl_->matrix.setFromTriplets(triplets.begin(), triplets.end());
  impl_->matrix.makeCompressed();
  impl_->lu.analyzePattern(impl_->matrix);
  impl_->lu.factorize(impl_->matrix);
  if (impl_->lu.info() != Eigen::Success) {
    throw Error(ErrorCode::ResolutionTooCoarse, "Laplacian factorization failed");
  }
}

DirichletLaplacian::~DirichletLaplacian() = default;

std::vector<double> DirichletLaplacian::apply(std::span<const double> u) const {
  const Grid& g = *grid_;
  std::vector<double> out(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arms& a = g.arms(k);
    const Stencil s = stencil(a);
    double v = s.diag * u[k];
    for (int d = 0; d < 4; ++d) {
      if (a.neighbor[d] >= 0) v += s.off[d] * u[static_cast<std::size_t>(a.neighbor[d])];
    }
    out[k] = v;
  }
  return out;
}

std::vector<double> DirichletLaplacian::solve_raw(std::span<const double> rhs) const {
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(rhs.size()));
  const Eigen::VectorXd x = impl_->lu.solve(b);
  return {x.data(), x.data() + x.size()};
}

std::shared_ptr<const DirichletLaplacian> laplacian_for(const GridPtr& grid) {
  static std::mutex mutex;
  static std::map<const Grid*, std::weak_ptr<const DirichletLaplacian>> cache;
  std::lock_guard lock(mutex);
  for (auto it = cache.begin(); it != cache.end();) {
    it = it->second.expired() ? cache.erase(it) : std::next(it);
  }
  if (auto it = cache.find(grid.get()); it != cache.end()) {
    if (auto lap = it->second.lock(); lap && lap->grid_ptr() == grid) return lap;
  }
  auto lap = std::make_shared<const DirichletLaplacian>(grid);
  cache[grid.get()] = lap;
  return lap;
}

PoissonSolution solve_dirichlet(const ScalarField& omega, double tol) {
  return solve_dirichlet(*laplacian_for(omega.grid_ptr()), omega, tol);
}

PoissonSolution solve_dirichlet(const DirichletLaplacian& lap, const ScalarField& omega,
                                double tol) {
  if (!lap.grid().same_as(omega.grid())) {
    throw Error(ErrorCode::GridMismatch, "right-hand side lives on another grid");
  }
  if (!(tol > 0.0)) throw Error(ErrorCode::BadParams, "tolerance must be positive");
  const auto& b = omega.vector();
  std::vector<double> x = lap.solve_raw(b);
  int iterations = 1;
  const int cap = 50 * std::max(lap.grid().nx(), lap.grid().ny());
  int stalled = 0;
  double best = INFINITY;
  while (true) {
    std::vector<double> r = lap.apply(x);
    for (std::size_t k = 0; k < r.size(); ++k) r[k] = b[k] - r[k];
    const double res = max_abs(r);
    if (res <= tol) return {ScalarField(omega.grid_ptr(), std::move(x)), res, iterations};
    if (res < 0.5 * best) {
      stalled = 0;
    } else if (++stalled >= 3) {
      throw Error(ErrorCode::NonConvergence,
                  "residual stalled at " + std::to_string(res) + " above tolerance");
    }
    best = std::min(best, res);
    if (iterations >= cap) throw Error(ErrorCode::NonConvergence, "iteration cap reached");
    const std::vector<double> dx = lap.solve_raw(r);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] += dx[k];
    ++iterations;
  }
}

ScalarField apply_laplacian(const DirichletLaplacian& lap, const ScalarField& u) {
  if (!lap.grid().same_as(u.grid())) throw Error(ErrorCode::GridMismatch, "field on another grid");
  return ScalarField(u.grid_ptr(), lap.apply(u.vector()));
}

std::pair<ScalarField, ScalarField> gradient(const ScalarField& psi,
                                             std::optional<double> boundary_value) {
  const Grid& g = psi.grid();
  const double h = g.h();
  std::vector<double> gx(g.size()), gy(g.size());

  // Derivative along one axis; plus/minus are the East/North and West/South directions.
  auto axis = [&](std::size_t k, Dir plus, Dir minus) {
    const Arms& a = g.arms(k);
    const double u0 = psi[k];
    const int ip = a.neighbor[static_cast<int>(plus)];
    const int im = a.neighbor[static_cast<int>(minus)];
    if (ip >= 0 && im >= 0) return (psi[ip] - psi[im]) / (2.0 * h);
    if (boundary_value) {
      const double b = a[plus], m = a[minus];
      const double up = ip >= 0 ? psi[ip] : *boundary_value;
      const double um = im >= 0 ? psi[im] : *boundary_value;
      return -b / (m * (m + b)) * um + (b - m) / (m * b) * u0 + m / (b * (m + b)) * up;
    }
    // one-sided into the interior
    auto step = [&](int from, Dir d) { return from >= 0 ? g.arms(from).neighbor[static_cast<int>(d)] : -1; };
    if (im >= 0) {
      const int imm = step(im, minus);
      if (imm >= 0) return (3.0 * u0 - 4.0 * psi[im] + psi[imm]) / (2.0 * h);
      return (u0 - psi[im]) / h;
    }
    if (ip >= 0) {
      const int ipp = step(ip, plus);
      if (ipp >= 0) return (-3.0 * u0 + 4.0 * psi[ip] - psi[ipp]) / (2.0 * h);
      return (psi[ip] - u0) / h;
    }
    return 0.0;
  };

  for (std::size_t k = 0; k < g.size(); ++k) {
    gx[k] = axis(k, Dir::East, Dir::West);
    gy[k] = axis(k, Dir::North, Dir::South);
  }
  return {ScalarField(psi.grid_ptr(), std::move(gx)), ScalarField(psi.grid_ptr(), std::move(gy))};
}

std::pair<ScalarField, ScalarField> velocity(const ScalarField& psi) {
  auto [dx, dy] = gradient(psi);
  return {-1.0 * dy, std::move(dx)};
}

double dirichlet_energy(const ScalarField& psi) {
  const Grid& g = psi.grid();
  const double h = g.h();
  double sum = 0.0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const Arms& a = g.arms(k);
    for (int d = 0; d < 4; ++d) {
      const int nb = a.neighbor[d];
      if (nb < 0) {
        sum += psi[k] * psi[k] * h / a.length[d];
      } else if (d == static_cast<int>(Dir::East) || d == static_cast<int>(Dir::North)) {
        const double diff = psi[static_cast<std::size_t>(nb)] - psi[k];
        sum += diff * diff;
      }
    }
  }
  return 0.5 * sum;
}

double energy_pairing(const ScalarField& psi, const ScalarField& omega) {
  return -0.5 * inner(psi, omega);
}

double kinetic_energy(const ScalarField& omega, double tol) {
  return dirichlet_energy(solve_dirichlet(omega, tol).psi);
}

EigenEstimate first_eigenvalue(const GridPtr& grid, double tol, int max_iters) {
  return first_eigenvalue(*laplacian_for(grid), tol, max_iters);
}

EigenEstimate first_eigenvalue(const DirichletLaplacian& lap, double tol, int max_iters) {
  const GridPtr& grid = lap.grid_ptr();
  const double w = grid->cell_area();
  const std::size_t n = grid->size();
  auto l2 = [&](const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s * w);
  };

  std::vector<double> x(n, 1.0);
  const double n0 = l2(x);
  for (double& v : x) v /= n0;

  for (int it = 1; it <= max_iters; ++it) {
    std::vector<double> y = lap.solve_raw(x);  // Delta_h^{-1} x, so -y grows along the lowest mode
    for (double& v : y) v = -v;
    const double ny = l2(y);
    for (double& v : y) v /= ny;
    x = std::move(y);

    const std::vector<double> ax = lap.apply(x);  // Delta_h x = -lambda x
    double num = 0.0;
    for (std::size_t k = 0; k < n; ++k) num -= x[k] * ax[k];
    const double lambda = num * w;
    std::vector<double> r(n);
    for (std::size_t k = 0; k < n; ++k) r[k] = -ax[k] - lambda * x[k];
    const double res = l2(r);
    if (res <= tol) {
      double mean = 0.0;
      for (double v : x) mean += v;
      if (mean < 0.0) for (double& v : x) v = -v;
      return {lambda, ScalarField(grid, std::move(x)), res, it};
    }
  }
  throw Error(ErrorCode::NonConvergence, "inverse iteration did not reach the residual tolerance");
}

}  // namespace vortlab
