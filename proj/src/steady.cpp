#include "vortlab/steady.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "vortlab/convexgeo.hpp"
#include "vortlab/error.hpp"

namespace vortlab {

std::string to_string(Extremum e) { return e == Extremum::Min ? "min" : "max"; }

Direction direction_of(Extremum e) {
  return e == Extremum::Min ? Direction::Increasing : Direction::Decreasing;
}

std::string to_string(StagnationShape s) {
  switch (s) {
    case StagnationShape::Point: return "point";
    case StagnationShape::Segment: return "segment";
    case StagnationShape::Undetermined: return "undetermined";
  }
  return "undetermined";
}

std::string to_string(ArnoldVerdict v) {
  switch (v) {
    case ArnoldVerdict::WeakType1: return "weak-type-1";
    case ArnoldVerdict::WeakType2: return "weak-type-2";
    case ArnoldVerdict::Fail: return "fail";
  }
  return "fail";
}

MonotoneProfile extract_profile(const ScalarField& psi, const ScalarField& omega0,
                                Direction direction) {
  require_same_grid(psi, omega0);
  const DistributionFunction dpsi(psi);
  const MonotoneProfile inv = left_inverse(DistributionFunction(omega0));
  const double total = dpsi.total_measure();
  const double cell = dpsi.cell_area();
  std::vector<double> s = dpsi.levels();
  std::vector<double> v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double m = dpsi.measures()[i];
    v[i] = direction == Direction::Increasing ? inv(m) : inv(total - m + cell);
  }
  return MonotoneProfile(std::move(s), std::move(v), direction);
}

MonotoneProfile psi_star(const ScalarField& psi) { return DistributionFunction(psi).as_profile(); }

namespace {

ScalarField evaluate(const MonotoneProfile& f, const ScalarField& psi) {
  std::vector<double> out(psi.size());
  for (std::size_t k = 0; k < psi.size(); ++k) out[k] = f(psi[k]);
  return ScalarField(psi.grid_ptr(), std::move(out));
}

ScalarField residual_field(const SteadyState& state) {
  const auto lap = laplacian_for(state.psi.grid_ptr());
  return apply_laplacian(*lap, state.psi) - evaluate(state.f, state.psi);
}

// On small grids a cell's own contribution to psi is comparable with the psi gaps
// between cells, so the discrete extremizer need not be ordered along its own stream
// function and the fixed-point iteration can stop short of it. There the energy
// E(w) = 1/2 w^T Q w is assembled densely and improving pairwise swaps are applied
// until none is left.
constexpr std::size_t kSwapPolishLimit = 512;

bool swap_polish(std::vector<double>& w, const DirichletLaplacian& lap, Extremum direction) {
  const GridPtr& g = lap.grid_ptr();
  const std::size_t n = w.size();
  std::vector<ScalarField> cols;
  cols.reserve(n);
  std::vector<double> unit(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    unit[i] = 1.0;
    cols.push_back(solve_dirichlet(lap, ScalarField(g, unit)).psi);
    unit[i] = 0.0;
  }
  std::vector<double> diag(n), q(n * n);
  for (std::size_t i = 0; i < n; ++i) diag[i] = 2.0 * dirichlet_energy(cols[i]);
  for (std::size_t i = 0; i < n; ++i) {
    q[i * n + i] = diag[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const double qij = dirichlet_energy(cols[i] + cols[j]) - 0.5 * (diag[i] + diag[j]);
      q[i * n + j] = q[j * n + i] = qij;
    }
  }
  std::vector<double> grad(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) grad[i] += q[i * n + j] * w[j];
  }
  const double sign = direction == Extremum::Min ? 1.0 : -1.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i) scale += 0.5 * w[i] * grad[i];
  const double eps = 1e-13 * std::max(std::abs(scale), 1e-300);
  bool changed = false;
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double d = w[j] - w[i];
        if (d == 0.0) continue;
        // moving d onto i and off j
        const double de = d * (grad[i] - grad[j]) +
                          0.5 * d * d * (q[i * n + i] + q[j * n + j] - 2.0 * q[i * n + j]);
        if (sign * de >= -eps) continue;
        std::swap(w[i], w[j]);
        for (std::size_t k = 0; k < n; ++k) grad[k] += d * (q[k * n + i] - q[k * n + j]);
        improved = changed = true;
      }
    }
  }
  return changed;
}

}  // namespace

double fixed_point_residual(const SteadyState& state) {
  const ScalarField r = residual_field(state);
  return l1_distance(r, ScalarField(r.grid_ptr(), 0.0)) / r.grid().measure();
}

double fixed_point_residual_inf(const SteadyState& state) {
  const ScalarField r = residual_field(state);
  return std::max(r.max(), -r.min());
}

double default_steady_tol(const ScalarField& omega0) {
  const double h = omega0.grid().h();
  const double osc = omega0.max() - omega0.min();
  const double scale = std::max(1.0, std::max(omega0.max(), -omega0.min()));
  return std::max(4.0 * h * h * osc, 1e-12 * scale);
}

SteadyState extremize_energy(const ScalarField& omega0, Extremum direction,
                             const SteadyOptions& options) {
  if (!(options.tol >= 0.0) || options.max_iters < 1) {
    throw Error(ErrorCode::BadParams, "tol must be nonnegative and max_iters at least 1");
  }
  const double tol = options.tol > 0.0 ? options.tol : default_steady_tol(omega0);
  const double scale = std::max(omega0.max(), -omega0.min());
  const double slack = 1e-9 * scale;
  if (omega0.min() < -slack && omega0.max() > slack) {
    throw Error(ErrorCode::SignViolation, "initial vorticity takes both signs");
  }
  // The iteration commutes with omega -> -omega, so nonpositive data needs no special case.
  const Direction dir = direction_of(direction);
  const auto lap = laplacian_for(omega0.grid_ptr());
  const double measure = omega0.grid().measure();
  auto solve = [&](const ScalarField& w) { return solve_dirichlet(*lap, w, options.poisson_tol).psi; };

  ScalarField psi_k = solve(omega0);
  ScalarField bar_k = omega0;

  std::vector<double> energies, residuals;
  std::optional<ScalarField> best_psi, best_omega;
  double best_residual = std::numeric_limits<double>::infinity();
  double best_energy = direction == Extremum::Min ? std::numeric_limits<double>::infinity()
                                                  : -std::numeric_limits<double>::infinity();
  bool converged = false;
  int iterations = 0;

  for (int k = 0; k < options.max_iters; ++k) {
    const ScalarField omega_hat = rearrange_along(omega0, psi_k, dir);
    ScalarField psi_hat = solve(omega_hat);
    ScalarField omega_next = rearrange_along(omega0, psi_hat, dir);
    const double res = l1_distance(omega_next, omega_hat) / measure;
    const double energy = dirichlet_energy(psi_hat);
    energies.push_back(energy);
    residuals.push_back(res);
    iterations = k + 1;
    // Keep the class member with the most extreme energy; a converged iterate always wins.
    const bool better = direction == Extremum::Min ? energy < best_energy : energy > best_energy;
    if (res <= tol || better) {
      best_energy = energy;
      best_residual = res;
      best_psi = psi_hat;
      best_omega = omega_hat;
    }
    if (res <= tol) {
      converged = true;
      break;
    }
    if (direction == Extremum::Min) {
      // psi_k solves for a convex combination bar_k of class members, so the step is a
      // conditional-gradient step on the convex hull with exact line search for E.
      const ScalarField d = omega_hat - bar_k;
      const ScalarField psi_d = psi_hat - psi_k;
      const double slope = inner(psi_k, d);
      const double curvature = -inner(psi_d, d);
      const double theta = curvature > 0.0 ? std::clamp(slope / curvature, 0.0, 1.0) : 1.0;
      bar_k = bar_k + theta * d;
      psi_k = psi_k + theta * psi_d;
    } else {
      psi_k = std::move(psi_hat);
    }
  }

  if (omega0.size() <= kSwapPolishLimit) {
    std::vector<double> w = best_omega->vector();
    if (swap_polish(w, *lap, direction)) {
      ScalarField omega_p(omega0.grid_ptr(), std::move(w));
      ScalarField psi_p = solve(omega_p);
      energies.push_back(dirichlet_energy(psi_p));
      best_residual = l1_distance(rearrange_along(omega0, psi_p, dir), omega_p) / measure;
      residuals.push_back(best_residual);
      converged = best_residual <= tol;
      best_psi = std::move(psi_p);
      best_omega = std::move(omega_p);
    }
  }

  SteadyState state{*best_psi, *best_omega, extract_profile(*best_psi, omega0, dir), direction,
                    std::move(energies), std::move(residuals), best_residual, iterations,
                    converged};
  state.fixed_point_residual = fixed_point_residual(state);
  return state;
}

std::vector<double> measure_quantile_levels(const ScalarField& psi,
                                            const std::vector<double>& fractions) {
  std::vector<double> sorted = psi.vector();
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> out;
  for (double q : fractions) {
    if (!(q > 0.0 && q <= 1.0)) throw Error(ErrorCode::LevelOutOfRange, "fraction outside (0, 1]");
    const auto n = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    out.push_back(sorted[std::clamp<std::size_t>(n, 1, sorted.size()) - 1]);
  }
  return out;
}

LevelConvexityReport level_set_convexity_check(const ScalarField& psi,
                                               const std::vector<double>& levels) {
  const double lo = psi.min();
  for (double c : levels) {
    if (!(c > lo && c <= 0.0)) throw Error(ErrorCode::LevelOutOfRange, "level outside (min psi, 0]");
  }
  LevelConvexityReport rep;
  rep.levels = levels;
  std::sort(rep.levels.begin(), rep.levels.end());
  std::vector<bool> previous;
  for (double c : rep.levels) {
    std::vector<bool> mask(psi.size());
    for (std::size_t k = 0; k < psi.size(); ++k) mask[k] = psi[k] <= c;
    for (std::size_t k = 0; k < previous.size(); ++k) {
      if (previous[k] && !mask[k]) rep.nested = false;
    }
    const double d = convexity_defect(psi.grid(), mask);
    rep.defects.push_back(d);
    rep.max_defect = std::max(rep.max_defect, d);
    previous = std::move(mask);
  }
  return rep;
}

namespace {

struct Moments {
  std::size_t cells = 0;
  Point centroid;
  double major = 0.0;
  double minor = 0.0;
  Point axis{1.0, 0.0};
};

Moments moments(const ScalarField& psi, double level) {
  const Grid& g = psi.grid();
  Moments m;
  double sx = 0, sy = 0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k] > level) continue;
    const Point p = g.node(k);
    sx += p.x;
    sy += p.y;
    ++m.cells;
  }
  if (m.cells == 0) return m;
  const double n = static_cast<double>(m.cells);
  m.centroid = {sx / n, sy / n};
  double cxx = 0, cyy = 0, cxy = 0;
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k] > level) continue;
    const Point d = g.node(k) - m.centroid;
    cxx += d.x * d.x;
    cyy += d.y * d.y;
    cxy += d.x * d.y;
  }
  cxx /= n;
  cyy /= n;
  cxy /= n;
  const double mean = 0.5 * (cxx + cyy);
  const double disc = std::sqrt(0.25 * (cxx - cyy) * (cxx - cyy) + cxy * cxy);
  const double mu1 = mean + disc, mu2 = std::max(0.0, mean - disc);
  // a uniform bar of length L has variance L^2/12; each cell adds h^2/12 of its own
  const double cell_var = g.h() * g.h() / 12.0;
  m.major = std::sqrt(12.0 * (mu1 + cell_var));
  m.minor = std::sqrt(12.0 * (mu2 + cell_var));
  const double ang = 0.5 * std::atan2(2.0 * cxy, cxx - cyy);
  m.axis = {std::cos(ang), std::sin(ang)};
  return m;
}

}  // namespace

StagnationReport stagnation_set(const ScalarField& psi, std::vector<double> deltas,
                                std::optional<double> boundary_value) {
  constexpr std::size_t kMinCells = 24;
  StagnationReport rep;
  rep.min_psi = psi.min();
  const double range = psi.max() - rep.min_psi;
  if (deltas.empty()) {
    for (double d = 0.25 * range; d > 0.0 && deltas.size() < 64; d *= 0.5) {
      if (moments(psi, rep.min_psi + d).cells < kMinCells) break;
      deltas.push_back(d);
    }
  }
  std::sort(deltas.begin(), deltas.end(), std::greater<>());

  std::vector<Moments> resolved;
  for (double d : deltas) {
    const Moments m = moments(psi, rep.min_psi + d);
    if (m.cells < kMinCells) break;
    resolved.push_back(m);
    rep.levels.push_back({d, m.cells, m.major, m.minor, m.major / m.minor});
  }

  const Point argmin = psi.grid().node(static_cast<std::size_t>(
      std::min_element(psi.vector().begin(), psi.vector().end()) - psi.vector().begin()));
  rep.location = resolved.empty() ? argmin : resolved.back().centroid;
  rep.segment_start = rep.segment_end = rep.location;

  if (resolved.size() >= 3) {
    const std::size_t n = rep.levels.size();
    bool all_long = true, all_round = true, shrinking = true;
    for (std::size_t i = n - 3; i < n; ++i) {
      all_long = all_long && rep.levels[i].aspect > 8.0;
      all_round = all_round && rep.levels[i].aspect <= 2.0;
      if (i > n - 3) shrinking = shrinking && rep.levels[i].length_major < rep.levels[i - 1].length_major;
    }
    const double hold = rep.levels[n - 1].length_major / rep.levels[n - 3].length_major;
    if (all_long && hold >= 0.75) {
      rep.classification = StagnationShape::Segment;
      const Moments& m = resolved.back();
      // the bar's ends sit half a major length from the centroid
      rep.segment_start = m.centroid - 0.5 * m.major * m.axis;
      rep.segment_end = m.centroid + 0.5 * m.major * m.axis;
    } else if (all_round && shrinking) {
      rep.classification = StagnationShape::Point;
    }
  }

  const double cutoff = rep.min_psi + (rep.levels.empty() ? 0.0 : rep.levels.back().delta);
  const auto [gx, gy] = gradient(psi, boundary_value);
  double floor = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < psi.size(); ++k) {
    if (psi[k] <= cutoff) continue;
    floor = std::min(floor, std::hypot(gx[k], gy[k]));
  }
  rep.gradient_floor = std::isfinite(floor) ? floor : 0.0;
  return rep;
}

namespace {

double resampled_inf_slope(const MonotoneProfile& f) {
  constexpr int kSamples = 256;
  const double a = f.lower(), b = f.upper();
  if (!(b > a)) return 0.0;
  double inf = std::numeric_limits<double>::infinity();
  double prev = f(a);
  const double ds = (b - a) / kSamples;
  for (int i = 1; i <= kSamples; ++i) {
    const double cur = f(a + i * ds);
    inf = std::min(inf, (cur - prev) / ds);
    prev = cur;
  }
  return inf;
}

}  // namespace

ArnoldReport check_arnold(const MonotoneProfile& f, const ScalarField& omega, double lambda1) {
  ArnoldReport rep;
  rep.f_direction = f.direction();
  rep.lambda1 = lambda1;
  rep.inf_slope = resampled_inf_slope(f);
  rep.single_signed = omega.min() >= 0.0 || omega.max() <= 0.0;
  rep.strong_form_constant = std::numeric_limits<double>::quiet_NaN();
  if (f.direction() == Direction::Increasing) {
    rep.verdict = rep.single_signed ? ArnoldVerdict::WeakType1 : ArnoldVerdict::Fail;
  } else {
    rep.verdict = rep.inf_slope > -lambda1 ? ArnoldVerdict::WeakType2 : ArnoldVerdict::Fail;
  }
  return rep;
}

ArnoldReport check_arnold(const SteadyState& state, const EigenEstimate& eig) {
  ArnoldReport rep = check_arnold(state.f, state.omega, eig.lambda1);
  const auto lap = laplacian_for(state.psi.grid_ptr());
  const auto [px, py] = gradient(state.psi, 0.0);
  const auto [wx, wy] = gradient(apply_laplacian(*lap, state.psi), std::nullopt);
  double peak = 0.0;
  for (std::size_t k = 0; k < px.size(); ++k) peak = std::max(peak, std::hypot(px[k], py[k]));
  double worst = 0.0;
  bool any = false;
  for (std::size_t k = 0; k < px.size(); ++k) {
    const double gp = std::hypot(px[k], py[k]);
    if (gp < 0.1 * peak) continue;
    const double q = std::hypot(wx[k], wy[k]) / gp;
    if (q <= 0.0) continue;
    worst = std::max(worst, std::max(q, 1.0 / q));
    any = true;
  }
  if (any) rep.strong_form_constant = worst;
  return rep;
}

}  // namespace vortlab
