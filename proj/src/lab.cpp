#include "vortlab/lab.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "vortlab/error.hpp"
#include "vortlab/io.hpp"

namespace vortlab {

using nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> parse_numbers(const std::string& text, char sep) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, sep)) {
    double v = 0.0;
    const char* first = item.data();
    const char* last = item.data() + item.size();
    while (first < last && *first == ' ') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) throw Error(ErrorCode::BadParams, "bad number '" + item + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ConvexDomain stadium_domain(double half_length, double radius, int cap_segments) {
  if (!(half_length >= 0.0) || !(radius > 0.0) || cap_segments < 2) {
    throw Error(ErrorCode::BadParams, "stadium needs half_length >= 0, radius > 0");
  }
  std::vector<Point> v;
  for (int i = 0; i <= cap_segments; ++i) {
    const double t = -kPi / 2 + kPi * i / cap_segments;
    v.push_back({half_length + radius * std::cos(t), radius * std::sin(t)});
  }
  for (int i = 0; i <= cap_segments; ++i) {
    const double t = kPi / 2 + kPi * i / cap_segments;
    v.push_back({-half_length + radius * std::cos(t), radius * std::sin(t)});
  }
  return ConvexDomain::polygon(std::move(v));
}

ConvexDomain parse_domain(const std::string& text) {
  if (text == "disk") return ConvexDomain::disk({0, 0}, 1.0);
  if (text == "square") return ConvexDomain::rectangle({-1, -1}, {1, 1});
  if (text == "unit-square") return ConvexDomain::rectangle({0, 0}, {1, 1});
  if (text == "pentagon") return ConvexDomain::regular_polygon(5, {0, 0}, 1.0, kPi / 2);
  if (text == "stadium") return stadium_domain();
  const auto colon = text.find(':');
  if (colon != std::string::npos) {
    const std::string kind = text.substr(0, colon);
    const std::string rest = text.substr(colon + 1);
    if (kind == "disk") {
      const auto v = parse_numbers(rest, ',');
      if (v.size() != 3) throw Error(ErrorCode::BadParams, "disk:cx,cy,r");
      return ConvexDomain::disk({v[0], v[1]}, v[2]);
    }
    if (kind == "rect") {
      const auto v = parse_numbers(rest, ',');
      if (v.size() != 4) throw Error(ErrorCode::BadParams, "rect:x0,y0,x1,y1");
      return ConvexDomain::rectangle({v[0], v[1]}, {v[2], v[3]});
    }
    if (kind == "polygon") {
      std::vector<Point> pts;
      std::stringstream ss(rest);
      std::string pair;
      while (std::getline(ss, pair, ';')) {
        const auto v = parse_numbers(pair, ',');
        if (v.size() != 2) throw Error(ErrorCode::BadParams, "polygon:x,y;x,y;...");
        pts.push_back({v[0], v[1]});
      }
      return ConvexDomain::polygon(std::move(pts));
    }
  }
  throw Error(ErrorCode::BadParams, "unknown domain '" + text + "'");
}

double parse_spacing(const std::string& text) {
  const auto slash = text.find('/');
  double h = 0.0;
  if (slash == std::string::npos) {
    h = parse_numbers(text, ',').at(0);
  } else {
    const double num = parse_numbers(text.substr(0, slash), ',').at(0);
    const double den = parse_numbers(text.substr(slash + 1), ',').at(0);
    h = num / den;
  }
  if (!(h > 0.0) || !std::isfinite(h)) throw Error(ErrorCode::BadParams, "spacing must be positive");
  return h;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::string to_string(TopologyReason r) {
  return r == TopologyReason::DisconnectedBand ? "disconnected-band" : "boundary-nonconstant";
}

// ---- digital topology

namespace {

// Flood fill over a w x hgt lattice of on/off cells.
std::vector<int> label_lattice(int w, int hgt, const std::vector<char>& on, bool eight, int& count) {
  std::vector<int> label(on.size(), -1);
  std::vector<int> stack;
  count = 0;
  for (std::size_t start = 0; start < on.size(); ++start) {
    if (!on[start] || label[start] >= 0) continue;
    label[start] = count;
    stack.push_back(static_cast<int>(start));
    while (!stack.empty()) {
      const int c = stack.back();
      stack.pop_back();
      const int ci = c % w, cj = c / w;
      for (int dj = -1; dj <= 1; ++dj) {
        for (int di = -1; di <= 1; ++di) {
          if ((di == 0 && dj == 0) || (!eight && di != 0 && dj != 0)) continue;
          const int ni = ci + di, nj = cj + dj;
          if (ni < 0 || nj < 0 || ni >= w || nj >= hgt) continue;
          const int n = nj * w + ni;
          if (!on[n] || label[n] >= 0) continue;
          label[n] = count;
          stack.push_back(n);
        }
      }
    }
    ++count;
  }
  return label;
}

int complement_components(const Grid& g, const std::vector<bool>& mask) {
  // one-cell frame so everything outside the set can connect around it
  const int w = g.nx() + 2, hgt = g.ny() + 2;
  std::vector<char> on(static_cast<std::size_t>(w) * hgt, 1);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (mask[k]) on[static_cast<std::size_t>(g.node_j(k) + 1) * w + g.node_i(k) + 1] = 0;
  }
  int count = 0;
  label_lattice(w, hgt, on, true, count);
  return count;
}

}  // namespace

std::vector<int> label_components(const Grid& grid, const std::vector<bool>& mask, bool eight,
                                  int* count) {
  const int w = grid.nx(), hgt = grid.ny();
  std::vector<char> on(static_cast<std::size_t>(w) * hgt, 0);
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (mask[k]) on[static_cast<std::size_t>(grid.node_j(k)) * w + grid.node_i(k)] = 1;
  }
  int n = 0;
  const auto lattice = label_lattice(w, hgt, on, eight, n);
  std::vector<int> out(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    out[k] = lattice[static_cast<std::size_t>(grid.node_j(k)) * w + grid.node_i(k)];
  }
  if (count) *count = n;
  return out;
}

std::vector<double> boundary_trace(const ScalarField& u) {
  const Grid& g = u.grid();
  std::vector<double> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!g.is_boundary_adjacent(k)) continue;
    const Arms& a = g.arms(k);
    for (int d = 0; d < 4; ++d) {
      if (a.neighbor[d] >= 0) continue;
      const int opposite = d ^ 1;  // East/West and North/South are paired
      const int n = a.neighbor[opposite];
      if (n < 0) {
        out.push_back(u[k]);
      } else {
        out.push_back(u[k] + a.length[d] * (u[k] - u[static_cast<std::size_t>(n)]) / a.length[opposite]);
      }
    }
  }
  return out;
}

TopologyReport check_level_topology(const ScalarField& omega0, int n_levels, double tol) {
  if (n_levels < 8) throw Error(ErrorCode::BadParams, "need at least 8 levels");
  if (!(tol >= 0.0)) throw Error(ErrorCode::BadParams, "tolerance must be nonnegative");
  const Grid& g = omega0.grid();
  TopologyReport rep;
  rep.tol = tol;
  const double lo = omega0.min(), hi = omega0.max();
  const double range = hi - lo;
  const auto trace = boundary_trace(omega0);
  if (!trace.empty()) {
    const auto [mn, mx] = std::minmax_element(trace.begin(), trace.end());
    rep.boundary_oscillation = *mx - *mn;
  }
  rep.boundary_constant = rep.boundary_oscillation <= tol * range;
  if (!rep.boundary_constant) rep.reasons.push_back(TopologyReason::BoundaryNonconstant);

  bool band_violation = false;
  if (range > 0.0) {
    const double a = lo + tol * range, b = hi - tol * range;
    for (int i = 1; i <= n_levels; ++i) {
      TopologyLevel lv;
      lv.level = a + (b - a) * i / (n_levels + 1);
      std::vector<bool> mask(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) mask[k] = omega0[k] < lv.level;
      label_components(g, mask, false, &lv.components);
      lv.simply_connected = complement_components(g, mask) <= 1;
      band_violation = band_violation || lv.components > 1 || !lv.simply_connected;
      rep.levels.push_back(lv);
    }
  }
  if (band_violation) rep.reasons.push_back(TopologyReason::DisconnectedBand);
  rep.admissible = rep.reasons.empty();
  return rep;
}

// ---- witness

namespace {

struct BandSplit {
  bool found = false;
  double separation = 0.0;
};

// Largest distance between two components of the band mask (cell centers), using the
// cells on each component's rim.
BandSplit split_band(const Grid& g, const std::vector<bool>& mask, double min_separation) {
  int count = 0;
  const auto label = label_components(g, mask, false, &count);
  BandSplit out;
  if (count < 2) return out;
  std::vector<std::vector<Point>> rims(static_cast<std::size_t>(count));
  std::vector<std::size_t> sizes(static_cast<std::size_t>(count), 0);
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (label[k] < 0) continue;
    ++sizes[static_cast<std::size_t>(label[k])];
    const Arms& a = g.arms(k);
    bool rim = false;
    for (int d = 0; d < 4; ++d) rim = rim || a.neighbor[d] < 0 || !mask[static_cast<std::size_t>(a.neighbor[d])];
    if (rim) rims[static_cast<std::size_t>(label[k])].push_back(g.node(k));
  }
  // only components of a few cells or more count; keep the eight largest
  std::vector<std::size_t> big;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    if (sizes[c] >= 3) big.push_back(c);
  }
  std::sort(big.begin(), big.end(), [&](std::size_t x, std::size_t y) { return sizes[x] > sizes[y]; });
  if (big.size() > 8) big.resize(8);
  for (std::size_t i = 0; i < big.size(); ++i) {
    for (std::size_t j = i + 1; j < big.size(); ++j) {
      double d = std::numeric_limits<double>::infinity();
      for (const Point& p : rims[big[i]]) {
        for (const Point& q : rims[big[j]]) d = std::min(d, norm(p - q));
      }
      out.separation = std::max(out.separation, d);
    }
  }
  out.found = out.separation >= min_separation;
  return out;
}

}  // namespace

WitnessReport nonexistence_witness(const ScalarField& omega0, const SteadyState& minimizer,
                                   const WitnessOptions& options) {
  require_same_grid(omega0, minimizer.omega);
  const Grid& g = omega0.grid();
  const TopologyReport topo = check_level_topology(omega0, options.n_levels, options.tol);
  if (topo.admissible) throw Error(ErrorCode::NoViolationFound, "level topology is admissible");
  const double min_sep = options.min_separation > 0.0 ? options.min_separation : 2.0 * g.h();
  const auto has = [&](TopologyReason r) {
    return std::find(topo.reasons.begin(), topo.reasons.end(), r) != topo.reasons.end();
  };

  std::vector<WitnessReport> found;
  if (has(TopologyReason::DisconnectedBand)) {
    std::vector<double> cand{omega0.min()};
    for (const auto& lv : topo.levels) cand.push_back(lv.level);
    cand.push_back(omega0.max());
    std::vector<std::pair<double, double>> bands;
    for (std::size_t i = 0; i < cand.size(); ++i) {
      for (std::size_t j = i + 1; j < cand.size(); ++j) bands.emplace_back(cand[i], cand[j]);
    }
    std::stable_sort(bands.begin(), bands.end(), [](const auto& x, const auto& y) {
      return x.second - x.first > y.second - y.first;
    });
    for (const auto& [a, b] : bands) {
      std::vector<bool> mask(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) mask[k] = omega0[k] > a && omega0[k] < b;
      const BandSplit split = split_band(g, mask, min_sep);
      if (!split.found) continue;
      WitnessReport w;
      w.obstruction = TopologyReason::DisconnectedBand;
      w.band_low = a;
      w.band_high = b;
      w.lower_bound = 0.5 * (b - a);
      w.separation = split.separation;
      std::vector<bool> mband(g.size());
      for (std::size_t k = 0; k < g.size(); ++k) {
        mband[k] = minimizer.omega[k] > a && minimizer.omega[k] < b;
      }
      label_components(g, mband, false, &w.minimizer_band_components);
      found.push_back(w);
      break;
    }
  }
  if (has(TopologyReason::BoundaryNonconstant)) {
    WitnessReport w;
    w.obstruction = TopologyReason::BoundaryNonconstant;
    w.sup_omega = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (g.is_boundary_adjacent(k)) w.sup_omega = std::max(w.sup_omega, minimizer.omega[k]);
    }
    const auto trace = boundary_trace(omega0);
    w.boundary_level = *std::min_element(trace.begin(), trace.end());
    w.lower_bound = 0.5 * (w.sup_omega - w.boundary_level);
    if (w.lower_bound > 0.0) found.push_back(w);
  }
  if (found.empty()) throw Error(ErrorCode::NoViolationFound, "no certificate at the sampled levels");
  return *std::max_element(found.begin(), found.end(), [](const auto& x, const auto& y) {
    return x.lower_bound < y.lower_bound;
  });
}

// ---- cusp patch

namespace {

double loglog_fit(const std::vector<double>& x, const std::vector<double>& y) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double den = n * sxx - sx * sx;
  if (x.size() < 2 || den == 0.0) throw Error(ErrorCode::BadParams, "too few points for a fit");
  return (n * sxy - sx * sy) / den;
}

}  // namespace

CuspReport cusp_patch_experiment(const GridPtr& grid, const PresetSpec& patch,
                                 const SteadyOptions& options) {
  const ScalarField w0 = sample_preset(patch, grid);
  const Grid& g = *grid;
  CuspReport rep;
  std::vector<bool> in(g.size()), low(g.size());
  std::size_t inside = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    in[k] = w0[k] > 0.5;
    inside += in[k] ? 1 : 0;
  }
  if (inside < 3 || inside == g.size()) throw Error(ErrorCode::DegeneratePatch, "patch covers no cells or all of them");
  rep.input_defect = convexity_defect(g, in);
  rep.patch_area = integrate(w0);

  if (patch.name == "cusp-patch") {
    const auto p = preset_parameters(patch);
    const double tip = p.at("tip_x"), length = p.at("length");
    std::vector<int> counts(static_cast<std::size_t>(g.nx()), 0);
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (in[k]) ++counts[static_cast<std::size_t>(g.node_i(k))];
    }
    std::vector<double> ds, widths;
    for (int i = 0; i < g.nx(); ++i) {
      const double d = g.lattice_point(i, 0).x - tip;
      if (d < 0.2 * length || d > 0.95 * length || counts[static_cast<std::size_t>(i)] == 0) continue;
      ds.push_back(d);
      widths.push_back(counts[static_cast<std::size_t>(i)] * g.h());
    }
    rep.cusp_exponent = loglog_fit(ds, widths);
  }

  const SteadyState st = extremize_energy(w0, Extremum::Min, options);
  for (std::size_t k = 0; k < g.size(); ++k) low[k] = st.omega[k] < 0.5;
  rep.minimizer_defect = convexity_defect(g, low);
  rep.linf_distance = linf_distance(st.omega, w0);
  rep.iterations = st.iterations;
  rep.converged = st.converged;
  return rep;
}

// ---- appendix

double quartic_lens_area() {
  // 4 int_0^1 sqrt(1 - y^4) dy with y = 1 - s^2, which makes the integrand smooth
  auto f = [](double s) {
    const double y = 1.0 - s * s;
    const double rest = (1.0 + y) * (1.0 + y * y);
    return 2.0 * s * s * std::sqrt(rest);
  };
  const int n = 4000;
  const double h = 1.0 / n;
  double sum = f(0.0) + f(1.0);
  for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(i * h);
  return 4.0 * sum * h / 3.0;
}

AppendixReport appendix_experiment(const GridPtr& grid, bool run_minimizer,
                                   const SteadyOptions& options) {
  const Grid& g = *grid;
  if (!g.domain().is_disk()) throw Error(ErrorCode::NotADisk, "appendix experiment needs a disk");
  const ScalarField w0 = sample_preset({"appendix-A", {}, ""}, grid);
  const ScalarField rearranged = symmetric_increasing_rearrangement(w0);
  AppendixReport rep;
  rep.mu0 = quartic_lens_area();
  rep.coefficient = 2.0 * std::pow(kPi / rep.mu0, 4.0 / 3.0);
  const Point c = g.domain().center();
  std::vector<double> rs, vs;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double r = norm(g.node(k) - c);
    if (r < 0.1 || r > 0.6) continue;
    const double expected = 1.0 + rep.coefficient * std::pow(r, 8.0 / 3.0);
    rep.formula_max_rel_error = std::max(rep.formula_max_rel_error,
                                         std::abs(rearranged[k] - expected) / expected);
    rs.push_back(r);
    vs.push_back(rearranged[k] - 1.0);
  }
  rep.fitted_exponent = loglog_fit(rs, vs);
  rep.energy_original = kinetic_energy(w0, options.poisson_tol);
  rep.energy_rearranged = kinetic_energy(rearranged, options.poisson_tol);
  rep.energy_gap = rep.energy_original - rep.energy_rearranged;
  if (run_minimizer) {
    const SteadyState st = extremize_energy(w0, Extremum::Min, options);
    rep.minimizer_run = true;
    rep.minimizer_l1_gap = l1_distance(st.omega, rearranged) / g.measure();
  }
  return rep;
}

// ---- ring sweep

namespace {

ConvexDomain random_polygon(std::mt19937_64& rng, double radius, int min_pts, int max_pts) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> frac(0.3, 1.0);
  std::uniform_int_distribution<int> count(min_pts, max_pts);
  for (;;) {
    const int n = count(rng);
    std::vector<Point> pts;
    for (int i = 0; i < n; ++i) {
      const double t = angle(rng), r = radius * frac(rng);
      pts.push_back({r * std::cos(t), r * std::sin(t)});
    }
    auto hull = convex_hull(pts);
    if (hull.size() >= 3 && signed_area(hull) > 0.05 * radius * radius) {
      return ConvexDomain::polygon(std::move(hull));
    }
  }
}

}  // namespace

RingCase ring_case(std::size_t index, std::uint64_t master_seed) {
  RingCase rc{index, splitmix64(master_seed + index), "random",
              {ConvexDomain::disk({0, 0}, 2.0), ConvexDomain::disk({0, 0}, 1.0)}};
  if (index == 0) {
    rc.kind = "concentric-disks";
    return rc;
  }
  if (index == 1) {
    rc.kind = "tiny-inner-disk";
    rc.ring = {ConvexDomain::disk({0, 0}, 1.0), ConvexDomain::disk({0, 0}, 0.01)};
    return rc;
  }
  std::mt19937_64 rng(rc.seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const ConvexDomain outer = u(rng) < 0.2 ? ConvexDomain::disk({0, 0}, 0.5 + u(rng))
                                           : random_polygon(rng, 1.0 + 0.5 * u(rng), 3, 12);
  const BoundingBox box = outer.bounding_box();
  double scale = 0.05 + 0.45 * u(rng);
  for (;;) {
    const ConvexDomain shape = u(rng) < 0.3 ? ConvexDomain::disk({0, 0}, scale * (0.2 + 0.8 * u(rng)))
                                             : random_polygon(rng, scale, 3, 8);
    for (int attempt = 0; attempt < 200; ++attempt) {
      const Point shift{box.lo.x + (box.hi.x - box.lo.x) * u(rng), box.lo.y + (box.hi.y - box.lo.y) * u(rng)};
      ConvexRing ring{outer, shape.transformed(1.0, shift)};
      if (ring.clearance() > 1e-3 * outer.diameter()) {
        rc.ring = std::move(ring);
        return rc;
      }
    }
    scale *= 0.5;
  }
}

json to_json(const RingCase& c, const RingBoundReport& r) {
  return {{"index", c.index},
          {"seed", c.seed},
          {"kind", c.kind},
          {"outer", domain_to_json(c.ring.outer)},
          {"inner", domain_to_json(c.ring.inner)},
          {"center", {r.ball.center.x, r.ball.center.y}},
          {"radius", r.ball.radius},
          {"ring_area", r.ball.ring_area},
          {"diam_outer", c.ring.outer.diameter()},
          {"diam_inner", c.ring.inner.diameter()},
          {"ratio", r.ball.ratio},
          {"ratio_inner", r.ball.ratio_inner},
          {"required_outer", r.required_outer},
          {"required_inner", r.required_inner},
          {"outer_holds", r.outer_holds},
          {"inner_holds", r.inner_holds}};
}

SweepSummary geometry_sweep(std::size_t n, std::uint64_t master_seed, std::ostream& out,
                            const std::filesystem::path& reproducer_dir) {
  if (n < 1) throw Error(ErrorCode::BadParams, "sweep needs at least one instance");
  SweepSummary s;
  s.min_ratio = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const RingCase rc = ring_case(i, master_seed);
    const RingBoundReport r = verify_ring_bound(rc.ring);
    const json line = to_json(rc, r);
    out << line.dump() << '\n';
    ++s.instances;
    s.min_ratio = std::min(s.min_ratio, r.ball.ratio);
    if (!r.inner_holds) ++s.inner_failures;
    if (!r.outer_holds) {
      ++s.outer_failures;
      s.failed.push_back(i);
      if (!reproducer_dir.empty()) {
        write_text(reproducer_dir / ("ring_" + std::to_string(i) + ".json"), line.dump(2) + "\n");
      }
    }
  }
  return s;
}

// ---- run output

json to_json(const SteadyState& s) {
  return {{"direction", to_string(s.direction)},
          {"iterations", s.iterations},
          {"converged", s.converged},
          {"fixed_point_residual", s.fixed_point_residual},
          {"energy", dirichlet_energy(s.psi)},
          {"energy_history", s.energy_history},
          {"residual_history", s.residual_history}};
}

void save_steady_run(const std::filesystem::path& dir, const SteadyState& s, bool pgm,
                     const FieldMeta& meta) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + dir.string());
  save_field(dir / "psi", s.psi, meta);
  save_field(dir / "omega", s.omega, meta);
  s.f.save_csv(dir / "f.csv");
  psi_star(s.psi).save_csv(dir / "psi_star.csv");
  if (pgm) {
    save_pgm(dir / "psi.pgm", s.psi);
    save_pgm(dir / "omega.pgm", s.omega);
    const auto [dx, dy] = gradient(s.psi);
    std::vector<double> speed(dx.size());
    for (std::size_t k = 0; k < speed.size(); ++k) speed[k] = std::hypot(dx[k], dy[k]);
    save_pgm(dir / "speed.pgm", ScalarField(s.psi.grid_ptr(), std::move(speed)));
  }
}

// ---- json

json to_json(const TopologyReport& r) {
  json levels = json::array();
  for (const auto& lv : r.levels) {
    levels.push_back({{"level", lv.level}, {"components", lv.components}, {"simply_connected", lv.simply_connected}});
  }
  json reasons = json::array();
  for (auto reason : r.reasons) reasons.push_back(to_string(reason));
  return {{"boundary_constant", r.boundary_constant},
          {"boundary_oscillation", r.boundary_oscillation},
          {"tol", r.tol},
          {"levels", levels},
          {"verdict", r.admissible ? "admissible" : "violation"},
          {"reasons", reasons}};
}

json to_json(const WitnessReport& r) {
  json j = {{"obstruction", to_string(r.obstruction)}, {"lower_bound", r.lower_bound}};
  if (r.obstruction == TopologyReason::DisconnectedBand) {
    j["band"] = {r.band_low, r.band_high};
    j["separation"] = r.separation;
    j["minimizer_band_components"] = r.minimizer_band_components;
  } else {
    j["sup_omega_on_collar"] = r.sup_omega;
    j["boundary_level"] = r.boundary_level;
  }
  return j;
}

json to_json(const CuspReport& r) {
  return {{"cusp_exponent", r.cusp_exponent},       {"input_defect", r.input_defect},
          {"minimizer_defect", r.minimizer_defect}, {"linf_distance", r.linf_distance},
          {"patch_area", r.patch_area},             {"iterations", r.iterations},
          {"converged", r.converged}};
}

json to_json(const AppendixReport& r) {
  json j = {{"mu0", r.mu0},
            {"coefficient", r.coefficient},
            {"formula_max_rel_error", r.formula_max_rel_error},
            {"energy_original", r.energy_original},
            {"energy_rearranged", r.energy_rearranged},
            {"energy_gap", r.energy_gap},
            {"fitted_exponent", r.fitted_exponent}};
  if (r.minimizer_run) j["minimizer_l1_gap"] = r.minimizer_l1_gap;
  return j;
}

json to_json(const SweepSummary& r) {
  return {{"instances", r.instances},
          {"outer_failures", r.outer_failures},
          {"inner_failures", r.inner_failures},
          {"min_ratio", r.min_ratio},
          {"ring_constant", ring_constant()},
          {"failed", r.failed}};
}

}  // namespace vortlab
