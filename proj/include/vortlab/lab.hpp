#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "vortlab/convexgeo.hpp"
#include "vortlab/io.hpp"
#include "vortlab/presets.hpp"
#include "vortlab/steady.hpp"

namespace vortlab {

/// disk | disk:cx,cy,r | square ([-1,1]^2) | unit-square | rect:x0,y0,x1,y1 | pentagon |
/// polygon:x,y;x,y;... | stadium. Throws BadParams on anything else.
ConvexDomain parse_domain(const std::string& text);
/// "0.01" or "1/128".
double parse_spacing(const std::string& text);
/// Two half-disks of the given radius joined by straight sides of length 2 half_length.
ConvexDomain stadium_domain(double half_length = 0.3, double radius = 0.5, int cap_segments = 24);

std::uint64_t splitmix64(std::uint64_t x);

// ---- level-set topology

enum class TopologyReason { DisconnectedBand, BoundaryNonconstant };
std::string to_string(TopologyReason r);

struct TopologyLevel {
  double level = 0.0;
  int components = 0;  // of {omega0 < level}, 4-connected
  bool simply_connected = true;
};

struct TopologyReport {
  bool boundary_constant = true;
  double boundary_oscillation = 0.0;  // of the extrapolated boundary trace
  double tol = 0.0;
  std::vector<TopologyLevel> levels;
  bool admissible = true;
  std::vector<TopologyReason> reasons;
};

/// Boundary trace: each cut arm of a boundary-adjacent node extrapolates the field
/// linearly to the boundary point. The trace counts as constant when its oscillation
/// is at most tol (max - min). Levels are n_levels points spread uniformly inside
/// (inf + tol*range, sup - tol*range). Sublevel sets use 4-connectivity, their
/// complements (with a one-cell frame around the lattice) 8-connectivity. Throws
/// BadParams for n_levels < 8.
TopologyReport check_level_topology(const ScalarField& omega0, int n_levels = 16, double tol = 0.02);

/// Extrapolated boundary values, one per cut arm.
std::vector<double> boundary_trace(const ScalarField& u);

/// Component labels of mask cells on the grid lattice (-1 outside the mask).
std::vector<int> label_components(const Grid& grid, const std::vector<bool>& mask, bool eight,
                                  int* count = nullptr);

// ---- nonexistence witness

struct WitnessOptions {
  int n_levels = 16;
  double tol = 0.02;
  double min_separation = 0.0;  // between band components; 0 selects 2h
};

struct WitnessReport {
  TopologyReason obstruction = TopologyReason::DisconnectedBand;
  double lower_bound = 0.0;
  // disconnected band {band_low < omega0 < band_high}
  double band_low = 0.0;
  double band_high = 0.0;
  double separation = 0.0;         // distance between the two farthest-apart components
  int minimizer_band_components = 0;  // the same band of the minimizer
  // boundary mechanism
  double sup_omega = 0.0;
  double boundary_level = 0.0;
};

/// Lower bound on the L-infinity distance from the minimizer to the rearrangement
/// class. Disconnected band: the widest band (a, b) between candidate levels whose
/// open set splits into pieces at least min_separation apart certifies (b - a)/2.
/// Boundary: (max of the minimizer on the boundary-adjacent nodes - min of the
/// boundary trace of omega0)/2. The larger certificate is reported. Throws
/// NoViolationFound when omega0 is admissible.
WitnessReport nonexistence_witness(const ScalarField& omega0, const SteadyState& minimizer,
                                   const WitnessOptions& options = {});

// ---- cusp patch

struct CuspReport {
  double cusp_exponent = 0.0;       // width ~ length^p fitted on the input patch
  double input_defect = 0.0;        // convexity defect of the input patch
  double minimizer_defect = 0.0;    // convexity defect of {omega < 1/2} for the minimizer
  double linf_distance = 0.0;       // between minimizer and input
  double patch_area = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes energy in the class of a patch preset (default cusp-patch) and measures
/// the patch's tip scaling on columns at distance [0.2, 0.95] * length from the tip.
CuspReport cusp_patch_experiment(const GridPtr& grid, const PresetSpec& patch = {"cusp-patch", {}, ""},
                                 const SteadyOptions& options = {});

// ---- appendix counterexample

/// |{x^2 + y^4 <= 1}| by composite Simpson on 4 int sqrt(1 - y^4) dy after the
/// substitution y = 1 - s^2, which removes the endpoint singularity.
double quartic_lens_area();

struct AppendixReport {
  double mu0 = 0.0;
  double coefficient = 0.0;     // 2 (pi / mu0)^{4/3}
  double formula_max_rel_error = 0.0;  // over nodes with r in [0.1, 0.6]
  double energy_original = 0.0;
  double energy_rearranged = 0.0;
  double energy_gap = 0.0;
  double fitted_exponent = 0.0;  // of (rearranged - 1) against r on [0.1, 0.6]
  bool minimizer_run = false;
  double minimizer_l1_gap = 0.0;  // ||omega_min - rearranged||_1 / |Omega|
};

/// Needs a disk domain (NotADisk otherwise).
AppendixReport appendix_experiment(const GridPtr& grid, bool run_minimizer = false,
                                   const SteadyOptions& options = {});

// ---- ring geometry sweep

struct RingCase {
  std::size_t index = 0;
  std::uint64_t seed = 0;
  std::string kind;  // concentric-disks, tiny-inner-disk, random
  ConvexRing ring;
};

/// Instance i of a sweep: 0 and 1 are the two anchors, the rest random convex rings
/// drawn from splitmix64(master_seed + i).
RingCase ring_case(std::size_t index, std::uint64_t master_seed);

struct SweepSummary {
  std::size_t instances = 0;
  std::size_t outer_failures = 0;
  std::size_t inner_failures = 0;
  double min_ratio = 0.0;  // min over instances of R diam(A) / |A \ D|
  std::vector<std::size_t> failed;
};

/// Writes one JSON object per line to out. Every diam(A)-bound failure is also
/// written to reproducer_dir (when not empty) as ring_<index>.json.
SweepSummary geometry_sweep(std::size_t n, std::uint64_t master_seed, std::ostream& out,
                            const std::filesystem::path& reproducer_dir = {});

// ---- run output

/// Energy and residual histories, iteration count and convergence of a run.
nlohmann::json to_json(const SteadyState& s);

/// Writes psi and omega field files, f.csv and psi_star.csv into dir, plus psi.pgm,
/// omega.pgm and speed.pgm (|grad psi|) when pgm is set.
void save_steady_run(const std::filesystem::path& dir, const SteadyState& s, bool pgm = false,
                     const FieldMeta& meta = {});

nlohmann::json to_json(const TopologyReport& r);
nlohmann::json to_json(const WitnessReport& r);
nlohmann::json to_json(const CuspReport& r);
nlohmann::json to_json(const AppendixReport& r);
nlohmann::json to_json(const SweepSummary& r);
nlohmann::json to_json(const RingCase& c, const RingBoundReport& r);

}  // namespace vortlab
