// vortlab: command-line experiment runner.
//
// Every subcommand writes report.json (and any field files) under --out and prints a
// short summary. Exit status: 0 success, 1 usage or input error, 2 when a checked
// invariant fails.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vortlab/error.hpp"
#include "vortlab/io.hpp"
#include "vortlab/lab.hpp"

using namespace vortlab;
using nlohmann::json;

namespace {

struct Common {
  std::string domain = "disk";
  std::string h = "1/64";
  std::string preset;  // empty picks the subcommand default
  std::vector<std::string> params;
  std::string file;
  std::string direction = "min";
  double tol = 0.0;
  int max_iters = 200;
  int levels = 16;
  std::uint64_t seed = 0;
  std::string out = "vortlab-out";
  bool pgm = false;
};

struct InvariantFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

PresetSpec preset_of(const Common& c, const std::string& fallback = "radial-poly") {
  PresetSpec spec{c.preset.empty() ? fallback : c.preset, {}, c.file};
  for (const auto& kv : c.params) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::BadParams, "--param expects key=value");
    spec.params[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
  }
  return spec;
}

SteadyOptions steady_options(const Common& c) {
  SteadyOptions o;
  o.tol = c.tol;
  o.max_iters = c.max_iters;
  return o;
}

Extremum extremum_of(const std::string& s) {
  if (s == "min") return Extremum::Min;
  if (s == "max") return Extremum::Max;
  throw Error(ErrorCode::BadParams, "--direction must be min or max");
}

json header(const std::string& command, const GridPtr& grid) {
  return {{"command", command}, {"h", grid->h()}, {"nx", grid->nx()}, {"ny", grid->ny()},
          {"nodes", grid->size()}, {"domain", domain_to_json(grid->domain())}};
}

json preset_json(const PresetSpec& spec) {
  return {{"name", spec.name}, {"params", preset_parameters(spec)}};
}

std::filesystem::path out_dir(const Common& c) {
  std::error_code ec;
  std::filesystem::create_directories(c.out, ec);
  if (ec) throw Error(ErrorCode::IoError, "cannot create " + c.out);
  return c.out;
}

void write_report(const Common& c, const json& report) {
  write_text(out_dir(c) / "report.json", report.dump(2) + "\n");
}

void check(bool ok, const std::string& what, std::vector<std::string>& failures) {
  if (!ok) failures.push_back(what);
}

void finish(json& report, const Common& c, const std::vector<std::string>& failures) {
  report["invariant_failures"] = failures;
  write_report(c, report);
  if (!failures.empty()) {
    std::string msg;
    for (const auto& f : failures) msg += (msg.empty() ? "" : "; ") + f;
    throw InvariantFailure(msg);
  }
}

GridPtr grid_of(const Common& c) { return build_grid(parse_domain(c.domain), parse_spacing(c.h)); }

// ---- subcommands

void run_solve(const Common& c) {
  const GridPtr grid = grid_of(c);
  const PresetSpec spec = preset_of(c);
  const ScalarField w0 = sample_preset(spec, grid);
  const Extremum dir = extremum_of(c.direction);
  const SteadyState st = extremize_energy(w0, dir, steady_options(c));
  save_steady_run(out_dir(c), st, c.pgm, {spec.name, preset_parameters(spec)});

  json report = header("solve", grid);
  report["preset"] = preset_json(spec);
  report["steady"] = to_json(st);
  std::vector<std::string> failures;
  check(same_distribution(st.omega, w0), "omega is not a rearrangement of omega0", failures);
  check(st.converged, "fixed-point iteration did not converge", failures);

  const EigenEstimate eig = first_eigenvalue(grid);
  const ArnoldReport arnold = check_arnold(st, eig);
  report["arnold"] = {{"verdict", to_string(arnold.verdict)},
                      {"inf_slope", arnold.inf_slope},
                      {"lambda1", arnold.lambda1},
                      {"single_signed", arnold.single_signed},
                      {"strong_form_constant", std::isfinite(arnold.strong_form_constant)
                                                   ? json(arnold.strong_form_constant)
                                                   : json(nullptr)}};
  if (dir == Extremum::Min && w0.min() > 0.0) {
    const auto conv = level_set_convexity_check(st.psi, measure_quantile_levels(st.psi));
    report["level_convexity"] = {{"levels", conv.levels},
                                 {"defects", conv.defects},
                                 {"nested", conv.nested},
                                 {"max_defect", conv.max_defect}};
    const auto stag = stagnation_set(st.psi);
    report["stagnation"] = {{"classification", to_string(stag.classification)},
                            {"min_psi", stag.min_psi},
                            {"location", {stag.location.x, stag.location.y}},
                            {"segment", {{stag.segment_start.x, stag.segment_start.y},
                                         {stag.segment_end.x, stag.segment_end.y}}},
                            {"gradient_floor", stag.gradient_floor}};
    check(conv.nested, "sublevel sets of psi are not nested", failures);
  }
  finish(report, c, failures);
  std::cout << "solve: " << (st.converged ? "converged" : "not converged") << " after "
            << st.iterations << " iterations, E = " << dirichlet_energy(st.psi)
            << ", Arnold " << to_string(arnold.verdict) << "\n";
}

void run_topology(const Common& c) {
  const GridPtr grid = grid_of(c);
  const PresetSpec spec = preset_of(c);
  const TopologyReport t = check_level_topology(sample_preset(spec, grid), c.levels);
  json report = header("topology", grid);
  report["preset"] = preset_json(spec);
  report["topology"] = to_json(t);
  finish(report, c, {});
  std::cout << "topology: " << (t.admissible ? "admissible" : "violation");
  for (auto r : t.reasons) std::cout << " " << to_string(r);
  std::cout << "\n";
}

void run_witness(const Common& c, double min_separation) {
  const GridPtr grid = grid_of(c);
  const PresetSpec spec = preset_of(c);
  const ScalarField w0 = sample_preset(spec, grid);
  const SteadyState st = extremize_energy(w0, Extremum::Min, steady_options(c));
  WitnessOptions opt;
  opt.n_levels = c.levels;
  opt.min_separation = min_separation;
  const WitnessReport w = nonexistence_witness(w0, st, opt);
  json report = header("witness", grid);
  report["preset"] = preset_json(spec);
  report["minimizer"] = {{"iterations", st.iterations}, {"converged", st.converged}};
  report["witness"] = to_json(w);
  std::vector<std::string> failures;
  check(w.lower_bound > 0.0, "certified bound is not positive", failures);
  finish(report, c, failures);
  std::cout << "witness: " << to_string(w.obstruction) << ", lower bound " << w.lower_bound << "\n";
}

void run_cusp(const Common& c) {
  const GridPtr grid = grid_of(c);
  const PresetSpec spec = preset_of(c, "cusp-patch");
  const CuspReport r = cusp_patch_experiment(grid, spec, steady_options(c));
  json report = header("cusp", grid);
  report["preset"] = preset_json(spec);
  report["cusp"] = to_json(r);
  std::vector<std::string> failures;
  check(r.minimizer_defect <= 4.0 * grid->h(), "minimizer patch defect exceeds 4h", failures);
  finish(report, c, failures);
  std::cout << "cusp: exponent " << r.cusp_exponent << ", input defect " << r.input_defect
            << ", minimizer defect " << r.minimizer_defect << "\n";
}

void run_appendix(const Common& c, bool minimizer) {
  const GridPtr grid = grid_of(c);
  const AppendixReport r = appendix_experiment(grid, minimizer, steady_options(c));
  json report = header("appendix", grid);
  report["appendix"] = to_json(r);
  std::vector<std::string> failures;
  check(r.formula_max_rel_error <= 0.02, "4/3-power formula off by more than 2%", failures);
  check(r.energy_gap > 0.0, "symmetrization did not lower the energy", failures);
  check(std::abs(r.fitted_exponent - 8.0 / 3.0) <= 0.1, "radial exponent outside 8/3 +- 0.1", failures);
  finish(report, c, failures);
  std::cout << "appendix: formula error " << r.formula_max_rel_error << ", energy gap "
            << r.energy_gap << ", exponent " << r.fitted_exponent << "\n";
}

void run_sweep(const Common& c, std::size_t n) {
  const auto dir = out_dir(c);
  std::ostringstream lines;
  const SweepSummary s = geometry_sweep(n, c.seed, lines, dir / "reproducers");
  write_text(dir / "sweep.jsonl", lines.str());
  json report = {{"command", "geometry-sweep"}, {"seed", c.seed}, {"summary", to_json(s)}};
  std::vector<std::string> failures;
  check(s.outer_failures == 0, "diam(A) bound failed on some instance", failures);
  finish(report, c, failures);
  std::cout << "geometry-sweep: " << s.instances << " rings, " << s.outer_failures
            << " diam(A) failures, " << s.inner_failures << " diam(D) failures, min ratio "
            << s.min_ratio << "\n";
}

void run_eigen(const Common& c) {
  const GridPtr grid = grid_of(c);
  const EigenEstimate e = first_eigenvalue(grid);
  save_field(out_dir(c) / "eigenfield", e.eigenfield);
  json report = header("eigen", grid);
  report["eigen"] = {{"lambda1", e.lambda1},
                     {"rayleigh_residual", e.rayleigh_residual},
                     {"iterations", e.iterations}};
  finish(report, c, {});
  std::cout << "eigen: lambda1 = " << e.lambda1 << "\n";
}

void render(const json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) render(v, prefix.empty() ? k : prefix + "." + k, os);
  } else if (j.is_array() && j.size() > 8) {
    os << prefix << ": [" << j.size() << " entries] first " << j.front().dump() << ", last "
       << j.back().dump() << "\n";
  } else {
    os << prefix << ": " << j.dump() << "\n";
  }
}

void run_report(const std::string& input) {
  const json j = json::parse(read_text(input));
  render(j, "", std::cout);
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::BadParams:
    case ErrorCode::IoError:
    case ErrorCode::UnknownPreset:
    case ErrorCode::ResolutionTooCoarse:
    case ErrorCode::DegenerateDomain:
    case ErrorCode::NonConvexDomain:
    case ErrorCode::VersionMismatch:
    case ErrorCode::ChecksumMismatch:
    case ErrorCode::NotADisk:
    case ErrorCode::DegeneratePatch:
    case ErrorCode::SignViolation:
    case ErrorCode::NoViolationFound:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vortlab: steady vortex experiments"};
  app.set_help_flag("--help", "print help");  // -h would clash with --h
  app.require_subcommand(1);
  Common c;
  std::size_t sweep_n = 1000;
  double min_separation = 0.0;
  bool appendix_minimizer = false;
  std::string report_in;

  auto add_grid = [&](CLI::App* sub) {
    sub->add_option("--domain", c.domain, "disk, square, unit-square, pentagon, stadium, disk:cx,cy,r, rect:..., polygon:...");
    sub->add_option("--h", c.h, "grid spacing, e.g. 1/128");
    sub->add_option("--out", c.out, "output directory");
  };
  auto add_preset = [&](CLI::App* sub) {
    sub->add_option("--preset", c.preset, "initial vorticity preset");
    sub->add_option("--param", c.params, "preset parameter key=value (repeatable)");
    sub->add_option("--file", c.file, "field file for custom-grid-file");
  };
  auto add_steady = [&](CLI::App* sub) {
    sub->add_option("--tol", c.tol, "fixed-point tolerance (0 picks the grid default)");
    sub->add_option("--max-iters", c.max_iters, "iteration cap");
  };

  auto* solve = app.add_subcommand("solve", "extremize energy in the rearrangement class");
  add_grid(solve);
  add_preset(solve);
  add_steady(solve);
  solve->add_option("--direction", c.direction, "min or max");
  solve->add_flag("--pgm", c.pgm, "also write PGM heatmaps");

  auto* topology = app.add_subcommand("topology", "level-set topology of the initial vorticity");
  add_grid(topology);
  add_preset(topology);
  topology->add_option("--levels", c.levels, "number of sampled levels (>= 8)");

  auto* witness = app.add_subcommand("witness", "lower bound on the distance to steady members");
  add_grid(witness);
  add_preset(witness);
  add_steady(witness);
  witness->add_option("--levels", c.levels, "number of sampled levels (>= 8)");
  witness->add_option("--min-separation", min_separation, "band component separation (0 = 2h)");

  auto* sweep = app.add_subcommand("geometry-sweep", "random convex rings against the ball bound");
  sweep->add_option("--n", sweep_n, "number of rings");
  sweep->add_option("--seed", c.seed, "master seed");
  sweep->add_option("--out", c.out, "output directory");

  auto* appendix = app.add_subcommand("appendix", "symmetrization counterexample on the unit disk");
  add_grid(appendix);
  add_steady(appendix);
  appendix->add_flag("--minimizer", appendix_minimizer, "also run the energy minimizer");

  auto* cusp = app.add_subcommand("cusp", "cusp patch experiment");
  add_grid(cusp);
  add_preset(cusp);
  add_steady(cusp);

  auto* eigen = app.add_subcommand("eigen", "first Dirichlet eigenvalue");
  add_grid(eigen);

  auto* report = app.add_subcommand("report", "print a report.json as key: value lines");
  report->add_option("input", report_in, "report file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*solve) run_solve(c);
    if (*topology) run_topology(c);
    if (*witness) run_witness(c, min_separation);
    if (*sweep) run_sweep(c, sweep_n);
    if (*appendix) run_appendix(c, appendix_minimizer);
    if (*cusp) run_cusp(c);
    if (*eigen) run_eigen(c);
    if (*report) run_report(report_in);
  } catch (const InvariantFailure& e) {
    std::cerr << "invariant failure: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code(e.code());
  } catch (const json::exception& e) {
    std::cerr << "bad JSON: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 1;
  }
  return 0;
}
