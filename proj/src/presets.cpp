#include "vortlab/presets.hpp"

#include <algorithm>
#include <cmath>

#include "vortlab/error.hpp"
#include "vortlab/io.hpp"

namespace vortlab {

namespace {

using Params = std::map<std::string, double>;

// Merges user parameters over defaults, rejecting keys the preset does not know.
Params resolve(const PresetSpec& spec, Params defaults) {
  for (const auto& [key, value] : spec.params) {
    auto it = defaults.find(key);
    if (it == defaults.end()) {
      throw Error(ErrorCode::BadParams, "preset " + spec.name + " has no parameter '" + key + "'");
    }
    if (!std::isfinite(value)) {
      throw Error(ErrorCode::BadParams, "parameter '" + key + "' is not finite");
    }
    it->second = value;
  }
  return defaults;
}

Params defaults_of(const std::string& name) {
  if (name == "constant") return {{"c", 1.0}};
  if (name == "radial-poly") return {{"c0", 2.0}, {"c2", -1.0}, {"c4", 0.0}, {"cx", 0.0}, {"cy", 0.0}};
  if (name == "appendix-A") return {};
  if (name == "two-bump") return {{"base", 1.0}, {"amplitude", 0.2}, {"sep", 0.45}, {"rho", 0.3}};
  if (name == "boundary-nonconstant") return {{"a", 1.0}};
  if (name == "cusp-patch") return {{"tip_x", -0.5}, {"tip_y", 0.0}, {"length", 1.0}, {"k", 0.6}, {"p", 1.5}};
  if (name == "custom-grid-file") return {{"alpha", 0.0}};
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

double appendix_polynomial(Point p) {
  const double y2 = p.y * p.y;
  return 1.0 + 2.0 * (p.x * p.x + y2 * y2);
}

}  // namespace

double smoothstep5(double t, double a, double b) {
  if (t <= a) return 0.0;
  if (t >= b) return 1.0;
  const double s = (t - a) / (b - a);
  return s * s * s * (s * (6.0 * s - 15.0) + 10.0);
}

double appendix_outer_value() {
  // x^2 + y^4 <= r^2 for r < 1, with equality on the x axis, so the polynomial's max
  // over the blend annulus is attained at (7/8, 0). Staying above it keeps the blend
  // radially increasing.
  return appendix_polynomial({kAppendixBlendRadius, 0.0}) + 0.1;
}

double appendix_value(Point p) {
  const double chi = smoothstep5(norm(p), kAppendixInnerRadius, kAppendixBlendRadius);
  if (chi >= 1.0) return appendix_outer_value();
  return (1.0 - chi) * appendix_polynomial(p) + chi * appendix_outer_value();
}

std::vector<std::string> preset_names() {
  return {"constant",  "radial-poly",          "appendix-A",      "two-bump",
          "boundary-nonconstant", "cusp-patch", "custom-grid-file"};
}

ScalarField sample_preset(const PresetSpec& spec, const GridPtr& grid) {
  const std::string& name = spec.name;
  if (name == "constant") {
    const Params p = resolve(spec, defaults_of(name));
    return ScalarField(grid, p.at("c"));
  }
  if (name == "radial-poly") {
    const Params p = resolve(spec, defaults_of(name));
    const double c0 = p.at("c0"), c2 = p.at("c2"), c4 = p.at("c4");
    const Point c{p.at("cx"), p.at("cy")};
    return ScalarField::sample(grid, [&](Point x) {
      const Point d = x - c;
      const double r2 = dot(d, d);
      return c0 + c2 * r2 + c4 * r2 * r2;
    });
  }
  if (name == "appendix-A") {
    resolve(spec, defaults_of(name));
    return ScalarField::sample(grid, appendix_value);
  }
  if (name == "two-bump") {
    const Params p = resolve(spec, defaults_of(name));
    const double base = p.at("base"), amp = p.at("amplitude");
    const double sep = p.at("sep"), rho = p.at("rho");
    if (!(rho > 0.0) || !(sep >= rho) || !(amp > 0.0)) {
      throw Error(ErrorCode::BadParams, "two-bump needs rho > 0, sep >= rho, amplitude > 0");
    }
    auto bump = [&](Point d) {
      const double q = 1.0 - dot(d, d) / (rho * rho);
      return q > 0.0 ? q * q * q : 0.0;
    };
    return ScalarField::sample(grid, [&](Point x) {
      return base + amp * (bump(x - Point{sep, 0.0}) + bump(x - Point{-sep, 0.0}));
    });
  }
  if (name == "boundary-nonconstant") {
    const Params p = resolve(spec, defaults_of(name));
    const double a = p.at("a");
    const BoundingBox box = grid->domain().bounding_box();
    return ScalarField::sample(grid, [&](Point x) {
      return 1.0 + a * (x.x - box.lo.x) / (box.hi.x - box.lo.x);
    });
  }
  if (name == "cusp-patch") {
    const Params p = resolve(spec, defaults_of(name));
    const Point tip{p.at("tip_x"), p.at("tip_y")};
    const double length = p.at("length"), k = p.at("k"), power = p.at("p");
    if (!(length > 0.0) || !(k > 0.0) || !(power > 0.0)) {
      throw Error(ErrorCode::DegeneratePatch, "cusp patch needs positive length, k and p");
    }
    ScalarField f = ScalarField::sample(grid, [&](Point x) {
      const double d = x.x - tip.x;
      if (d < 0.0 || d > length) return 0.0;
      return std::abs(x.y - tip.y) <= k * std::pow(d, power) ? 1.0 : 0.0;
    });
    if (f.max() <= 0.0) throw Error(ErrorCode::DegeneratePatch, "patch covers no grid cell");
    return f;
  }
  if (name == "custom-grid-file") {
    resolve(spec, defaults_of(name));
    if (spec.file.empty()) throw Error(ErrorCode::BadParams, "custom-grid-file needs a file");
    LoadedField loaded = load_field(spec.file, grid);
    if (!loaded.field.grid().same_as(*grid)) {
      throw Error(ErrorCode::GridMismatch, "field file lives on a different grid");
    }
    return ScalarField(grid, loaded.field.vector());
  }
  throw Error(ErrorCode::UnknownPreset, "unknown preset '" + name + "'");
}

std::map<std::string, double> preset_parameters(const PresetSpec& spec) {
  return resolve(spec, defaults_of(spec.name));
}

double preset_alpha(const PresetSpec& spec) {
  if (spec.name == "cusp-patch") return 0.0;
  if (spec.name == "custom-grid-file") {
    auto it = spec.params.find("alpha");
    return it == spec.params.end() ? 0.0 : it->second;
  }
  const auto names = preset_names();
  if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
    throw Error(ErrorCode::UnknownPreset, "unknown preset '" + spec.name + "'");
  }
  return 1.0;
}

}  // namespace vortlab
