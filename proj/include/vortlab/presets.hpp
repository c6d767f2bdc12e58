#pragma once

#include <map>
#include <string>
#include <vector>

#include "vortlab/field.hpp"

namespace vortlab {

/// Named analytic vorticity. Unknown parameter keys are rejected with BadParams.
///
///   constant              c (1)
///   radial-poly           c0 + c2 r^2 + c4 r^4 about (cx, cy); defaults c0=2 c2=-1 c4=0
///   appendix-A            1 + 2(x^2 + y^4) on r <= 3/4, smoothstep-blended to a constant
///                         by r = 7/8
///   two-bump              base + amplitude * (1 - (d/rho)^2)^3_+ around (+-sep, 0);
///                         base=1 amplitude=0.2 sep=0.45 rho=0.3
///   boundary-nonconstant  1 + a (x - xmin)/(xmax - xmin) over the domain box; a=1
///   cusp-patch            indicator of {0 <= x - tip_x <= length, |y - tip_y| <= k (x - tip_x)^p};
///                         tip_x=-0.5 tip_y=0 length=1 k=0.6 p=1.5
///   custom-grid-file      field file given by `file`, must live on the same grid
struct PresetSpec {
  std::string name;
  std::map<std::string, double> params;
  std::string file;
};

ScalarField sample_preset(const PresetSpec& spec, const GridPtr& grid);

/// Parameters after merging the given ones over the preset's defaults.
std::map<std::string, double> preset_parameters(const PresetSpec& spec);
/// Hoelder exponent the preset is known to have (smooth presets report 1, patches 0).
double preset_alpha(const PresetSpec& spec);

std::vector<std::string> preset_names();

/// Radius inside which appendix-A equals the polynomial 1 + 2(x^2 + y^4).
inline constexpr double kAppendixInnerRadius = 0.75;
inline constexpr double kAppendixBlendRadius = 0.875;
/// appendix-A evaluated at a point.
double appendix_value(Point p);
/// Constant value taken by appendix-A for r >= kAppendixBlendRadius.
double appendix_outer_value();

/// Quintic smoothstep: 0 below a, 1 above b, C^2 in between.
double smoothstep5(double t, double a, double b);

}  // namespace vortlab
