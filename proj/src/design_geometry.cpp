#include "softcr/design_geometry.hpp"

#include <cmath>
#include <numbers>

#include "softcr/errors.hpp"

namespace softcr {

namespace {

using detail::require;
using detail::require_positive;

constexpr double kRelTol = 1e-9;

bool close_rel(double a, double b) {
  return std::abs(a - b) <= kRelTol * std::max(std::abs(a), std::abs(b));
}

void require_band(double outer_radius, double inner_radius) {
  require_positive(inner_radius, "inner radius r");
  require_positive(outer_radius, "outer radius R");
  require(outer_radius > inner_radius, "outer radius R must exceed inner radius r");
}

}  // namespace

ModuleSpec::ModuleSpec(const ModuleDimensions& dims) : dims_(dims) {
  require_positive(dims.length, "module length L");
  require_positive(dims.width, "module width W");
  require_positive(dims.thickness, "module thickness T");
  require_positive(dims.fringe_base, "fringe base b");
  require_positive(dims.fringe_height, "fringe height h");
  require_positive(dims.inner_radius, "inner radius r");
  require_positive(dims.outer_radius, "outer radius R");
  require(dims.fringe_count >= 1, "fringe count N must be at least 1");
  require(std::isfinite(dims.turn_angle) && dims.turn_angle >= 0.0 &&
              dims.turn_angle <= std::numbers::pi,
          "turn angle must lie in [0, pi]");
  require(close_rel(dims.outer_radius, dims.inner_radius + dims.fringe_height),
          "outer radius must equal inner radius plus fringe height (R = r + h)");
  require(close_rel(dims.fringe_base, dims.length / dims.fringe_count),
          "fringe base must equal module length over fringe count (b = L / N)");
}

double annulus_quarter_area(double outer_radius, double inner_radius) {
  require_band(outer_radius, inner_radius);
  return std::numbers::pi * (outer_radius * outer_radius - inner_radius * inner_radius) / 4.0;
}

double triangular_fringe_area(int fringe_count, double base, double height) {
  require(fringe_count >= 1, "fringe count N must be at least 1");
  require_positive(base, "fringe base b");
  require_positive(height, "fringe height h");
  return fringe_count * base * height / 2.0;
}

double fringe_count(double outer_radius, double inner_radius, double base, double height) {
  require_band(outer_radius, inner_radius);
  require_positive(base, "fringe base b");
  require_positive(height, "fringe height h");
  return std::numbers::pi * (outer_radius * outer_radius - inner_radius * inner_radius) /
         (2.0 * base * height);
}

double fringe_base(double length, int fringe_count) {
  require_positive(length, "module length L");
  require(fringe_count >= 1, "fringe count N must be at least 1");
  return length / fringe_count;
}

double bend_angle_equal_radii(const ChordGeometry& chord) {
  require_positive(chord.radius1, "bend radius");
  require(chord.radius1 == chord.radius2, "equal-radii bend angle needs r1 == r2");
  require(std::isfinite(chord.chord) && chord.chord >= 0.0, "chord length must be non-negative");
  require(chord.chord <= 2.0 * chord.radius1, "chord length exceeds the bend diameter");
  return 2.0 * std::asin(chord.chord / (2.0 * chord.radius1));
}

double bend_angle_unequal_radii(const ChordGeometry& chord) {
  require_positive(chord.radius1, "bend radius r1");
  require_positive(chord.radius2, "bend radius r2");
  require(std::isfinite(chord.chord) && chord.chord >= 0.0, "chord length must be non-negative");
  const double arg = chord.chord / (chord.radius1 * chord.radius2);
  require(arg <= 1.0, "C / (r1 r2) lies outside the arcsine domain");
  return 2.0 * std::asin(arg);
}

}  // namespace softcr
