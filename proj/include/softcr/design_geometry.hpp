#pragma once

#include <string>

namespace softcr {

/// Raw parameter set of one soft module. All lengths in metres, angle in radians.
struct ModuleDimensions {
  double length = 0.0;          // L
  double width = 0.0;           // W
  double thickness = 0.0;       // T
  double fringe_base = 0.0;     // b
  double fringe_height = 0.0;   // h
  double inner_radius = 0.0;    // r
  double outer_radius = 0.0;    // R
  int fringe_count = 0;         // N
  double turn_angle = 0.0;      // theta

  friend bool operator==(const ModuleDimensions&, const ModuleDimensions&) = default;
};

/// Validated module geometry.
///
/// Construction enforces: every length strictly positive, R == r + h and
/// b == L / N (both to 1e-9 relative), N >= 1 and 0 <= theta <= pi.
class ModuleSpec {
 public:
  explicit ModuleSpec(const ModuleDimensions& dims);

  const ModuleDimensions& dimensions() const { return dims_; }

  double length() const { return dims_.length; }
  double width() const { return dims_.width; }
  double thickness() const { return dims_.thickness; }
  double fringe_base() const { return dims_.fringe_base; }
  double fringe_height() const { return dims_.fringe_height; }
  double inner_radius() const { return dims_.inner_radius; }
  double outer_radius() const { return dims_.outer_radius; }
  int fringe_count() const { return dims_.fringe_count; }
  double turn_angle() const { return dims_.turn_angle; }

  friend bool operator==(const ModuleSpec&, const ModuleSpec&) = default;

 private:
  ModuleDimensions dims_;
};

/// Chord measured across a bent module plus the bend radii at its two ends.
struct ChordGeometry {
  double chord = 0.0;
  double radius1 = 0.0;
  double radius2 = 0.0;

  static ChordGeometry equal_radii(double chord, double radius) {
    return {chord, radius, radius};
  }
};

/// Area swept by the fringe band when the module closes a quarter turn:
/// pi (R^2 - r^2) / 4. Requires R > r > 0.
double annulus_quarter_area(double outer_radius, double inner_radius);

/// Total area of N triangular notches of base b and height h: N b h / 2.
double triangular_fringe_area(int fringe_count, double base, double height);

/// Number of fringes that fill the quarter annulus, pi (R^2 - r^2) / (2 b h).
/// Real valued; rounding to an integer count is the caller's decision.
double fringe_count(double outer_radius, double inner_radius, double base, double height);

/// b = L / N.
double fringe_base(double length, int fringe_count);

/// theta = 2 asin(C / 2r) for a module whose two bend radii coincide.
/// Rejects chords longer than the diameter and unequal radii.
double bend_angle_equal_radii(const ChordGeometry& chord);

/// theta = 2 asin(C / (r1 r2)).
///
/// This is the printed unequal-radii relation, kept verbatim. The argument
/// C / (r1 r2) has units of 1/length, so the result depends on the unit
/// system; it only agrees with the equal-radii form when r1 = r2 = 2 (in
/// whatever unit is used). Callers wanting a physical angle should prefer
/// bend_angle_equal_radii.
double bend_angle_unequal_radii(const ChordGeometry& chord);

}  // namespace softcr
