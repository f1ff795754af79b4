#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "softcr/design_geometry.hpp"
#include "softcr/errors.hpp"

using namespace softcr;
using softcr::testing::Draw;

namespace {

constexpr double kPi = std::numbers::pi;

ModuleDimensions table_module() {
  return {.length = 0.1,
          .width = 0.09,
          .thickness = 0.045,
          .fringe_base = 0.02,
          .fringe_height = 0.03,
          .inner_radius = 0.025,
          .outer_radius = 0.055,
          .fringe_count = 5,
          .turn_angle = kPi / 2};
}

}  // namespace

TEST(ModuleSpec, AcceptsConsistentDimensions) {
  const ModuleSpec spec(table_module());
  EXPECT_EQ(spec.fringe_count(), 5);
  EXPECT_DOUBLE_EQ(spec.outer_radius(), 0.055);
  EXPECT_EQ(spec.dimensions(), table_module());
}

TEST(ModuleSpec, RejectsOuterRadiusNotInnerPlusHeight) {
  auto d = table_module();
  d.outer_radius = 0.056;
  EXPECT_THROW(ModuleSpec{d}, ValidationError);
}

TEST(ModuleSpec, RejectsBaseNotLengthOverCount) {
  auto d = table_module();
  d.fringe_base = 0.025;
  EXPECT_THROW(ModuleSpec{d}, ValidationError);
}

TEST(ModuleSpec, RejectsNonPositiveAndOutOfRange) {
  for (auto mutate : {+[](ModuleDimensions& d) { d.width = 0.0; },
                      +[](ModuleDimensions& d) { d.thickness = -1.0; },
                      +[](ModuleDimensions& d) { d.fringe_count = 0; },
                      +[](ModuleDimensions& d) { d.turn_angle = -0.1; },
                      +[](ModuleDimensions& d) { d.turn_angle = 4.0; },
                      +[](ModuleDimensions& d) { d.length = std::nan(""); }}) {
    auto d = table_module();
    mutate(d);
    EXPECT_THROW(ModuleSpec{d}, ValidationError);
  }
}

TEST(ModuleSpec, ToleranceIsRelativeOneInABillion) {
  auto d = table_module();
  d.outer_radius = 0.055 * (1 + 5e-10);
  EXPECT_NO_THROW(ModuleSpec{d});
  d.outer_radius = 0.055 * (1 + 5e-9);
  EXPECT_THROW(ModuleSpec{d}, ValidationError);
}

TEST(FringeAreas, QuarterAnnulusAndTriangles) {
  EXPECT_NEAR(annulus_quarter_area(0.055, 0.025), kPi * (0.055 * 0.055 - 0.025 * 0.025) / 4, 1e-18);
  EXPECT_DOUBLE_EQ(triangular_fringe_area(5, 0.02, 0.03), 5 * 0.02 * 0.03 / 2);
  EXPECT_THROW(annulus_quarter_area(0.025, 0.025), ValidationError);
  EXPECT_THROW(triangular_fringe_area(0, 0.02, 0.03), ValidationError);
}

TEST(FringeCount, TableValuesGiveTwoPi) {
  EXPECT_NEAR(fringe_count(0.055, 0.025, 0.020, 0.030), 2 * kPi, 1e-12);
}

TEST(FringeCount, VanishesWithTheBand) {
  EXPECT_LT(fringe_count(0.025 + 1e-12, 0.025, 0.02, 0.03), 1e-8);
}

TEST(FringeCount, RejectsBadInput) {
  EXPECT_THROW(fringe_count(0.02, 0.025, 0.02, 0.03), ValidationError);
  EXPECT_THROW(fringe_count(0.055, 0.025, 0.0, 0.03), ValidationError);
}

TEST(FringeCount, PropertyFillsQuarterAnnulus) {
  Draw draw(11);
  for (int i = 0; i < 1000; ++i) {
    const double r = draw.uniform(1e-3, 0.2);
    const double R = r + draw.uniform(1e-4, 0.2);
    const double b = draw.uniform(1e-3, 0.1);
    const double h = draw.uniform(1e-3, 0.1);
    const double lhs = fringe_count(R, r, b, h) * triangular_fringe_area(1, b, h);
    const double rhs = annulus_quarter_area(R, r);
    ASSERT_TRUE(softcr::testing::close_rel(lhs, rhs, 1e-12)) << R << ' ' << r << ' ' << b << ' ' << h;
  }
}

TEST(FringeBase, Examples) {
  EXPECT_DOUBLE_EQ(fringe_base(0.1, 5), 0.02);
  EXPECT_DOUBLE_EQ(fringe_base(0.1, 1), 0.1);
  EXPECT_DOUBLE_EQ(fringe_base(0.1, 4), 0.025);
  EXPECT_THROW(fringe_base(0.1, 0), ValidationError);
  EXPECT_THROW(fringe_base(0.0, 2), ValidationError);
}

TEST(BendAngleEqualRadii, Examples) {
  EXPECT_EQ(bend_angle_equal_radii(ChordGeometry::equal_radii(0.0, 0.025)), 0.0);
  EXPECT_NEAR(bend_angle_equal_radii(ChordGeometry::equal_radii(0.025 * std::sqrt(2.0), 0.025)),
              kPi / 2, 1e-12);
  EXPECT_NEAR(bend_angle_equal_radii(ChordGeometry::equal_radii(0.05, 0.025)), kPi, 1e-12);
}

TEST(BendAngleEqualRadii, Rejections) {
  EXPECT_THROW(bend_angle_equal_radii(ChordGeometry::equal_radii(0.0501, 0.025)), ValidationError);
  EXPECT_THROW(bend_angle_equal_radii({0.01, 0.025, 0.03}), ValidationError);
  EXPECT_THROW(bend_angle_equal_radii(ChordGeometry::equal_radii(-0.01, 0.025)), ValidationError);
}

TEST(BendAngleEqualRadii, PropertyRightAngleAtRootTwoRadius) {
  Draw draw(12);
  for (int i = 0; i < 100; ++i) {
    const double r = draw.uniform(1e-6, 1.0);
    ASSERT_NEAR(bend_angle_equal_radii(ChordGeometry::equal_radii(r * std::sqrt(2.0), r)), kPi / 2,
                1e-12);
  }
}

TEST(BendAngleEqualRadii, PropertyMonotoneInChord) {
  Draw draw(13);
  for (int i = 0; i < 1000; ++i) {
    const double r = draw.uniform(1e-3, 1.0);
    double c1 = draw.uniform(0.0, 2 * r);
    double c2 = draw.uniform(0.0, 2 * r);
    if (c1 > c2) std::swap(c1, c2);
    ASSERT_LE(bend_angle_equal_radii(ChordGeometry::equal_radii(c1, r)),
              bend_angle_equal_radii(ChordGeometry::equal_radii(c2, r)));
  }
}

TEST(BendAngleUnequalRadii, Examples) {
  EXPECT_EQ(bend_angle_unequal_radii({0.0, 0.02, 0.03}), 0.0);
  EXPECT_NEAR(bend_angle_unequal_radii({0.5, 1.0, 1.0}), kPi / 3, 1e-12);
  EXPECT_THROW(bend_angle_unequal_radii({2.0, 1.0, 1.0}), ValidationError);
}

TEST(BendAngleUnequalRadii, MatchesEqualFormOnlyAtRadiusTwo) {
  const double c = 1.5;
  EXPECT_NEAR(bend_angle_unequal_radii({c, 2.0, 2.0}),
              bend_angle_equal_radii(ChordGeometry::equal_radii(c, 2.0)), 1e-12);
  EXPECT_GT(std::abs(bend_angle_unequal_radii({0.5, 1.0, 1.0}) -
                     bend_angle_equal_radii(ChordGeometry::equal_radii(0.5, 1.0))),
            0.1);
}
