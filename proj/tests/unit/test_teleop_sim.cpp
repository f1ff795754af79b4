#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <thread>
#include <vector>

#include "property.hpp"
#include "softcr/errors.hpp"
#include "softcr/teleop_sim.hpp"

using namespace softcr;
using softcr::testing::Draw;

namespace {

constexpr double kPi = std::numbers::pi;

TeleopInput random_input(Draw& draw) {
  TeleopInput in;
  in.joystick_x = draw.uniform(-1.5, 1.5);
  in.joystick_y = draw.uniform(-1.5, 1.5);
  in.drive_switch = static_cast<DriveSwitch>(draw.integer(-1, 1));
  in.mode = draw.coin() ? RobotMode::SSR : RobotMode::SCM;
  return in;
}

}  // namespace

TEST(SimConfig, Defaults) {
  const SimConfig c;
  EXPECT_NEAR(c.wheel_speed(), 2 * kPi * 0.035, 1e-15);
  EXPECT_NEAR(c.wheel_speed(), 0.2199, 5e-5);
  EXPECT_DOUBLE_EQ(c.tick_period(), 0.02);
  EXPECT_NEAR(c.shaft_limit(), 2 * c.servo_max_speed, 1e-12);
  SimConfig bad;
  bad.tick_rate = 0;
  EXPECT_THROW(bad.validate(), ValidationError);
}

TEST(Reset, EqualCablesAndRepeatable) {
  const SimConfig c;
  const TeleopState s = reset(c);
  EXPECT_EQ(s.yaw_drive.cable_a, s.yaw_drive.cable_b);
  EXPECT_EQ(s.pitch_drive.cable_a, s.pitch_drive.cable_b);
  EXPECT_EQ(s, reset(c));
  EXPECT_EQ(s.sim_time, 0.0);
}

TEST(Step, ZeroInputIsFixedPoint) {
  const SimConfig c;
  const TeleopState s0 = reset(c);
  TeleopState s1 = step(s0, {}, c, 0.02);
  EXPECT_EQ(s1.sim_time, 0.02);
  s1.sim_time = s0.sim_time;
  s1.tick = s0.tick;
  EXPECT_EQ(s1, s0);
}

TEST(Step, Preconditions) {
  const SimConfig c;
  const TeleopState s = reset(c);
  EXPECT_THROW(step(s, {}, c, 0.0), ValidationError);
  EXPECT_THROW(step(s, {}, c, std::nan("")), ValidationError);
  EXPECT_THROW(step(s, {std::nan(""), 0}, c, 0.02), ValidationError);
  EXPECT_THROW(step(s, {}, c, 10.0), ValidationError);  // 10 * 2.09 * 0.75 > pi
}

TEST(Step, FullStickForTwoSecondsReachesRightAngle) {
  const SimConfig c;
  TeleopState s = reset(c);
  double last = 0.0;
  for (int i = 0; i < 100; ++i) {
    s = step(s, {1.0, 0.0}, c, 0.02);
    EXPECT_GT(s.module_bends[0], last);
    last = s.module_bends[0];
  }
  EXPECT_NEAR(s.module_bends[0], kPi / 2, 1e-12);
  EXPECT_EQ(s.module_bends[0], s.module_bends[2]);
  EXPECT_EQ(s.module_bends[1], 0.0);
  s = step(s, {1.0, 0.0}, c, 0.02);
  EXPECT_TRUE(s.clamped);
  EXPECT_LE(s.module_bends[0], kPi / 2);
}

TEST(Step, PitchDrivesModulesTwoAndFour) {
  const SimConfig c;
  const TeleopState s = step(reset(c), {0.0, -0.5}, c, 0.02);
  EXPECT_LT(s.module_bends[1], 0.0);
  EXPECT_EQ(s.module_bends[1], s.module_bends[3]);
  EXPECT_EQ(s.module_bends[0], 0.0);
}

TEST(Step, SsrStraightLineOneSecond) {
  const SimConfig c;
  TeleopState s = reset(c);
  const TeleopInput in{0.0, 0.0, DriveSwitch::Forward, RobotMode::SSR};
  for (int i = 0; i < 50; ++i) s = step(s, in, c, 0.02);
  EXPECT_NEAR(s.ssr_pose.x, 2 * kPi * 0.035, 1e-12);
  EXPECT_EQ(s.ssr_pose.y, 0.0);
  EXPECT_EQ(s.ssr_pose.heading, 0.0);
  EXPECT_NEAR(s.wheel_speed, 0.2199, 5e-5);
}

TEST(Step, SsrReverseAndScmFreeze) {
  const SimConfig c;
  TeleopState s = step(reset(c), {0, 0, DriveSwitch::Reverse, RobotMode::SSR}, c, 0.5);
  EXPECT_LT(s.ssr_pose.x, 0.0);
  const PlanarPose frozen = s.ssr_pose;
  s = step(s, {0, 0, DriveSwitch::Forward, RobotMode::SCM}, c, 0.5);
  EXPECT_EQ(s.ssr_pose, frozen);
  EXPECT_EQ(s.wheel_speed, 0.0);
}

TEST(Step, ConstantTurnRateHeading) {
  SimConfig c;
  const double v = c.wheel_speed();
  const double beta = 0.1 / (c.turn_gain * v);  // total yaw bend for 0.1 rad/s
  TeleopState s = reset(c);
  s.yaw_drive.shaft_angle = beta / (c.bend_per_cable_delta * c.pulley_radius);
  const TeleopInput in{0.0, 0.0, DriveSwitch::Forward, RobotMode::SSR};
  for (int i = 0; i < 250; ++i) s = step(s, in, c, 0.02);
  EXPECT_NEAR(s.ssr_pose.heading, 0.5, 1e-12);
  // Arc of radius v / omega swept through 0.5 rad.
  const double radius = v / 0.1;
  EXPECT_NEAR(s.ssr_pose.x, radius * std::sin(0.5), 1e-12);
  EXPECT_NEAR(s.ssr_pose.y, radius * (1 - std::cos(0.5)), 1e-12);
}

TEST(Step, PropertyAntagonismMonotoneUntilSaturation) {
  Draw draw(61);
  const SimConfig c;
  for (int trial = 0; trial < 100; ++trial) {
    TeleopState s = reset(c);
    s.yaw_drive.shaft_angle = draw.uniform(-c.shaft_limit(), c.shaft_limit());
    s = step(s, {}, c, 0.02);
    for (int i = 0; i < 200; ++i) {
      const double before = s.yaw_drive.cable_a - s.yaw_drive.cable_b;
      const double x = draw.uniform(0.01, 1.0);
      s = step(s, {x, draw.uniform(-1, 1)}, c, 0.02);
      const double after = s.yaw_drive.cable_a - s.yaw_drive.cable_b;
      if (s.yaw_drive.shaft_angle < c.shaft_limit()) {
        ASSERT_GT(after, before);
      } else {
        ASSERT_GE(after, before);
      }
    }
  }
}

TEST(Step, PropertyConservationClampAndWrap) {
  Draw draw(62);
  const SimConfig c;
  TeleopState s = reset(c);
  const double yaw_sum = s.yaw_drive.cable_a + s.yaw_drive.cable_b;
  const double pitch_sum = s.pitch_drive.cable_a + s.pitch_drive.cable_b;
  TeleopInput in;
  for (int i = 0; i < 100000; ++i) {
    if (i % 7 == 0) in = random_input(draw);
    s = step(s, in, c, c.tick_period());
    ASSERT_LT(std::abs(s.yaw_drive.cable_a + s.yaw_drive.cable_b - yaw_sum), 1e-9 * yaw_sum);
    ASSERT_LT(std::abs(s.pitch_drive.cable_a + s.pitch_drive.cable_b - pitch_sum), 1e-9 * pitch_sum);
    ASSERT_GE(s.yaw_drive.cable_b, 0.0);
    ASSERT_GE(s.pitch_drive.cable_a, 0.0);
    for (double b : s.module_bends) ASSERT_LE(std::abs(b), kPi / 2);
    ASSERT_GT(s.ssr_pose.heading, -kPi);
    ASSERT_LE(s.ssr_pose.heading, kPi);
  }
}

TEST(Step, PropertyDeterministicReplay) {
  const SimConfig c;
  auto run = [&](std::uint64_t seed) {
    Draw draw(seed);
    std::vector<TeleopState> trace;
    TeleopState s = reset(c);
    for (int i = 0; i < 5000; ++i) {
      s = step(s, random_input(draw), c, c.tick_period());
      trace.push_back(s);
    }
    return trace;
  };
  EXPECT_EQ(run(63), run(63));
  EXPECT_NE(run(63), run(64));
}

TEST(WrapAngle, HalfOpenRange) {
  EXPECT_EQ(wrap_angle(kPi), kPi);
  EXPECT_EQ(wrap_angle(-kPi), kPi);
  EXPECT_NEAR(wrap_angle(3 * kPi / 2), -kPi / 2, 1e-15);
  EXPECT_EQ(wrap_angle(0.25), 0.25);
}

TEST(ScmPose, Examples) {
  TeleopState s = reset(SimConfig{});
  EXPECT_LT((scm_pose(s).end_effector - Eigen::Vector3d(0.4, 0, 0)).norm(), 1e-15);
  s.module_bends = {0, kPi / 2, 0, 0};
  EXPECT_NEAR(scm_pose(s).end_effector.z(), 0.3, 1e-15);
  s.module_bends = {kPi / 2, 0, 0, 0};
  EXPECT_LT((scm_pose(s).end_effector - Eigen::Vector3d(0, 0.4, 0)).norm(), 1e-15);
  EXPECT_EQ(scm_pose(s).frames.size(), 4u);
}

TEST(Simulator, HoldsLastInputAndAppliesInOrder) {
  Simulator sim;
  sim.submit({0.5, 0.0});
  sim.submit({-1.0, 2.0});
  const TeleopState s = sim.tick();
  EXPECT_EQ(sim.held_input().joystick_x, -1.0);
  EXPECT_EQ(sim.held_input().joystick_y, 1.0);  // clamped on submit
  EXPECT_LT(s.module_bends[0], 0.0);
  const TeleopState s2 = sim.tick();
  EXPECT_LT(s2.module_bends[0], s.module_bends[0]);
  EXPECT_EQ(sim.snapshot(), s2);
  EXPECT_THROW(sim.submit({std::nan(""), 0}), ValidationError);
  sim.reset();
  EXPECT_EQ(sim.snapshot(), reset(SimConfig{}));
}

TEST(Simulator, ConcurrentSubmitIsSafe) {
  Simulator sim;
  std::vector<std::thread> producers;
  for (int t = 0; t < 4; ++t)
    producers.emplace_back([&sim] {
      for (int i = 0; i < 500; ++i) sim.submit({1.0, 0.0});
    });
  for (int i = 0; i < 50; ++i) sim.tick();
  for (auto& p : producers) p.join();
  sim.tick();
  EXPECT_EQ(sim.snapshot().tick, 51u);
  EXPECT_EQ(sim.held_input().joystick_x, 1.0);
}
