#pragma once

#include <Eigen/Core>
#include <array>
#include <cstdint>
#include <deque>
#include <mutex>
#include <numbers>
#include <string_view>
#include <vector>

#include "softcr/kinematics.hpp"

namespace softcr {

enum class DriveSwitch { Reverse = -1, Off = 0, Forward = 1 };
enum class RobotMode { SCM, SSR };

std::string_view to_string(DriveSwitch s);   // "rev" | "off" | "fwd"
std::string_view to_string(RobotMode m);     // "scm" | "ssr"
DriveSwitch drive_switch_from_string(std::string_view text);
RobotMode robot_mode_from_string(std::string_view text);

/// One operator sample: 2-axis joystick, wheel switch and operating mode.
/// x drives the yaw differential, y the pitch differential.
struct TeleopInput {
  double joystick_x = 0.0;
  double joystick_y = 0.0;
  DriveSwitch drive_switch = DriveSwitch::Off;
  RobotMode mode = RobotMode::SCM;

  /// Throws ValidationError on non-finite joystick values.
  void validate() const;
  /// Joystick components limited to [-1, 1].
  TeleopInput clamped() const;
  friend bool operator==(const TeleopInput&, const TeleopInput&) = default;
};

/// Simulator parameters. Wheel figures follow the prototype (60 rpm, 35 mm);
/// servo speed, pulley radius, cable length and turn gain are model defaults.
struct SimConfig {
  double servo_max_speed = 2.0 * std::numbers::pi / 3.0;         // rad/s
  double pulley_radius = 0.01;                                  // m
  double bend_per_cable_delta = 75.0;                           // rad/m
  double wheel_rpm = 60.0;                                      // rev/min
  double wheel_radius = 0.035;                                  // m
  double turn_gain = 1.0;                                       // 1/m
  double tick_rate = 50.0;                                      // Hz
  double cable_length = 0.45;                                   // m, each cable at rest
  double module_length = kDefaultModuleLength;                  // m

  void validate() const;
  double tick_period() const { return 1.0 / tick_rate; }
  /// Forward wheel speed with the switch on, rpm / 60 * 2 pi * wheel_radius.
  double wheel_speed() const;
  /// Shaft travel at which a module on that axis reaches the 90 degree limit
  /// (or a cable runs out, whichever comes first).
  double shaft_limit() const;
  friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Differential drive: one shaft winding an antagonistic cable pair.
struct DriveState {
  double shaft_angle = 0.0;   // rad
  double pulley_radius = 0.0; // m
  double cable_a = 0.0;       // m, lengthens for positive shaft travel
  double cable_b = 0.0;       // m, shortens for positive shaft travel
  friend bool operator==(const DriveState&, const DriveState&) = default;
};

struct PlanarPose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;  // rad, in (-pi, pi]
  friend bool operator==(const PlanarPose&, const PlanarPose&) = default;
};

inline constexpr double kModuleBendLimit = std::numbers::pi / 2.0;

struct TeleopState {
  RobotMode mode = RobotMode::SCM;
  DriveState yaw_drive;
  DriveState pitch_drive;
  // Modules 1 and 3 bend in yaw, modules 2 and 4 in pitch.
  std::array<double, kModuleCount> module_bends{};
  PlanarPose ssr_pose;
  double wheel_speed = 0.0;  // m/s
  double sim_time = 0.0;     // s
  std::uint64_t tick = 0;
  bool clamped = false;      // a shaft or bend limit was active on the last step
  friend bool operator==(const TeleopState&, const TeleopState&) = default;
};

TeleopState reset(const SimConfig& config);

/// Advances the simulation by dt. Pure: the same (state, input, config, dt)
/// always gives the same result.
TeleopState step(const TeleopState& state, const TeleopInput& input, const SimConfig& config,
                 double dt);

struct ScmPose {
  Eigen::Vector3d end_effector = Eigen::Vector3d::Zero();
  std::vector<HomogeneousTransform> frames;
};

/// Places the module bends on the manipulator DH chain.
ScmPose scm_pose(const TeleopState& state, double module_length = kDefaultModuleLength);

/// Wraps an angle to (-pi, pi].
double wrap_angle(double angle);

/// Fixed-rate simulation owner. Inputs are queued in arrival order and
/// applied at the next tick boundary; the last one is held until replaced.
/// submit() and snapshot() may be called from any thread; tick() from one.
class Simulator {
 public:
  explicit Simulator(SimConfig config = {});

  void submit(const TeleopInput& input);
  TeleopState tick();
  TeleopState snapshot() const;
  TeleopInput held_input() const;
  const SimConfig& config() const { return config_; }
  void reset();

 private:
  SimConfig config_;
  mutable std::mutex mutex_;
  std::deque<TeleopInput> pending_;
  TeleopInput held_;
  TeleopState state_;
};

}  // namespace softcr
