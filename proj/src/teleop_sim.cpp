#include "softcr/teleop_sim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "softcr/errors.hpp"

namespace softcr {

using detail::require;
using detail::require_positive;

std::string_view to_string(DriveSwitch s) {
  switch (s) {
    case DriveSwitch::Reverse: return "rev";
    case DriveSwitch::Off: return "off";
    case DriveSwitch::Forward: return "fwd";
  }
  return "off";
}

std::string_view to_string(RobotMode m) { return m == RobotMode::SSR ? "ssr" : "scm"; }

DriveSwitch drive_switch_from_string(std::string_view text) {
  if (text == "fwd") return DriveSwitch::Forward;
  if (text == "off") return DriveSwitch::Off;
  if (text == "rev") return DriveSwitch::Reverse;
  throw ValidationError("switch must be one of fwd, off, rev");
}

RobotMode robot_mode_from_string(std::string_view text) {
  if (text == "scm") return RobotMode::SCM;
  if (text == "ssr") return RobotMode::SSR;
  throw ValidationError("mode must be scm or ssr");
}

void TeleopInput::validate() const {
  detail::require_finite(joystick_x, "joystick x");
  detail::require_finite(joystick_y, "joystick y");
}

TeleopInput TeleopInput::clamped() const {
  TeleopInput out = *this;
  out.joystick_x = std::clamp(joystick_x, -1.0, 1.0);
  out.joystick_y = std::clamp(joystick_y, -1.0, 1.0);
  return out;
}

void SimConfig::validate() const {
  require_positive(servo_max_speed, "servo max speed");
  require_positive(pulley_radius, "pulley radius");
  require_positive(bend_per_cable_delta, "bend per cable delta");
  require_positive(wheel_rpm, "wheel rpm");
  require_positive(wheel_radius, "wheel radius");
  require_positive(turn_gain, "turn gain");
  require_positive(tick_rate, "tick rate");
  require_positive(cable_length, "cable length");
  require_positive(module_length, "module length");
}

double SimConfig::wheel_speed() const {
  return wheel_rpm / 60.0 * 2.0 * std::numbers::pi * wheel_radius;
}

namespace {

// Each axis drive bends two modules; the axis bend is split equally.
constexpr double kAxisShare = 0.5;

}  // namespace

double SimConfig::shaft_limit() const {
  const double bend_limited = kModuleBendLimit / (kAxisShare * bend_per_cable_delta * pulley_radius);
  const double cable_limited = cable_length / pulley_radius;
  return std::min(bend_limited, cable_limited);
}

double wrap_angle(double angle) {
  double wrapped = std::remainder(angle, 2.0 * std::numbers::pi);  // [-pi, pi]
  if (wrapped <= -std::numbers::pi) wrapped += 2.0 * std::numbers::pi;
  return wrapped;
}

namespace {

DriveState drive_at(double shaft, const SimConfig& config) {
  const double travel = config.pulley_radius * shaft;
  return {shaft, config.pulley_radius, config.cable_length + travel, config.cable_length - travel};
}

// Per-module bend for one axis; returns true when the bend limit was hit.
bool axis_bend(const DriveState& drive, const SimConfig& config, double& per_module) {
  const double total = config.bend_per_cable_delta * (drive.cable_a - drive.cable_b) / 2.0;
  const double raw = kAxisShare * total;
  per_module = std::clamp(raw, -kModuleBendLimit, kModuleBendLimit);
  return per_module != raw;
}

}  // namespace

TeleopState reset(const SimConfig& config) {
  config.validate();
  TeleopState s;
  s.yaw_drive = drive_at(0.0, config);
  s.pitch_drive = drive_at(0.0, config);
  return s;
}

TeleopState step(const TeleopState& state, const TeleopInput& raw_input, const SimConfig& config,
                 double dt) {
  config.validate();
  raw_input.validate();
  require(std::isfinite(dt) && dt > 0.0, "time step must be finite and positive");
  require(std::abs(dt * config.servo_max_speed * config.pulley_radius *
                   config.bend_per_cable_delta) < std::numbers::pi,
          "time step too large: one tick could bend more than pi");

  const TeleopInput input = raw_input.clamped();
  TeleopState next = state;
  next.mode = input.mode;
  next.clamped = false;

  const double limit = config.shaft_limit();
  auto advance = [&](const DriveState& drive, double command) {
    const double wanted = drive.shaft_angle + config.servo_max_speed * command * dt;
    const double shaft = std::clamp(wanted, -limit, limit);
    if (shaft != wanted) next.clamped = true;
    return drive_at(shaft, config);
  };
  next.yaw_drive = advance(state.yaw_drive, input.joystick_x);
  next.pitch_drive = advance(state.pitch_drive, input.joystick_y);

  double yaw = 0.0;
  double pitch = 0.0;
  if (axis_bend(next.yaw_drive, config, yaw)) next.clamped = true;
  if (axis_bend(next.pitch_drive, config, pitch)) next.clamped = true;
  next.module_bends = {yaw, pitch, yaw, pitch};

  if (input.mode == RobotMode::SSR) {
    const double v = static_cast<int>(input.drive_switch) * config.wheel_speed();
    const double yaw_total = next.module_bends[0] + next.module_bends[2];
    const double omega = config.turn_gain * v * yaw_total;
    PlanarPose& p = next.ssr_pose;
    const double h0 = state.ssr_pose.heading;
    if (omega == 0.0) {
      p.x += v * dt * std::cos(h0);
      p.y += v * dt * std::sin(h0);
    } else {
      // Exact integration of a constant-rate arc.
      const double h1 = h0 + omega * dt;
      p.x += v / omega * (std::sin(h1) - std::sin(h0));
      p.y -= v / omega * (std::cos(h1) - std::cos(h0));
      p.heading = wrap_angle(h1);
    }
    next.wheel_speed = v;
  } else {
    next.wheel_speed = 0.0;
  }

  next.sim_time = state.sim_time + dt;
  next.tick = state.tick + 1;
  return next;
}

ScmPose scm_pose(const TeleopState& state, double module_length) {
  const DHChain chain = manipulator_chain(state.module_bends, module_length);
  ScmPose pose;
  pose.frames = joint_frames(chain);
  pose.end_effector = position_of(pose.frames.back());
  return pose;
}

Simulator::Simulator(SimConfig config)
    : config_(config), state_(softcr::reset(config)) {}

void Simulator::submit(const TeleopInput& input) {
  input.validate();
  std::lock_guard lock(mutex_);
  pending_.push_back(input.clamped());
}

TeleopState Simulator::tick() {
  std::lock_guard lock(mutex_);
  while (!pending_.empty()) {
    held_ = pending_.front();
    pending_.pop_front();
  }
  state_ = step(state_, held_, config_, config_.tick_period());
  return state_;
}

TeleopState Simulator::snapshot() const {
  std::lock_guard lock(mutex_);
  return state_;
}

TeleopInput Simulator::held_input() const {
  std::lock_guard lock(mutex_);
  return held_;
}

void Simulator::reset() {
  std::lock_guard lock(mutex_);
  pending_.clear();
  held_ = {};
  state_ = softcr::reset(config_);
}

}  // namespace softcr
