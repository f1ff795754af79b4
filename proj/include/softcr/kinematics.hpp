#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <span>
#include <vector>

namespace softcr {

using HomogeneousTransform = Eigen::Matrix4d;

/// One Denavit-Hartenberg row: rotation theta about z, offset d along z,
/// length a along x, twist alpha about x.
struct DHRow {
  double theta = 0.0;
  double d = 0.0;
  double a = 0.0;
  double alpha = 0.0;
  friend bool operator==(const DHRow&, const DHRow&) = default;
};

struct DHChain {
  std::vector<DHRow> rows;

  void validate() const;
};

inline constexpr std::size_t kModuleCount = 4;
inline constexpr double kDefaultModuleLength = 0.1;  // m

/// The four-module manipulator: d = 0, a = module length, alpha = 90 deg on
/// every row, joint variables taken from `thetas`.
DHChain manipulator_chain(std::span<const double> thetas,
                          double module_length = kDefaultModuleLength);

/// Standard DH matrix Rz(theta) Tz(d) Tx(a) Rx(alpha).
HomogeneousTransform dh_transform(const DHRow& row);

/// Ordered product of the row transforms, base to tip.
HomogeneousTransform forward_kinematics(const DHChain& chain);

/// Cumulative frames T_0^1, T_0^2, ..., T_0^n.
std::vector<HomogeneousTransform> joint_frames(const DHChain& chain);

inline Eigen::Vector3d position_of(const HomogeneousTransform& t) {
  return t.block<3, 1>(0, 3);
}

struct AxisExtents {
  Eigen::Vector3d min = Eigen::Vector3d::Zero();
  Eigen::Vector3d max = Eigen::Vector3d::Zero();
};

struct WorkspaceCloud {
  std::vector<Eigen::Vector3d> points;  // odometer order, first joint slowest
  std::size_t grid_steps = 0;
  double joint_min = 0.0;
  double joint_max = 0.0;
  AxisExtents extents;
};

/// `steps` evenly spaced values covering [lo, hi] with both endpoints
/// included exactly.
std::vector<double> joint_grid(std::size_t steps, double lo, double hi);

/// Sweeps every joint of `chain_template` over joint_grid(steps, lo, hi) and
/// records the tip position of each combination. Only theta is overridden;
/// d, a and alpha come from the template.
WorkspaceCloud workspace_sample(const DHChain& chain_template, std::size_t steps,
                                double theta_lo, double theta_hi);

}  // namespace softcr
