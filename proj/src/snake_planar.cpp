#include "softcr/snake_planar.hpp"

#include <Eigen/QR>
#include <cmath>

#include "softcr/errors.hpp"

namespace softcr {

namespace {

void validate_chain(std::span<const double> joint_angles, std::span<const double> link_lengths) {
  detail::require(!link_lengths.empty(), "snake chain needs at least one link");
  detail::require(joint_angles.size() == link_lengths.size(),
                  "snake chain needs one joint angle per link");
  for (double angle : joint_angles) detail::require_finite(angle, "joint angle");
  for (double length : link_lengths) detail::require_positive(length, "link length");
}

}  // namespace

PlanarChainPose planar_pose(std::span<const double> joint_angles,
                            std::span<const double> link_lengths) {
  validate_chain(joint_angles, link_lengths);

  PlanarChainPose pose;
  pose.joint_angles.assign(joint_angles.begin(), joint_angles.end());
  pose.link_lengths.assign(link_lengths.begin(), link_lengths.end());
  pose.joint_positions.reserve(link_lengths.size() + 1);
  pose.cumulative_angles.reserve(link_lengths.size());

  Point2 p = Point2::Zero();
  double heading = 0.0;
  pose.joint_positions.push_back(p);
  for (std::size_t i = 0; i < link_lengths.size(); ++i) {
    heading += joint_angles[i];
    p += link_lengths[i] * Point2(std::cos(heading), std::sin(heading));
    pose.cumulative_angles.push_back(heading);
    pose.joint_positions.push_back(p);
  }
  return pose;
}

CurvatureProfile curvature_profile(std::span<const double> joint_angles,
                                   std::span<const double> link_lengths) {
  validate_chain(joint_angles, link_lengths);
  CurvatureProfile profile;
  profile.k.reserve(link_lengths.size());
  double previous = 0.0;
  for (std::size_t i = 0; i < link_lengths.size(); ++i) {
    profile.k.push_back((joint_angles[i] - previous) / link_lengths[i]);
    previous = joint_angles[i];
  }
  return profile;
}

std::vector<Point2> midpoint_markers(const PlanarChainPose& pose) {
  detail::require(pose.joint_positions.size() >= 2, "pose needs at least one link");
  std::vector<Point2> mids;
  mids.reserve(pose.joint_positions.size() - 1);
  for (std::size_t i = 1; i < pose.joint_positions.size(); ++i)
    mids.push_back(0.5 * (pose.joint_positions[i - 1] + pose.joint_positions[i]));
  return mids;
}

SnakeScratch snake_scratch(const PlanarChainPose& pose) {
  SnakeScratch s;
  s.selector_a = Eigen::MatrixXd(1, 4);
  s.selector_a << 1, 1, 0, 0;
  s.difference_d = Eigen::MatrixXd(1, 4);
  s.difference_d << 1, -1, 0, 0;
  s.difference_pinv = s.difference_d.completeOrthogonalDecomposition().pseudoInverse();

  for (std::size_t i = 1; i < pose.joint_positions.size(); ++i) {
    const Point2 link = pose.joint_positions[i] - pose.joint_positions[i - 1];
    s.segment_headings.push_back(std::atan2(link.y(), link.x()));
  }
  const auto mids = midpoint_markers(pose);
  for (const auto& m : mids) s.doubled_centres.push_back(2.0 * m);
  for (std::size_t i = 0; i + 1 < mids.size(); ++i)
    s.tripled_pair_sums.push_back(3.0 * (mids[i] + mids[i + 1]));
  return s;
}

}  // namespace softcr
