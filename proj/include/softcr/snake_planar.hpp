#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace softcr {

using Point2 = Eigen::Vector2d;

/// Planar snake chain. Joint angles are relative between successive links;
/// joint_positions[0] is the base at the origin.
struct PlanarChainPose {
  std::vector<double> joint_angles;
  std::vector<double> link_lengths;
  std::vector<Point2> joint_positions;
  std::vector<double> cumulative_angles;
};

struct CurvatureProfile {
  std::vector<double> k;  // 1/m
};

PlanarChainPose planar_pose(std::span<const double> joint_angles,
                            std::span<const double> link_lengths);

/// k[0] = theta_1 / l_1, k[i] = (theta_{i+1} - theta_i) / l_{i+1}.
CurvatureProfile curvature_profile(std::span<const double> joint_angles,
                                   std::span<const double> link_lengths);

/// Per-link midpoints (p_{i-1} + p_i) / 2.
std::vector<Point2> midpoint_markers(const PlanarChainPose& pose);

// Diagnostic reconstruction of the auxiliary quantities of the reference
// plotting script. None of these feed the public outputs above.
struct SnakeScratch {
  Eigen::MatrixXd selector_a;           // [[1, 1, 0, 0]]
  Eigen::MatrixXd difference_d;         // [[1, -1, 0, 0]]
  Eigen::MatrixXd difference_pinv;      // Moore-Penrose pseudoinverse of difference_d
  std::vector<double> segment_headings; // atan2 of each link vector
  std::vector<Point2> doubled_centres;  // 2 * midpoint_i
  std::vector<Point2> tripled_pair_sums;// 3 * (midpoint_i + midpoint_{i+1})
};

SnakeScratch snake_scratch(const PlanarChainPose& pose);

}  // namespace softcr
