#include "softcr/kinematics.hpp"

#include <cmath>
#include <numbers>

#include "softcr/errors.hpp"

namespace softcr {

using detail::require;

void DHChain::validate() const {
  require(!rows.empty(), "DH chain must contain at least one row");
  for (const auto& row : rows) {
    detail::require_finite(row.theta, "DH theta");
    detail::require_finite(row.d, "DH d");
    detail::require_finite(row.alpha, "DH alpha");
    require(std::isfinite(row.a) && row.a >= 0.0, "DH link length a must be non-negative");
  }
}

DHChain manipulator_chain(std::span<const double> thetas, double module_length) {
  detail::require_positive(module_length, "module length");
  DHChain chain;
  chain.rows.reserve(thetas.size());
  for (double theta : thetas) chain.rows.push_back({theta, 0.0, module_length, std::numbers::pi / 2});
  return chain;
}

HomogeneousTransform dh_transform(const DHRow& row) {
  const double ct = std::cos(row.theta);
  const double st = std::sin(row.theta);
  const double ca = std::cos(row.alpha);
  const double sa = std::sin(row.alpha);

  HomogeneousTransform t;
  t << ct, -st * ca,  st * sa, row.a * ct,
       st,  ct * ca, -ct * sa, row.a * st,
      0.0,       sa,       ca,      row.d,
      0.0,      0.0,      0.0,        1.0;
  return t;
}

HomogeneousTransform forward_kinematics(const DHChain& chain) {
  chain.validate();
  HomogeneousTransform t = HomogeneousTransform::Identity();
  for (const auto& row : chain.rows) t = t * dh_transform(row);
  return t;
}

std::vector<HomogeneousTransform> joint_frames(const DHChain& chain) {
  chain.validate();
  std::vector<HomogeneousTransform> frames;
  frames.reserve(chain.rows.size());
  HomogeneousTransform t = HomogeneousTransform::Identity();
  for (const auto& row : chain.rows) {
    t = t * dh_transform(row);
    frames.push_back(t);
  }
  return frames;
}

std::vector<double> joint_grid(std::size_t steps, double lo, double hi) {
  require(steps >= 2, "workspace grid needs at least 2 steps");
  detail::require_finite(lo, "joint lower bound");
  detail::require_finite(hi, "joint upper bound");
  require(hi > lo, "joint upper bound must exceed the lower bound");
  std::vector<double> grid(steps);
  const double last = static_cast<double>(steps - 1);
  for (std::size_t k = 0; k < steps; ++k) grid[k] = lo + (hi - lo) * (static_cast<double>(k) / last);
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

WorkspaceCloud workspace_sample(const DHChain& chain_template, std::size_t steps,
                                double theta_lo, double theta_hi) {
  chain_template.validate();
  const std::vector<double> grid = joint_grid(steps, theta_lo, theta_hi);
  const std::size_t joints = chain_template.rows.size();

  // Row transforms depend on a single theta each, so tabulate them once.
  std::vector<std::vector<HomogeneousTransform>> table(joints);
  for (std::size_t j = 0; j < joints; ++j) {
    table[j].reserve(steps);
    for (double theta : grid) {
      DHRow row = chain_template.rows[j];
      row.theta = theta;
      table[j].push_back(dh_transform(row));
    }
  }

  std::size_t total = 1;
  for (std::size_t j = 0; j < joints; ++j) total *= steps;

  WorkspaceCloud cloud;
  cloud.grid_steps = steps;
  cloud.joint_min = theta_lo;
  cloud.joint_max = theta_hi;
  cloud.points.reserve(total);

  // Odometer over joint indices, last joint fastest. Partial products are
  // cached per level so each new point costs one matrix product.
  std::vector<std::size_t> index(joints, 0);
  std::vector<HomogeneousTransform> prefix(joints + 1, HomogeneousTransform::Identity());
  for (std::size_t j = 0; j < joints; ++j) prefix[j + 1] = prefix[j] * table[j][0];

  for (std::size_t n = 0; n < total; ++n) {
    cloud.points.push_back(position_of(prefix[joints]));

    std::size_t level = joints;
    while (level > 0) {
      --level;
      if (++index[level] < steps) break;
      index[level] = 0;
    }
    for (std::size_t j = level; j < joints; ++j) prefix[j + 1] = prefix[j] * table[j][index[j]];
  }

  cloud.extents.min = cloud.extents.max = cloud.points.front();
  for (const auto& p : cloud.points) {
    cloud.extents.min = cloud.extents.min.cwiseMin(p);
    cloud.extents.max = cloud.extents.max.cwiseMax(p);
  }
  return cloud;
}

}  // namespace softcr
