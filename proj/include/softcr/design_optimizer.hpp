#pragma once

#include <Eigen/Core>
#include <cstddef>
#include <optional>
#include <vector>

#include "softcr/design_geometry.hpp"

namespace softcr {

/// Material and load inputs of the thickness problem.
struct MaterialLoadParams {
  double density = 20.0;                 // kg/m^3
  double force = 50.0;                   // N
  double max_bending_stress = 160000.0;  // N/m^2

  void validate() const;
  friend bool operator==(const MaterialLoadParams&, const MaterialLoadParams&) = default;
};

enum class ThicknessSolver {
  ClosedForm,  // active-constraint solution sqrt(6 F L / (sigma W))
  Bisection,   // monotone bisection on the constraint in log space
};

/// Minimum thickness T of a beam of length L and width W such that
/// 6 F L / (sigma W T^2) <= 1, which also minimises D L W T.
double optimal_thickness(double length, double width, const MaterialLoadParams& params,
                         ThicknessSolver solver = ThicknessSolver::ClosedForm);

/// D L W T: the mass objective of the thickness problem.
double thickness_objective(double length, double width, double thickness,
                           const MaterialLoadParams& params);

/// Left-hand side of the bending-stress constraint, 6 F L / (sigma W T^2).
double bending_constraint(double length, double width, double thickness,
                          const MaterialLoadParams& params);

/// Fringe-count expression evaluated with R = r + h. The fringe count argument
/// is carried for signature parity with the search; it does not change the value.
double gra_fitness(double inner_radius, double fringe_height, double base, int fringe_count);

/// Inclusive grid lo, lo + step, ..., hi. The last value is pinned to hi when
/// (hi - lo) is a whole number of steps (to within 1e-9 of a step).
std::vector<double> inclusive_grid(double lo, double hi, double step);

struct GRASearchSpace {
  std::vector<double> r_values;  // inner radius candidates (m), strictly increasing
  std::vector<double> h_values;  // fringe height candidates (m), strictly increasing
  double base = 0.0;             // b (m)
  int fringe_count = 1;          // N

  void validate() const;
};

struct GRAResult {
  std::vector<double> r_values;
  std::vector<double> h_values;
  Eigen::MatrixXd fitness;  // (i over r, j over h)
  Eigen::MatrixXd grades;   // same indexing, values in [0, 1]
  std::size_t optimal_i = 0;
  std::size_t optimal_j = 0;
  double optimal_r = 0.0;
  double optimal_h = 0.0;
  double optimal_R = 0.0;
  bool degenerate = false;  // max == min over the grid; every grade set to 1
};

/// Normalises a fitness surface to grades (max - f) / (max - min).
/// A flat surface yields all ones.
Eigen::MatrixXd grey_relational_grades(const Eigen::MatrixXd& fitness);

/// Index of the largest grade; ties go to the smallest (i, j) lexicographically.
std::pair<std::size_t, std::size_t> argmax_grade(const Eigen::MatrixXd& grades);

GRAResult grey_relational_analysis(const GRASearchSpace& space);

/// Candidate ranges for the (r, h) search. b and N are filled in per iteration.
struct GRAGridTemplate {
  std::vector<double> r_values;
  std::vector<double> h_values;
};

/// Bend angle available from N closing notches of base b and height h:
/// min(N * 2 atan(b / 2h), pi). Each notch closes by at most its apex angle.
double fringe_closing_angle(int fringe_count, double base, double height);

struct DesignIteration {
  int fringe_count = 0;
  double base = 0.0;
  double turn_angle = 0.0;
  friend bool operator==(const DesignIteration&, const DesignIteration&) = default;
};

struct DesignReport {
  ModuleSpec module;
  double thickness_objective_value = 0.0;
  GRAResult gra;
  std::vector<DesignIteration> iterations;
  bool loop_limit_reached = false;    // no iteration reached the 90 degree target
  bool fringe_count_pinned = false;   // N supplied by the caller instead of the loop
  double fringe_equation_value = 0.0; // pi (R^2 - r^2) / (2 b h) for the final geometry
  bool fringe_count_mismatch = false; // round(fringe_equation_value) != N
};

struct DesignInputs {
  double length = 0.1;
  double width = 0.09;
  MaterialLoadParams material;
  GRAGridTemplate grid;
  int max_fringe_count = 10;
  std::optional<int> pinned_fringe_count;  // skip the loop and use this N
  ThicknessSolver solver = ThicknessSolver::ClosedForm;
};

/// Default inputs: L = 100 mm, W = 90 mm, F = 50 N, sigma = 160 kPa,
/// D = 20 kg/m^3, r in 25..30 mm and h in 30..35 mm on a 1 mm grid.
DesignInputs reference_design_inputs();

/// Outer design loop. For N = 1, 2, ... solves the thickness, runs the grey
/// relational search at b = L / N and stops at the first N whose closing angle
/// reaches pi / 2. With a pinned N the loop runs exactly once.
DesignReport design_pipeline(const DesignInputs& inputs);

}  // namespace softcr
