#include "softcr/design_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "softcr/errors.hpp"
#include "softcr/units.hpp"

namespace softcr {

using detail::require;
using detail::require_positive;

void MaterialLoadParams::validate() const {
  require_positive(density, "density D");
  require_positive(force, "force F");
  require_positive(max_bending_stress, "maximum bending stress sigma");
}

double bending_constraint(double length, double width, double thickness,
                          const MaterialLoadParams& params) {
  return 6.0 * params.force * length /
         (params.max_bending_stress * width * thickness * thickness);
}

double thickness_objective(double length, double width, double thickness,
                           const MaterialLoadParams& params) {
  return params.density * length * width * thickness;
}

namespace {

// The objective grows with T, so the optimum sits where the single posynomial
// constraint is active. Bracket that point and bisect on log T.
double bisect_active_constraint(double length, double width, const MaterialLoadParams& params) {
  auto feasible = [&](double t) { return bending_constraint(length, width, t, params) <= 1.0; };

  double lo = 1.0;
  double hi = 1.0;
  while (feasible(lo)) lo *= 0.5;
  while (!feasible(hi)) hi *= 2.0;

  for (int i = 0; i < 400 && (hi - lo) > 1e-15 * hi; ++i) {
    const double mid = std::sqrt(lo * hi);
    if (mid <= lo || mid >= hi) break;
    (feasible(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

double optimal_thickness(double length, double width, const MaterialLoadParams& params,
                         ThicknessSolver solver) {
  require_positive(length, "module length L");
  require_positive(width, "module width W");
  params.validate();
  switch (solver) {
    case ThicknessSolver::Bisection:
      return bisect_active_constraint(length, width, params);
    case ThicknessSolver::ClosedForm:
      break;
  }
  return std::sqrt(6.0 * params.force * length / (params.max_bending_stress * width));
}

double gra_fitness(double inner_radius, double fringe_height, double base, int /*fringe_count*/) {
  require_positive(inner_radius, "inner radius r");
  require_positive(fringe_height, "fringe height h");
  require_positive(base, "fringe base b");
  return fringe_count(inner_radius + fringe_height, inner_radius, base, fringe_height);
}

std::vector<double> inclusive_grid(double lo, double hi, double step) {
  require_positive(step, "grid step");
  detail::require_finite(lo, "grid lower bound");
  detail::require_finite(hi, "grid upper bound");
  require(hi >= lo, "grid upper bound must not be below the lower bound");

  const double span = (hi - lo) / step;
  const double whole = std::round(span);
  std::vector<double> values;
  if (std::abs(span - whole) <= 1e-9) {
    const auto n = static_cast<std::size_t>(whole);
    values.reserve(n + 1);
    for (std::size_t i = 0; i < n; ++i)
      values.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n));
    values.push_back(hi);
  } else {
    for (std::size_t i = 0;; ++i) {
      const double v = lo + step * static_cast<double>(i);
      if (v > hi) break;
      values.push_back(v);
    }
  }
  return values;
}

namespace {

void require_increasing_positive(const std::vector<double>& values, const char* name) {
  require(!values.empty(), std::string(name) + " must not be empty");
  for (std::size_t i = 0; i < values.size(); ++i) {
    require_positive(values[i], name);
    if (i > 0) require(values[i] > values[i - 1], std::string(name) + " must be strictly increasing");
  }
}

}  // namespace

void GRASearchSpace::validate() const {
  require_increasing_positive(r_values, "r range");
  require_increasing_positive(h_values, "h range");
  require_positive(base, "fringe base b");
  require(fringe_count >= 1, "fringe count N must be at least 1");
}

Eigen::MatrixXd grey_relational_grades(const Eigen::MatrixXd& fitness) {
  require(fitness.size() > 0, "fitness surface must not be empty");
  const double max_value = fitness.maxCoeff();
  const double min_value = fitness.minCoeff();
  if (max_value == min_value) return Eigen::MatrixXd::Ones(fitness.rows(), fitness.cols());
  return ((max_value - fitness.array()) / (max_value - min_value)).matrix();
}

std::pair<std::size_t, std::size_t> argmax_grade(const Eigen::MatrixXd& grades) {
  require(grades.size() > 0, "grade matrix must not be empty");
  std::pair<std::size_t, std::size_t> best{0, 0};
  double best_value = grades(0, 0);
  for (Eigen::Index i = 0; i < grades.rows(); ++i) {
    for (Eigen::Index j = 0; j < grades.cols(); ++j) {
      if (grades(i, j) > best_value) {
        best_value = grades(i, j);
        best = {static_cast<std::size_t>(i), static_cast<std::size_t>(j)};
      }
    }
  }
  return best;
}

GRAResult grey_relational_analysis(const GRASearchSpace& space) {
  space.validate();
  const auto rows = static_cast<Eigen::Index>(space.r_values.size());
  const auto cols = static_cast<Eigen::Index>(space.h_values.size());

  GRAResult result;
  result.r_values = space.r_values;
  result.h_values = space.h_values;
  result.fitness.resize(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j)
      result.fitness(i, j) = gra_fitness(space.r_values[static_cast<std::size_t>(i)],
                                         space.h_values[static_cast<std::size_t>(j)], space.base,
                                         space.fringe_count);

  result.degenerate = result.fitness.maxCoeff() == result.fitness.minCoeff();
  result.grades = grey_relational_grades(result.fitness);
  std::tie(result.optimal_i, result.optimal_j) = argmax_grade(result.grades);
  result.optimal_r = space.r_values[result.optimal_i];
  result.optimal_h = space.h_values[result.optimal_j];
  result.optimal_R = result.optimal_r + result.optimal_h;
  return result;
}

double fringe_closing_angle(int fringe_count, double base, double height) {
  require(fringe_count >= 1, "fringe count N must be at least 1");
  require_positive(base, "fringe base b");
  require_positive(height, "fringe height h");
  const double apex = 2.0 * std::atan(base / (2.0 * height));
  return std::min(fringe_count * apex, std::numbers::pi);
}

DesignInputs reference_design_inputs() {
  using units::mm_to_m;
  DesignInputs in;
  in.length = mm_to_m(100.0);
  in.width = mm_to_m(90.0);
  in.material = MaterialLoadParams{};
  in.grid.r_values = inclusive_grid(mm_to_m(25.0), mm_to_m(30.0), mm_to_m(1.0));
  in.grid.h_values = inclusive_grid(mm_to_m(30.0), mm_to_m(35.0), mm_to_m(1.0));
  in.max_fringe_count = 10;
  return in;
}

namespace {

struct Trial {
  DesignIteration iteration;
  GRAResult gra;
};

Trial run_trial(const DesignInputs& in, int n) {
  Trial trial;
  const double base = fringe_base(in.length, n);
  trial.gra = grey_relational_analysis(
      GRASearchSpace{in.grid.r_values, in.grid.h_values, base, n});
  trial.iteration = {n, base, fringe_closing_angle(n, base, trial.gra.optimal_h)};
  return trial;
}

}  // namespace

DesignReport design_pipeline(const DesignInputs& in) {
  require_positive(in.length, "module length L");
  require_positive(in.width, "module width W");
  in.material.validate();
  if (in.pinned_fringe_count)
    require(*in.pinned_fringe_count >= 1, "pinned fringe count must be at least 1");
  else
    require(in.max_fringe_count >= 1, "maximum fringe count must be at least 1");

  const double thickness = optimal_thickness(in.length, in.width, in.material, in.solver);
  constexpr double target = std::numbers::pi / 2.0;

  std::vector<DesignIteration> trace;
  std::optional<Trial> chosen;
  bool reached = false;

  if (in.pinned_fringe_count) {
    chosen = run_trial(in, *in.pinned_fringe_count);
    trace.push_back(chosen->iteration);
    reached = chosen->iteration.turn_angle >= target;
  } else {
    for (int n = 1; n <= in.max_fringe_count; ++n) {
      Trial trial = run_trial(in, n);
      trace.push_back(trial.iteration);
      const bool better = !chosen || trial.iteration.turn_angle > chosen->iteration.turn_angle;
      if (trial.iteration.turn_angle >= target) {
        chosen = std::move(trial);
        reached = true;
        break;
      }
      if (better) chosen = std::move(trial);
    }
  }

  const GRAResult& gra = chosen->gra;
  const DesignIteration& it = chosen->iteration;

  ModuleDimensions dims;
  dims.length = in.length;
  dims.width = in.width;
  dims.thickness = thickness;
  dims.fringe_base = it.base;
  dims.fringe_height = gra.optimal_h;
  dims.inner_radius = gra.optimal_r;
  dims.outer_radius = gra.optimal_R;
  dims.fringe_count = it.fringe_count;
  dims.turn_angle = it.turn_angle;

  const double equation_n = fringe_count(dims.outer_radius, dims.inner_radius, dims.fringe_base,
                                         dims.fringe_height);

  return DesignReport{
      .module = ModuleSpec(dims),
      .thickness_objective_value = thickness_objective(in.length, in.width, thickness, in.material),
      .gra = gra,
      .iterations = std::move(trace),
      .loop_limit_reached = !reached,
      .fringe_count_pinned = in.pinned_fringe_count.has_value(),
      .fringe_equation_value = equation_n,
      .fringe_count_mismatch = std::lround(equation_n) != dims.fringe_count,
  };
}

}  // namespace softcr
