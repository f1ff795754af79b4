#include "softcr/evaluation.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>
#include <vector>

#include "softcr/errors.hpp"

namespace softcr {

using detail::require;

namespace {

void require_non_negative(double value, const char* name) {
  require(std::isfinite(value) && value >= 0.0, std::string(name) + " must be finite and non-negative");
}

}  // namespace

void RobotMetrics::validate() const {
  detail::require_positive(body_length, "body length");
  detail::require_positive(body_height, "body height");
  require_non_negative(max_speed, "maximum speed");
  require_non_negative(max_step_height, "maximum step height");
  require_non_negative(max_obstacle_radius, "maximum obstacle radius");
  require_non_negative(wheel_radius, "wheel radius");
  require(std::isfinite(max_slope_deg) && max_slope_deg >= 0.0 && max_slope_deg < 90.0,
          "maximum slope must lie in [0, 90) degrees");
}

RobotMetrics reference_robot_metrics() {
  return RobotMetrics{
      .max_speed = 0.37,
      .body_length = 0.7,
      .body_height = 0.12,
      .max_step_height = 0.03,
      .max_obstacle_radius = 0.055,
      .max_slope_deg = 66.0,
      .wheel_radius = 0.035,
  };
}

std::string_view to_string(Rating rating) {
  switch (rating) {
    case Rating::Low: return "Low";
    case Rating::Medium: return "Medium";
    case Rating::High: return "High";
  }
  return "Low";
}

Rating rating_from_string(std::string_view text) {
  if (text == "Low") return Rating::Low;
  if (text == "Medium") return Rating::Medium;
  if (text == "High") return Rating::High;
  throw ValidationError("unknown rating '" + std::string(text) + "'");
}

std::string_view criterion_key(Criterion c) {
  switch (c) {
    case Criterion::MaxSpeed: return "speed_ratio";
    case Criterion::StepClimbing: return "step_ratio";
    case Criterion::ObstacleCrossing: return "obstacle_ratio";
    case Criterion::SlopeClimbing: return "slope_deg";
  }
  return "";
}

std::string_view criterion_label(Criterion c) {
  switch (c) {
    case Criterion::MaxSpeed: return "Maximum speed";
    case Criterion::StepClimbing: return "Step/Stair climbing";
    case Criterion::ObstacleCrossing: return "Obstacle crossing capability";
    case Criterion::SlopeClimbing: return "Slope climbing capability";
  }
  return "";
}

std::string_view criterion_unit(Criterion c) {
  switch (c) {
    case Criterion::MaxSpeed: return "1/s";
    case Criterion::SlopeClimbing: return "deg";
    default: return "";
  }
}

const RatingBand& RangeThresholds::band(Criterion c) const {
  switch (c) {
    case Criterion::MaxSpeed: return speed_ratio;
    case Criterion::StepClimbing: return step_ratio;
    case Criterion::ObstacleCrossing: return obstacle_ratio;
    case Criterion::SlopeClimbing: return slope_deg;
  }
  return speed_ratio;
}

RatingBand& RangeThresholds::band(Criterion c) {
  return const_cast<RatingBand&>(std::as_const(*this).band(c));
}

void RangeThresholds::validate() const {
  for (Criterion c : kCriteria) {
    const RatingBand& b = band(c);
    require(std::isfinite(b.low_upper) && std::isfinite(b.medium_upper),
            std::string(criterion_key(c)) + " thresholds must be finite");
    require(b.low_upper < b.medium_upper,
            std::string(criterion_key(c)) + " thresholds need low_upper < medium_upper");
  }
}

double speed_ratio(const RobotMetrics& m) {
  m.validate();
  return m.max_speed / m.body_length;
}

double step_ratio(const RobotMetrics& m) {
  m.validate();
  return m.max_step_height / m.body_height;
}

double obstacle_ratio(const RobotMetrics& m) {
  m.validate();
  return m.max_obstacle_radius / m.body_height;
}

double CriteriaValues::value(Criterion c) const {
  switch (c) {
    case Criterion::MaxSpeed: return speed_ratio;
    case Criterion::StepClimbing: return step_ratio;
    case Criterion::ObstacleCrossing: return obstacle_ratio;
    case Criterion::SlopeClimbing: return slope_deg;
  }
  return 0.0;
}

CriteriaValues criteria_values(const RobotMetrics& m) {
  return {speed_ratio(m), step_ratio(m), obstacle_ratio(m), m.max_slope_deg};
}

Rating rate(double value, const RatingBand& band) {
  detail::require_finite(value, "criterion value");
  if (value < band.low_upper) return Rating::Low;
  if (value > band.medium_upper) return Rating::High;
  return Rating::Medium;
}

const CriterionResult& EvaluationReport::at(Criterion c) const {
  return results[static_cast<std::size_t>(c)];
}

EvaluationReport classify(const CriteriaValues& values, const RangeThresholds& thresholds) {
  thresholds.validate();
  EvaluationReport report;
  for (Criterion c : kCriteria) {
    const double v = values.value(c);
    report.results[static_cast<std::size_t>(c)] = {c, v, rate(v, thresholds.band(c))};
  }
  return report;
}

EvaluationReport classify(const RobotMetrics& metrics, const RangeThresholds& thresholds) {
  return classify(criteria_values(metrics), thresholds);
}

std::string format_evaluation_table(const EvaluationReport& report) {
  struct Row {
    std::string feature, value, inference;
  };
  std::vector<Row> rows{{"Feature", "Criteria value", "Inference"}};
  for (const auto& r : report.results) {
    std::ostringstream value;
    if (r.criterion == Criterion::SlopeClimbing)
      value << std::fixed << std::setprecision(1) << r.value << " deg";
    else
      value << std::fixed << std::setprecision(4) << r.value
            << (criterion_unit(r.criterion).empty() ? "" : " ") << criterion_unit(r.criterion);
    rows.push_back({std::string(criterion_label(r.criterion)), value.str(),
                    std::string(to_string(r.rating)) + " Range"});
  }

  std::size_t w0 = 0, w1 = 0;
  for (const auto& row : rows) {
    w0 = std::max(w0, row.feature.size());
    w1 = std::max(w1, row.value.size());
  }
  std::ostringstream out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    out << std::left << std::setw(static_cast<int>(w0)) << rows[i].feature << "  "
        << std::setw(static_cast<int>(w1)) << rows[i].value << "  " << rows[i].inference << '\n';
    if (i == 0) out << std::string(w0 + w1 + 4 + rows[i].inference.size() + 6, '-') << '\n';
  }
  return out.str();
}

}  // namespace softcr
