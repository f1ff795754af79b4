#pragma once

#include <array>
#include <string>
#include <string_view>

namespace softcr {

/// Measured locomotion figures of the snake robot (SI, slope in degrees).
struct RobotMetrics {
  double max_speed = 0.0;            // m/s
  double body_length = 0.0;          // m
  double body_height = 0.0;          // m
  double max_step_height = 0.0;      // m
  double max_obstacle_radius = 0.0;  // m
  double max_slope_deg = 0.0;        // deg
  double wheel_radius = 0.035;       // m

  /// Body dimensions must be strictly positive; measured capabilities may be
  /// zero (nothing achieved) but not negative; slope below 90 degrees.
  void validate() const;
  friend bool operator==(const RobotMetrics&, const RobotMetrics&) = default;
};

/// Figures recorded for the prototype: 0.37 m/s, 0.7 m long, 0.12 m high,
/// 30 mm step, 55 mm obstacle, 66 degree slope, 35 mm wheel.
RobotMetrics reference_robot_metrics();

enum class Rating { Low, Medium, High };

std::string_view to_string(Rating rating);
Rating rating_from_string(std::string_view text);

enum class Criterion { MaxSpeed, StepClimbing, ObstacleCrossing, SlopeClimbing };
inline constexpr std::array<Criterion, 4> kCriteria = {
    Criterion::MaxSpeed, Criterion::StepClimbing, Criterion::ObstacleCrossing,
    Criterion::SlopeClimbing};

std::string_view criterion_key(Criterion c);    // machine key, e.g. "speed_ratio"
std::string_view criterion_label(Criterion c);  // table label, e.g. "Maximum speed"
std::string_view criterion_unit(Criterion c);

/// Values below low_upper rate Low, values above medium_upper rate High,
/// everything in between (inclusive) rates Medium.
struct RatingBand {
  double low_upper = 0.0;
  double medium_upper = 0.0;
  friend bool operator==(const RatingBand&, const RatingBand&) = default;
};

/// Default bands are reconstructions chosen to agree with the published
/// ratings of the prototype; they are configuration, not reference data.
struct RangeThresholds {
  RatingBand speed_ratio{0.3, 1.0};
  RatingBand step_ratio{0.2, 1.0};
  RatingBand obstacle_ratio{0.2, 1.0};
  RatingBand slope_deg{30.0, 60.0};

  void validate() const;
  const RatingBand& band(Criterion c) const;
  RatingBand& band(Criterion c);
  friend bool operator==(const RangeThresholds&, const RangeThresholds&) = default;
};

double speed_ratio(const RobotMetrics& m);     // 1/s
double step_ratio(const RobotMetrics& m);
double obstacle_ratio(const RobotMetrics& m);

struct CriteriaValues {
  double speed_ratio = 0.0;
  double step_ratio = 0.0;
  double obstacle_ratio = 0.0;
  double slope_deg = 0.0;

  double value(Criterion c) const;
};

CriteriaValues criteria_values(const RobotMetrics& m);

Rating rate(double value, const RatingBand& band);

struct CriterionResult {
  Criterion criterion = Criterion::MaxSpeed;
  double value = 0.0;
  Rating rating = Rating::Low;
  friend bool operator==(const CriterionResult&, const CriterionResult&) = default;
};

struct EvaluationReport {
  std::array<CriterionResult, 4> results;

  const CriterionResult& at(Criterion c) const;
  friend bool operator==(const EvaluationReport&, const EvaluationReport&) = default;
};

EvaluationReport classify(const CriteriaValues& values, const RangeThresholds& thresholds);
EvaluationReport classify(const RobotMetrics& metrics, const RangeThresholds& thresholds);

/// Aligned text table with Feature, Criteria value and Inference columns.
std::string format_evaluation_table(const EvaluationReport& report);

}  // namespace softcr
