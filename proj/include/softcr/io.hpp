#pragma once

// JSON, CSV and text-table representations of the library's data types, and
// loading of TOML/JSON configuration files.

#include <filesystem>
#include <iosfwd>
#include <nlohmann/json.hpp>
#include <string>

#include "softcr/design_optimizer.hpp"
#include "softcr/evaluation.hpp"
#include "softcr/kinematics.hpp"
#include "softcr/snake_planar.hpp"
#include "softcr/teleop_sim.hpp"

namespace softcr {

using json = nlohmann::json;

inline constexpr int kWireProtocolVersion = 1;

void to_json(json& j, const MaterialLoadParams& p);
void from_json(const json& j, MaterialLoadParams& p);
void to_json(json& j, const ModuleDimensions& d);
void from_json(const json& j, ModuleDimensions& d);
void to_json(json& j, const GRAResult& r);
void from_json(const json& j, GRAResult& r);
void to_json(json& j, const DesignIteration& it);
void from_json(const json& j, DesignIteration& it);
void to_json(json& j, const DesignReport& r);
DesignReport design_report_from_json(const json& j);

void to_json(json& j, const RobotMetrics& m);
void from_json(const json& j, RobotMetrics& m);        // missing keys keep their current value
void to_json(json& j, const RangeThresholds& t);
void from_json(const json& j, RangeThresholds& t);     // missing keys keep their current value
void to_json(json& j, const EvaluationReport& r);
void from_json(const json& j, EvaluationReport& r);

void to_json(json& j, const SimConfig& c);
void from_json(const json& j, SimConfig& c);           // missing keys keep their current value
void to_json(json& j, const TeleopState& s);
void from_json(const json& j, TeleopState& s);

/// Workspace summary: point count, grid, joint range and per-axis extents.
json workspace_summary(const WorkspaceCloud& cloud);
/// `x_m,y_m,z_m` header then one point per row in odometer order.
void write_workspace_csv(std::ostream& out, const WorkspaceCloud& cloud);

/// {joints:[{x,y}], midpoints:[{x,y}], curvatures:[...], ...}
json pose_document(const PlanarChainPose& pose, const CurvatureProfile& curvature);
/// `index,x_m,y_m,cumulative_angle_rad`, one row per joint including the base.
void write_pose_csv(std::ostream& out, const PlanarChainPose& pose);
json scratch_document(const SnakeScratch& scratch);

/// Aligned two-column table of the module dimensions (mm or SI).
std::string format_module_table(const ModuleSpec& module, bool si_units);

// Wire protocol of the teleoperation channel.
json state_frame(const TeleopState& state, const SimConfig& config);
TeleopInput parse_input_message(const json& message);
json input_message(const TeleopInput& input);
json error_frame(const std::string& message);

/// Reads a configuration document. `.toml` files are parsed as TOML and
/// converted to JSON; `.json` files are parsed directly.
json load_document(const std::filesystem::path& path);
json parse_toml(const std::string& text);

/// Shortest round-trip text for a double.
std::string format_double(double value);

}  // namespace softcr
