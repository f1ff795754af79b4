#include "softcr/io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#define TOML_EXCEPTIONS 1
#include <toml.hpp>

#include "softcr/errors.hpp"
#include "softcr/units.hpp"

namespace softcr {

std::string format_double(double value) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

namespace {

template <typename T>
void read_if_present(const json& j, const char* key, T& field) {
  if (auto it = j.find(key); it != j.end()) field = it->template get<T>();
}

json matrix_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

Eigen::MatrixXd matrix_from_json(const json& j) {
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = rows > 0 ? static_cast<Eigen::Index>(j.at(0).size()) : 0;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    detail::require(static_cast<Eigen::Index>(row.size()) == cols, "matrix rows differ in length");
    for (Eigen::Index k = 0; k < cols; ++k) m(i, k) = row.at(static_cast<std::size_t>(k)).get<double>();
  }
  return m;
}

json xy(const Point2& p) { return {{"x", p.x()}, {"y", p.y()}}; }

}  // namespace

// ---------------------------------------------------------------- design

void to_json(json& j, const MaterialLoadParams& p) {
  j = {{"density", p.density}, {"force", p.force}, {"max_bending_stress", p.max_bending_stress}};
}

void from_json(const json& j, MaterialLoadParams& p) {
  read_if_present(j, "density", p.density);
  read_if_present(j, "force", p.force);
  read_if_present(j, "max_bending_stress", p.max_bending_stress);
}

void to_json(json& j, const ModuleDimensions& d) {
  j = {{"length_m", d.length},
       {"width_m", d.width},
       {"thickness_m", d.thickness},
       {"fringe_base_m", d.fringe_base},
       {"fringe_height_m", d.fringe_height},
       {"inner_radius_m", d.inner_radius},
       {"outer_radius_m", d.outer_radius},
       {"fringe_count", d.fringe_count},
       {"turn_angle_rad", d.turn_angle}};
}

void from_json(const json& j, ModuleDimensions& d) {
  d.length = j.at("length_m").get<double>();
  d.width = j.at("width_m").get<double>();
  d.thickness = j.at("thickness_m").get<double>();
  d.fringe_base = j.at("fringe_base_m").get<double>();
  d.fringe_height = j.at("fringe_height_m").get<double>();
  d.inner_radius = j.at("inner_radius_m").get<double>();
  d.outer_radius = j.at("outer_radius_m").get<double>();
  d.fringe_count = j.at("fringe_count").get<int>();
  d.turn_angle = j.at("turn_angle_rad").get<double>();
}

void to_json(json& j, const GRAResult& r) {
  j = {{"r_values_m", r.r_values},
       {"h_values_m", r.h_values},
       {"fitness", matrix_to_json(r.fitness)},
       {"grades", matrix_to_json(r.grades)},
       {"optimal",
        {{"i", r.optimal_i},
         {"j", r.optimal_j},
         {"r_m", r.optimal_r},
         {"h_m", r.optimal_h},
         {"R_m", r.optimal_R}}},
       {"degenerate", r.degenerate}};
}

void from_json(const json& j, GRAResult& r) {
  r.r_values = j.at("r_values_m").get<std::vector<double>>();
  r.h_values = j.at("h_values_m").get<std::vector<double>>();
  r.fitness = matrix_from_json(j.at("fitness"));
  r.grades = matrix_from_json(j.at("grades"));
  const json& opt = j.at("optimal");
  r.optimal_i = opt.at("i").get<std::size_t>();
  r.optimal_j = opt.at("j").get<std::size_t>();
  r.optimal_r = opt.at("r_m").get<double>();
  r.optimal_h = opt.at("h_m").get<double>();
  r.optimal_R = opt.at("R_m").get<double>();
  r.degenerate = j.at("degenerate").get<bool>();
}

void to_json(json& j, const DesignIteration& it) {
  j = {{"fringe_count", it.fringe_count},
       {"fringe_base_m", it.base},
       {"turn_angle_rad", it.turn_angle}};
}

void from_json(const json& j, DesignIteration& it) {
  it.fringe_count = j.at("fringe_count").get<int>();
  it.base = j.at("fringe_base_m").get<double>();
  it.turn_angle = j.at("turn_angle_rad").get<double>();
}

void to_json(json& j, const DesignReport& r) {
  j = {{"schema", "softcr.design_report"},
       {"version", 1},
       {"module", r.module.dimensions()},
       {"thickness_objective", r.thickness_objective_value},
       {"gra", r.gra},
       {"iterations", r.iterations},
       {"loop_limit_reached", r.loop_limit_reached},
       {"fringe_count_pinned", r.fringe_count_pinned},
       {"fringe_equation",
        {{"value", r.fringe_equation_value},
         {"fringe_count", r.module.fringe_count()},
         {"mismatch", r.fringe_count_mismatch}}}};
}

DesignReport design_report_from_json(const json& j) {
  const json& eq = j.at("fringe_equation");
  return DesignReport{
      .module = ModuleSpec(j.at("module").get<ModuleDimensions>()),
      .thickness_objective_value = j.at("thickness_objective").get<double>(),
      .gra = j.at("gra").get<GRAResult>(),
      .iterations = j.at("iterations").get<std::vector<DesignIteration>>(),
      .loop_limit_reached = j.at("loop_limit_reached").get<bool>(),
      .fringe_count_pinned = j.at("fringe_count_pinned").get<bool>(),
      .fringe_equation_value = eq.at("value").get<double>(),
      .fringe_count_mismatch = eq.at("mismatch").get<bool>(),
  };
}

std::string format_module_table(const ModuleSpec& module, bool si_units) {
  const auto& d = module.dimensions();
  const char* lu = si_units ? "m" : "mm";
  auto len = [&](double m) { return si_units ? m : units::m_to_mm(m); };
  auto ang = [&](double rad) { return si_units ? rad : units::rad_to_deg(rad); };

  struct Row {
    std::string name;
    double value;
    std::string unit;
    int precision;
  };
  const int lp = si_units ? 6 : 2;
  const std::vector<Row> rows = {
      {"Length of the module (L)", len(d.length), lu, lp},
      {"Width of the module (W)", len(d.width), lu, lp},
      {"Thickness of the module (T)", len(d.thickness), lu, lp},
      {"Outer radius of curvature (R)", len(d.outer_radius), lu, lp},
      {"Inner radius of curvature (r)", len(d.inner_radius), lu, lp},
      {"Base of the triangular fringe (b)", len(d.fringe_base), lu, lp},
      {"Height of the triangular fringe (h)", len(d.fringe_height), lu, lp},
      {"Number of fringes (N)", static_cast<double>(d.fringe_count), "", 0},
      {"Angle of turn (theta)", ang(d.turn_angle), si_units ? "rad" : "deg", si_units ? 6 : 2},
  };
  std::size_t width = std::string("Design Parameter").size();
  for (const auto& r : rows) width = std::max(width, r.name.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(width)) << "Design Parameter" << "  Value\n"
      << std::string(width + 16, '-') << '\n';
  for (const auto& r : rows) {
    out << std::left << std::setw(static_cast<int>(width)) << r.name << "  " << std::fixed
        << std::setprecision(r.precision) << r.value;
    if (!r.unit.empty()) out << ' ' << r.unit;
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------- evaluation

void to_json(json& j, const RobotMetrics& m) {
  j = {{"max_speed", m.max_speed},
       {"body_length", m.body_length},
       {"body_height", m.body_height},
       {"max_step_height", m.max_step_height},
       {"max_obstacle_radius", m.max_obstacle_radius},
       {"max_slope_deg", m.max_slope_deg},
       {"wheel_radius", m.wheel_radius}};
}

void from_json(const json& j, RobotMetrics& m) {
  read_if_present(j, "max_speed", m.max_speed);
  read_if_present(j, "body_length", m.body_length);
  read_if_present(j, "body_height", m.body_height);
  read_if_present(j, "max_step_height", m.max_step_height);
  read_if_present(j, "max_obstacle_radius", m.max_obstacle_radius);
  read_if_present(j, "max_slope_deg", m.max_slope_deg);
  read_if_present(j, "wheel_radius", m.wheel_radius);
}

void to_json(json& j, const RangeThresholds& t) {
  j = json::object();
  for (Criterion c : kCriteria) {
    const RatingBand& b = t.band(c);
    j[std::string(criterion_key(c))] = {{"low_upper", b.low_upper}, {"medium_upper", b.medium_upper}};
  }
}

void from_json(const json& j, RangeThresholds& t) {
  for (const auto& [key, value] : j.items()) {
    bool known = false;
    for (Criterion c : kCriteria) {
      if (key != criterion_key(c)) continue;
      known = true;
      read_if_present(value, "low_upper", t.band(c).low_upper);
      read_if_present(value, "medium_upper", t.band(c).medium_upper);
    }
    detail::require(known, "unknown threshold criterion '" + key + "'");
  }
}

void to_json(json& j, const EvaluationReport& r) {
  json rows = json::array();
  for (const auto& res : r.results) {
    rows.push_back({{"key", criterion_key(res.criterion)},
                    {"feature", criterion_label(res.criterion)},
                    {"value", res.value},
                    {"unit", criterion_unit(res.criterion)},
                    {"inference", to_string(res.rating)}});
  }
  j = {{"schema", "softcr.evaluation_report"}, {"version", 1}, {"criteria", rows}};
}

void from_json(const json& j, EvaluationReport& r) {
  const json& rows = j.at("criteria");
  detail::require(rows.size() == kCriteria.size(), "evaluation report needs four criteria");
  for (const json& row : rows) {
    const auto key = row.at("key").get<std::string>();
    bool known = false;
    for (Criterion c : kCriteria) {
      if (key != criterion_key(c)) continue;
      known = true;
      r.results[static_cast<std::size_t>(c)] = {
          c, row.at("value").get<double>(),
          rating_from_string(row.at("inference").get<std::string>())};
    }
    detail::require(known, "unknown criterion '" + key + "'");
  }
}

// ---------------------------------------------------------------- workspace

json workspace_summary(const WorkspaceCloud& cloud) {
  const auto& e = cloud.extents;
  auto axis = [&](int k) {
    return json{{"min", e.min[k]},
                {"max", e.max[k]},
                {"reach", std::max(std::abs(e.min[k]), std::abs(e.max[k]))}};
  };
  return {{"schema", "softcr.workspace_summary"},
          {"version", 1},
          {"count", cloud.points.size()},
          {"grid_steps", cloud.grid_steps},
          {"joint_min_rad", cloud.joint_min},
          {"joint_max_rad", cloud.joint_max},
          {"extents", {{"x", axis(0)}, {"y", axis(1)}, {"z", axis(2)}}}};
}

void write_workspace_csv(std::ostream& out, const WorkspaceCloud& cloud) {
  std::string buffer;
  buffer.reserve(1 << 20);
  buffer += "x_m,y_m,z_m\n";
  for (const auto& p : cloud.points) {
    buffer += format_double(p.x());
    buffer += ',';
    buffer += format_double(p.y());
    buffer += ',';
    buffer += format_double(p.z());
    buffer += '\n';
    if (buffer.size() > (1 << 20) - 128) {
      out << buffer;
      buffer.clear();
    }
  }
  out << buffer;
}

// ---------------------------------------------------------------- snake

json pose_document(const PlanarChainPose& pose, const CurvatureProfile& curvature) {
  json joints = json::array();
  for (const auto& p : pose.joint_positions) joints.push_back(xy(p));
  json mids = json::array();
  for (const auto& p : midpoint_markers(pose)) mids.push_back(xy(p));
  return {{"schema", "softcr.snake_pose"},
          {"version", 1},
          {"joint_angles_rad", pose.joint_angles},
          {"link_lengths_m", pose.link_lengths},
          {"cumulative_angles_rad", pose.cumulative_angles},
          {"joints", joints},
          {"midpoints", mids},
          {"curvatures", curvature.k}};
}

void write_pose_csv(std::ostream& out, const PlanarChainPose& pose) {
  out << "index,x_m,y_m,cumulative_angle_rad\n";
  for (std::size_t i = 0; i < pose.joint_positions.size(); ++i) {
    const double heading = i == 0 ? 0.0 : pose.cumulative_angles[i - 1];
    out << i << ',' << format_double(pose.joint_positions[i].x()) << ','
        << format_double(pose.joint_positions[i].y()) << ',' << format_double(heading) << '\n';
  }
}

json scratch_document(const SnakeScratch& s) {
  json doubled = json::array();
  for (const auto& p : s.doubled_centres) doubled.push_back(xy(p));
  json tripled = json::array();
  for (const auto& p : s.tripled_pair_sums) tripled.push_back(xy(p));
  return {{"selector_a", matrix_to_json(s.selector_a)},
          {"difference_d", matrix_to_json(s.difference_d)},
          {"difference_pinv", matrix_to_json(s.difference_pinv)},
          {"segment_headings_rad", s.segment_headings},
          {"doubled_centres", doubled},
          {"tripled_pair_sums", tripled}};
}

// ---------------------------------------------------------------- teleop

void to_json(json& j, const SimConfig& c) {
  j = {{"servo_max_speed", c.servo_max_speed},
       {"pulley_radius", c.pulley_radius},
       {"bend_per_cable_delta", c.bend_per_cable_delta},
       {"wheel_rpm", c.wheel_rpm},
       {"wheel_radius", c.wheel_radius},
       {"turn_gain", c.turn_gain},
       {"tick_rate", c.tick_rate},
       {"cable_length", c.cable_length},
       {"module_length", c.module_length}};
}

void from_json(const json& j, SimConfig& c) {
  read_if_present(j, "servo_max_speed", c.servo_max_speed);
  read_if_present(j, "pulley_radius", c.pulley_radius);
  read_if_present(j, "bend_per_cable_delta", c.bend_per_cable_delta);
  read_if_present(j, "wheel_rpm", c.wheel_rpm);
  read_if_present(j, "wheel_radius", c.wheel_radius);
  read_if_present(j, "turn_gain", c.turn_gain);
  read_if_present(j, "tick_rate", c.tick_rate);
  read_if_present(j, "cable_length", c.cable_length);
  read_if_present(j, "module_length", c.module_length);
}

namespace {

json drive_json(const DriveState& d) {
  return {{"shaft_angle", d.shaft_angle},
          {"pulley_radius", d.pulley_radius},
          {"cable_a", d.cable_a},
          {"cable_b", d.cable_b}};
}

DriveState drive_from_json(const json& j) {
  return {j.at("shaft_angle").get<double>(), j.at("pulley_radius").get<double>(),
          j.at("cable_a").get<double>(), j.at("cable_b").get<double>()};
}

json ssr_json(const PlanarPose& p) { return {{"x", p.x}, {"y", p.y}, {"heading", p.heading}}; }

}  // namespace

void to_json(json& j, const TeleopState& s) {
  j = {{"v", kWireProtocolVersion},
       {"mode", to_string(s.mode)},
       {"yaw_drive", drive_json(s.yaw_drive)},
       {"pitch_drive", drive_json(s.pitch_drive)},
       {"module_bends", s.module_bends},
       {"ssr", ssr_json(s.ssr_pose)},
       {"wheel_speed", s.wheel_speed},
       {"sim_time", s.sim_time},
       {"tick", s.tick},
       {"flags", {{"clamped", s.clamped}}}};
}

void from_json(const json& j, TeleopState& s) {
  s.mode = robot_mode_from_string(j.at("mode").get<std::string>());
  s.yaw_drive = drive_from_json(j.at("yaw_drive"));
  s.pitch_drive = drive_from_json(j.at("pitch_drive"));
  s.module_bends = j.at("module_bends").get<std::array<double, kModuleCount>>();
  const json& ssr = j.at("ssr");
  s.ssr_pose = {ssr.at("x").get<double>(), ssr.at("y").get<double>(),
                ssr.at("heading").get<double>()};
  s.wheel_speed = j.at("wheel_speed").get<double>();
  s.sim_time = j.at("sim_time").get<double>();
  s.tick = j.at("tick").get<std::uint64_t>();
  s.clamped = j.at("flags").at("clamped").get<bool>();
}

json state_frame(const TeleopState& state, const SimConfig& config) {
  const Eigen::Vector3d tip = scm_pose(state, config.module_length).end_effector;
  return {{"type", "state"},
          {"v", kWireProtocolVersion},
          {"t", state.sim_time},
          {"tick", state.tick},
          {"mode", to_string(state.mode)},
          {"module_bends", state.module_bends},
          {"end_effector", {{"x", tip.x()}, {"y", tip.y()}, {"z", tip.z()}}},
          {"ssr", ssr_json(state.ssr_pose)},
          {"wheel_speed", state.wheel_speed},
          {"flags", {{"clamped", state.clamped}}}};
}

TeleopInput parse_input_message(const json& message) {
  detail::require(message.is_object(), "message must be a JSON object");
  const auto type = message.find("type");
  detail::require(type != message.end() && type->is_string() && *type == "input",
                  "message type must be \"input\"");
  if (auto v = message.find("v"); v != message.end())
    detail::require(v->is_number_integer() && v->get<int>() == kWireProtocolVersion,
                    "unsupported protocol version");

  TeleopInput input;
  const auto joystick = message.find("joystick");
  detail::require(joystick != message.end() && joystick->is_object(),
                  "input message needs a joystick object");
  const auto jx = joystick->find("x");
  const auto jy = joystick->find("y");
  detail::require(jx != joystick->end() && jx->is_number() && jy != joystick->end() &&
                      jy->is_number(),
                  "joystick needs numeric x and y");
  input.joystick_x = jx->get<double>();
  input.joystick_y = jy->get<double>();

  if (auto sw = message.find("switch"); sw != message.end()) {
    detail::require(sw->is_string(), "switch must be a string");
    input.drive_switch = drive_switch_from_string(sw->get<std::string>());
  }
  if (auto mode = message.find("mode"); mode != message.end()) {
    detail::require(mode->is_string(), "mode must be a string");
    input.mode = robot_mode_from_string(mode->get<std::string>());
  }
  input.validate();
  return input;
}

json input_message(const TeleopInput& input) {
  return {{"type", "input"},
          {"v", kWireProtocolVersion},
          {"joystick", {{"x", input.joystick_x}, {"y", input.joystick_y}}},
          {"switch", to_string(input.drive_switch)},
          {"mode", to_string(input.mode)}};
}

json error_frame(const std::string& message) {
  return {{"type", "error"}, {"v", kWireProtocolVersion}, {"message", message}};
}

// ---------------------------------------------------------------- config files

namespace {

json toml_node_to_json(const toml::node& node) {
  if (const auto* table = node.as_table()) {
    json obj = json::object();
    for (const auto& [key, value] : *table) obj[std::string(key.str())] = toml_node_to_json(value);
    return obj;
  }
  if (const auto* array = node.as_array()) {
    json arr = json::array();
    for (const auto& value : *array) arr.push_back(toml_node_to_json(value));
    return arr;
  }
  if (const auto* v = node.as_integer()) return v->get();
  if (const auto* v = node.as_floating_point()) return v->get();
  if (const auto* v = node.as_boolean()) return v->get();
  if (const auto* v = node.as_string()) return v->get();
  std::ostringstream text;
  node.visit([&](const auto& leaf) { text << leaf; });
  return text.str();
}

}  // namespace

json parse_toml(const std::string& text) {
  try {
    return toml_node_to_json(toml::parse(text));
  } catch (const toml::parse_error& e) {
    throw ValidationError(std::string("invalid TOML: ") + std::string(e.description()));
  }
}

json load_document(const std::filesystem::path& path) {
  std::ifstream in(path);
  detail::require(static_cast<bool>(in), "cannot open " + path.string());
  std::stringstream buffer;
  buffer << in.rdbuf();

  const auto ext = path.extension().string();
  if (ext == ".toml") return parse_toml(buffer.str());
  if (ext == ".json") {
    try {
      return json::parse(buffer.str());
    } catch (const json::parse_error& e) {
      throw ValidationError(std::string("invalid JSON in ") + path.string() + ": " + e.what());
    }
  }
  throw ValidationError("unsupported config extension '" + ext + "' (expected .toml or .json)");
}

}  // namespace softcr
