#include "cli_commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "softcr/design_geometry.hpp"
#include "softcr/design_optimizer.hpp"
#include "softcr/errors.hpp"
#include "softcr/evaluation.hpp"
#include "softcr/io.hpp"
#include "softcr/kinematics.hpp"
#include "softcr/service/http_server.hpp"
#include "softcr/service/teleop_service.hpp"
#include "softcr/snake_planar.hpp"
#include "softcr/teleop_sim.hpp"
#include "softcr/units.hpp"

namespace softcr::cli {

namespace {

using units::deg_to_rad;
using units::mm_to_m;

std::atomic<bool> g_stop_requested{false};

extern "C" void handle_stop_signal(int) { g_stop_requested = true; }

class UsageError : public ValidationError {
 public:
  using ValidationError::ValidationError;
};

// Values as typed on the command line; interpreted as mm/deg unless --si.
struct UnitMode {
  bool si = false;

  double length(std::optional<double> value, double default_m) const {
    if (!value) return default_m;
    return si ? *value : mm_to_m(*value);
  }
  double length(double value) const { return si ? value : mm_to_m(value); }
  double angle(double value) const { return si ? value : deg_to_rad(value); }
  double show_length(double m) const { return si ? m : units::m_to_mm(m); }
  double show_angle(double rad) const { return si ? rad : units::rad_to_deg(rad); }
  const char* length_unit() const { return si ? "m" : "mm"; }
  const char* angle_unit() const { return si ? "rad" : "deg"; }
};

std::vector<double> parse_number_list(const std::string& text, const char* what) {
  std::vector<double> values;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(item, &used);
      if (used != item.size()) throw std::invalid_argument("trailing characters");
      values.push_back(v);
    } catch (const std::exception&) {
      throw ValidationError(std::string("malformed ") + what + " list entry '" + item + "'");
    }
  }
  if (values.empty() || text.back() == ',')
    throw ValidationError(std::string("malformed ") + what + " list '" + text + "'");
  return values;
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
  if (!out) throw std::runtime_error("failed writing " + path);
}

std::string pretty(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------- design

struct DesignArgs {
  bool paper_defaults = false;
  std::optional<double> length, width, r_min, r_max, h_min, h_max, grid_step;
  double force = 50.0;
  double stress = 160000.0;
  double density = 20.0;
  int max_n = 10;
  std::optional<int> n_fringes;
  std::string solver = "closed-form";
  std::string output, table;
  bool json_stdout = false;
};

void add_design(CLI::App& app, DesignArgs& a) {
  auto* cmd = app.add_subcommand("design", "Optimal module geometry (thickness, r, h, N)");
  cmd->add_flag("--paper-defaults", a.paper_defaults,
                "Use the prototype inputs (L=100 mm, W=90 mm, F=50 N, sigma=160 kPa, D=20 kg/m^3); "
                "these are also the defaults of every flag");
  cmd->add_option("--length", a.length, "Module length L [mm] (default 100)");
  cmd->add_option("--width", a.width, "Module width W [mm] (default 90)");
  cmd->add_option("--force", a.force, "Applied force F [N]")->capture_default_str();
  cmd->add_option("--stress", a.stress, "Allowable bending stress sigma [N/m^2]")->capture_default_str();
  cmd->add_option("--density", a.density, "Material density D [kg/m^3]")->capture_default_str();
  cmd->add_option("--r-min", a.r_min, "Inner radius search start [mm] (default 25)");
  cmd->add_option("--r-max", a.r_max, "Inner radius search end [mm] (default 30)");
  cmd->add_option("--h-min", a.h_min, "Fringe height search start [mm] (default 30)");
  cmd->add_option("--h-max", a.h_max, "Fringe height search end [mm] (default 35)");
  cmd->add_option("--grid-step", a.grid_step, "Search grid step [mm] (default 1)");
  cmd->add_option("--max-n", a.max_n, "Largest fringe count tried by the design loop")->capture_default_str();
  cmd->add_option("--n-fringes", a.n_fringes, "Pin the fringe count and skip the loop");
  cmd->add_option("--solver", a.solver, "Thickness solver")
      ->check(CLI::IsMember({"closed-form", "bisection"}))
      ->capture_default_str();
  cmd->add_option("-o,--output", a.output, "Write the JSON report here");
  cmd->add_option("--table", a.table, "Write the text table here");
  cmd->add_flag("--json", a.json_stdout, "Print the JSON report instead of the table");
}

std::string design_text(const DesignReport& report, const UnitMode& u) {
  std::ostringstream out;
  out << format_module_table(report.module, u.si) << '\n';
  out << std::fixed << std::setprecision(4);
  out << "Fringe equation: N = " << report.fringe_equation_value << " for the chosen R, r, b, h";
  if (report.fringe_count_mismatch)
    out << "  [MISMATCH: module uses N = " << report.module.fringe_count() << "]";
  out << '\n';
  out << "Mass objective D*L*W*T: " << std::setprecision(6) << report.thickness_objective_value
      << " kg\n";
  out << "Design loop:";
  if (report.fringe_count_pinned) out << " fringe count pinned";
  out << '\n';
  for (const auto& it : report.iterations) {
    out << "  N=" << it.fringe_count << "  b=" << std::setprecision(u.si ? 6 : 2)
        << u.show_length(it.base) << ' ' << u.length_unit() << "  theta=" << std::setprecision(2)
        << units::rad_to_deg(it.turn_angle) << " deg"
        << (it.turn_angle >= units::pi / 2 ? "  (>= 90 deg)" : "") << '\n';
  }
  if (report.loop_limit_reached) out << "  loop limit reached before a 90 deg turn\n";
  return out.str();
}

int cmd_design(const DesignArgs& a, const UnitMode& u, std::ostream& out) {
  DesignInputs in = reference_design_inputs();
  in.length = u.length(a.length, in.length);
  in.width = u.length(a.width, in.width);
  in.material = {a.density, a.force, a.stress};
  in.max_fringe_count = a.max_n;
  in.pinned_fringe_count = a.n_fringes;
  in.solver = a.solver == "bisection" ? ThicknessSolver::Bisection : ThicknessSolver::ClosedForm;

  const double step = u.length(a.grid_step, mm_to_m(1.0));
  in.grid.r_values = inclusive_grid(u.length(a.r_min, mm_to_m(25.0)), u.length(a.r_max, mm_to_m(30.0)), step);
  in.grid.h_values = inclusive_grid(u.length(a.h_min, mm_to_m(30.0)), u.length(a.h_max, mm_to_m(35.0)), step);

  const DesignReport report = design_pipeline(in);
  const json doc = report;
  const std::string text = design_text(report, u);

  if (!a.output.empty()) write_text_file(a.output, pretty(doc));
  if (!a.table.empty()) write_text_file(a.table, text);
  out << (a.json_stdout ? pretty(doc) : text);
  return kExitOk;
}

// ---------------------------------------------------------------- workspace

struct WorkspaceArgs {
  int steps = 20;
  std::optional<double> theta_min, theta_max, link_length;
  std::string csv, summary;
  bool json_stdout = false;
};

void add_workspace(CLI::App& app, WorkspaceArgs& a) {
  auto* cmd = app.add_subcommand("workspace", "Sample the manipulator workspace");
  cmd->add_option("--steps", a.steps, "Grid points per joint, both ends included")->capture_default_str();
  cmd->add_option("--theta-min", a.theta_min, "Joint sweep start [deg] (default 0)");
  cmd->add_option("--theta-max", a.theta_max, "Joint sweep end [deg] (default 90)");
  cmd->add_option("--link-length", a.link_length, "Module length [mm] (default 100)");
  cmd->add_option("--csv", a.csv, "Write the point cloud (x_m,y_m,z_m) here");
  cmd->add_option("--summary", a.summary, "Write the JSON extents summary here");
  cmd->add_flag("--json", a.json_stdout, "Print the JSON summary instead of text");
}

int cmd_workspace(const WorkspaceArgs& a, const UnitMode& u, std::ostream& out) {
  detail::require(a.steps >= 2, "workspace grid needs at least 2 steps");
  const double lo = a.theta_min ? u.angle(*a.theta_min) : 0.0;
  const double hi = a.theta_max ? u.angle(*a.theta_max) : units::pi / 2;
  const double link = u.length(a.link_length, kDefaultModuleLength);

  const std::array<double, kModuleCount> zeros{};
  const WorkspaceCloud cloud =
      workspace_sample(manipulator_chain(zeros, link), static_cast<std::size_t>(a.steps), lo, hi);
  const json summary = workspace_summary(cloud);

  if (!a.csv.empty()) {
    std::ofstream file(a.csv, std::ios::binary);
    if (!file) throw std::runtime_error("cannot write " + a.csv);
    write_workspace_csv(file, cloud);
  }
  if (!a.summary.empty()) write_text_file(a.summary, pretty(summary));

  if (a.json_stdout) {
    out << pretty(summary);
  } else {
    out << "points: " << cloud.points.size() << " (" << a.steps << " steps per joint)\n";
    out << std::fixed << std::setprecision(u.si ? 6 : 2);
    const char* axes = "xyz";
    for (int k = 0; k < 3; ++k) {
      out << axes[k] << ": min " << u.show_length(cloud.extents.min[k]) << "  max "
          << u.show_length(cloud.extents.max[k]) << ' ' << u.length_unit() << '\n';
    }
  }
  return kExitOk;
}

// ---------------------------------------------------------------- snake

struct SnakeArgs {
  std::string angles = "25,25,25,25";
  std::optional<std::string> lengths;
  std::string output, csv;
  bool json_stdout = false;
  bool debug_scratch = false;
};

void add_snake(CLI::App& app, SnakeArgs& a) {
  auto* cmd = app.add_subcommand("snake", "Planar pose of the snake configuration");
  cmd->add_option("--angles", a.angles, "Relative joint angles, comma separated [deg]")->capture_default_str();
  cmd->add_option("--lengths", a.lengths, "Link lengths, comma separated [mm] (default 100 each)");
  cmd->add_option("-o,--output", a.output, "Write the pose JSON here");
  cmd->add_option("--csv", a.csv, "Write one row per joint here");
  cmd->add_flag("--json", a.json_stdout, "Print the pose JSON instead of text");
  cmd->add_flag("--debug-scratch", a.debug_scratch,
                "Add the auxiliary plotting quantities under \"debug\" in the JSON");
}

int cmd_snake(const SnakeArgs& a, const UnitMode& u, std::ostream& out) {
  std::vector<double> angles = parse_number_list(a.angles, "angle");
  for (double& v : angles) v = u.angle(v);

  std::vector<double> lengths;
  if (a.lengths) {
    lengths = parse_number_list(*a.lengths, "length");
    for (double& v : lengths) v = u.length(v);
  } else {
    lengths.assign(angles.size(), kDefaultModuleLength);
  }
  detail::require(lengths.size() == angles.size(), "need one link length per joint angle");

  const PlanarChainPose pose = planar_pose(angles, lengths);
  const CurvatureProfile curvature = curvature_profile(angles, lengths);
  json doc = pose_document(pose, curvature);
  if (a.debug_scratch) doc["debug"] = scratch_document(snake_scratch(pose));

  if (!a.output.empty()) write_text_file(a.output, pretty(doc));
  if (!a.csv.empty()) {
    std::ostringstream csv;
    write_pose_csv(csv, pose);
    write_text_file(a.csv, csv.str());
  }

  if (a.json_stdout) {
    out << pretty(doc);
    return kExitOk;
  }
  const auto mids = midpoint_markers(pose);
  out << std::fixed << std::setprecision(u.si ? 6 : 2);
  out << "joint  x [" << u.length_unit() << "]  y [" << u.length_unit() << "]\n";
  for (std::size_t i = 0; i < pose.joint_positions.size(); ++i)
    out << "  " << i << "  " << u.show_length(pose.joint_positions[i].x()) << "  "
        << u.show_length(pose.joint_positions[i].y()) << '\n';
  out << "midpoints:";
  for (const auto& m : mids) out << " (" << u.show_length(m.x()) << ", " << u.show_length(m.y()) << ')';
  out << "\ncurvatures [1/m]:" << std::setprecision(4);
  for (double k : curvature.k) out << ' ' << k;
  out << '\n';
  const auto& tip = pose.joint_positions.back();
  out << std::setprecision(u.si ? 6 : 2) << "end point: (" << u.show_length(tip.x()) << ", "
      << u.show_length(tip.y()) << ") " << u.length_unit() << '\n';
  return kExitOk;
}

// ---------------------------------------------------------------- evaluate

struct EvaluateArgs {
  bool paper_metrics = false;
  std::string metrics_file, thresholds_file, output;
  std::optional<double> speed, length, height, step, obstacle, slope, wheel;
  bool json_stdout = false;
};

void add_evaluate(CLI::App& app, EvaluateArgs& a) {
  auto* cmd = app.add_subcommand(
      "evaluate",
      "Rate locomotion figures (speed, step, obstacle, slope). Capability figures default to 0 "
      "and body dimensions to the prototype's 700 x 120 mm unless --paper-metrics or --metrics "
      "supplies them");
  cmd->add_flag("--paper-metrics", a.paper_metrics,
                "Start from the prototype record: 0.37 m/s, 700 mm long, 120 mm high, 30 mm step, "
                "55 mm obstacle, 66 deg slope");
  cmd->add_option("--metrics", a.metrics_file, "Metrics file (.json or .toml, SI units)");
  cmd->add_option("--thresholds", a.thresholds_file, "Rating thresholds file (.json or .toml)");
  cmd->add_option("--speed", a.speed, "Maximum speed [mm/s]");
  cmd->add_option("--length", a.length, "Body length [mm]");
  cmd->add_option("--height", a.height, "Body height [mm]");
  cmd->add_option("--step", a.step, "Highest step crossed [mm]");
  cmd->add_option("--obstacle", a.obstacle, "Largest semicircular obstacle radius crossed [mm]");
  cmd->add_option("--slope", a.slope, "Steepest slope climbed [deg, always]");
  cmd->add_option("--wheel-radius", a.wheel, "Wheel radius [mm]");
  cmd->add_option("-o,--output", a.output, "Write the JSON report here");
  cmd->add_flag("--json", a.json_stdout, "Print the JSON report instead of the table");
}

int cmd_evaluate(const EvaluateArgs& a, const UnitMode& u, std::ostream& out) {
  const RobotMetrics prototype = reference_robot_metrics();
  RobotMetrics m;
  if (a.paper_metrics) {
    m = prototype;
  } else {
    m.body_length = prototype.body_length;
    m.body_height = prototype.body_height;
    m.wheel_radius = prototype.wheel_radius;
  }
  if (!a.metrics_file.empty()) {
    const json doc = load_document(a.metrics_file);
    from_json(doc.contains("metrics") ? doc.at("metrics") : doc, m);
  }
  if (a.speed) m.max_speed = u.length(*a.speed);
  if (a.length) m.body_length = u.length(*a.length);
  if (a.height) m.body_height = u.length(*a.height);
  if (a.step) m.max_step_height = u.length(*a.step);
  if (a.obstacle) m.max_obstacle_radius = u.length(*a.obstacle);
  if (a.slope) m.max_slope_deg = *a.slope;
  if (a.wheel) m.wheel_radius = u.length(*a.wheel);

  RangeThresholds thresholds;
  if (!a.thresholds_file.empty()) {
    const json doc = load_document(a.thresholds_file);
    from_json(doc.contains("thresholds") ? doc.at("thresholds") : doc, thresholds);
  }

  const EvaluationReport report = classify(m, thresholds);
  json doc = report;
  doc["metrics"] = m;
  doc["thresholds"] = thresholds;

  if (!a.output.empty()) write_text_file(a.output, pretty(doc));
  out << (a.json_stdout ? pretty(doc) : format_evaluation_table(report));
  return kExitOk;
}

// ---------------------------------------------------------------- angle

struct AngleArgs {
  double chord = 0.0;
  std::optional<double> radius, r1, r2;
  bool unequal = false;
  bool json_stdout = false;
};

void add_angle(CLI::App& app, AngleArgs& a) {
  auto* cmd = app.add_subcommand("angle", "Module bend angle from a measured chord");
  cmd->add_option("--chord", a.chord, "Chord length C [mm]")->required();
  cmd->add_option("--radius", a.radius, "Bend radius r [mm] (equal radii at both ends)");
  cmd->add_flag("--unequal-radii", a.unequal,
                "Expert: use 2 asin(C / (r1 r2)) evaluated in metres; this relation is not "
                "dimensionally consistent, so the result depends on the unit system");
  cmd->add_option("--r1", a.r1, "First bend radius [mm] (with --unequal-radii)");
  cmd->add_option("--r2", a.r2, "Second bend radius [mm] (with --unequal-radii)");
  cmd->add_flag("--json", a.json_stdout, "Print JSON instead of text");
}

int cmd_angle(const AngleArgs& a, const UnitMode& u, std::ostream& out) {
  double theta = 0.0;
  ChordGeometry g;
  if (a.unequal) {
    detail::require(a.r1.has_value() && a.r2.has_value(), "--unequal-radii needs --r1 and --r2");
    g = {u.length(a.chord), u.length(*a.r1), u.length(*a.r2)};
    theta = bend_angle_unequal_radii(g);
  } else {
    detail::require(a.radius.has_value(), "--radius is required");
    g = ChordGeometry::equal_radii(u.length(a.chord), u.length(*a.radius));
    theta = bend_angle_equal_radii(g);
  }
  if (a.json_stdout) {
    out << pretty(json{{"chord_m", g.chord},
                       {"radius1_m", g.radius1},
                       {"radius2_m", g.radius2},
                       {"relation", a.unequal ? "unequal_radii" : "equal_radii"},
                       {"turn_angle_rad", theta}});
  } else {
    out << std::fixed << std::setprecision(u.si ? 6 : 2) << "theta = " << u.show_angle(theta) << ' '
        << u.angle_unit() << '\n';
  }
  return kExitOk;
}

// ---------------------------------------------------------------- serve

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string static_dir, sim_config, log_trajectory;
  double duration = 0.0;
};

void add_serve(CLI::App& app, ServeArgs& a) {
  auto* cmd = app.add_subcommand("serve", "Run the teleoperation simulator service");
  cmd->add_option("--host", a.host, "Listen address")->capture_default_str();
  cmd->add_option("--port", a.port, "Listen port (0 picks a free one)")->capture_default_str();
  cmd->add_option("--static-dir", a.static_dir, "Directory of built UI assets to serve");
  cmd->add_option("--config", a.sim_config, "Simulator config (.json or .toml, SI units)");
  cmd->add_option("--log-trajectory", a.log_trajectory, "Append one CSV row per tick here");
  cmd->add_option("--duration", a.duration, "Stop after this many seconds (0 runs until SIGINT)")
      ->capture_default_str();
}

int cmd_serve(const ServeArgs& a, std::ostream& out) {
  detail::require(a.port >= 0 && a.port <= 65535, "port must lie in [0, 65535]");
  detail::require(a.duration >= 0.0, "duration must be non-negative");

  SimConfig config;
  if (!a.sim_config.empty()) {
    const json doc = load_document(a.sim_config);
    from_json(doc.contains("sim") ? doc.at("sim") : doc, config);
  }
  config.validate();

  service::TeleopService teleop(config, a.log_trajectory.empty()
                                            ? std::nullopt
                                            : std::optional<std::filesystem::path>(a.log_trajectory));
  service::HttpServerOptions options;
  options.host = a.host;
  options.port = static_cast<unsigned short>(a.port);
  if (!a.static_dir.empty()) options.static_dir = a.static_dir;

  service::HttpServer server(teleop, options);
  out << "listening on http://" << a.host << ':' << server.port() << " (ws /teleop)" << std::endl;

  g_stop_requested = false;
  auto previous_int = std::signal(SIGINT, handle_stop_signal);
  auto previous_term = std::signal(SIGTERM, handle_stop_signal);

  teleop.start();
  server.start();
  const auto started = std::chrono::steady_clock::now();
  while (!g_stop_requested) {
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
    if (a.duration > 0.0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count() >= a.duration)
      break;
  }
  teleop.stop();
  server.stop();

  std::signal(SIGINT, previous_int);
  std::signal(SIGTERM, previous_term);
  return kExitOk;
}

void report_error(std::ostream& err, const char* kind, const std::string& message) {
  err << json{{"error", {{"kind", kind}, {"message", message}}}}.dump() << std::endl;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Design, kinematics and teleoperation toolkit for cable-driven soft continuum robots",
               "softcr"};
  app.require_subcommand(1);
  UnitMode units_mode;
  app.add_flag("--si", units_mode.si,
               "Read and print lengths in metres and angles in radians instead of mm and degrees");

  DesignArgs design_args;
  WorkspaceArgs workspace_args;
  SnakeArgs snake_args;
  EvaluateArgs evaluate_args;
  AngleArgs angle_args;
  ServeArgs serve_args;
  add_design(app, design_args);
  add_workspace(app, workspace_args);
  add_snake(app, snake_args);
  add_evaluate(app, evaluate_args);
  add_angle(app, angle_args);
  add_serve(app, serve_args);
  app.fallthrough();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    report_error(err, "usage", e.what());
    return kExitValidation;
  }

  try {
    if (app.got_subcommand("design")) return cmd_design(design_args, units_mode, out);
    if (app.got_subcommand("workspace")) return cmd_workspace(workspace_args, units_mode, out);
    if (app.got_subcommand("snake")) return cmd_snake(snake_args, units_mode, out);
    if (app.got_subcommand("evaluate")) return cmd_evaluate(evaluate_args, units_mode, out);
    if (app.got_subcommand("angle")) return cmd_angle(angle_args, units_mode, out);
    if (app.got_subcommand("serve")) return cmd_serve(serve_args, out);
  } catch (const ValidationError& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const json::exception& e) {
    report_error(err, "validation", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    report_error(err, "runtime", e.what());
    return kExitRuntime;
  }
  report_error(err, "usage", "no subcommand given");
  return kExitValidation;
}

}  // namespace softcr::cli
