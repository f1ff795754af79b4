#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "property.hpp"
#include "softcr/errors.hpp"
#include "softcr/io.hpp"

using namespace softcr;
using softcr::testing::Draw;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("softcr_io_" + name);
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST(DesignReportJson, RoundTripIsLossless) {
  DesignInputs in = reference_design_inputs();
  in.pinned_fringe_count = 5;
  const DesignReport report = design_pipeline(in);
  const json doc = report;
  EXPECT_EQ(doc.at("schema"), "softcr.design_report");
  EXPECT_TRUE(doc.at("fringe_equation").at("mismatch").get<bool>());

  const DesignReport back = design_report_from_json(json::parse(doc.dump()));
  EXPECT_EQ(back.module, report.module);
  EXPECT_EQ(back.iterations, report.iterations);
  EXPECT_EQ(back.gra.fitness, report.gra.fitness);
  EXPECT_EQ(back.gra.grades, report.gra.grades);
  EXPECT_EQ(back.fringe_equation_value, report.fringe_equation_value);
  EXPECT_EQ(json(back).dump(), doc.dump());
}

TEST(DesignReportJson, InconsistentModuleRejected) {
  DesignInputs in = reference_design_inputs();
  in.pinned_fringe_count = 5;
  json doc = design_pipeline(in);
  doc["module"]["outer_radius_m"] = 0.07;
  EXPECT_THROW(design_report_from_json(doc), ValidationError);
}

TEST(EvaluationJson, RoundTripAndPartialInputs) {
  const EvaluationReport report = classify(reference_robot_metrics(), {});
  EvaluationReport back;
  from_json(json::parse(json(report).dump()), back);
  EXPECT_EQ(back, report);

  RobotMetrics m = reference_robot_metrics();
  from_json(json{{"max_speed", 0.5}}, m);
  EXPECT_EQ(m.max_speed, 0.5);
  EXPECT_EQ(m.body_length, 0.7);

  RangeThresholds t;
  from_json(json{{"slope_deg", {{"low_upper", 10.0}, {"medium_upper", 20.0}}}}, t);
  EXPECT_EQ(t.slope_deg, (RatingBand{10.0, 20.0}));
  EXPECT_EQ(t.speed_ratio, RangeThresholds{}.speed_ratio);
  EXPECT_ANY_THROW(from_json(json{{"bogus", {{"low_upper", 1.0}}}}, t));
}

TEST(SimJson, ConfigAndStateRoundTrip) {
  SimConfig c;
  c.turn_gain = 2.5;
  SimConfig back;
  from_json(json::parse(json(c).dump()), back);
  EXPECT_EQ(back, c);

  Draw draw(71);
  TeleopState s = reset(c);
  for (int i = 0; i < 300; ++i)
    s = step(s, {draw.uniform(-1, 1), draw.uniform(-1, 1), DriveSwitch::Forward, RobotMode::SSR}, c,
             0.02);
  TeleopState parsed;
  from_json(json::parse(json(s).dump()), parsed);
  EXPECT_EQ(parsed, s);
}

TEST(WireProtocol, StateFrameShape) {
  const SimConfig c;
  const json frame = state_frame(reset(c), c);
  EXPECT_EQ(frame.at("type"), "state");
  EXPECT_EQ(frame.at("v"), kWireProtocolVersion);
  EXPECT_EQ(frame.at("module_bends").size(), 4u);
  EXPECT_NEAR(frame.at("end_effector").at("x").get<double>(), 0.4, 1e-15);
  for (const char* key : {"t", "tick", "mode", "ssr", "wheel_speed", "flags"})
    EXPECT_TRUE(frame.contains(key)) << key;
  EXPECT_FALSE(frame.at("flags").at("clamped").get<bool>());
}

TEST(WireProtocol, InputRoundTrip) {
  const TeleopInput in{0.25, -1.0, DriveSwitch::Reverse, RobotMode::SSR};
  EXPECT_EQ(parse_input_message(json::parse(input_message(in).dump())), in);
  const TeleopInput minimal =
      parse_input_message(json{{"type", "input"}, {"joystick", {{"x", 0}, {"y", 0.5}}}});
  EXPECT_EQ(minimal.drive_switch, DriveSwitch::Off);
  EXPECT_EQ(minimal.mode, RobotMode::SCM);
}

TEST(WireProtocol, MalformedInputRejected) {
  const json good = input_message({});
  for (auto mutate : {+[](json& j) { j["type"] = "state"; }, +[](json& j) { j.erase("type"); },
                      +[](json& j) { j["v"] = 2; }, +[](json& j) { j["joystick"] = 3; },
                      +[](json& j) { j["joystick"].erase("y"); },
                      +[](json& j) { j["joystick"]["x"] = "left"; },
                      +[](json& j) { j["switch"] = "up"; }, +[](json& j) { j["mode"] = "fly"; },
                      +[](json& j) { j = json::array(); }}) {
    json j = good;
    mutate(j);
    EXPECT_THROW(parse_input_message(j), ValidationError) << j.dump();
  }
  EXPECT_EQ(error_frame("bad").at("type"), "error");
}

TEST(WorkspaceIo, CsvHeaderRowsAndSummary) {
  const auto cloud = workspace_sample(manipulator_chain(std::array<double, 4>{}), 2, 0.0,
                                      std::numbers::pi / 2);
  std::ostringstream csv;
  write_workspace_csv(csv, cloud);
  std::istringstream lines(csv.str());
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x_m,y_m,z_m");
  int rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 16);
  const json summary = workspace_summary(cloud);
  EXPECT_EQ(summary.at("count"), 16);
  EXPECT_NEAR(summary.at("extents").at("z").at("max").get<double>(), 0.3, 1e-12);
}

TEST(SnakeIo, PoseDocumentAndCsv) {
  const std::vector<double> angles(4, 0.3), lengths(4, 0.1);
  const auto pose = planar_pose(angles, lengths);
  const json doc = pose_document(pose, curvature_profile(angles, lengths));
  EXPECT_EQ(doc.at("joints").size(), 5u);
  EXPECT_EQ(doc.at("midpoints").size(), 4u);
  EXPECT_EQ(doc.at("curvatures").size(), 4u);
  std::ostringstream csv;
  write_pose_csv(csv, pose);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')), "index,x_m,y_m,cumulative_angle_rad");
}

TEST(ConfigFiles, TomlAndJsonAutoDetected) {
  const auto toml = temp_file("t.toml", "[slope_deg]\nlow_upper = 10.0\nmedium_upper = 20\n");
  const json fromToml = load_document(toml);
  EXPECT_EQ(fromToml.at("slope_deg").at("medium_upper").get<double>(), 20.0);

  const auto js = temp_file("t.json", R"({"slope_deg":{"low_upper":10.0,"medium_upper":20.0}})");
  RangeThresholds a, b;
  from_json(fromToml, a);
  from_json(load_document(js), b);
  EXPECT_EQ(a, b);

  EXPECT_THROW(load_document(temp_file("t.yaml", "a: 1")), ValidationError);
  EXPECT_THROW(load_document(temp_file("bad.toml", "= =")), ValidationError);
  EXPECT_THROW(load_document(temp_file("bad.json", "{")), ValidationError);
  EXPECT_THROW(load_document("/nonexistent/softcr.json"), ValidationError);
}

TEST(FormatDouble, ShortestRoundTrip) {
  EXPECT_EQ(format_double(0.1), "0.1");
  Draw draw(72);
  for (int i = 0; i < 1000; ++i) {
    const double v = draw.uniform(-1e3, 1e3);
    ASSERT_EQ(std::stod(format_double(v)), v);
  }
}

TEST(ModuleTable, MillimetreAndSi) {
  DesignInputs in = reference_design_inputs();
  in.pinned_fringe_count = 5;
  const auto module = design_pipeline(in).module;
  EXPECT_NE(format_module_table(module, false).find("55.00 mm"), std::string::npos);
  EXPECT_NE(format_module_table(module, true).find("0.055"), std::string::npos);
}
