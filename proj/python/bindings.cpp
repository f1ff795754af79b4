#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <numbers>
#include <optional>

#include "softcr/design_geometry.hpp"
#include "softcr/design_optimizer.hpp"
#include "softcr/errors.hpp"
#include "softcr/evaluation.hpp"
#include "softcr/io.hpp"
#include "softcr/kinematics.hpp"
#include "softcr/snake_planar.hpp"
#include "softcr/teleop_sim.hpp"

namespace py = pybind11;
using namespace softcr;

namespace {

// Composite reports cross the boundary as plain dicts via their JSON form.
py::object to_py(const json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

json from_py(const py::handle& obj) {
  return json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

ThicknessSolver solver_from(const std::string& name) {
  if (name == "closed-form") return ThicknessSolver::ClosedForm;
  if (name == "bisection") return ThicknessSolver::Bisection;
  throw ValidationError("solver must be 'closed-form' or 'bisection'");
}

Eigen::MatrixXd points_matrix(const std::vector<Eigen::Vector3d>& pts) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(pts.size()), 3);
  for (std::size_t i = 0; i < pts.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = pts[i];
  return m;
}

TeleopInput make_input(double x, double y, const std::string& sw, const std::string& mode) {
  TeleopInput in{x, y, drive_switch_from_string(sw), robot_mode_from_string(mode)};
  in.validate();
  return in;
}

}  // namespace

PYBIND11_MODULE(_softcr, m) {
  m.doc() = "Design and teleoperation toolkit for cable-driven soft continuum robots";

  m.def(
      "optimal_thickness",
      [](double length, double width, double force, double stress, double density,
         const std::string& solver) {
        return optimal_thickness(length, width, MaterialLoadParams{density, force, stress},
                                 solver_from(solver));
      },
      py::arg("length") = 0.1, py::arg("width") = 0.09, py::arg("force") = 50.0,
      py::arg("stress") = 160000.0, py::arg("density") = 20.0,
      py::arg("solver") = "closed-form");

  m.def("fringe_count", &fringe_count, py::arg("outer_radius"), py::arg("inner_radius"),
        py::arg("base"), py::arg("height"));
  m.def(
      "bend_angle",
      [](double chord, double radius) {
        return bend_angle_equal_radii(ChordGeometry::equal_radii(chord, radius));
      },
      py::arg("chord"), py::arg("radius"));

  m.def(
      "grey_relational_analysis",
      [](std::vector<double> r_values, std::vector<double> h_values, double base,
         int fringe_count) {
        const GRAResult r = grey_relational_analysis({std::move(r_values), std::move(h_values), base,
                                                      fringe_count});
        py::dict out;
        out["fitness"] = r.fitness;
        out["grades"] = r.grades;
        out["optimal_index"] = py::make_tuple(r.optimal_i, r.optimal_j);
        out["inner_radius"] = r.optimal_r;
        out["fringe_height"] = r.optimal_h;
        out["outer_radius"] = r.optimal_R;
        out["degenerate"] = r.degenerate;
        return out;
      },
      py::arg("r_values"), py::arg("h_values"), py::arg("base"), py::arg("fringe_count"));

  m.def(
      "design",
      [](std::optional<int> n_fringes, int max_n, const std::string& solver) {
        DesignInputs in = reference_design_inputs();
        in.pinned_fringe_count = n_fringes;
        in.max_fringe_count = max_n;
        in.solver = solver_from(solver);
        return to_py(design_pipeline(in));
      },
      py::arg("n_fringes") = py::none(), py::arg("max_n") = 10,
      py::arg("solver") = "closed-form");

  m.def(
      "forward_kinematics",
      [](std::vector<double> thetas, double link_length) {
        return forward_kinematics(manipulator_chain(thetas, link_length));
      },
      py::arg("thetas"), py::arg("link_length") = kDefaultModuleLength);

  m.def(
      "workspace",
      [](std::size_t steps, double theta_min, double theta_max, double link_length) {
        const std::vector<double> zeros(kModuleCount, 0.0);
        const WorkspaceCloud cloud =
            workspace_sample(manipulator_chain(zeros, link_length), steps, theta_min, theta_max);
        return points_matrix(cloud.points);
      },
      py::arg("steps") = 20, py::arg("theta_min") = 0.0,
      py::arg("theta_max") = std::numbers::pi / 2, py::arg("link_length") = kDefaultModuleLength);

  m.def(
      "snake_pose",
      [](std::vector<double> angles, std::vector<double> lengths) {
        if (lengths.empty()) lengths.assign(angles.size(), kDefaultModuleLength);
        return to_py(pose_document(planar_pose(angles, lengths), curvature_profile(angles, lengths)));
      },
      py::arg("angles"), py::arg("lengths") = std::vector<double>{});

  m.def(
      "evaluate",
      [](py::object metrics, py::object thresholds) {
        RobotMetrics mm = reference_robot_metrics();
        if (!metrics.is_none()) from_json(from_py(metrics), mm);
        RangeThresholds tt;
        if (!thresholds.is_none()) from_json(from_py(thresholds), tt);
        return to_py(classify(mm, tt));
      },
      py::arg("metrics") = py::none(), py::arg("thresholds") = py::none());

  py::class_<Simulator>(m, "Simulator")
      .def(py::init([](py::object config) {
             SimConfig c;
             if (!config.is_none()) from_json(from_py(config), c);
             c.validate();
             return std::make_unique<Simulator>(c);
           }),
           py::arg("config") = py::none())
      .def(
          "submit",
          [](Simulator& s, double x, double y, const std::string& sw, const std::string& mode) {
            s.submit(make_input(x, y, sw, mode));
          },
          py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("switch") = "off",
          py::arg("mode") = "scm")
      .def("tick", [](Simulator& s) { return to_py(s.tick()); })
      .def("snapshot", [](const Simulator& s) { return to_py(s.snapshot()); })
      .def("reset", &Simulator::reset);
}
