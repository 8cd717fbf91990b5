#include <pybind11/functional.h>
#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "excnn/analytics.hpp"
#include "excnn/calibrate.hpp"
#include "excnn/config.hpp"
#include "excnn/obstacles.hpp"
#include "excnn/pathsolver.hpp"
#include "excnn/pgm.hpp"
#include "excnn/wavesim.hpp"

namespace py = pybind11;
using namespace excnn;

PYBIND11_MODULE(_excnn, m) {
    m.doc() = "Excitable-lattice wave-propagation path planner";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<StructuralError>(m, "StructuralError", PyExc_ValueError);
    py::register_exception<MeasurementError>(m, "MeasurementError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_RuntimeError);

    py::class_<Cell>(m, "Cell")
        .def(py::init<int, int>(), py::arg("row"), py::arg("col"))
        .def_readwrite("row", &Cell::row)
        .def_readwrite("col", &Cell::col)
        .def(py::self == py::self)
        .def("__repr__", [](const Cell& c) {
            return "Cell(" + std::to_string(c.row) + ", " + std::to_string(c.col) + ")";
        });

    py::class_<GridParams>(m, "GridParams")
        .def(py::init<>())
        .def_readwrite("rows", &GridParams::rows)
        .def_readwrite("cols", &GridParams::cols)
        .def_readwrite("g_nominal", &GridParams::g_nominal)
        .def_readwrite("c_i", &GridParams::c_i)
        .def_readwrite("i_b", &GridParams::i_b)
        .def_readwrite("dt", &GridParams::dt)
        .def("validate", &GridParams::validate);

    py::class_<ReactionCurve>(m, "ReactionCurve")
        .def_static("calibrated_default", &ReactionCurve::calibrated_default)
        .def_static("cubic", &ReactionCurve::cubic, py::arg("slope_a"), py::arg("v_low0"),
                    py::arg("v_mid0"), py::arg("v_high0"), py::arg("bias_anchor"))
        .def_static("load_piecewise", &ReactionCurve::load_piecewise, py::arg("path"))
        .def("current", &ReactionCurve::current, py::arg("v"))
        .def("peak_current", &ReactionCurve::peak_current)
        .def("peak_voltage", &ReactionCurve::peak_voltage)
        .def("slope", &ReactionCurve::slope)
        .def("anchor_low", &ReactionCurve::anchor_low)
        .def("anchor_mid", &ReactionCurve::anchor_mid)
        .def("anchor_high", &ReactionCurve::anchor_high);

    py::class_<StableStates>(m, "StableStates")
        .def_readonly("v_low", &StableStates::v_low)
        .def_readonly("v_mid", &StableStates::v_mid)
        .def_readonly("v_high", &StableStates::v_high)
        .def_readonly("excitable", &StableStates::excitable)
        .def_readonly("margin", &StableStates::margin);
    m.def("stable_states", &stable_states, py::arg("curve"), py::arg("bias_ua"));

    py::class_<TemplateImage>(m, "TemplateImage")
        .def(py::init<int, int, std::uint8_t>(), py::arg("rows"), py::arg("cols"),
             py::arg("fill") = 255)
        .def_readonly("rows", &TemplateImage::rows)
        .def_readonly("cols", &TemplateImage::cols)
        .def("at", [](const TemplateImage& t, int i, int j) { return t.at(i, j); })
        .def("set", [](TemplateImage& t, int i, int j, std::uint8_t v) { t.at(i, j) = v; })
        .def_readonly("intensity", &TemplateImage::intensity);

    m.def("load_pgm", &load_pgm, py::arg("path"));
    m.def("parse_pgm", &parse_pgm, py::arg("data"));
    m.def("save_pgm", &save_pgm, py::arg("image"), py::arg("path"), py::arg("binary") = true);

    py::enum_<FixtureKind>(m, "FixtureKind")
        .value("room", FixtureKind::Room)
        .value("maze", FixtureKind::Maze)
        .value("corridor", FixtureKind::Corridor)
        .value("sealed", FixtureKind::Sealed);
    m.def("make_fixture", &make_fixture, py::arg("kind"), py::arg("rows"), py::arg("cols"),
          py::arg("seed") = 0);

    py::class_<ThresholdMode>(m, "ThresholdMode")
        .def(py::init<>())
        .def_readwrite("theta", &ThresholdMode::theta);
    py::class_<ProportionalMode>(m, "ProportionalMode")
        .def(py::init<>())
        .def_readwrite("alpha", &ProportionalMode::alpha);

    py::class_<CouplingMap>(m, "CouplingMap")
        .def("rows", &CouplingMap::rows)
        .def("cols", &CouplingMap::cols)
        .def("horizontal", &CouplingMap::horizontal)
        .def("vertical", &CouplingMap::vertical);
    m.def(
        "build_coupling",
        [](const TemplateImage& img, const GridParams& p, const CouplingMode& mode) {
            return build_coupling(img, p, mode);
        },
        py::arg("image"), py::arg("params"), py::arg("mode") = CouplingMode{ThresholdMode{}});

    py::class_<SpeedMeasurement>(m, "SpeedMeasurement")
        .def_readonly("i_b", &SpeedMeasurement::i_b)
        .def_readonly("t_p", &SpeedMeasurement::t_p)
        .def_readonly("c_p", &SpeedMeasurement::c_p);
    m.def("measure_tp", &measure_tp, py::arg("params"), py::arg("curve"), py::arg("v_w") = 1.2,
          py::arg("corridor_len") = 60);

    py::class_<SweepRow>(m, "SweepRow")
        .def_readonly("i_b", &SweepRow::i_b)
        .def_readonly("measurement", &SweepRow::measurement)
        .def_readonly("note", &SweepRow::note);
    m.def("sweep_bias", &sweep_bias, py::arg("biases"), py::arg("params"), py::arg("curve"),
          py::arg("v_w") = 1.2);
    m.def("sweep_csv", &sweep_csv, py::arg("rows"));

    py::class_<CalibrationResult>(m, "CalibrationResult")
        .def_readonly("curve", &CalibrationResult::curve)
        .def_readonly("achieved_tp_ns", &CalibrationResult::achieved_tp_ns)
        .def_readonly("trace", &CalibrationResult::trace);
    m.def("calibrate_slope", &calibrate_slope, py::arg("target_tp_ns"), py::arg("params"),
          py::arg("v_w") = 1.2, py::arg("v_low0") = 0.97, py::arg("v_mid0") = 1.15,
          py::arg("v_high0") = 1.75, py::arg("rel_tol") = 0.02, py::arg("initial_guess") = 100.0);

    py::enum_<Outcome>(m, "Outcome")
        .value("reached", Outcome::Reached)
        .value("no_path", Outcome::NoPath)
        .value("budget_exceeded", Outcome::BudgetExceeded);

    py::class_<IterationResult>(m, "IterationResult")
        .def_readonly("winner", &IterationResult::winner)
        .def_readonly("crossing_time_ns", &IterationResult::crossing_time_ns)
        .def_readonly("episode_ns", &IterationResult::episode_ns)
        .def_readonly("tie", &IterationResult::tie);

    py::class_<PathSolution>(m, "PathSolution")
        .def_readonly("outcome", &PathSolution::outcome)
        .def_readonly("start", &PathSolution::start)
        .def_readonly("target", &PathSolution::target)
        .def_readonly("path", &PathSolution::path)
        .def_readonly("iterations", &PathSolution::iterations)
        .def_readonly("steps", &PathSolution::steps)
        .def_readonly("total_time_ns", &PathSolution::total_time_ns)
        .def("json", [](const PathSolution& s) { return solution_json(s); });

    m.def(
        "solve_path",
        [](const TemplateImage& img, std::pair<int, int> start, std::pair<int, int> target,
           const GridParams& params, const ReactionCurve& curve, const CouplingMode& mode,
           double v_w, std::optional<double> tp_estimate) {
            PathProblem prob = PathProblem::from_image(
                img, Cell{start.first, start.second}, Cell{target.first, target.second},
                params, curve);
            prob.coupling_mode = mode;
            prob.v_w = v_w;
            prob.timeout.t_p_estimate_ns = tp_estimate;
            return solve_path(prob);
        },
        py::arg("image"), py::arg("start"), py::arg("target"), py::arg("params"),
        py::arg("curve"), py::arg("mode") = CouplingMode{ThresholdMode{}},
        py::arg("v_w") = 1.2, py::arg("tp_estimate_ns") = std::nullopt,
        "Iterated trigger-wave shortest-path solve over a template image.");
    m.def("render_overlay", &render_overlay, py::arg("base"), py::arg("solution"));

    py::class_<ObstacleGraph>(m, "ObstacleGraph")
        .def(py::init<const CouplingMap&>())
        .def("edge", &ObstacleGraph::edge)
        .def("bfs_shortest",
             [](const ObstacleGraph& g, std::pair<int, int> a, std::pair<int, int> b) {
                 return g.bfs_shortest(Cell{a.first, a.second}, Cell{b.first, b.second});
             })
        .def("connected_cell_count", &ObstacleGraph::connected_cell_count);

    py::class_<PathReport>(m, "PathReport")
        .def_readonly("solver_steps", &PathReport::solver_steps)
        .def_readonly("oracle_distance", &PathReport::oracle_distance)
        .def_readonly("lengths_equal", &PathReport::lengths_equal)
        .def_readonly("legal", &PathReport::legal)
        .def_readonly("progress_ok", &PathReport::progress_ok)
        .def_readonly("no_path_agreement", &PathReport::no_path_agreement)
        .def("summary", &PathReport::summary);
    m.def("compare_path", &compare_path, py::arg("solution"), py::arg("graph"));

    m.def("predict_solution_time", &predict_solution_time, py::arg("path_steps"),
          py::arg("t_p_ns"));
    m.def("worst_case_time", &worst_case_time, py::arg("rows"), py::arg("cols"),
          py::arg("t_p_ns"));
}
