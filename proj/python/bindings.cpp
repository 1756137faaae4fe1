#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "towbandit/analytic.hpp"
#include "towbandit/core.hpp"
#include "towbandit/exact.hpp"
#include "towbandit/montecarlo.hpp"
#include "towbandit/sweep.hpp"
#include "towbandit/version.hpp"

namespace py = pybind11;
using namespace towbandit;

PYBIND11_MODULE(_towbandit, m) {
  m.doc() = "Exact and Monte Carlo engine for the tug-of-war two-armed "
            "bandit driven by a two-valued Markov signal";
  m.attr("__version__") = std::string(kVersion);

  py::register_exception<InvalidParameter>(m, "InvalidParameter",
                                           PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError",
                                           PyExc_RuntimeError);

  py::enum_<Arm>(m, "Arm").value("A", Arm::A).value("B", Arm::B);

  py::class_<Environment>(m, "Environment")
      .def(py::init<double, double>(), py::arg("p_a"), py::arg("p_b"))
      .def_property_readonly("p_a", &Environment::p_a)
      .def_property_readonly("p_b", &Environment::p_b)
      .def_property_readonly("arm_a_optimal", &Environment::arm_a_optimal);

  py::class_<SignalModel>(m, "SignalModel")
      .def(py::init<double, double>(), py::arg("x"), py::arg("lambda_"))
      .def_property_readonly("x", &SignalModel::x)
      .def_property_readonly("lambda_", &SignalModel::lambda)
      .def_property_readonly("gamma", &SignalModel::gamma);

  py::class_<ThresholdConfig>(m, "ThresholdConfig")
      .def(py::init<int, double>(), py::arg("bound"), py::arg("x"))
      .def_property_readonly("bound", &ThresholdConfig::bound)
      .def_property_readonly("floor_x", &ThresholdConfig::floor_x)
      .def_property_readonly("state_count", &ThresholdConfig::state_count);

  m.def("select_arm", &select_arm, py::arg("signal_value"),
        py::arg("threshold_value"));
  m.def("update_threshold", &update_threshold, py::arg("current"),
        py::arg("selected"), py::arg("won"), py::arg("config"));
  m.def("upward_probability", &upward_probability, py::arg("signal_sign"),
        py::arg("threshold"), py::arg("env"), py::arg("model"));

  py::class_<exact::JointDistribution>(m, "JointDistribution")
      .def(py::init<int, std::vector<double>>(), py::arg("bound"),
           py::arg("entries"))
      .def_static("point_mass", &exact::JointDistribution::point_mass,
                  py::arg("config"), py::arg("signal_sign"),
                  py::arg("threshold"))
      .def_property_readonly("bound", &exact::JointDistribution::bound)
      .def_property_readonly("entries", &exact::JointDistribution::entries)
      .def("at", &exact::JointDistribution::at, py::arg("signal_sign"),
           py::arg("threshold"));

  py::class_<exact::TransitionMatrix>(m, "TransitionMatrix")
      .def(py::init<const Environment&, const SignalModel&,
                    const ThresholdConfig&>(),
           py::arg("env"), py::arg("model"), py::arg("config"))
      .def_property_readonly("dim", &exact::TransitionMatrix::dim)
      .def("at", &exact::TransitionMatrix::at, py::arg("row"), py::arg("col"));

  m.def("build_transition_matrix", &exact::build_transition_matrix,
        py::arg("env"), py::arg("model"), py::arg("config"));
  m.def("initial_distribution", &exact::initial_distribution,
        py::arg("config"));
  m.def("propagate", &exact::propagate, py::arg("mu"), py::arg("m"),
        py::arg("steps"));
  m.def("cdr", &exact::cdr, py::arg("mu"), py::arg("config"));
  m.def(
      "cdr_curve",
      [](const Environment& env, const SignalModel& model,
         const ThresholdConfig& config, int max_steps) {
        std::vector<std::pair<int, double>> out;
        for (const auto& p : exact::cdr_curve(env, model, config, max_steps)) {
          out.emplace_back(p.n, p.cdr);
        }
        return out;
      },
      py::arg("env"), py::arg("model"), py::arg("config"),
      py::arg("max_steps"));
  m.def("stationary_distribution", &exact::stationary_distribution,
        py::arg("m"), py::arg("tol") = 1e-12, py::arg("max_iter") = 1000000);

  m.def("cdr_infinity_closed_form", &analytic::cdr_infinity_closed_form,
        py::arg("p"), py::arg("config"));
  m.def("stationary_closed_form", &analytic::stationary_closed_form,
        py::arg("p"), py::arg("config"));
  m.def("f_approx", &analytic::f_approx, py::arg("p"), py::arg("m"));

  py::enum_<mc::Mode>(m, "Mode")
      .value("integer_threshold", mc::Mode::integer_threshold)
      .value("generalized_ta", mc::Mode::generalized_ta);

  py::class_<mc::TaParams>(m, "TaParams")
      .def(py::init<>())
      .def(py::init([](double k, double alpha, double delta, double omega) {
             return mc::TaParams{k, alpha, delta, omega};
           }),
           py::arg("k"), py::arg("alpha"), py::arg("delta"), py::arg("omega"))
      .def_readwrite("k", &mc::TaParams::k)
      .def_readwrite("alpha", &mc::TaParams::alpha)
      .def_readwrite("delta", &mc::TaParams::delta)
      .def_readwrite("omega", &mc::TaParams::omega);

  py::class_<mc::SimulationConfig>(m, "SimulationConfig")
      .def(py::init([](const Environment& env, const SignalModel& model,
                       const ThresholdConfig& config, int steps,
                       int replications, std::uint64_t seed, mc::Mode mode,
                       const mc::TaParams& ta) {
             return mc::SimulationConfig{env,  model, config, steps,
                                         replications, seed, mode, ta};
           }),
           py::arg("env"), py::arg("model"), py::arg("config"),
           py::arg("steps") = 1000, py::arg("replications") = 1,
           py::arg("seed") = 0,
           py::arg("mode") = mc::Mode::integer_threshold,
           py::arg("ta") = mc::TaParams{})
      .def_readwrite("steps", &mc::SimulationConfig::steps)
      .def_readwrite("replications", &mc::SimulationConfig::replications)
      .def_readwrite("seed", &mc::SimulationConfig::seed)
      .def_readwrite("mode", &mc::SimulationConfig::mode)
      .def_readwrite("ta", &mc::SimulationConfig::ta);

  py::class_<mc::TrajectoryStats>(m, "TrajectoryStats")
      .def_readonly("cdr_by_step", &mc::TrajectoryStats::cdr_by_step)
      .def_readonly("signal_positive_by_step",
                    &mc::TrajectoryStats::signal_positive_by_step)
      .def_readonly("final_threshold_histogram",
                    &mc::TrajectoryStats::final_threshold_histogram)
      .def_readonly("replications", &mc::TrajectoryStats::replications)
      .def("cdr_at", &mc::TrajectoryStats::cdr_at, py::arg("n"))
      .def("signal_positive_at", &mc::TrajectoryStats::signal_positive_at,
           py::arg("n"));

  py::class_<mc::CdrComparison>(m, "CdrComparison")
      .def_readonly("n", &mc::CdrComparison::n)
      .def_readonly("empirical", &mc::CdrComparison::empirical)
      .def_readonly("exact", &mc::CdrComparison::exact)
      .def_readonly("z", &mc::CdrComparison::z)
      .def_readonly("flagged", &mc::CdrComparison::flagged);

  m.def("simulate", &mc::simulate, py::arg("cfg"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.def("empirical_cdr_vs_exact", &mc::empirical_cdr_vs_exact, py::arg("cfg"),
        py::arg("sample_steps"), py::arg("jobs") = 1,
        py::call_guard<py::gil_scoped_release>());
  m.attr("generator_id") = std::string(mc::kGeneratorId);

  py::class_<sweep::LambdaGrid>(m, "LambdaGrid")
      .def(py::init<double, double, double>(), py::arg("min"), py::arg("max"),
           py::arg("step"))
      .def(py::init<std::vector<double>>(), py::arg("values"))
      .def_static("standard", &sweep::LambdaGrid::standard)
      .def_property_readonly("values", &sweep::LambdaGrid::values);

  py::class_<sweep::EnvGrid>(m, "EnvGrid")
      .def(py::init<double>(), py::arg("step"))
      .def_property_readonly("values", &sweep::EnvGrid::values)
      .def_property_readonly("step", &sweep::EnvGrid::step);

  py::class_<sweep::SweepRecord>(m, "SweepRecord")
      .def_readonly("p_a", &sweep::SweepRecord::p_a)
      .def_readonly("p_b", &sweep::SweepRecord::p_b)
      .def_readonly("max_cdr", &sweep::SweepRecord::max_cdr)
      .def_readonly("lambda_m", &sweep::SweepRecord::lambda_m)
      .def_readonly("argmax_count", &sweep::SweepRecord::argmax_count);

  m.def(
      "lambda_sweep",
      [](const Environment& env, const ThresholdConfig& config,
         const sweep::LambdaGrid& grid, int at_step) {
        std::vector<std::pair<double, double>> out;
        for (const auto& p : sweep::lambda_sweep(env, config, grid, at_step)) {
          out.emplace_back(p.lambda, p.cdr);
        }
        return out;
      },
      py::arg("env"), py::arg("config"), py::arg("grid"), py::arg("at_step"),
      py::call_guard<py::gil_scoped_release>());
  m.def(
      "argmax_lambda",
      [](const std::vector<std::pair<double, double>>& points,
         double tie_tol) {
        std::vector<sweep::SweepPoint> sweep_points;
        sweep_points.reserve(points.size());
        for (const auto& [lambda, value] : points) {
          sweep_points.push_back({lambda, value});
        }
        const auto r = sweep::argmax_lambda(sweep_points, tie_tol);
        return py::make_tuple(r.lambda_m, r.max_cdr, r.argmax_count);
      },
      py::arg("sweep"), py::arg("tie_tol") = 1e-12);
  m.def("heatmap", &sweep::heatmap, py::arg("env_grid"), py::arg("config"),
        py::arg("lambda_grid"), py::arg("at_step"), py::arg("tie_tol") = 1e-12,
        py::arg("jobs") = 1, py::call_guard<py::gil_scoped_release>());
}
