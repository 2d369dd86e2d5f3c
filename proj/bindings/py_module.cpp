#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pathwave/model.hpp"
#include "pathwave/ode.hpp"
#include "pathwave/rescale.hpp"
#include "pathwave/stationary.hpp"
#include "pathwave/sweep.hpp"
#include "pathwave/wave.hpp"

namespace py = pybind11;
using namespace pathwave;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Signal propagation in discrete enzymatic cascades: ODE integration, "
              "stationary profiles, wave metrics, reciprocal-velocity rescaling.";

    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<PropagationError>(m, "PropagationError", PyExc_RuntimeError);
    py::register_exception<IntegrationError>(m, "IntegrationError", PyExc_RuntimeError);

    py::class_<EdgeParams>(m, "EdgeParams")
        .def(py::init([](double alpha, double beta, double phi) {
                 EdgeParams p{alpha, beta, phi};
                 p.validate();
                 return p;
             }),
             py::arg("alpha") = 1.0, py::arg("beta") = 1.5, py::arg("phi") = 0.0)
        .def_readonly("alpha", &EdgeParams::alpha)
        .def_readonly("beta", &EdgeParams::beta)
        .def_readonly("phi", &EdgeParams::phi)
        .def_property_readonly("B", &EdgeParams::B)
        .def_property_readonly("phi_c", &EdgeParams::phi_c)
        .def_property_readonly("xi", &EdgeParams::xi)
        .def("__repr__", [](const EdgeParams& p) {
            return "EdgeParams(alpha=" + std::to_string(p.alpha) +
                   ", beta=" + std::to_string(p.beta) + ", phi=" + std::to_string(p.phi) + ")";
        });

    py::class_<PathwaySpec>(m, "PathwaySpec")
        .def_static(
            "uniform",
            [](std::size_t n, const EdgeParams& p, double x0, double init) {
                PathwaySpec s = PathwaySpec::uniform(n, p, x0, init);
                s.validate();
                return s;
            },
            py::arg("n"), py::arg("params"), py::arg("x0") = 1.0, py::arg("initial") = -1.0)
        .def_static(
            "from_edges",
            [](std::vector<EdgeParams> edges, double x0, py::object initial) {
                PathwaySpec s;
                s.edges = std::move(edges);
                s.boundary_input = x0;
                if (py::isinstance<py::float_>(initial) || py::isinstance<py::int_>(initial)) {
                    s.uniform_initial = initial.cast<double>();
                } else {
                    s.uniform_initial.reset();
                    s.initial_values = initial.cast<std::vector<double>>();
                }
                s.validate();
                return s;
            },
            py::arg("edges"), py::arg("x0") = 1.0, py::arg("initial") = -1.0)
        .def_property_readonly("n", &PathwaySpec::n)
        .def_readonly("edges", &PathwaySpec::edges)
        .def_readonly("boundary_input", &PathwaySpec::boundary_input)
        .def("initial_state", &PathwaySpec::initial_state)
        .def("is_uniform", &PathwaySpec::is_uniform);

    py::enum_<Region>(m, "Region")
        .value("MONOSTABLE_INACTIVE", Region::MonostableInactive)
        .value("BISTABLE", Region::Bistable)
        .value("MONOSTABLE_ACTIVE", Region::MonostableActive);

    py::class_<EquilibriumSet>(m, "EquilibriumSet")
        .def_readonly("region", &EquilibriumSet::region)
        .def_readonly("stable", &EquilibriumSet::stable)
        .def_readonly("unstable", &EquilibriumSet::unstable)
        .def_readonly("xi", &EquilibriumSet::xi)
        .def_readonly("phi_c", &EquilibriumSet::phi_c)
        .def_readonly("degenerate", &EquilibriumSet::degenerate);

    m.def("edge_rhs", &edge_rhs, py::arg("upstream"), py::arg("local"), py::arg("params"));
    m.def("uniform_rhs", &uniform_rhs, py::arg("x"), py::arg("params"));
    m.def(
        "pathway_rhs",
        [](double t, std::vector<double> x, const PathwaySpec& spec) {
            return pathway_rhs(CascadeState{t, std::move(x)}, spec);
        },
        py::arg("t"), py::arg("x"), py::arg("spec"));
    m.def("classify", &classify, py::arg("params"));

    py::class_<IntegratorConfig>(m, "IntegratorConfig")
        .def(py::init([](double rel_tol, double abs_tol, double sample_dt, double t_end,
                         double terminal_threshold, bool stop_on_arrival) {
                 IntegratorConfig c{rel_tol, abs_tol, sample_dt, t_end, terminal_threshold,
                                    stop_on_arrival};
                 c.validate();
                 return c;
             }),
             py::arg("rel_tol") = 1e-8, py::arg("abs_tol") = 1e-10, py::arg("sample_dt") = 1.0,
             py::arg("t_end") = 1000.0, py::arg("terminal_threshold") = 1e-4,
             py::arg("stop_on_arrival") = false)
        .def_readonly("rel_tol", &IntegratorConfig::rel_tol)
        .def_readonly("abs_tol", &IntegratorConfig::abs_tol)
        .def_readonly("sample_dt", &IntegratorConfig::sample_dt)
        .def_readonly("t_end", &IntegratorConfig::t_end)
        .def_readonly("terminal_threshold", &IntegratorConfig::terminal_threshold)
        .def_readonly("stop_on_arrival", &IntegratorConfig::stop_on_arrival);

    py::class_<CascadeState>(m, "CascadeState")
        .def(py::init<double, std::vector<double>>(), py::arg("t"), py::arg("x"))
        .def_readonly("t", &CascadeState::t)
        .def_readonly("x", &CascadeState::x);

    py::class_<Trajectory>(m, "Trajectory")
        .def_readonly("samples", &Trajectory::samples)
        .def_property_readonly("arrival_time",
                               [](const Trajectory& t) { return t.arrival_time; })
        .def_property_readonly("times",
                               [](const Trajectory& t) {
                                   std::vector<double> v;
                                   v.reserve(t.size());
                                   for (const auto& s : t.samples) v.push_back(s.t);
                                   return v;
                               })
        .def("state", [](const Trajectory& t, std::size_t j) { return t.samples.at(j).x; })
        .def("__len__", &Trajectory::size);

    m.def("integrate", &integrate, py::arg("spec"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def("order_check", &order_check, py::arg("spec"), py::arg("t_end") = 1.0,
          py::arg("h") = 0.25);

    py::class_<StationaryProfile>(m, "StationaryProfile")
        .def_readonly("x0", &StationaryProfile::x0)
        .def_readonly("values", &StationaryProfile::values)
        .def_readonly("limit", &StationaryProfile::limit)
        .def_readonly("lambda_", &StationaryProfile::lambda)
        .def_readonly("delta_i_approx", &StationaryProfile::delta_i_approx)
        .def("eps", &StationaryProfile::eps, py::arg("i"));

    m.def("stationary_map", &stationary_map, py::arg("x_prev"), py::arg("params"));
    m.def("stationary_profile", &stationary_profile, py::arg("x0"), py::arg("params"),
          py::arg("n"));
    m.def("decay_rate", &decay_rate, py::arg("params"), py::arg("limit"));
    m.def("penetration_depth_approx", &penetration_depth_approx, py::arg("x0"),
          py::arg("params"));
    m.def("penetration_depth_fit", &penetration_depth_fit, py::arg("profile"));

    py::enum_<Frame>(m, "Frame")
        .value("ORIGINAL", Frame::Original)
        .value("RESCALED", Frame::Rescaled);

    py::class_<VelocityEstimate>(m, "VelocityEstimate")
        .def_readonly("c", &VelocityEstimate::c)
        .def_readonly("degenerate", &VelocityEstimate::degenerate);

    py::class_<VelocitySeries>(m, "VelocitySeries")
        .def_readonly("times", &VelocitySeries::times)
        .def_readonly("values", &VelocitySeries::values)
        .def_readonly("valid_from", &VelocitySeries::valid_from);

    py::class_<ShapeResidualSeries>(m, "ShapeResidualSeries")
        .def_readonly("times", &ShapeResidualSeries::times)
        .def_readonly("values", &ShapeResidualSeries::values)
        .def_readonly("reference_time", &ShapeResidualSeries::reference_time)
        .def_readonly("valid_from", &ShapeResidualSeries::valid_from);

    m.def(
        "interp_profile",
        [](std::vector<double> x, std::vector<double> pos, double q) {
            return interp_profile(x, pos, q);
        },
        py::arg("x"), py::arg("positions"), py::arg("q"));
    m.def(
        "instantaneous_velocity",
        [](const CascadeState& prev, const CascadeState& next, std::vector<double> pos,
           double dt) { return instantaneous_velocity(prev, next, pos, dt); },
        py::arg("prev"), py::arg("next"), py::arg("positions"), py::arg("dt"));
    m.def("asymptotic_speed", &asymptotic_speed, py::arg("spec"), py::arg("config"),
          py::call_guard<py::gil_scoped_release>());
    m.def(
        "reference_time",
        [](const Trajectory& traj, std::vector<double> pos) {
            return reference_time(traj, pos);
        },
        py::arg("trajectory"), py::arg("positions"));
    m.def("original_positions", &original_positions, py::arg("n"));

    py::class_<SpeedOracle>(m, "SpeedOracle")
        .def_static("exact", []() { return SpeedOracle::exact(); })
        .def_static("with_measurer", &SpeedOracle::with_measurer, py::arg("measure"))
        .def("base_speed", &SpeedOracle::base_speed, py::arg("B"), py::arg("phi"));

    py::class_<RescaledCoordinates>(m, "RescaledCoordinates")
        .def_readonly("s", &RescaledCoordinates::s)
        .def_readonly("ds", &RescaledCoordinates::ds)
        .def_readonly("speeds", &RescaledCoordinates::speeds)
        .def_readonly("c_bar", &RescaledCoordinates::c_bar)
        .def("node_positions", &RescaledCoordinates::node_positions);

    m.def("edge_speed", &edge_speed, py::arg("params"), py::arg("oracle"));
    m.def("rescale_from_speeds", &rescale_from_speeds, py::arg("speeds"));
    m.def("rescale", &rescale, py::arg("spec"), py::arg("oracle"));

    py::class_<GradientSpec> gspec(m, "GradientSpec");
    py::enum_<GradientSpec::Kind>(gspec, "Kind")
        .value("ALPHA_LINEAR", GradientSpec::Kind::AlphaLinear)
        .value("B_LOG", GradientSpec::Kind::BLog)
        .value("PHI_LINEAR", GradientSpec::Kind::PhiLinear);
    gspec.def(py::init([](GradientSpec::Kind kind, double lo, double hi, const EdgeParams& base,
                          std::size_t n) {
                  return GradientSpec{kind, lo, hi, base, n};
              }),
              py::arg("kind"), py::arg("lo"), py::arg("hi"), py::arg("base"),
              py::arg("n") = 200);
    m.def("build_gradient", &build_gradient, py::arg("gradient"));

    py::class_<StochasticEnsembleSpec>(m, "StochasticEnsembleSpec")
        .def(py::init([](double alpha0, double beta0, double sigma, double phi, std::size_t n,
                         std::size_t realizations, std::uint64_t seed) {
                 StochasticEnsembleSpec s{alpha0, beta0, sigma, phi, n, realizations, seed};
                 s.validate();
                 return s;
             }),
             py::arg("alpha0") = 1.0, py::arg("beta0") = 5.0, py::arg("sigma") = 0.0,
             py::arg("phi") = 0.0, py::arg("n") = 200, py::arg("realizations") = 200,
             py::arg("seed") = 0)
        .def_readonly("sigma", &StochasticEnsembleSpec::sigma)
        .def_readonly("seed", &StochasticEnsembleSpec::seed);
    m.def("sample_realization", &sample_realization, py::arg("ensemble"), py::arg("k"));

    m.def("vise", &vise, py::arg("series"));
    m.def("rise", &rise, py::arg("series"));

    py::class_<FrameMetrics>(m, "FrameMetrics")
        .def_readonly("velocity", &FrameMetrics::velocity)
        .def_readonly("residual", &FrameMetrics::residual)
        .def_readonly("vise", &FrameMetrics::vise)
        .def_readonly("rise", &FrameMetrics::rise);

    py::class_<ComparisonResult>(m, "ComparisonResult")
        .def_readonly("coords", &ComparisonResult::coords)
        .def_readonly("original", &ComparisonResult::original)
        .def_readonly("rescaled", &ComparisonResult::rescaled)
        .def_readonly("window_start", &ComparisonResult::window_start)
        .def_readonly("window_end", &ComparisonResult::window_end);

    m.def("run_comparison", &run_comparison, py::arg("spec"), py::arg("oracle"),
          py::arg("config"), py::arg("full_series") = false,
          py::call_guard<py::gil_scoped_release>());
}
