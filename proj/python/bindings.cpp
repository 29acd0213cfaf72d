#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nakamoto/decision.hpp"
#include "nakamoto/errors.hpp"
#include "nakamoto/model.hpp"
#include "nakamoto/simulator.hpp"
#include "nakamoto/specfun.hpp"
#include "nakamoto/walks.hpp"

namespace py = pybind11;
using namespace nakamoto;

namespace {

model::AttackParams make_params(double q, std::int64_t z, std::int64_t A, double v, double b,
                                double tau0) {
  model::AttackParams p{q, z, A, v, b, tau0};
  p.validate();
  return p;
}

py::dict estimate_dict(const simulator::MonteCarloEstimate& e) {
  py::dict d;
  d["mean"] = e.mean;
  d["std_error"] = e.std_error;
  d["n_cycles"] = e.n_cycles;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Profitability of the (A,1)-Nakamoto double-spend attack";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<SearchBoundError>(m, "SearchBoundError", PyExc_RuntimeError);
  py::register_exception<IntegrityError>(m, "IntegrityError", PyExc_ArithmeticError);
  py::register_exception<UnsatisfiableError>(m, "UnsatisfiableError", PyExc_ValueError);

  py::class_<model::AttackParams>(m, "AttackParams")
      .def(py::init(&make_params), py::arg("q") = 0.1, py::arg("z") = 2, py::arg("A") = 3,
           py::arg("v") = 1.0, py::arg("b") = 12.5, py::arg("tau0") = 600.0)
      .def_readwrite("q", &model::AttackParams::q)
      .def_readwrite("z", &model::AttackParams::z)
      .def_readwrite("A", &model::AttackParams::A)
      .def_readwrite("v", &model::AttackParams::v)
      .def_readwrite("b", &model::AttackParams::b)
      .def_readwrite("tau0", &model::AttackParams::tau0)
      .def("validate", &model::AttackParams::validate);

  py::class_<model::ClosedFormReport>(m, "ClosedFormReport")
      .def_readonly("p_success", &model::ClosedFormReport::p_success)
      .def_readonly("e_revenue_b", &model::ClosedFormReport::e_revenue_b)
      .def_readonly("e_duration_tau0", &model::ClosedFormReport::e_duration_tau0)
      .def_readonly("gamma_attack", &model::ClosedFormReport::gamma_attack)
      .def_readonly("gamma_honest", &model::ClosedFormReport::gamma_honest)
      .def_readonly("profitable", &model::ClosedFormReport::profitable);

  m.def("reg_inc_beta", py::overload_cast<double, double, double>(&specfun::reg_inc_beta),
        py::arg("x"), py::arg("a"), py::arg("b"));
  m.def("log_beta", &specfun::log_beta, py::arg("a"), py::arg("b"));

  m.def(
      "ruin_probability",
      [](double q, std::int64_t start, std::int64_t upper) {
        return walks::ruin_probability(walks::WalkSpec::make(q, start, upper));
      },
      py::arg("q"), py::arg("start"), py::arg("upper"));
  m.def("expected_absorption_time", &walks::expected_absorption_time, py::arg("x_upper_gap"),
        py::arg("y_lower_gap"), py::arg("q"));
  m.def(
      "expected_left_steps_given_ruin",
      [](double q, std::int64_t start, std::int64_t upper) {
        return walks::expected_left_steps_given_ruin(walks::WalkSpec::make(q, start, upper));
      },
      py::arg("q"), py::arg("start"), py::arg("upper"));

  m.def("evaluate", &model::evaluate, py::arg("params"));
  m.def("success_probability", &model::success_probability, py::arg("params"));
  m.def("success_probability_inf", &model::success_probability_inf, py::arg("q"), py::arg("z"));
  m.def("expected_duration", &model::expected_duration, py::arg("params"));
  m.def("expected_revenue", &model::expected_revenue, py::arg("params"));
  m.def("revenue_ratio", &model::revenue_ratio, py::arg("params"));
  m.def("honest_revenue_ratio", &model::honest_revenue_ratio, py::arg("q"));

  m.def(
      "simulate",
      [](const model::AttackParams& params, std::uint64_t cycles, std::uint64_t seed,
         unsigned threads) {
        simulator::BatchResult r;
        {
          py::gil_scoped_release release;
          r = simulator::run_batch({params, cycles, seed, threads});
        }
        py::dict d;
        d["p_success"] = estimate_dict(r.p_success);
        d["revenue_b"] = estimate_dict(r.revenue_b);
        d["duration_tau0"] = estimate_dict(r.duration_tau0);
        d["gamma"] = r.gamma_estimate;
        return d;
      },
      py::arg("params"), py::arg("cycles") = 1000000, py::arg("seed") = 1, py::arg("threads") = 0);

  m.def("min_profitable_value_exact", &decision::min_profitable_value_exact, py::arg("q"),
        py::arg("z"), py::arg("A"));
  m.def("min_profitable_value_asymptotic", &decision::min_profitable_value_asymptotic,
        py::arg("q"), py::arg("z"));
  m.def(
      "optimal_threshold",
      [](double q, std::int64_t z, double v, std::int64_t A_max) {
        const auto r = decision::optimal_threshold({q, z, v, A_max});
        return py::make_tuple(r.A0, r.gamma_at_A0);
      },
      py::arg("q"), py::arg("z"), py::arg("v"), py::arg("A_max") = 0);
  m.def(
      "min_safe_confirmations",
      [](double q, double v, std::int64_t z_max) -> std::optional<std::int64_t> {
        const auto r = decision::min_safe_confirmations({q, v, z_max});
        if (!r.found) return std::nullopt;
        return r.z;
      },
      py::arg("q"), py::arg("v"), py::arg("z_max") = 100);
}
