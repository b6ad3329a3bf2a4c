#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "eulerkit/acceptance.hpp"
#include "eulerkit/error.hpp"
#include "eulerkit/linode.hpp"
#include "eulerkit/polyroots.hpp"
#include "eulerkit/serialize.hpp"
#include "eulerkit/specfun.hpp"
#include "eulerkit/variational.hpp"

namespace py = pybind11;
using namespace pybind11::literals;
using namespace eulerkit;

namespace {

py::object to_python(const io::Json& j) { return py::module_::import("json").attr("loads")(io::dump(j)); }

io::Json from_python(const py::object& o) {
  return io::parse(py::module_::import("json").attr("dumps")(o).cast<std::string>());
}

py::tuple estimate(const specfun::Estimate& e) { return py::make_tuple(e.value, e.error); }

variational::StepRule step_rule(const std::string& rule) {
  if (rule == "lbfgs") return variational::StepRule::lbfgs;
  if (rule == "gradient-descent") return variational::StepRule::gradient_descent;
  throw InvalidInput("rule must be lbfgs or gradient-descent");
}

py::dict minimize_scalar(const variational::Functional1D& fn, int N, double grad_tol, int max_iter,
                         const std::string& rule) {
  const auto path = variational::as_path(fn);
  variational::MinimizeOptions o;
  o.grad_tol = grad_tol;
  o.max_iter = max_iter;
  o.step_rule = step_rule(rule);
  const auto r = variational::minimize(variational::discretize(path, N), variational::linear_path(path, N), o);
  std::vector<double> t;
  for (int k = 0; k <= N; ++k) t.push_back(r.path.node(k));
  return py::dict("t"_a = t, "y"_a = r.path.coordinate(0), "converged"_a = r.converged,
                  "iterations"_a = r.iterations, "objective"_a = r.objective, "grad_norm"_a = r.grad_norm);
}

}  // namespace

PYBIND11_MODULE(_eulerkit, m) {
  m.doc() = "Classical analysis toolkit";
  m.attr("__version__") = EULERKIT_VERSION;

  auto base = py::register_exception<Error>(m, "Error");
  auto invalid = py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<NumericFailure>(m, "NumericFailure", base.ptr());
  (void)invalid;

  m.def(
      "roots",
      [](std::vector<double> coeffs, double tol) {
        std::vector<std::pair<std::complex<double>, int>> out;
        for (const auto& c : polyroots::find_roots(polyroots::RealPolynomial(std::move(coeffs)), tol)) {
          out.emplace_back(c.value, c.multiplicity);
        }
        return out;
      },
      "coeffs"_a, "tol"_a = 1e-12, "Roots with multiplicities; coefficients from the constant term upward.");

  m.def(
      "ode_solve",
      [](std::vector<double> coeffs, const std::vector<std::tuple<int, double, double>>& conds) {
        const auto gs = linode::solve_homogeneous(linode::ConstCoeffODE(std::move(coeffs)));
        std::vector<linode::Condition> cs;
        for (const auto& [order, at, equals] : conds) cs.push_back({order, at, equals});
        return to_python(io::solution_to_json(linode::fit_constants(gs, cs)));
      },
      "coeffs"_a, "conditions"_a, "Particular solution as a dict; conditions are (order, at, equals).");

  m.def(
      "ode_eval",
      [](const py::object& solution, double x, int up_to_order) {
        const auto r = linode::evaluate(io::solution_from_json(from_python(solution)), x, up_to_order);
        return r.derivatives;
      },
      "solution"_a, "x"_a, "up_to_order"_a = 0);

  m.def("beam_b", &linode::beam_b, "K"_a, "l"_a);
  m.def(
      "oscillator",
      [](double M, double K, double F, double w_a, double t) {
        const auto r = linode::forced_oscillator(M, K, F, w_a, t);
        return py::dict("value"_a = r.value, "steady_amplitude"_a = r.steady_amplitude,
                        "natural_frequency"_a = r.natural_frequency, "resonant"_a = r.resonant);
      },
      "M"_a, "K"_a, "F"_a, "w_a"_a, "t"_a);

  m.def("gamma", &specfun::gamma, "x"_a);
  m.def("beta_gamma", &specfun::beta_gamma, "p"_a, "q"_a);
  m.def("beta_integral", [](double p, double q) { return estimate(specfun::beta_integral(p, q)); }, "p"_a, "q"_a);
  m.def(
      "bessel_i", [](double v, double z, double tol) { return estimate(specfun::bessel_i_series(v, z, tol)); },
      "v"_a, "z"_a, "tol"_a = 1e-15);
  m.def(
      "chain",
      [](double n, double alpha, double x, double A, const std::string& method) {
        const specfun::ChainProblem p{n, alpha, A};
        if (method == "integral") return estimate(specfun::chain_solution_integral(p, x));
        if (method == "series") return estimate(specfun::chain_solution_series(p, x));
        throw InvalidInput("method must be series or integral");
      },
      "n"_a, "alpha"_a, "x"_a, "A"_a = 1.0, "method"_a = "series");

  m.def(
      "minimize",
      [](const std::string& functional, double x1, double x2, double y1, double y2, int N, double grad_tol,
         int max_iter, const std::string& rule) {
        if (functional == "arclength") {
          return minimize_scalar(variational::arclength(x1, x2, y1, y2), N, grad_tol, max_iter, rule);
        }
        if (functional == "dirichlet") {
          return minimize_scalar(variational::dirichlet(x1, x2, y1, y2), N, grad_tol, max_iter, rule);
        }
        if (functional == "brachistochrone") {
          return minimize_scalar(variational::brachistochrone(x1, x2, y1, y2), N, grad_tol, max_iter, rule);
        }
        throw InvalidInput("functional must be arclength, dirichlet or brachistochrone");
      },
      "functional"_a, "x1"_a = 0.0, "x2"_a = 1.0, "y1"_a = 0.0, "y2"_a = 1.0, "N"_a = 50, "grad_tol"_a = 1e-7,
      "max_iter"_a = 20000, "rule"_a = "lbfgs");

  m.def(
      "acceptance",
      [](const py::object& config) {
        const auto cfg = acceptance::load_config(config.is_none() ? io::Json::object() : from_python(config));
        return to_python(acceptance::report(cfg, acceptance::run(cfg)));
      },
      "config"_a = py::none(), "Run acceptance criteria and return the report.");
}
