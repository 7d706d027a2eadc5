#include <pybind11/eigen.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "iprox/bench.hpp"
#include "iprox/diagnostics.hpp"
#include "iprox/ipgm.hpp"
#include "iprox/ippm.hpp"
#include "iprox/problems.hpp"
#include "iprox/weakly_convex.hpp"

namespace py = pybind11;
using namespace iprox;

namespace {

py::dict trace_to_dict(const Trace& trace) {
  py::list records;
  for (const IterationRecord& rec : trace.records) {
    py::dict d;
    d["k"] = rec.k;
    d["t"] = rec.t;
    d["eps"] = rec.eps;
    d["r"] = rec.r;
    d["is_null"] = rec.is_null;
    d["gnorm"] = rec.gnorm;
    d["fval"] = rec.fval;
    d["gap"] = rec.gap;
    d["omega"] = rec.omega;
    d["subsolver_iters"] = rec.subsolver_iters;
    d["time_s"] = rec.time_s;
    records.append(std::move(d));
  }
  py::dict out;
  out["records"] = std::move(records);
  out["stop_reason"] = trace.stop_reason;
  out["null_count"] = trace.null_count();
  return out;
}

struct InstanceHandle {
  ImageRestorationInstance inst;
  std::shared_ptr<DualProxSolver> solver;
  CompositeProblem problem;
  double lambda = 0.0;

  InstanceHandle(int m, int n, double gamma, std::uint64_t seed)
      : inst(generate_instance(m, n, gamma, seed)),
        solver(std::make_shared<DualProxSolver>(inst.Bmat)),
        problem(make_problem(inst, solver.get())),
        lambda(1.0 / (2.0 * problem.f.descent_L)) {}
};

}  // namespace

PYBIND11_MODULE(_iprox, m) {
  m.doc() = "inexact proximal point and proximal gradient methods";

  m.def("soft_threshold",
        py::overload_cast<const Vector&, double>(&soft_threshold),
        py::arg("x"), py::arg("tau"));

  py::class_<ConstantsBundle>(m, "Constants")
      .def_readonly("lambda_", &ConstantsBundle::lambda)
      .def_readonly("L", &ConstantsBundle::L)
      .def_readonly("rho", &ConstantsBundle::rho)
      .def_readonly("C1", &ConstantsBundle::C1)
      .def_readonly("C2", &ConstantsBundle::C2)
      .def_readonly("C", &ConstantsBundle::C)
      .def_readonly("Cscript", &ConstantsBundle::Cscript);
  m.def("compute_constants", &compute_constants, py::arg("lambda_"),
        py::arg("L"), py::arg("rho"));

  py::class_<InstanceHandle>(m, "Instance")
      .def(py::init<int, int, double, std::uint64_t>(), py::arg("m"),
           py::arg("n"), py::arg("gamma"), py::arg("seed"))
      .def_property_readonly(
          "m", [](const InstanceHandle& h) { return h.inst.m(); })
      .def_property_readonly(
          "n", [](const InstanceHandle& h) { return h.inst.n(); })
      .def_property_readonly(
          "gamma", [](const InstanceHandle& h) { return h.inst.gamma; })
      .def_property_readonly(
          "L", [](const InstanceHandle& h) { return h.problem.f.descent_L; })
      .def_property_readonly(
          "lambda_", [](const InstanceHandle& h) { return h.lambda; })
      .def("f_value",
           [](const InstanceHandle& h, const Vector& x) {
             return f_value(h.inst, x);
           })
      .def("f_gradient",
           [](const InstanceHandle& h, const Vector& x) {
             return f_gradient(h.inst, x);
           })
      .def("objective",
           [](const InstanceHandle& h, const Vector& x) {
             return h.problem.objective(x);
           })
      .def("fbe_value",
           [](const InstanceHandle& h, const Vector& x) {
             return fbe_value(h.problem, h.lambda, x);
           })
      .def("solve_prox",
           [](const InstanceHandle& h, const Vector& anchor, double omega) {
             SubproblemSpec spec;
             spec.Bmat = &h.solver->B();
             spec.gamma = h.inst.gamma;
             spec.lambda = h.lambda;
             spec.anchor = anchor;
             spec.omega = omega;
             SubsolveResult res = h.solver->solve(spec);
             return py::make_tuple(res.p, res.gap, res.iters);
           },
           py::arg("anchor"), py::arg("omega"))
      .def("run_ipgm",
           [](const InstanceHandle& h, long max_iter, double tol_gnorm) {
             const ConstantsBundle k =
                 compute_constants(h.lambda, h.problem.f.descent_L, 0.0);
             IpgmConfig cfg;
             cfg.lambda = h.lambda;
             cfg.x1 = Vector::Zero(h.inst.n());
             cfg.eps1 = std::sqrt(100.0 / k.Cscript);
             cfg.r1 = cfg.eps1;
             cfg.subsolver = warm_dual_subsolver(h.solver, h.inst.gamma);
             cfg.stop.max_iter = max_iter;
             cfg.stop.tol_gnorm = tol_gnorm;
             return trace_to_dict(run_ipgm(h.problem, cfg));
           },
           py::arg("max_iter") = 10000, py::arg("tol_gnorm") = 0.0)
      .def("run_ifb",
           [](const InstanceHandle& h, long max_iter, double tol_gnorm) {
             IfbConfig cfg;
             cfg.lambda = h.lambda;
             cfg.x1 = Vector::Zero(h.inst.n());
             cfg.subsolver = warm_dual_subsolver(h.solver, h.inst.gamma);
             cfg.stop.max_iter = max_iter;
             cfg.stop.tol_gnorm = tol_gnorm;
             return trace_to_dict(run_ifb(h.problem, cfg));
           },
           py::arg("max_iter") = 2000, py::arg("tol_gnorm") = 0.0);

  m.def("estimate_rate", [](const std::vector<double>& distances) {
    const RateFit fit = estimate_rate(distances);
    py::dict d;
    switch (fit.kind) {
      case RateFit::Kind::Linear:
        d["kind"] = "linear";
        d["factor"] = fit.factor;
        break;
      case RateFit::Kind::Power:
        d["kind"] = "power";
        d["exponent"] = fit.exponent;
        break;
      default:
        d["kind"] = "inconclusive";
    }
    d["residual"] = fit.residual;
    return d;
  });
}
