// Copyright 2026 The hypersum Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstdint>
#include <string>
#include <vector>

#include "hypersum/branching.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hypersum.hpp"
#include "hypersum/json_out.hpp"
#include "hypersum/mc_sim.hpp"
#include "hypersum/special_fn.hpp"
#include "hypersum/verify.hpp"

namespace py = pybind11;
using namespace hypersum;

namespace {

py::dict to_dict(const EvalResult& r) {
  py::dict d;
  d["value"] = r.value;
  d["abs_error_estimate"] = r.abs_error_estimate;
  d["terms_used"] = r.terms_used;
  d["method"] = std::string(to_string(r.method));
  d["analytic_continuation"] = r.analytic_continuation;
  return d;
}

SumMethod parse_method(const std::string& m) {
  if (m == "direct") return SumMethod::Direct;
  if (m == "closed") return SumMethod::Closed;
  if (m == "special") return SumMethod::Special;
  if (m == "auto") return SumMethod::Auto;
  fail(ErrorKind::Domain, "method must be direct, closed, special or auto");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Compiled core of the hypersum package.";

  static py::exception<Error> domain_error(m, "DomainError", PyExc_ValueError);
  static py::exception<Error> numerical_error(m, "NumericalError", PyExc_ArithmeticError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      const std::string msg = std::string(to_string(e.kind())) + ": " + e.what();
      if (is_rejection(e.kind())) {
        py::set_error(domain_error, msg.c_str());
      } else {
        py::set_error(numerical_error, msg.c_str());
      }
    }
  });

  m.def("hyp2f1", [](double a, double b, double c, double x) {
    return to_dict(special::hyp2f1(a, b, c, x));
  }, py::arg("a"), py::arg("b"), py::arg("c"), py::arg("x"));

  m.def("check", [](double eta, double c, double x) {
    const ConvergenceVerdict v = convergence_check(SumParams::make(eta, c, x));
    py::dict d;
    d["convergent"] = v.convergent;
    d["on_boundary"] = v.on_boundary;
    d["reason"] = std::string(to_string(v.reason));
    return d;
  }, py::arg("eta"), py::arg("c"), py::arg("x"));

  m.def("sum", [](double eta, double c, double x, const std::string& method,
                  std::int64_t max_terms) {
    DirectOptions opts;
    opts.max_terms = max_terms;
    return to_dict(evaluate_sum(SumParams::make(eta, c, x), parse_method(method), opts));
  }, py::arg("eta"), py::arg("c"), py::arg("x"), py::arg("method") = "auto",
     py::arg("max_terms") = special::kDefaultMaxTerms);

  m.def("progeny_pmf", [](double lambda, std::int64_t lmax) {
    return branching::progeny_pmf_table(branching::ProgenyHalfLaw::from_lambda(lambda), lmax);
  }, py::arg("lam"), py::arg("lmax"), "p_1 .. p_lmax for alpha = 1/2.");

  m.def("progeny_pgf", [](double lambda, double z) {
    return branching::progeny_pgf_elementary(branching::ProgenyHalfLaw::from_lambda(lambda), z);
  }, py::arg("lam"), py::arg("z"));

  m.def("general_progeny_pmf", [](double c, double x, std::int64_t lmax) {
    return branching::general_progeny_pmf_table(branching::GeneralProgenyLaw::make(c, x), lmax);
  }, py::arg("c"), py::arg("x"), py::arg("lmax"));

  m.def("h_alpha_pgf", [](double alpha, double lambda, double z) {
    return to_dict(branching::h_alpha_pgf(branching::ScaledSibuya::make(alpha, lambda), z));
  }, py::arg("alpha"), py::arg("lam"), py::arg("z"));

  m.def("simulate", [](double alpha, double lambda, std::int64_t n, std::uint64_t seed,
                       std::int64_t cap, int workers, int bins) {
    const auto d = branching::ScaledSibuya::make(alpha, lambda);
    mc::SimConfig cfg;
    cfg.seed = seed;
    cfg.replicates = n;
    cfg.progeny_cap = cap;
    cfg.workers = workers;
    mc::SimResult sim;
    std::vector<double> pmf;
    {
      py::gil_scoped_release release;
      sim = mc::simulate_total_progeny(d, cfg);
      pmf = alpha == 0.5
                ? branching::progeny_pmf_table(branching::ProgenyHalfLaw::from_lambda(lambda), bins)
                : branching::dual_progeny_pmf_lagrange(d, bins);
    }
    const mc::GofReport g = mc::gof_compare(sim, pmf, bins);
    py::dict out;
    out["counts"] = sim.counts;
    out["censored"] = sim.censored;
    out["chi_square"] = g.chi_square;
    out["dof"] = g.dof;
    out["quantile_999"] = g.quantile_999;
    out["passed"] = g.passed;
    out["max_abs_deviation"] = g.max_abs_deviation;
    out["mean_uncensored"] = sim.mean_uncensored;
    return out;
  }, py::arg("alpha"), py::arg("lam"), py::arg("n") = 1000000, py::arg("seed") = 42,
     py::arg("cap") = 100000, py::arg("workers") = 1, py::arg("bins") = 40);

  m.def("suite_names", &verify::suite_names);

  // Returned as a JSON string; the Python wrapper decodes it.
  m.def("verify_json", [](const std::string& suite, std::uint64_t seed, std::int64_t replicates,
                          int workers) {
    verify::VerifyOptions opts;
    opts.seed = seed;
    opts.mc_replicates = replicates;
    opts.mc_workers = workers;
    verify::SuiteReport rep;
    {
      py::gil_scoped_release release;
      rep = verify::run_suite(suite, opts);
    }
    return dump_json(rep.to_json());
  }, py::arg("suite"), py::arg("seed") = 20260101, py::arg("replicates") = 1000000,
     py::arg("workers") = 1);
}
