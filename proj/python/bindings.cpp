#include "sextic/asymptotics.hpp"
#include "sextic/cli.hpp"
#include "sextic/numerics.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace sextic;

namespace {

cli::RunConfig base_config(const std::string& command, const std::string& t1, const std::string& t2,
                           unsigned digits, std::optional<unsigned> guard) {
  cli::RunConfig cfg;
  cfg.command = command;
  cfg.t1 = t1;
  cfg.t2 = t2;
  cfg.target_digits = digits;
  cfg.guard_digits = guard;
  return cfg;
}

// Columns and rows as strings; the Python side decides how to convert.
py::dict as_table(const cli::Report& rep) {
  py::dict d;
  d["columns"] = rep.columns;
  d["rows"] = rep.rows;
  if (rep.all_pass) d["all_pass"] = *rep.all_pass;
  d["note"] = rep.summary_note;
  return d;
}

py::dict run_table(const cli::RunConfig& cfg) {
  cli::Report rep;
  {
    py::gil_scoped_release release;
    rep = cli::execute(cfg);
  }
  return as_table(rep);
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Orthogonal polynomials for exp(-x^6 - t2 x^4 - t1 x^2) at arbitrary precision";

  py::register_exception<PrecisionExhausted>(m, "PrecisionExhausted", PyExc_ArithmeticError);
  py::register_exception<QuadratureFailure>(m, "QuadratureFailure", PyExc_ArithmeticError);

  m.def(
      "moments",
      [](const std::string& t1, const std::string& t2, std::size_t max_order, unsigned digits,
         std::optional<unsigned> guard) {
        auto cfg = base_config("moments", t1, t2, digits, guard);
        cfg.max_order = max_order;
        return run_table(cfg);
      },
      py::arg("t1") = "0", py::arg("t2") = "0", py::arg("max_order") = 20, py::arg("digits") = 50,
      py::arg("guard") = py::none());

  m.def(
      "recurrence",
      [](const std::string& t1, const std::string& t2, std::size_t n, unsigned digits,
         std::optional<unsigned> guard) {
        auto cfg = base_config("recurrence", t1, t2, digits, guard);
        cfg.n = n;
        return run_table(cfg);
      },
      py::arg("t1") = "0", py::arg("t2") = "0", py::arg("n") = 20, py::arg("digits") = 50,
      py::arg("guard") = py::none());

  m.def(
      "verify",
      [](const std::string& t1, const std::string& t2, std::size_t n, const std::string& check,
         std::optional<std::string> tol, unsigned digits, std::optional<unsigned> guard) {
        auto cfg = base_config("verify", t1, t2, digits, guard);
        cfg.n = n;
        cfg.check = check;
        cfg.tol = tol;
        return run_table(cfg);
      },
      py::arg("t1") = "0", py::arg("t2") = "0", py::arg("n") = 20, py::arg("check") = "all",
      py::arg("tol") = py::none(), py::arg("digits") = 50, py::arg("guard") = py::none());

  m.def(
      "asympt",
      [](const std::string& quantity, std::vector<std::size_t> n_list, const std::string& t1,
         const std::string& t2, unsigned digits, std::optional<unsigned> guard) {
        auto cfg = base_config("asympt", t1, t2, digits, guard);
        cfg.quantity = quantity;
        cfg.n_list = std::move(n_list);
        return run_table(cfg);
      },
      py::arg("quantity"), py::arg("n_list"), py::arg("t1") = "0", py::arg("t2") = "0",
      py::arg("digits") = 50, py::arg("guard") = py::none());

  m.def(
      "zeta_prime_neg1",
      [](unsigned digits) {
        const PrecisionContext ctx(digits, PrecisionContext::kDefaultGuard);
        return to_decimal(zeta_prime_neg1(ctx), digits);
      },
      py::arg("digits") = 50);

  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code;
        {
          py::gil_scoped_release release;
          code = cli::run(args, out, err);
        }
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs the command-line front end; returns (exit_code, stdout, stderr).");

  m.attr("__version__") = cli::kToolVersion;
}
