#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "psk/binning.hpp"
#include "psk/boundary.hpp"
#include "psk/charpoly.hpp"
#include "psk/equivalence.hpp"
#include "psk/error.hpp"
#include "psk/fitter.hpp"
#include "psk/kernel.hpp"
#include "psk/penalty.hpp"
#include "psk/simulate.hpp"

namespace py = pybind11;
using namespace psk;

namespace {

PSplineFit fit_xy(const std::vector<double>& xs, const std::vector<double>& ys, int p, int m, int knots,
                  double lambda) {
  const SplineBasis basis(p, knots);
  return fit(DesignMatrix(basis, xs), PenaltyOperator(m, basis.num_basis()), lambda, ys);
}

std::vector<double> weights_xy(const std::vector<double>& xs, int p, int m, int knots, double lambda, double x) {
  const SplineBasis basis(p, knots);
  return Smoother(DesignMatrix(basis, xs), PenaltyOperator(m, basis.num_basis()), lambda).weights(x);
}

EquivalenceReport compare(int n, int K, int p, int m, double lambda, double x, const std::string& mode) {
  const SplineBasis basis(p, K);
  const Smoother sm(DesignMatrix(basis, midpoint_design(n)), PenaltyOperator(m, basis.num_basis()), lambda);
  if (mode == "interior") return compare_interior(sm, x);
  if (mode == "boundary") return compare_boundary(sm, x);
  if (mode == "two-sided") return compare_two_sided(sm, x);
  throw ArgumentError("mode must be interior, boundary or two-sided");
}

std::string simulate_csv(const std::string& config) {
  std::istringstream is(config);
  const SimConfig cfg = parse_sim_config(is);
  validate(cfg);
  std::ostringstream os;
  write_sim_csv(os, simulate(cfg));
  return os.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Penalized splines and their equivalent kernels";

  py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<SingularityError>(m, "SingularityError", PyExc_ArithmeticError);

  m.def("psi_roots", [](int order) { return PsiRoots(order).values(); }, py::arg("m"));
  m.def("eval_H", [](int order, double x) { return eval_H(EquivalentKernel(order), x); }, py::arg("m"), py::arg("x"));
  m.def("kernel_moment", [](int order, int ell) { return kernel_moment(EquivalentKernel(order), ell); }, py::arg("m"),
        py::arg("ell"));
  m.def("kernel_l2_norm_sq", [](int order) { return kernel_l2_norm_sq(EquivalentKernel(order)); }, py::arg("m"));
  m.def("eval_Hb", [](int order, double x, double xt) { return eval_Hb(BoundaryKernel(order), x, xt); },
        py::arg("m"), py::arg("x"), py::arg("xt"));
  m.def("boundary_kernel", [](int order, double x, double xt) { return BoundaryKernel(order).combined(x, xt); },
        py::arg("m"), py::arg("x"), py::arg("xt"), "H_m(x - xt) + H_b(x, xt)");
  m.def("boundary_moment", [](int order, int ell, double t) { return boundary_moment(BoundaryKernel(order), ell, t); },
        py::arg("m"), py::arg("ell"), py::arg("t"));
  m.def(
      "boundary_bias_var",
      [](int order, double h, double c_x, double mu_m, double sigma2) {
        const auto bv = boundary_bias_var(BoundaryKernel(order), h, c_x, mu_m, sigma2);
        return py::make_tuple(bv.bias, bv.variance);
      },
      py::arg("m"), py::arg("h"), py::arg("c_x"), py::arg("mu_m_at_0"), py::arg("sigma2_at_0"));

  py::class_<PSplineFit>(m, "PSplineFit")
      .def("__call__", &PSplineFit::operator(), py::arg("x"))
      .def_property_readonly("coefficients", &PSplineFit::coefficients);
  m.def("fit", &fit_xy, py::arg("xs"), py::arg("ys"), py::arg("p") = 3, py::arg("m") = 2, py::arg("knots") = 35,
        py::arg("lam"));
  m.def("weights", &weights_xy, py::arg("xs"), py::arg("p"), py::arg("m"), py::arg("knots"), py::arg("lam"),
        py::arg("x"));
  m.def("midpoint_design", &midpoint_design, py::arg("n"));

  m.def(
      "bin_data",
      [](const std::vector<double>& xs, const std::vector<double>& ys, int bins) {
        const auto s = bin_data(xs, ys, bins);
        return py::make_tuple(s.centers, s.means, s.counts);
      },
      py::arg("xs"), py::arg("ys"), py::arg("bins"), "Returns (centers, means, counts).");

  m.def(
      "characteristic_roots",
      [](int p, int order, double lambda) {
        const auto rs = solve_roots(build_char_poly(p, order, lambda, continuous_gram_band(p)));
        std::vector<cplx> kernel, small;
        for (const auto& r : rs.kernel_roots) kernel.push_back(r.rho);
        for (const auto& r : rs.small_roots) small.push_back(r.rho);
        return py::make_tuple(kernel, small, expansion_errors(rs));
      },
      py::arg("p"), py::arg("m"), py::arg("lam"), "Returns (kernel roots, small roots, expansion errors).");

  py::class_<EquivalenceReport>(m, "EquivalenceReport")
      .def_readonly("h_n", &EquivalenceReport::h_n)
      .def_readonly("sup_discrepancy", &EquivalenceReport::sup_discrepancy)
      .def_readonly("l2_discrepancy", &EquivalenceReport::l2_discrepancy)
      .def_readonly("predicted_order", &EquivalenceReport::predicted_order)
      .def_readonly("kernel_term", &EquivalenceReport::kernel_term)
      .def_readonly("discrepancy", &EquivalenceReport::discrepancy);
  m.def("compare", &compare, py::arg("n"), py::arg("K"), py::arg("p"), py::arg("m"), py::arg("lam"), py::arg("x"),
        py::arg("mode") = "interior");

  m.def("simulate_csv", &simulate_csv, py::arg("config"), py::call_guard<py::gil_scoped_release>(),
        "Run a Monte Carlo study from key=value text and return the report CSV.");
}
