#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gent/bures.hpp"
#include "gent/cm_core.hpp"
#include "gent/errors.hpp"
#include "gent/fock.hpp"
#include "gent/optics.hpp"
#include "gent/relent.hpp"
#include "gent/standard_forms.hpp"

namespace py = pybind11;
using namespace gent;

namespace {

FockOperator build(const Eigen::MatrixXd& v, int n) {
  if (v.rows() == 2 && v.cols() == 2) return gaussian_state_from_cm(Mat2(v), n);
  if (v.rows() == 4 && v.cols() == 4) return gaussian_state_from_cm(TwoModeCM(Mat4(v)), n);
  throw Error(Errc::DimensionMismatch, "covariance matrix must be 2x2 or 4x4");
}

int default_dim(const Eigen::MatrixXd& v) { return v.rows() == 2 ? 60 : 20; }

}  // namespace

PYBIND11_MODULE(gent, m) {
  m.doc() = "Gaussian entanglement measures for symmetric two-mode states";
  m.attr("__version__") = "0.1.0";

  // The exception instance carries the error code name as .code.
  static PyObject* error = PyErr_NewException("gent.GentError", PyExc_ValueError, nullptr);
  m.attr("GentError") = py::handle(error);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::reinterpret_borrow<py::object>(error)(e.what());
      py::setattr(exc, "code", py::str(std::string(to_string(e.code()))));
      PyErr_SetObject(error, exc.ptr());
    }
  });

  m.def("omega", &omega);
  m.def(
      "symplectic_spectrum",
      [](const Mat4& v) {
        const SymplecticSpectrum s = symplectic_spectrum(TwoModeCM(v));
        return py::dict(py::arg("kappa_plus") = s.kappa_plus,
                        py::arg("kappa_minus") = s.kappa_minus,
                        py::arg("kappa_tilde_plus") = s.kappa_tilde_plus,
                        py::arg("kappa_tilde_minus") = s.kappa_tilde_minus);
      },
      py::arg("v"));
  m.def("partial_transpose", [](const Mat4& v) { return partial_transpose(TwoModeCM(v)).matrix(); });
  m.def("is_physical", [](const Mat4& v) { return is_physical(TwoModeCM(v)).physical; });
  m.def("is_separable", [](const Mat4& v) { return is_separable(TwoModeCM(v)).separable; });
  m.def("invariants", [](const Mat4& v) {
    const Invariants4 i = invariants(TwoModeCM(v));
    return py::make_tuple(i.det_v1, i.det_v2, i.det_c, i.det_v);
  });
  m.def("standard_form", [](const Mat4& v) {
    const StandardFormI f = to_standard_form_I(TwoModeCM(v));
    return py::make_tuple(f.b1, f.b2, f.c, f.d);
  });

  py::class_<SymmetricState>(m, "SymmetricState")
      .def(py::init<double, double, double>(), py::arg("b"), py::arg("c"), py::arg("d_abs"))
      .def_static("from_cm", [](const Mat4& v) { return SymmetricState::from_cm(TwoModeCM(v)); })
      .def_property_readonly("b", &SymmetricState::b)
      .def_property_readonly("c", &SymmetricState::c)
      .def_property_readonly("d", &SymmetricState::d)
      .def_property_readonly("d_abs", &SymmetricState::d_abs)
      .def_property_readonly("kappa_plus", &SymmetricState::kappa_plus)
      .def_property_readonly("kappa_minus", &SymmetricState::kappa_minus)
      .def_property_readonly("kappa_tilde_minus", &SymmetricState::kappa_tilde_minus)
      .def("is_physical", &SymmetricState::is_physical)
      .def("is_entangled", &SymmetricState::is_entangled)
      .def("cm", [](const SymmetricState& s) { return s.cm().matrix(); })
      .def("form_ii", [](const SymmetricState& s) {
        const FormII f = form_II_symmetric(s);
        return py::make_tuple(f.v, f.cm.matrix());
      })
      .def("__repr__", [](const SymmetricState& s) {
        return "SymmetricState(b=" + std::to_string(s.b()) + ", c=" + std::to_string(s.c()) +
               ", d_abs=" + std::to_string(s.d_abs()) + ")";
      });
  m.def("symmetric_sts", &symmetric_sts, py::arg("r"), py::arg("nbar") = 0.0);

  m.def("bs_symplectic", [](double theta, double phi) { return bs_symplectic({theta, phi}); },
        py::arg("theta"), py::arg("phi") = 0.0);
  m.def("transform_cm", [](const Mat4& v, const Mat4& s) { return transform_cm(TwoModeCM(v), s).matrix(); });
  m.def("diagonalize_symmetric", &diagonalize_symmetric, py::arg("state"), py::arg("u") = 1.0);

  py::class_<BuresResult>(m, "BuresResult")
      .def_readonly("e_b", &BuresResult::e_b)
      .def_readonly("f_max", &BuresResult::f_max)
      .def_readonly("kappa_tilde_minus", &BuresResult::kappa_tilde_minus)
      .def_readonly("d_bures", &BuresResult::d_bures);
  m.def("max_fidelity_closed", &max_fidelity_closed, py::arg("kappa_tilde_minus"));
  m.def("bures_entanglement", &bures_entanglement, py::arg("state"));
  m.def(
      "numeric_max_fidelity",
      [](const SymmetricState& s) {
        const FidelitySearchResult r = numeric_max_fidelity(s);
        return py::dict(py::arg("f_star") = r.f_star, py::arg("b") = r.b, py::arg("c") = r.c,
                        py::arg("d_abs") = r.d_abs, py::arg("u") = r.u,
                        py::arg("kappa_tilde_minus") = r.kappa_tilde_minus,
                        py::arg("agreeing_starts") = r.agreeing_starts);
      },
      py::arg("state"));
  m.def("one_mode_fidelity", py::overload_cast<const Mat2&, const Mat2&>(&one_mode_fidelity));

  py::class_<RelEntResult>(m, "RelEntResult")
      .def_readonly("e_s", &RelEntResult::e_s)
      .def_readonly("x1_star", &RelEntResult::x1_star)
      .def_readonly("x2_star", &RelEntResult::x2_star)
      .def_readonly("q_s1", &RelEntResult::q_s1)
      .def_readonly("q_s2", &RelEntResult::q_s2)
      .def_readonly("s_n1", &RelEntResult::s_n1)
      .def_readonly("s_n2", &RelEntResult::s_n2)
      .def_readonly("separable", &RelEntResult::separable)
      .def_readonly("ordering_violated", &RelEntResult::ordering_violated);
  m.def("rel_ent_entanglement", &rel_ent_entanglement, py::arg("state"));
  m.def("von_neumann_entropy", &von_neumann_entropy_nu, py::arg("nu"));
  m.def("mode_objective", &mode_objective, py::arg("x"), py::arg("kappa_sq"), py::arg("kt"));

  m.def(
      "fock_fidelity",
      [](const Eigen::MatrixXd& v, const Eigen::MatrixXd& vp, std::optional<int> n) {
        const int dim = n.value_or(default_dim(v));
        return fidelity_fock(build(v, dim), build(vp, dim));
      },
      py::arg("v"), py::arg("vp"), py::arg("n") = py::none());
  m.def(
      "fock_rel_entropy",
      [](const Eigen::MatrixXd& vp, const Eigen::MatrixXd& v, std::optional<int> n) {
        const int dim = n.value_or(default_dim(v));
        return rel_entropy_fock(build(vp, dim), build(v, dim));
      },
      py::arg("vp"), py::arg("v"), py::arg("n") = py::none(),
      "Tr[rho (ln rho - ln rho')] with rho' from vp and rho from v.");
  m.def(
      "fock_entropy",
      [](const Eigen::MatrixXd& v, std::optional<int> n) {
        return entropy_fock(build(v, n.value_or(default_dim(v))));
      },
      py::arg("v"), py::arg("n") = py::none());
}
