#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "semih/io.hpp"

namespace py = pybind11;

namespace {

semih::AOperator bind_op(const semih::Matrix& T, const semih::Matrix& A) {
    return semih::make_a_operator(T, A);
}

py::object json_to_py(const semih::json& j) {
    switch (j.type()) {
        case semih::json::value_t::object: {
            py::dict d;
            for (const auto& [key, value] : j.items()) d[py::str(key)] = json_to_py(value);
            return d;
        }
        case semih::json::value_t::array: {
            py::list l;
            for (const auto& value : j) l.append(json_to_py(value));
            return l;
        }
        case semih::json::value_t::string: return py::str(j.get<std::string>());
        case semih::json::value_t::boolean: return py::bool_(j.get<bool>());
        case semih::json::value_t::number_integer: return py::int_(j.get<long long>());
        case semih::json::value_t::number_unsigned:
            return py::int_(j.get<unsigned long long>());
        case semih::json::value_t::number_float: return py::float_(j.get<double>());
        default: return py::none();
    }
}

py::tuple region_to_py(const semih::ConvexRegion& r) {
    return py::make_tuple(r.angles, r.support, r.boundary);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "semi-Hilbertian operator invariants (weighted numerical ranges, "
              "maximal ranges, centers of mass)";

    m.def("seminorm",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::a_op_seminorm(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"), "operator seminorm induced by the weight A");

    m.def("numerical_radius",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::a_numerical_radius(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"));

    m.def("spectral_radius",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::a_spectral_radius(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"));

    m.def("omega_max",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::omega_max(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"), "largest modulus over the maximal numerical range");

    m.def("m_max",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::m_max(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"), "smallest modulus over the maximal numerical range");

    m.def("is_a_bounded",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              const auto geom = semih::build_geometry(A);
              const auto chk = semih::is_a_bounded(T, geom);
              return py::make_tuple(chk.bounded, chk.residual);
          },
          py::arg("T"), py::arg("A"));

    m.def("reduced",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::reduce(bind_op(T, A)).mat;
          },
          py::arg("T"), py::arg("A"), "reduced operator on the range space of A");

    m.def("a_adjoint",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::a_adjoint(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"));

    m.def("numerical_range",
          [](const semih::Matrix& T, const semih::Matrix& A, int K) {
              return region_to_py(semih::a_numrange(bind_op(T, A), K));
          },
          py::arg("T"), py::arg("A"), py::arg("K") = semih::kGridK,
          "(angles, support, boundary) sample of the weighted numerical range");

    m.def("max_numerical_range",
          [](const semih::Matrix& T, const semih::Matrix& A, int K) {
              return region_to_py(semih::a_max_numrange(bind_op(T, A), K));
          },
          py::arg("T"), py::arg("A"), py::arg("K") = semih::kGridK);

    m.def("center_of_mass",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              const auto mc = semih::center_of_mass(bind_op(T, A));
              py::dict d;
              d["c"] = mc.c;
              d["d"] = mc.d;
              d["formula_d2"] = mc.formula_d2;
              d["gap"] = mc.certified_gap;
              d["iterations"] = mc.iterations;
              return d;
          },
          py::arg("T"), py::arg("A"),
          "minimizer of |T - c|_A over scalars, with diagnostics");

    m.def("distance_formula",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return semih::distance_formula(bind_op(T, A));
          },
          py::arg("T"), py::arg("A"));

    m.def("normaloid",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              const auto v = semih::normaloid_verdict(bind_op(T, A));
              py::dict d;
              d["is_normaloid"] = v.is_normaloid;
              d["inconclusive"] = v.inconclusive;
              py::dict crit;
              for (const auto& [name, c] : v.criteria) {
                  py::dict e;
                  e["lhs"] = c.lhs;
                  e["rhs"] = c.rhs;
                  e["gap"] = c.gap;
                  e["holds"] = c.holds;
                  crit[py::str(name)] = e;
              }
              d["criteria"] = crit;
              return d;
          },
          py::arg("T"), py::arg("A"));

    m.def("verify",
          [](const semih::Matrix& T, const semih::Matrix& A) {
              return json_to_py(semih::report_to_json(semih::verify_instance(T, A)));
          },
          py::arg("T"), py::arg("A"), "full theorem registry for one instance");

    m.def("campaign",
          [](int trials, const std::vector<int>& dims, std::uint64_t seed) {
              return json_to_py(
                  semih::campaign_to_json(semih::campaign(trials, dims, seed)));
          },
          py::arg("trials"), py::arg("dims"), py::arg("seed") = 42,
          "random-instance verification campaign");

    m.def("svg",
          [](const semih::Matrix& T, const semih::Matrix& A, int K) {
              const auto op = bind_op(T, A);
              const auto s = semih::summarize_ranges(op, K);
              const auto mc = semih::center_of_mass(op);
              return semih::regions_svg(s.wa, s.wmax, mc.c, s.norm_a);
          },
          py::arg("T"), py::arg("A"), py::arg("K") = semih::kGridK,
          "SVG rendering of the two ranges, the center and the norm circle");

    py::register_exception<semih::NotABounded>(m, "NotABoundedError");
    py::register_exception<semih::NotHermitian>(m, "NotHermitianError");
    py::register_exception<semih::NotPositive>(m, "NotPositiveError");
    py::register_exception<semih::ZeroWeight>(m, "ZeroWeightError");
    py::register_exception<semih::RangeNotIncluded>(m, "RangeNotIncludedError");
}
