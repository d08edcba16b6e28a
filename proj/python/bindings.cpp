#include "cli.hpp"

#include "essig/checks.hpp"
#include "essig/disk.hpp"
#include "essig/errors.hpp"
#include "essig/interval.hpp"
#include "essig/io.hpp"
#include "essig/lattice.hpp"
#include "essig/mc.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace essig;

namespace {

py::object to_fraction(const Rational& q) {
    static py::object fraction = py::module_::import("fractions").attr("Fraction");
    return fraction(py::str(to_string(q)));
}

Rational from_python(const py::handle& obj) {
    if (py::isinstance<py::bool_>(obj)) throw UsageError("booleans are not rational numbers");
    if (py::isinstance<py::int_>(obj)) return parse_rational(py::str(obj).cast<std::string>());
    if (py::isinstance<py::float_>(obj)) {
        // Exact binary value of the double.
        Rational q(obj.cast<double>());
        return q;
    }
    if (py::hasattr(obj, "numerator") && py::hasattr(obj, "denominator")) {
        Rational q(mpz_class(py::str(obj.attr("numerator")).cast<std::string>()),
                   mpz_class(py::str(obj.attr("denominator")).cast<std::string>()));
        q.canonicalize();
        return q;
    }
    return parse_rational(py::str(obj).cast<std::string>());
}

template <Scalar T>
py::object scalar_out(const T& v) {
    if constexpr (std::is_same_v<T, Rational>)
        return to_fraction(v);
    else
        return py::float_(v);
}

template <Scalar T>
T scalar_in(const py::handle& obj) {
    if constexpr (std::is_same_v<T, Rational>)
        return from_python(obj);
    else
        return obj.cast<double>();
}

template <Scalar T>
py::dict tensor_dict(const TruncatedTensor<T>& t) {
    py::dict out;
    for (int k = 0; k <= t.truncation(); ++k) {
        auto level = t.level(k);
        for (std::size_t i = 0; i < level.size(); ++i)
            if (level[i] != 0) out[py::str(Word::from_index(i, k, t.dimension()).str())] = scalar_out(level[i]);
    }
    return out;
}

py::dict poly_dict(const BivarPoly& p) {
    py::dict out;
    for (const auto& [m, c] : p.terms()) out[py::make_tuple(m.e1, m.e2)] = to_fraction(c);
    return out;
}

template <Scalar T>
void bind_tensor(py::module_& m, const char* name) {
    using TT = TruncatedTensor<T>;
    py::class_<TT>(m, name)
        .def(py::init<int, int>(), py::arg("dimension"), py::arg("truncation"))
        .def_static("zero", &TT::zero, py::arg("dimension"), py::arg("truncation"))
        .def_static("unit", &TT::unit, py::arg("dimension"), py::arg("truncation"))
        .def_property_readonly("dimension", &TT::dimension)
        .def_property_readonly("truncation", &TT::truncation)
        .def("__getitem__", [](const TT& t, const std::string& w) { return scalar_out(t[Word::parse(w)]); })
        .def("__setitem__",
             [](TT& t, const std::string& w, const py::handle& v) { t[Word::parse(w)] = scalar_in<T>(v); })
        .def("level",
             [](const TT& t, int k) {
                 if (k < 0 || k > t.truncation()) throw UsageError("level out of range");
                 py::list out;
                 for (const auto& c : t.level(k)) out.append(scalar_out(c));
                 return out;
             })
        .def("to_dict", &tensor_dict<T>)
        .def("to_json", [](const TT& t) { return io::to_json(t).dump(); })
        .def("__add__", [](const TT& a, const TT& b) { return a + b; })
        .def("__sub__", [](const TT& a, const TT& b) { return a - b; })
        .def("__mul__", [](const TT& a, const TT& b) { return mul(a, b); })
        .def("scale", [](const TT& a, const py::handle& l) { return scale(scalar_in<T>(l), a); })
        .def("__eq__", [](const TT& a, const TT& b) { return a == b; })
        .def("inverse", [](const TT& a) { return inverse(a); })
        .def("dilate", [](const TT& a, const py::handle& eps) { return dilate(scalar_in<T>(eps), a); })
        .def("rotate",
             [](const TT& a, const std::vector<std::vector<py::object>>& r) {
                 if (r.size() != 2 || r[0].size() != 2 || r[1].size() != 2) throw UsageError("rotation must be 2x2");
                 Matrix2<T> mat{{{scalar_in<T>(r[0][0]), scalar_in<T>(r[0][1])},
                                 {scalar_in<T>(r[1][0]), scalar_in<T>(r[1][1])}}};
                 return rotate(mat, a);
             })
        .def("homogeneous_norm", [](const TT& a) { return homogeneous_norm(a); })
        .def("__repr__", [name](const TT& t) {
            return std::string("<") + name + " d=" + std::to_string(t.dimension()) +
                   " N=" + std::to_string(t.truncation()) + ">";
        });
}

template <Scalar T>
TruncatedTensor<T> exp_increment_py(const std::vector<py::object>& v, int truncation) {
    std::vector<T> vals;
    for (const auto& x : v) vals.push_back(scalar_in<T>(x));
    return exp_increment<T>(vals, truncation);
}

template <Scalar T>
TruncatedTensor<T> signature_py(const std::vector<std::vector<py::object>>& points, int truncation) {
    std::vector<std::vector<T>> pts;
    for (const auto& p : points) {
        std::vector<T> row;
        for (const auto& x : p) row.push_back(scalar_in<T>(x));
        pts.push_back(std::move(row));
    }
    return mc::signature_of_points<T>(pts, truncation);
}

template <Scalar T>
py::dict lattice_py(int dimension, const std::vector<lattice::Point>& interior, int truncation) {
    auto domain = std::make_shared<const lattice::LatticeDomain>(dimension, interior);
    const auto field = lattice::expected_signature_lattice<T>(domain, truncation);
    py::dict out;
    for (std::size_t i = 0; i < domain->closure_size(); ++i)
        out[py::tuple(py::cast(domain->point(i)))] = field.at(i);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Expected signatures of stopped Brownian motion and simple random walks";

    py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<SingularElement>(m, "SingularElement", PyExc_ZeroDivisionError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);

    bind_tensor<Rational>(m, "RationalTensor");
    bind_tensor<double>(m, "FloatTensor");

    m.def("exp_increment", &exp_increment_py<Rational>, py::arg("v"), py::arg("truncation"));
    m.def("exp_increment_float", &exp_increment_py<double>, py::arg("v"), py::arg("truncation"));
    m.def("signature", &signature_py<Rational>, py::arg("points"), py::arg("truncation"),
          "Exact signature of the piecewise-linear path through `points`.");
    m.def("signature_float", &signature_py<double>, py::arg("points"), py::arg("truncation"));

    py::class_<PolyTensor>(m, "PolyTensor")
        .def_property_readonly("truncation", &PolyTensor::truncation)
        .def("__getitem__", [](const PolyTensor& p, const std::string& w) { return poly_dict(p[Word::parse(w)]); })
        .def("to_json", [](const PolyTensor& p) { return io::to_json(p).dump(); })
        .def("evaluate",
             [](const PolyTensor& p, const py::handle& z1, const py::handle& z2) {
                 return evaluate_phi<Rational>(p, from_python(z1), from_python(z2));
             })
        .def("evaluate_float",
             [](const PolyTensor& p, double z1, double z2) { return evaluate_phi<double>(p, z1, z2); })
        .def("transport",
             [](const PolyTensor& p, std::array<py::object, 2> c, const py::handle& r, std::array<py::object, 2> z) {
                 return transport<Rational>(p, {from_python(c[0]), from_python(c[1])}, from_python(r),
                                            {from_python(z[0]), from_python(z[1])});
             })
        .def("residual_check", [](const PolyTensor& p, int n) { return residual_check(p, n); })
        .def("boundary_factor_check", [](const PolyTensor& p, int n) { return boundary_factor_check(p, n); });

    m.def("disk_expected_signature", &expected_signature_disk, py::arg("truncation"));
    m.def(
        "poisson_solve_disk",
        [](const py::dict& f) {
            BivarPoly p;
            for (const auto& [key, value] : f) {
                const auto e = key.cast<std::pair<int, int>>();
                p.add_term({e.first, e.second}, from_python(value));
            }
            return poly_dict(poisson_solve_disk(p));
        },
        py::arg("f"), "Solve Laplacian(F) = f with F = 0 on the unit circle; polynomials as {(e1, e2): coeff}.");

    m.def(
        "interval_levels",
        [](int truncation) {
            py::list out;
            for (const auto& p : interval::ode_recursion(truncation)) {
                py::list coeffs;
                for (const auto& c : p.coeffs()) coeffs.append(to_fraction(c));
                out.append(coeffs);
            }
            return out;
        },
        py::arg("truncation"));

    m.def("lattice_expected_signature", &lattice_py<Rational>, py::arg("dimension"), py::arg("interior"),
          py::arg("truncation"));
    m.def("lattice_expected_signature_float", &lattice_py<double>, py::arg("dimension"), py::arg("interior"),
          py::arg("truncation"));

    m.def(
        "mc_estimate",
        [](std::array<double, 2> z, std::array<double, 2> center, double radius, int truncation, std::size_t paths,
           double dt, std::uint64_t seed, std::size_t batch_size, unsigned threads) {
            mc::McOptions opt{paths, dt, seed, batch_size, threads};
            const auto est = [&] {
                py::gil_scoped_release release;
                return mc::estimate_phi(z, mc::Disk{center, radius}, truncation, opt);
            }();
            py::dict out;
            out["mean"] = est.mean;
            out["standard_error"] = est.standard_error;
            out["count"] = est.count;
            out["seed"] = est.seed;
            out["dt"] = est.dt;
            out["max_quadratic_defect"] = est.max_quadratic_defect;
            return out;
        },
        py::arg("z"), py::arg("center") = std::array<double, 2>{0.0, 0.0}, py::arg("radius") = 1.0,
        py::arg("truncation") = 4, py::arg("paths") = 1000, py::arg("dt") = 1e-3, py::arg("seed") = 0,
        py::arg("batch_size") = 1000, py::arg("threads") = 1);

    m.def("mean_value_check", &mc::mean_value_check, py::arg("z"), py::arg("eps"), py::arg("phi"),
          py::arg("nodes") = 1024);

    m.def(
        "run_check",
        [](const std::string& suite, int truncation, std::size_t paths, std::uint64_t seed) {
            const auto report = checks::run_check(suite, checks::CheckConfig{truncation, paths, seed, 1});
            return py::make_tuple(report.passed, report.details);
        },
        py::arg("suite"), py::arg("truncation") = 6, py::arg("paths") = 100, py::arg("seed") = 0);

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command line in-process; returns (exit code, stdout, stderr).");
}
