#include "cli.hpp"
#include "cftkit/coset.hpp"
#include "cftkit/error.hpp"
#include "cftkit/json_io.hpp"
#include "cftkit/minimal.hpp"
#include "cftkit/modinv.hpp"
#include "cftkit/sl2.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace cftkit;

namespace {

py::object to_python(const Json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

template <class T>
py::object list_to_python(const std::vector<T>& v) {
    Json arr = Json::array();
    for (const auto& x : v) arr.push_back(to_json(x));
    return to_python(arr);
}

ModularData data_for(const std::string& algebra, long param) {
    const TheoryId t = parse_algebra(algebra, param);
    return t.algebra == Algebra::Sl2 ? sl2_modular_data(param) : minimal_modular_data(param);
}

IntMatrix to_matrix(const std::vector<std::vector<long>>& rows) {
    IntMatrix x = IntMatrix::square(rows.size(), 0);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.size()) throw UsageError("invariant matrix must be square");
        for (std::size_t j = 0; j < rows.size(); ++j) x(i, j) = rows[i][j];
    }
    return x;
}

std::vector<std::string> sl2_labels(const std::vector<long>& v) {
    std::vector<std::string> out;
    for (long x : v) out.push_back(std::to_string(x));
    return out;
}

}  // namespace

PYBIND11_MODULE(_cftkit, m) {
    m.doc() = "Exact modular data, modular invariants and extension catalogs for sl2 and Virasoro minimal models";

    py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const UsageError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });

    m.def("modular_data", [](const std::string& algebra, long param) { return to_python(to_json(data_for(algebra, param))); },
          py::arg("algebra"), py::arg("param"));

    m.def(
        "character",
        [](const std::string& algebra, long param, const std::string& label, int order) {
            const TheoryId t = parse_algebra(algebra, param);
            if (t.algebra == Algebra::Sl2) return to_python(to_json(sl2_character(param, std::stol(label), order)));
            return to_python(to_json(minimal_character(param, parse_kac_label(param, label), order)));
        },
        py::arg("algebra"), py::arg("param"), py::arg("label"), py::arg("order") = kDefaultOrder);

    m.def(
        "enumerate_invariants",
        [](const std::string& algebra, long param, std::optional<long> cap) {
            const ModularData data = data_for(algebra, param);
            EnumerationOptions opts;
            opts.cap = cap;
            std::vector<ModularInvariant> out;
            {
                py::gil_scoped_release release;
                out = enumerate_physical(data, opts);
            }
            return list_to_python(out);
        },
        py::arg("algebra"), py::arg("param"), py::arg("cap") = py::none());

    m.def(
        "expected_invariants",
        [](const std::string& algebra, long param) { return list_to_python(expected_invariants(parse_algebra(algebra, param))); },
        py::arg("algebra"), py::arg("param"));

    m.def(
        "verify_invariant",
        [](const std::string& algebra, long param, const std::vector<std::vector<long>>& matrix) {
            return to_python(to_json(verify_invariant(to_matrix(matrix), data_for(algebra, param))));
        },
        py::arg("algebra"), py::arg("param"), py::arg("matrix"));

    m.def(
        "classify_invariant",
        [](const std::string& algebra, long param, const std::vector<std::vector<long>>& matrix) {
            return classify_invariant(to_matrix(matrix), data_for(algebra, param));
        },
        py::arg("algebra"), py::arg("param"), py::arg("matrix"));

    m.def("gko_decomposition", [](long mm, long n, long eps) { return to_python(to_json(gko_decomposition(mm, n, eps))); },
          py::arg("m"), py::arg("n"), py::arg("eps"));

    m.def(
        "verify_gko", [](long mm, long n, long eps, int order) { return to_python(to_json(verify_gko(mm, n, eps, order))); },
        py::arg("m"), py::arg("n"), py::arg("eps"), py::arg("order") = kDefaultOrder);

    m.def(
        "mirror_extension",
        [](long mm, const std::vector<long>& summands) {
            return to_python(to_json(mirror_extension(mm, make_extension({Algebra::Sl2, mm + 1}, sl2_labels(summands)))));
        },
        py::arg("m"), py::arg("summands"));

    m.def(
        "coset_commutant_extension",
        [](long mm, const std::vector<long>& summands) {
            return to_python(to_json(coset_commutant_extension(make_extension({Algebra::Sl2, mm}, sl2_labels(summands)), mm)));
        },
        py::arg("m"), py::arg("summands"));

    m.def(
        "conformal_embedding",
        [](long k, const std::string& target) {
            if (target != "B2" && target != "G2") throw UsageError("embedding target must be B2 or G2");
            return to_python(to_json(conformal_embedding_check(k, target == "B2" ? kB2 : kG2)));
        },
        py::arg("level"), py::arg("target"));

    m.def(
        "catalog",
        [](const std::string& algebra, long param) { return list_to_python(catalog_extensions(parse_algebra(algebra, param))); },
        py::arg("algebra"), py::arg("param"));

    m.def(
        "classify_preunitary",
        [](const std::string& c, const std::string& summands) {
            const Rational cc = parse_rational(c);
            const long mm = minimal_index_for_central_charge(cc);
            if (mm < 0) throw UsageError("c = " + to_string(cc) + " is not the central charge of a minimal model");
            return to_python(to_json(classify_preunitary(cc, parse_kac_labels(mm, summands))));
        },
        py::arg("c"), py::arg("summands"));

    m.def(
        "classify_affine",
        [](long k, const std::vector<long>& summands) { return to_python(to_json(classify_affine(k, summands))); },
        py::arg("level"), py::arg("summands"));

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            const int code = run_cli(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"));
}
