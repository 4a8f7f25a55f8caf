// pybind11 module exposing the main operations: building the three surface
// families, code extraction and analysis, pencil classification, the
// parameter tables, and the order-5 automorphism pipeline.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <variant>

#include "dpcodes/accept.hpp"
#include "dpcodes/cremona.hpp"
#include "dpcodes/io.hpp"

namespace py = pybind11;
using namespace dpc;

namespace {

FieldCtxPtr field(uint64_t q) {
    auto [p, m] = split_prime_power(q);
    return FieldCtx::make(p, m);
}

struct PyCode {
    LinearCode code;

    size_t n() const { return code.n; }
    size_t k() const { return reduce(code).dimension; }
    int64_t dist(int workers) const { return min_distance(code, workers); }
    std::map<int64_t, int64_t> wdist(int workers) const { return weight_distribution(code, workers); }
    std::vector<std::vector<std::string>> rows() const {
        std::vector<std::vector<std::string>> out(code.k);
        for (size_t i = 0; i < code.k; ++i)
            for (size_t j = 0; j < code.n; ++j) out[i].push_back(code.at(i, j).to_text());
        return out;
    }
};

struct PyModel {
    AnyModel model;

    std::string kind() const {
        if (std::holds_alternative<PlaneModelDP6>(model)) return "dp6";
        if (std::holds_alternative<PlaneModelDP5>(model)) return "dp5";
        return "dp4";
    }
    uint64_t q() const {
        return std::visit([](const auto& m) { return m.q_ctx->size; }, model);
    }
    int64_t points() const {
        if (std::holds_alternative<PlaneModelDP6>(model))
            return static_cast<int64_t>(std::get<PlaneModelDP6>(model).off_points.size()) + 2;
        if (std::holds_alternative<PlaneModelDP5>(model)) {
            uint64_t qq = std::get<PlaneModelDP5>(model).q_ctx->size;
            return static_cast<int64_t>(qq * qq) + 1;
        }
        return static_cast<int64_t>(std::get<QuadricModelDP4>(model).points.size());
    }
    std::string type() const {
        if (std::holds_alternative<PlaneModelDP6>(model)) return "6_6";
        if (std::holds_alternative<PlaneModelDP5>(model)) return "5_7";
        return std::get<QuadricModelDP4>(model).type_label;
    }
    PyCode code() const {
        if (std::holds_alternative<PlaneModelDP6>(model))
            return {dp6_code(std::get<PlaneModelDP6>(model))};
        if (std::holds_alternative<PlaneModelDP5>(model))
            return {dp5_code(std::get<PlaneModelDP5>(model))};
        return {dp4_code(std::get<QuadricModelDP4>(model))};
    }
    std::string to_json() const {
        return std::visit([](const auto& m) { return model_to_json(m); }, model);
    }
};

PyModel py_build(int degree, uint64_t q, uint64_t seed, const std::string& type) {
    auto ctx = field(q);
    if (degree == 6) return {build_dp6(ctx, seed)};
    if (degree == 5) return {build_dp5(ctx, seed)};
    if (degree == 4) return {flynn_build(ctx, type, seed)};
    throw std::invalid_argument("degree must be 4, 5 or 6");
}

PyModel py_flynn_explicit(uint64_t q, const std::vector<std::vector<int64_t>>& factors,
                          const std::string& delta) {
    auto ctx = field(q);
    std::vector<Poly> fs;
    for (const auto& f : factors) fs.push_back(Poly::from_ints(ctx, f));
    return {flynn_build_explicit(ctx, fs, delta)};
}

py::dict py_pencil_file(const std::string& path) {
    auto qp = load_quadric_pair(path);
    py::dict out;
    out["type"] = verify_pencil_type(qp.Qa, qp.Qb);
    auto pts = enumerate_surface_points({qp.Qa, qp.Qb}, qp.ctx, 4);
    std::vector<std::vector<FieldElem>> rows(5);
    for (int i = 0; i < 5; ++i)
        for (const auto& p : pts) rows[i].push_back(p.coords()[i]);
    auto code = LinearCode::from_rows(qp.ctx, rows, "pencil");
    out["n"] = code.n;
    out["k"] = reduce(code).dimension;
    out["d"] = min_distance(code);
    return out;
}

py::list py_tables(int degree) {
    py::list out;
    for (const auto& t : type_table(degree)) {
        py::dict e;
        e["label"] = t.label;
        e["trace"] = t.trace;
        e["picard_rank"] = t.picard_rank;
        e["eigenvalues"] = t.eigenvalues;
        if (!t.pencil.empty()) e["pencil"] = t.pencil;
        if (!t.weyl_class.empty()) e["weyl_class"] = t.weyl_class;
        out.append(e);
    }
    return out;
}

py::dict py_auto5(uint64_t q, uint64_t seed) {
    auto m = build_dp5(field(q), seed);
    auto code = dp5_code(m);
    auto d = synthesize_order5(m);
    auto mono = induced_monomial(d.A, code);
    py::dict out;
    out["order"] = map_order(mono);
    out["automorphism"] = is_automorphism(code, mono);
    std::vector<std::vector<std::string>> rows(6);
    for (size_t i = 0; i < 6; ++i)
        for (size_t j = 0; j < 6; ++j) rows[i].push_back(d.A.at(i, j).to_text());
    out["matrix"] = rows;
    out["permutation"] = mono.perm;
    return out;
}

py::tuple py_expected(const std::string& label, uint64_t q) {
    auto p = expected_parameters(label, q);
    return py::make_tuple(p.n, p.k, p.d_lower);
}

}  // namespace

PYBIND11_MODULE(_dpcodes, m) {
    m.doc() = "anticanonical codes from del Pezzo surfaces of Picard rank one";

    py::class_<PyCode>(m, "Code")
        .def_property_readonly("n", &PyCode::n)
        .def_property_readonly("k", &PyCode::k)
        .def("min_distance", &PyCode::dist, py::arg("workers") = 1)
        .def("weight_distribution", &PyCode::wdist, py::arg("workers") = 1)
        .def("rows", &PyCode::rows);

    py::class_<PyModel>(m, "Model")
        .def_property_readonly("kind", &PyModel::kind)
        .def_property_readonly("q", &PyModel::q)
        .def_property_readonly("points", &PyModel::points)
        .def_property_readonly("type", &PyModel::type)
        .def("code", &PyModel::code)
        .def("to_json", &PyModel::to_json);

    m.def("build", &py_build, py::arg("degree"), py::arg("q"), py::arg("seed") = 1,
          py::arg("type") = "4_3",
          "Build a rank-one del Pezzo model of the given degree over GF(q).");
    m.def("flynn_explicit", &py_flynn_explicit, py::arg("q"), py::arg("factors"),
          py::arg("delta") = "x",
          "Degree-4 model from explicit factor polynomials (constant term first).");
    m.def("pencil_type_file", &py_pencil_file, py::arg("path"),
          "Classify a two-quadric fixture file and report its code parameters.");
    m.def("tables", &py_tables, py::arg("degree"), "Frobenius type table for a degree.");
    m.def("auto5", &py_auto5, py::arg("q"), py::arg("seed") = 1,
          "Synthesize and verify the order-5 automorphism of the degree-5 code.");
    m.def("expected_parameters", &py_expected, py::arg("type"), py::arg("q"));
}
