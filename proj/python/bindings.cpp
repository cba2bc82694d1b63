#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <map>
#include <string>

#include "perhamm/errors.hpp"
#include "perhamm/expr.hpp"
#include "perhamm/kernels.hpp"
#include "perhamm/problem.hpp"
#include "perhamm/report.hpp"
#include "perhamm/solver.hpp"
#include "perhamm/spectral.hpp"

namespace py = pybind11;
using namespace perhamm;

namespace {

// Symbol names such as "u1" or "u2'''" to (component, level).
Symbol symbol_of(const std::string& name) {
    Expr e = parse(name);
    const auto* sym = std::get_if<ast::Sym>(&e.node());
    if (sym == nullptr) {
        throw ArgumentError("'" + name + "' is not a component symbol");
    }
    return sym->symbol;
}

std::string check(const ProblemFile& problem, const std::string& mode) {
    SystemSpec spec = build_system(problem);
    nlohmann::json doc;
    if (mode == "existence") {
        ExistenceHypotheses hyp = build_existence(problem, spec);
        doc = to_json(check_existence(spec, hyp));
        doc["hypotheses"] = {{"r", hyp.r}, {"R", hyp.R}, {"delta", hyp.delta}, {"i0", hyp.i0}};
    } else if (mode == "nonexistence") {
        doc = to_json(check_nonexistence(spec, build_nonexistence(problem)));
    } else {
        throw ArgumentError("mode must be 'existence' or 'nonexistence'");
    }
    return doc.dump();
}

std::string solve(const ProblemFile& problem, bool tables) {
    SystemSpec spec = build_system(problem);
    ExistenceHypotheses hyp;
    if (problem.existence) {
        hyp = build_existence(problem, spec);
    } else {
        hyp.r = 1e-3;
    }
    SolveOptions options{problem.numerics.resolution, problem.numerics.tol, problem.numerics.max_iter,
                         problem.numerics.damping};
    return to_json(solve_multistart(spec, hyp, problem.numerics.starts, problem.numerics.seed, options), tables)
        .dump();
}

}  // namespace

PYBIND11_MODULE(_perhamm, m) {
    m.doc() = "Native core of perhamm";

    py::register_exception<ProblemFileError>(m, "ProblemFileError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ArithmeticError);
    py::register_exception<DegenerateKernelError>(m, "DegenerateKernelError", PyExc_ArithmeticError);
    py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);
    py::register_exception<DivergenceError>(m, "DivergenceError", PyExc_RuntimeError);
    py::register_exception<ArgumentError>(m, "ArgumentError", PyExc_ValueError);
    py::register_exception<LookupError>(m, "LookupError", PyExc_KeyError);

    py::class_<Numerics>(m, "Numerics")
        .def_readwrite("resolution", &Numerics::resolution)
        .def_readwrite("tol", &Numerics::tol)
        .def_readwrite("max_iter", &Numerics::max_iter)
        .def_readwrite("damping", &Numerics::damping)
        .def_readwrite("starts", &Numerics::starts)
        .def_readwrite("seed", &Numerics::seed);

    py::class_<ProblemFile>(m, "Problem")
        .def(py::init([](const std::string& text) { return parse_problem(text); }), py::arg("text"))
        .def_static("load", [](const std::string& path) { return load_problem(path); }, py::arg("path"))
        .def_static("bundled", [](const std::string& name) { return parse_problem(bundled_problem(name)); },
                    py::arg("name"))
        .def_readwrite("title", &ProblemFile::title)
        .def_readwrite("numerics", &ProblemFile::numerics)
        .def_property_readonly("n", [](const ProblemFile& p) { return p.components.size(); })
        .def("set_lambda",
             [](ProblemFile& p, int component, double value) {
                 if (component < 1 || component > static_cast<int>(p.components.size())) {
                     throw ArgumentError("component index out of range");
                 }
                 p.components[component - 1].lambda = value;
             })
        .def("emit", &emit_problem)
        .def("constants_json",
             [](const ProblemFile& p) { return constants_report(p, build_system(p)).dump(); })
        .def("spectral_json", [](const ProblemFile& p) { return spectral_report(p, build_system(p)).dump(); })
        .def("check_json", &check, py::arg("mode"))
        .def("solve_json", &solve, py::arg("tables") = false)
        .def("__eq__", [](const ProblemFile& a, const ProblemFile& b) { return a == b; });

    m.def("bundled_problem_names", &bundled_problem_names);
    m.def("builtin_kernel_names", &builtin_kernel_names);
    m.def(
        "kernel_constant",
        [](const std::string& kernel, int level, int resolution) {
            return kernel_constant(builtin_kernel(kernel), level, resolution);
        },
        py::arg("kernel"), py::arg("level"), py::arg("resolution") = 200);
    m.def(
        "characteristic_value",
        [](const std::string& kernel, int resolution) {
            return spectral_radius(builtin_kernel(kernel), resolution).characteristic_value;
        },
        py::arg("kernel"), py::arg("resolution") = 200);
    m.def(
        "evaluate",
        [](const std::string& text, double t, const std::map<std::string, double>& values) {
            PointValues v;
            for (const auto& [name, x] : values) {
                v.set(symbol_of(name), x);
            }
            return eval_point(parse(text), t, v);
        },
        py::arg("expr"), py::arg("t") = 0.0, py::arg("values") = std::map<std::string, double>{});
    m.def(
        "enclose",
        [](const std::string& text, std::pair<double, double> t,
           const std::map<std::string, std::pair<double, double>>& boxes) {
            BoxValues b;
            for (const auto& [name, side] : boxes) {
                b.set(symbol_of(name), Interval{side.first, side.second});
            }
            Interval r = eval_interval(parse(text), Interval{t.first, t.second}, b);
            return std::make_pair(r.lo, r.hi);
        },
        py::arg("expr"), py::arg("t") = std::make_pair(0.0, 1.0),
        py::arg("boxes") = std::map<std::string, std::pair<double, double>>{});
    m.def("canonical", [](const std::string& text) { return to_string(parse(text)); }, py::arg("expr"));
}
