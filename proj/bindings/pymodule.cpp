#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tslab/json_io.hpp"
#include "tslab/lab.hpp"

namespace py = pybind11;
using namespace tslab;
using nlohmann::json;

namespace {

long long to_ll(const Int& v) { return v.convert_to<long long>(); }

std::vector<Int> to_ints(const std::vector<long long>& xs) {
    return std::vector<Int>(xs.begin(), xs.end());
}

py::dict graded_dict(const GradedModule& h) {
    py::dict d;
    for (const auto& [n, m] : h.parts) {
        std::vector<long long> fs;
        for (const Int& f : m.canonical().factors) fs.push_back(to_ll(f));
        d[py::int_(n)] = fs;
    }
    return d;
}

std::vector<long long> module_factors(const FinModule& m) {
    std::vector<long long> fs;
    for (const Int& f : m.canonical().factors) fs.push_back(to_ll(f));
    return fs;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "t-structure verification laboratory over Z/n";
    m.attr("__version__") = TSLAB_VERSION;

    py::register_exception<domain_error>(m, "DomainError");
    py::register_exception<internal_error>(m, "InternalError");

    py::class_<CyclicRing>(m, "Ring")
        .def_property_readonly("modulus", [](const CyclicRing& r) { return to_ll(r.modulus); })
        .def_property_readonly("primes",
                               [](const CyclicRing& r) {
                                   std::vector<std::pair<long long, int>> ps;
                                   for (const auto& [p, e] : r.primes)
                                       ps.emplace_back(to_ll(p), static_cast<int>(e));
                                   return ps;
                               })
        .def("divisors",
             [](const CyclicRing& r) {
                 std::vector<long long> ds;
                 for (const Int& d : nonunit_divisors(r)) ds.push_back(to_ll(d));
                 return ds;
             })
        .def("__eq__", [](const CyclicRing& a, const CyclicRing& b) { return a == b; })
        .def("__repr__", [](const CyclicRing& r) { return "Ring(Z/" + r.modulus.str() + ")"; });

    py::class_<FinModule>(m, "Module")
        .def_property_readonly("factors", &module_factors)
        .def_property_readonly("ring", [](const FinModule& m_) { return m_.ring; })
        .def("order", [](const FinModule& m_) { return to_ll(m_.order()); })
        .def("is_zero", &FinModule::is_zero)
        .def("to_json", [](const FinModule& m_) { return to_json(m_).dump(); })
        .def("__eq__",
             [](const FinModule& a, const FinModule& b) { return isomorphic(a, b); })
        .def("__repr__",
             [](const FinModule& m_) { return "Module" + to_json(m_.canonical()).dump(); });

    py::class_<Complex>(m, "Complex")
        .def_property_readonly("min_degree",
                               [](const Complex& x) { return x.min_degree; })
        .def_property_readonly("top_degree", &Complex::top_degree)
        .def("is_zero", &Complex::is_zero)
        .def("to_json", [](const Complex& x) { return to_json(x).dump(); })
        .def("__eq__", [](const Complex& a, const Complex& b) { return a == b; })
        .def("__repr__", [](const Complex& x) { return "Complex" + to_json(x).dump(); });

    py::class_<ThomasonFiltration>(m, "Filtration")
        .def("to_json", [](const ThomasonFiltration& f) { return to_json(f).dump(); })
        .def("__eq__",
             [](const ThomasonFiltration& a, const ThomasonFiltration& b) { return a == b; })
        .def("__repr__",
             [](const ThomasonFiltration& f) { return "Filtration" + to_json(f).dump(); });

    m.def("ring", [](long long n) { return make_ring(n); }, py::arg("modulus"));
    m.def("module",
          [](const CyclicRing& r, const std::vector<long long>& factors) {
              return make_module(r, to_ints(factors));
          },
          py::arg("ring"), py::arg("factors"));
    m.def("parse_complex",
          [](const CyclicRing& r, const std::string& text) { return parse_complex_text(r, text); },
          py::arg("ring"), py::arg("text"), "JSON literal or stalk/koszul/K shorthand");
    m.def("parse_complex_list",
          [](const CyclicRing& r, const std::string& text) { return parse_complex_list(r, text); },
          py::arg("ring"), py::arg("text"));
    m.def("parse_filtration",
          [](const CyclicRing& r, const std::string& text) {
              return filtration_from_json(r, json::parse(text));
          },
          py::arg("ring"), py::arg("text"));

    m.def("koszul",
          [](const CyclicRing& r, const std::vector<long long>& xs) {
              return koszul(r, to_ints(xs));
          },
          py::arg("ring"), py::arg("elements"));
    m.def("cech",
          [](const CyclicRing& r, const std::vector<long long>& xs) {
              return cech_tilde(r, to_ints(xs));
          },
          py::arg("ring"), py::arg("elements"));
    m.def("stalk",
          [](const CyclicRing& r, long long d, int degree) {
              return stalk_complex(r, cyclic_module(r, Int(d)), degree);
          },
          py::arg("ring"), py::arg("divisor"), py::arg("degree") = 0);
    m.def("shift", [](const Complex& x, int k) { return shift(x, k); }, py::arg("complex"),
          py::arg("k"));
    m.def("tensor",
          [](const Complex& x, const Complex& y) { return tensor_complexes(x, y); },
          py::arg("x"), py::arg("y"));
    m.def("compact_dual", [](const Complex& x) { return compact_dual(x); }, py::arg("complex"));
    m.def("cohomology", [](const Complex& x) { return graded_dict(cohomology(x)); },
          py::arg("complex"), "degree -> invariant factors of H^degree");
    m.def("hom_derived",
          [](const Complex& x, const Complex& y, int k) {
              return module_factors(hom_derived(x, y, k));
          },
          py::arg("x"), py::arg("y"), py::arg("k") = 0);
    m.def("is_quasi_iso_trivial", [](const Complex& x) { return is_acyclic(x); },
          py::arg("complex"));

    m.def("in_aisle",
          [](const Complex& x, const ThomasonFiltration& f) { return in_aisle(x, f).ok; },
          py::arg("complex"), py::arg("filtration"));
    m.def("in_coaisle",
          [](const Complex& x, const ThomasonFiltration& f) {
              bool cech_ok = in_coaisle_cech(x, f).ok;
              bool hom_ok = in_coaisle_hom(x, f).ok;
              bool red_ok = in_coaisle_reduced(x, f);
              py::dict d;
              d["cech"] = cech_ok;
              d["hom"] = hom_ok;
              d["reduced"] = red_ok;
              d["agreement"] = cech_ok == hom_ok && hom_ok == red_ok;
              return d;
          },
          py::arg("complex"), py::arg("filtration"), "all three coaisle oracle verdicts");
    m.def("in_co_t_coaisle",
          [](const Complex& x, const ThomasonFiltration& f) { return in_co_t_coaisle(x, f); },
          py::arg("complex"), py::arg("filtration"));

    m.def("truncate",
          [](const Complex& x, const ThomasonFiltration& f) {
              TruncationTriangle t = truncate_t(x, f);
              py::dict d;
              d["u_part"] = t.u_part;
              d["v_part"] = t.v_part;
              d["u_ok"] = t.u_ok;
              d["v_ok"] = t.v_ok;
              d["triangle_ok"] = t.triangle_ok;
              return d;
          },
          py::arg("complex"), py::arg("filtration"));
    m.def("classify",
          [](const CyclicRing& r, const std::vector<Complex>& gens) {
              return filtration_of_generators(r, gens);
          },
          py::arg("ring"), py::arg("generators"));
    m.def("generators", [](const ThomasonFiltration& f) { return generators_of(f); },
          py::arg("filtration"));
    m.def("coresolve",
          [](const Complex& x, const ThomasonFiltration& f, int depth) {
              py::list steps;
              for (const CoresolutionStep& s : coresolve_in_coaisle(x, f, depth)) {
                  py::dict d;
                  d["degree"] = s.degree;
                  d["envelope"] = module_factors(s.envelope);
                  d["stalk_ok"] = s.stalk_ok;
                  steps.append(d);
              }
              return steps;
          },
          py::arg("complex"), py::arg("filtration"), py::arg("depth") = 5);
    m.def("enumerate_filtrations",
          [](const CyclicRing& r, int lo, int hi, bool neg_inf, bool pos_inf) {
              return enumerate_filtrations(r, lo, hi, neg_inf, pos_inf);
          },
          py::arg("ring"), py::arg("lo"), py::arg("hi"), py::arg("neg_inf") = false,
          py::arg("pos_inf") = false);
    m.def("random_complex",
          [](const CyclicRing& r, int lo, int hi, std::size_t max_factors, std::uint64_t seed) {
              return random_complex(r, lo, hi, max_factors, seed);
          },
          py::arg("ring"), py::arg("degree_lo") = -2, py::arg("degree_hi") = 1,
          py::arg("max_factors") = 2, py::arg("seed") = 1);

    m.def("run_suite",
          [](const std::string& config_json) {
              SuiteConfig cfg = suite_config_from_json(json::parse(config_json));
              return to_json(run_suite(cfg)).dump();
          },
          py::arg("config_json") = "{}", "run the property suite; returns the report as JSON");
    m.def("suite_property_names", [] { return suite_property_names(); });
    m.def("worked_examples", [] {
        py::list out;
        for (const Fixture& f : worked_examples()) {
            py::dict d;
            d["name"] = f.name;
            d["detail"] = f.detail;
            d["pass"] = f.pass;
            out.append(d);
        }
        return out;
    });
}
