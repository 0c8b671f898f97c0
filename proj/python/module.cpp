#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "autoseq/analysis.hpp"
#include "autoseq/checks.hpp"
#include "autoseq/constructions.hpp"
#include "autoseq/expsum.hpp"
#include "autoseq/graph.hpp"
#include "autoseq/io.hpp"
#include "autoseq/sequence.hpp"

namespace py = pybind11;
using namespace autoseq;

PYBIND11_MODULE(autoseq, m) {
    m.doc() = "automatic sequences: constructions, exponential sums, balance "
              "certificates";

    py::class_<Automaton>(m, "Automaton")
        .def_property_readonly("base", [](const Automaton& a) { return a.base; })
        .def_property_readonly("num_states", &Automaton::num_states)
        .def_property_readonly("normalized",
                               [](const Automaton& a) { return a.normalized; })
        .def("eval", [](const Automaton& a, std::uint64_t n) { return a.eval(n); })
        .def("values",
             [](const Automaton& a, std::uint64_t n) {
                 return sequence_values(a, n);
             })
        .def("__repr__", [](const Automaton& a) {
            return "<Automaton base=" + std::to_string(a.base) + " states=" +
                   std::to_string(a.num_states()) + ">";
        });

    m.def("builtin_names", [] { return builtin_names(); });
    m.def("builtin",
          [](const std::string& name) { return make_builtin(name).automaton; });
    m.def("parse", &parse_automaton_string, py::arg("text"));
    m.def("parse_file", &parse_automaton_file, py::arg("path"));
    m.def("emit", &emit_automaton);

    m.def("minimize", &minimize);
    m.def("base_change", &base_change, py::arg("automaton"), py::arg("l"));
    m.def("restrict_ap", &restrict_ap, py::arg("automaton"), py::arg("q"),
          py::arg("r"));
    m.def("same_sequence", &same_sequence);

    m.def(
        "partial_sum",
        [](const Automaton& a, std::uint64_t N) {
            return partial_sum(a, N).approx;
        },
        py::arg("automaton"), py::arg("N"),
        "exact partial sum, returned as a complex number");

    m.def(
        "is_balanced",
        [](const Automaton& a) {
            BalanceCertificate c = is_balanced(a);
            py::dict d;
            d["balanced"] = c.balanced;
            d["exact"] = c.exact;
            d["witness"] = c.witness;
            return d;
        },
        py::arg("automaton"));

    m.def(
        "is_totally_balanced",
        [](const Automaton& a, long q_bound) {
            TotalBalanceCertificate c = is_totally_balanced(a, q_bound);
            py::dict d;
            d["totally_balanced"] = c.totally_balanced;
            d["witness_q"] = c.witness_q;
            d["witness_r"] = c.witness_r;
            return d;
        },
        py::arg("automaton"), py::arg("q_bound") = 12);

    m.def(
        "exp_sum",
        [](const Automaton& a, double alpha, std::uint64_t N) {
            return exp_sum_interval(a, alpha, N).mean;
        },
        py::arg("automaton"), py::arg("alpha"), py::arg("N"),
        "E_{n<N} a(n) e(n alpha) by the interval method");

    m.def(
        "sup_linear",
        [](const Automaton& a, std::uint64_t N, double target_error) {
            SupResult s = sup_linear(a, N, target_error);
            py::dict d;
            d["alpha"] = s.alpha;
            d["value"] = s.value;
            d["err"] = s.err;
            return d;
        },
        py::arg("automaton"), py::arg("N"), py::arg("target_error") = 1e-4);

    m.def(
        "frequencies",
        [](const Automaton& a, long q) {
            FrequencyTable f = frequencies(a, q);
            return f.pi_approx;
        },
        py::arg("automaton"), py::arg("q"),
        "state-visit frequencies pi[state][residue]");

    m.def("cycle_gcd",
          [](const Automaton& a) { return cycle_gcd(a, 0); });

    m.def(
        "run_checks",
        [](std::uint64_t seed) {
            CheckSuiteReport rep = run_invariant_suite(seed);
            py::list out;
            for (const auto& r : rep.results) {
                py::dict d;
                d["name"] = r.name;
                d["passed"] = r.passed;
                d["detail"] = r.detail;
                out.append(d);
            }
            return out;
        },
        py::arg("seed") = 0);
}
