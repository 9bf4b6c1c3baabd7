// Python bindings for the core operations.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "stabent/dynamics.hpp"
#include "stabent/oracle.hpp"
#include "stabent/protocols.hpp"

namespace py = pybind11;
using namespace stabent;

namespace {

Bipartition cut_from(const StabTableau& t, const std::vector<std::size_t>& a) {
  return Bipartition::from_sites(t.n(), a);
}

StabTableau tableau_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_tableau(in);
}

Circuit circuit_from_text(const std::string& text) {
  std::istringstream in(text);
  return parse_circuit(in);
}

}  // namespace

PYBIND11_MODULE(_stabent, m) {
  m.doc() = "stabilizer entanglement toolbox";

  py::register_exception<InfeasibleError>(m, "InfeasibleError");

  py::class_<CliffordCircuit>(m, "CliffordCircuit")
      .def_readonly("n", &CliffordCircuit::n)
      .def("inverse", &CliffordCircuit::inverse)
      .def("__len__",
           [](const CliffordCircuit& c) { return c.gates.size(); })
      .def("__str__",
           [](const CliffordCircuit& c) { return to_string(c); });

  py::class_<Circuit>(m, "Circuit")
      .def_readonly("n", &Circuit::n)
      .def("__str__", [](const Circuit& c) { return to_string(c); });

  py::class_<StabTableau>(m, "StabTableau")
      .def_static("zero_state", &StabTableau::zero_state)
      .def_static("from_text", &tableau_from_text)
      .def_property_readonly("n", &StabTableau::n)
      .def_property_readonly("nullity", &StabTableau::nullity)
      .def_property_readonly("num_generators", &StabTableau::num_gens)
      .def("generators",
           [](const StabTableau& t) {
             std::vector<std::string> out;
             for (const auto& g : t.gens()) out.push_back(to_string(g));
             return out;
           })
      .def("add_generator",
           [](StabTableau& t, const std::string& p) {
             t.add_generator(parse_pauli(p, t.n()));
           })
      .def("apply",
           [](StabTableau& t, const CliffordCircuit& c) { t.apply(c); })
      .def("apply_text",
           [](StabTableau& t, const std::string& text) {
             Circuit c = circuit_from_text(text);
             for (const auto& op : c.ops) {
               if (op.kind != CircuitOp::Kind::Clifford)
                 throw std::invalid_argument(
                     "apply_text takes Clifford gates only");
               t.apply(op.gate);
             }
           })
      .def("measure_z",
           [](StabTableau& t, std::size_t site, uint64_t seed) {
             Rng rng(seed);
             auto r = t.measure_z(site, &rng);
             return py::make_tuple(r.outcome, r.was_random);
           },
           py::arg("site"), py::arg("seed"))
      .def("entanglement",
           [](const StabTableau& t, const std::vector<std::size_t>& a) {
             return t.stabilizer_entanglement(cut_from(t, a)).value();
           })
      .def("same_group", &StabTableau::same_group)
      .def("__str__", [](const StabTableau& t) { return to_string(t); });

  m.def(
      "random_clifford",
      [](std::size_t n, uint64_t seed) {
        Rng rng(seed);
        return random_clifford(n, rng);
      },
      py::arg("n"), py::arg("seed"));

  m.def("exact_s2",
        [](const std::string& circuit_text, const std::vector<std::size_t>& a,
           uint64_t seed) {
          Circuit c = circuit_from_text(circuit_text);
          if (c.n > kDenseCap)
            throw std::invalid_argument("dense analysis capped at 14 qubits");
          Rng rng(seed);
          DenseState d = simulate_dense(c, rng);
          DopedState ds = extract_doped_decomposition(d);
          return renyi2_exact(ds, Bipartition::from_sites(c.n, a));
        },
        py::arg("circuit"), py::arg("cut_sites"), py::arg("seed"));

  m.def("entropy_interval",
        [](const StabTableau& t, const std::vector<std::size_t>& a) {
          return entropy_interval(t, cut_from(t, a), EntropyClass::AllAlpha);
        });

  m.def("distill",
        [](const StabTableau& t, const std::vector<std::size_t>& a) {
          auto res = synthesize_bipartite_distillation(t, cut_from(t, a));
          return py::make_tuple(res.m_plus, res.pair_sites, res.u_a, res.u_b);
        });

  m.def("dilution_plan",
        [](const StabTableau& t, const std::vector<std::size_t>& a) {
          auto p = dilution_plan(t, cut_from(t, a));
          py::dict d;
          d["ebits"] = p.ebits;
          d["cc_bits"] = p.cc_bits;
          d["teleport_qubits"] = p.teleport_qubits;
          return d;
        });

  m.def("ghz_count",
        [](const StabTableau& t,
           const std::vector<std::vector<std::size_t>>& parts) {
          auto r = ghz_distillable_count(t, parts);
          py::dict d;
          d["count"] = r.p;
          d["e_multi"] = r.e_multi;
          d["tripartite_bell_counts"] = r.tripartite_bell_counts;
          return d;
        });

  m.def("witness_plan",
        [](const StabTableau& t, const std::vector<std::size_t>& a,
           double e_level, double eps, double delta) {
          auto p = witness_plan(t, {cut_from(t, a)}, e_level, eps, delta);
          py::dict d;
          d["m_of_b"] = p.m_of_b;
          d["threshold"] = p.threshold;
          d["delta_margin"] = p.delta_margin;
          d["n_shots"] = p.n_shots;
          d["extrapolated"] = p.extrapolated;
          return d;
        },
        py::arg("tableau"), py::arg("cut_sites"), py::arg("e_level") = 0.0,
        py::arg("eps") = 0.1, py::arg("delta") = 0.05);

  m.def("cool", [](const StabTableau& t, const std::vector<std::size_t>& a) {
    auto r = entanglement_cool(t, cut_from(t, a));
    return py::make_tuple(r.post_e, r.ratio, r.circuit);
  });

  m.def("hybrid_stationary",
        [](std::size_t n, double p_t, double p_m, bool adaptive, double r0,
           bool approx_f) {
          ChainSpec spec{n, p_t, p_m, adaptive, r0, approx_f, 0};
          auto st = hybrid_stationary(spec);
          return py::make_tuple(st.pi, st.mean_nu);
        },
        py::arg("n"), py::arg("p_t") = 0.0, py::arg("p_m") = 0.0,
        py::arg("adaptive") = false, py::arg("r0") = 0.5,
        py::arg("approx_f") = false);

  m.def("lyapunov",
        [](std::size_t n, std::size_t layers, std::size_t tau_lo,
           std::size_t tau_hi, std::size_t samples, uint64_t seed) {
          BrickworkParams p{n, layers, tau_lo, tau_hi, 0, 0};
          Rng rng(seed);
          auto fit = lyapunov_estimate(p, rng, samples);
          py::dict d;
          d["c_hat"] = fit.c_hat;
          d["lambda_hat"] = fit.lambda_hat;
          d["r_squared"] = fit.r_squared;
          d["mean_trace"] = fit.mean_trace;
          return d;
        },
        py::arg("n"), py::arg("layers"), py::arg("tau_lo") = 1,
        py::arg("tau_hi") = 0, py::arg("samples") = 1, py::arg("seed"));

  m.def("phase_test",
        [](const StabTableau& t, const std::vector<std::size_t>& a,
           double theta) {
          auto v = phase_classify(t, cut_from(t, a), theta);
          py::dict d;
          d["entanglement_dominated"] = v.ed;
          d["nullity"] = v.nu;
          d["entanglement"] = v.e;
          d["unentangled_warning"] = v.unentangled_warning;
          return d;
        },
        py::arg("tableau"), py::arg("cut_sites"), py::arg("theta") = 1.0);
}
