#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace stabent {

enum class Gate { H, S, X, Y, Z, CNOT, CZ, SWAP };

struct GateOp {
  Gate gate;
  std::size_t a = 0, b = 0;  // b unused for single-qubit gates
};

bool is_two_qubit(Gate g);
std::string gate_name(Gate g);

// Ordered Clifford gate list, as emitted by synthesis routines.
struct CliffordCircuit {
  std::size_t n = 0;
  std::vector<GateOp> gates;

  void h(std::size_t q) { gates.push_back({Gate::H, q}); }
  void s(std::size_t q) { gates.push_back({Gate::S, q}); }
  void x(std::size_t q) { gates.push_back({Gate::X, q}); }
  void y(std::size_t q) { gates.push_back({Gate::Y, q}); }
  void z(std::size_t q) { gates.push_back({Gate::Z, q}); }
  void cnot(std::size_t c, std::size_t t) { gates.push_back({Gate::CNOT, c, t}); }
  void cz(std::size_t a, std::size_t b) { gates.push_back({Gate::CZ, a, b}); }
  void swap(std::size_t a, std::size_t b) { gates.push_back({Gate::SWAP, a, b}); }

  void append(const CliffordCircuit& o);
  CliffordCircuit inverse() const;
};

// General circuit op set: Clifford gates, non-Clifford placeholders
// ("T", "RZ" with angle, "HAAR" realized densely as a Haar-random unitary),
// and computational-basis measurements.
struct CircuitOp {
  enum class Kind { Clifford, NonClifford, MeasureZ } kind;
  GateOp gate{};                   // Clifford
  std::string label;               // NonClifford: "T", "RZ", "HAAR"
  double theta = 0.0;              // RZ angle
  std::vector<std::size_t> sites;  // NonClifford sites / measured site
};

struct Circuit {
  std::size_t n = 0;
  std::vector<CircuitOp> ops;

  void add(const GateOp& g) {
    ops.push_back({CircuitOp::Kind::Clifford, g, "", 0.0, {}});
  }
  void add(const CliffordCircuit& c) {
    for (const auto& g : c.gates) add(g);
  }
  void t(std::size_t q) {
    ops.push_back({CircuitOp::Kind::NonClifford, {}, "T", 0.0, {q}});
  }
  void rz(double theta, std::size_t q) {
    ops.push_back({CircuitOp::Kind::NonClifford, {}, "RZ", theta, {q}});
  }
  void haar(const std::vector<std::size_t>& sites) {
    ops.push_back({CircuitOp::Kind::NonClifford, {}, "HAAR", 0.0, sites});
  }
  void measure(std::size_t q) {
    ops.push_back({CircuitOp::Kind::MeasureZ, {}, "", 0.0, {q}});
  }

  std::size_t non_clifford_count() const;
  std::size_t max_non_clifford_arity() const;
};

// Text format: one op per line, e.g. "H 0", "CNOT 0 1", "T 2",
// "RZ 0.7853981633974483 3", "HAAR 0 1", "M 4". First line may be "n=<int>";
// otherwise n is inferred.
Circuit parse_circuit(std::istream& in);
Circuit parse_circuit_file(const std::string& path);
std::string to_string(const Circuit& c);
std::string to_string(const CliffordCircuit& c);

}  // namespace stabent
