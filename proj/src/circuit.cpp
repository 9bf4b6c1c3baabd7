#include "stabent/circuit.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stabent {

bool is_two_qubit(Gate g) {
  return g == Gate::CNOT || g == Gate::CZ || g == Gate::SWAP;
}

std::string gate_name(Gate g) {
  switch (g) {
    case Gate::H: return "H";
    case Gate::S: return "S";
    case Gate::X: return "X";
    case Gate::Y: return "Y";
    case Gate::Z: return "Z";
    case Gate::CNOT: return "CNOT";
    case Gate::CZ: return "CZ";
    case Gate::SWAP: return "SWAP";
  }
  return "?";
}

void CliffordCircuit::append(const CliffordCircuit& o) {
  gates.insert(gates.end(), o.gates.begin(), o.gates.end());
  n = std::max(n, o.n);
}

CliffordCircuit CliffordCircuit::inverse() const {
  CliffordCircuit inv;
  inv.n = n;
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
    if (it->gate == Gate::S) {
      // S^-1 = S^3
      inv.gates.push_back(*it);
      inv.gates.push_back(*it);
      inv.gates.push_back(*it);
    } else {
      inv.gates.push_back(*it);
    }
  }
  return inv;
}

std::size_t Circuit::non_clifford_count() const {
  std::size_t c = 0;
  for (const auto& op : ops)
    if (op.kind == CircuitOp::Kind::NonClifford) ++c;
  return c;
}

std::size_t Circuit::max_non_clifford_arity() const {
  std::size_t l = 0;
  for (const auto& op : ops)
    if (op.kind == CircuitOp::Kind::NonClifford)
      l = std::max(l, op.sites.size());
  return l;
}

static Gate gate_from_name(const std::string& name) {
  if (name == "H") return Gate::H;
  if (name == "S") return Gate::S;
  if (name == "X") return Gate::X;
  if (name == "Y") return Gate::Y;
  if (name == "Z") return Gate::Z;
  if (name == "CNOT" || name == "CX") return Gate::CNOT;
  if (name == "CZ") return Gate::CZ;
  if (name == "SWAP") return Gate::SWAP;
  throw std::invalid_argument("unknown gate: " + name);
}

Circuit parse_circuit(std::istream& in) {
  Circuit c;
  std::size_t max_site = 0;
  bool any = false;
  std::string line;
  bool declared_n = false;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    if (op.rfind("n=", 0) == 0) {
      c.n = std::stoul(op.substr(2));
      declared_n = true;
      continue;
    }
    auto read_site = [&]() {
      std::size_t q;
      if (!(ls >> q)) throw std::invalid_argument("missing site in: " + line);
      max_site = std::max(max_site, q);
      any = true;
      return q;
    };
    if (op == "T") {
      c.t(read_site());
    } else if (op == "RZ") {
      double theta;
      if (!(ls >> theta)) throw std::invalid_argument("missing angle: " + line);
      c.rz(theta, read_site());
    } else if (op == "HAAR") {
      std::vector<std::size_t> sites;
      std::size_t q;
      while (ls >> q) {
        sites.push_back(q);
        max_site = std::max(max_site, q);
        any = true;
      }
      if (sites.empty()) throw std::invalid_argument("HAAR needs sites: " + line);
      c.haar(sites);
    } else if (op == "M") {
      c.measure(read_site());
    } else {
      Gate g = gate_from_name(op);
      std::size_t a = read_site();
      if (is_two_qubit(g)) {
        std::size_t b = read_site();
        if (a == b) throw std::invalid_argument("repeated site in: " + line);
        c.add({g, a, b});
      } else {
        c.add({g, a});
      }
    }
  }
  if (!declared_n) c.n = any ? max_site + 1 : 0;
  if (any && max_site >= c.n)
    throw std::invalid_argument("site index exceeds declared n");
  return c;
}

Circuit parse_circuit_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open circuit file: " + path);
  return parse_circuit(in);
}

static void format_gate(std::ostringstream& out, const GateOp& g) {
  out << gate_name(g.gate) << ' ' << g.a;
  if (is_two_qubit(g.gate)) out << ' ' << g.b;
  out << '\n';
}

std::string to_string(const Circuit& c) {
  std::ostringstream out;
  out << "n=" << c.n << '\n';
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Clifford:
        format_gate(out, op.gate);
        break;
      case CircuitOp::Kind::NonClifford:
        out << op.label;
        if (op.label == "RZ") out << ' ' << op.theta;
        for (auto q : op.sites) out << ' ' << q;
        out << '\n';
        break;
      case CircuitOp::Kind::MeasureZ:
        out << "M " << op.sites[0] << '\n';
        break;
    }
  }
  return out.str();
}

std::string to_string(const CliffordCircuit& c) {
  std::ostringstream out;
  for (const auto& g : c.gates) format_gate(out, g);
  return out.str();
}

}  // namespace stabent
