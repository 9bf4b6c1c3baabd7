#include "stabent/formats.hpp"

#include <sstream>

namespace stabent {

Json tableau_to_json(const StabTableau& t) {
  Json j;
  j["n"] = t.n();
  Json gens = Json::array();
  for (const auto& g : t.gens()) gens.push_back(to_string(g));
  j["generators"] = gens;
  return j;
}

StabTableau tableau_from_json(const Json& j) {
  StabTableau t(j.at("n").get<std::size_t>());
  for (const auto& g : j.at("generators"))
    t.add_generator(parse_pauli(g.get<std::string>(), t.n()));
  return t;
}

Json doped_to_json(const DopedState& s) {
  Json j = tableau_to_json(s.tab);
  Json cosets = Json::array();
  for (const auto& [h, c] : s.cosets) {
    Json entry;
    entry["pauli"] = to_string(h);
    entry["coeff"] = c;
    cosets.push_back(entry);
  }
  j["cosets"] = cosets;
  return j;
}

DopedState doped_from_json(const Json& j) {
  DopedState s;
  s.tab = tableau_from_json(j);
  for (const auto& entry : j.at("cosets"))
    s.cosets.emplace_back(
        parse_pauli(entry.at("pauli").get<std::string>(), s.tab.n()),
        entry.at("coeff").get<double>());
  return s;
}

Json circuit_to_json(const CliffordCircuit& c) {
  Json j;
  j["n"] = c.n;
  Json gates = Json::array();
  for (const auto& g : c.gates) {
    std::ostringstream line;
    line << gate_name(g.gate) << ' ' << g.a;
    if (is_two_qubit(g.gate)) line << ' ' << g.b;
    gates.push_back(line.str());
  }
  j["gates"] = gates;
  return j;
}

Json make_report(const std::string& command, const Json& config,
                 const Json& body) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["version"] = kVersionString;
  j["command"] = command;
  j["config"] = config;
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  return j;
}

std::string monitor_trace_csv(const MonitorTrace& t) {
  std::ostringstream out;
  out << "step,s_size,s_a,nu_removed,bound_lo,bound_hi\n";
  for (const auto& r : t.records)
    out << r.step << ',' << r.s_size << ',' << r.s_a << ',' << r.nu_removed
        << ',' << r.bound_lo << ',' << r.bound_hi << '\n';
  return out.str();
}

std::string trace_csv(const std::vector<double>& trace) {
  std::ostringstream out;
  out << "tau,entanglement_bits\n";
  for (std::size_t tau = 0; tau < trace.size(); ++tau)
    out << tau << ',' << trace[tau] << '\n';
  return out.str();
}

}  // namespace stabent
