#pragma once

#include <nlohmann/json.hpp>
#include <string>

#include "stabent/doped.hpp"
#include "stabent/dynamics.hpp"
#include "stabent/tableau.hpp"

namespace stabent {

// Key order is fixed (insertion order) so equal inputs serialize
// byte-identically.
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kVersionString = "stabent 0.1.0";

Json tableau_to_json(const StabTableau& t);
StabTableau tableau_from_json(const Json& j);

// {n, generators, cosets: [{pauli, coeff}]}
Json doped_to_json(const DopedState& s);
DopedState doped_from_json(const Json& j);

Json circuit_to_json(const CliffordCircuit& c);

// Report envelope: schema_version, version, command, config, then `body`
// fields in order.
Json make_report(const std::string& command, const Json& config,
                 const Json& body);

// "step,s_size,s_a,nu_removed,bound_lo,bound_hi" rows.
std::string monitor_trace_csv(const MonitorTrace& t);

// "tau,entanglement_bits" rows.
std::string trace_csv(const std::vector<double>& trace);

}  // namespace stabent
