#pragma once

#include <Eigen/Dense>
#include <stdexcept>

#include "stabent/tableau.hpp"

namespace stabent {

// Raised when a requested plan cannot be satisfied (CLI exit code 2).
struct InfeasibleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Clifford synthesis from Pauli images: the returned circuit U satisfies
// U source U^dag = target for every constraint, signs included. Throws
// std::invalid_argument naming the violating pair when the requested map
// does not preserve the symplectic form, or when sources/targets are
// dependent. `allowed` restricts the qubits the circuit may touch
// (default: all).
CliffordCircuit clifford_from_pauli_images(
    const std::vector<std::pair<Pauli, Pauli>>& constraints, std::size_t n,
    const std::vector<std::size_t>& allowed = {});

struct DistillationResult {
  CliffordCircuit u_a, u_b;
  std::size_t m_plus = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pair_sites;  // (A_i, B_i)
};

// Thm.-style bipartite distillation: after u_a (tensor) u_b the conjugated
// tableau contains {+X_{A_i}X_{B_i}, +Z_{A_i}Z_{B_i}} for i < m_plus, so the
// state factors as m_plus Bell pairs tensor a remainder.
DistillationResult synthesize_bipartite_distillation(const StabTableau& tab,
                                                     const Bipartition& cut,
                                                     double s0_bound = 0.0);

struct GhzResult {
  long p = 0;  // distillable k-partite GHZ count, clipped at 0
  long e_multi = 0;
  // k = 3 only: Bell pairs shared between the two parts excluding part i
  std::vector<long> tripartite_bell_counts;
  std::size_t stripped_qubits = 0;
};

GhzResult ghz_distillable_count(const StabTableau& tab,
                                const std::vector<std::vector<std::size_t>>& parts);

struct DilutionPlan {
  std::size_t ebits = 0;
  std::size_t cc_bits = 0;
  std::size_t teleport_qubits = 0;
  CliffordCircuit u_a, u_b;    // distillation unitaries
  CliffordCircuit v_a, v_b;    // per-side nullity distillation on the remainder
  std::size_t m_plus = 0;
  std::vector<std::pair<std::size_t, std::size_t>> pair_sites;
  // qubits mapped to |0> on each side, and the sigma' support per side
  std::vector<std::size_t> zeroed_a, zeroed_b, support_a, support_b;
};

DilutionPlan dilution_plan(const StabTableau& tab, const Bipartition& cut);

struct WitnessPlan {
  long m_of_b = 0;
  double e_level = 0.0;
  double threshold = 0.0;  // 2^{-M+E}
  double delta_margin = 0.0;  // Delta = 1 - (eps + 2^{-M+E})
  std::size_t n_shots = 0;
  bool extrapolated = false;  // e_level > 0 uses the flagged extrapolation
};

WitnessPlan witness_plan(const StabTableau& tab,
                         const std::vector<Bipartition>& cuts, double e_level,
                         double eps, double delta);

struct WitnessEstimate {
  double pi_hat = 0.0;
  bool entangled = false;  // 2^{-M+E} - pi_hat < 0
};

// Samples uniformly random group elements P = prod g_i^{x_i} and measures
// them single-shot on rho (dense density matrix, Born-exact).
WitnessEstimate witness_estimate(const Eigen::MatrixXcd& rho,
                                 const StabTableau& tab, std::size_t n_shots,
                                 double threshold, Rng& rng);

struct CoolResult {
  CliffordCircuit circuit;
  double ratio = 0.0;
  double post_e = 0.0;
};

// Nullity distillation plus SWAPs placing the nu-qubit remainder inside the
// larger side of the cut. Throws InfeasibleError when nu > n/2.
CoolResult entanglement_cool(const StabTableau& tab, const Bipartition& cut);

}  // namespace stabent
