#pragma once

#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "stabent/circuit.hpp"
#include "stabent/pauli.hpp"

namespace stabent {

using Rng = std::mt19937_64;

// Qubit-subset cut A|B; B is the complement of a_mask.
struct Bipartition {
  BitVec a_mask;

  static Bipartition from_sites(std::size_t n,
                                const std::vector<std::size_t>& sites);
  static Bipartition half(std::size_t n);

  std::size_t n() const { return a_mask.size(); }
  std::size_t n_a() const { return a_mask.popcount(); }
  std::size_t n_b() const { return n() - n_a(); }
  BitVec b_mask() const;
};

// Exact half-integer, stored as twice its value.
struct HalfInt {
  long twice = 0;
  double value() const { return 0.5 * static_cast<double>(twice); }
};

struct CanonicalSplit {
  std::vector<Pauli> s_a, s_b;          // local generators
  std::vector<std::pair<Pauli, Pauli>> pairs;  // (g, gbar): A-restrictions anticommute
  std::vector<Pauli> unpaired;
};

struct MeasureResult {
  int outcome = 1;  // +1 or -1
  bool was_random = false;
};

// Independent commuting set of signed Pauli generators.
class StabTableau {
 public:
  StabTableau() = default;
  explicit StabTableau(std::size_t n) : n_(n) {}

  // |0...0> state: generators {+Z_0,...,+Z_{n-1}}.
  static StabTableau zero_state(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t num_gens() const { return gens_.size(); }
  std::size_t nullity() const { return n_ - gens_.size(); }
  const std::vector<Pauli>& gens() const { return gens_; }
  const Pauli& gen(std::size_t i) const { return gens_[i]; }

  // Appends a generator; throws unless it is Hermitian, commutes with the
  // existing set and is independent of it.
  void add_generator(const Pauli& p);

  // Checks all invariants (commuting, independent, Hermitian, |S| <= n).
  void validate() const;

  // Stacked symplectic rows (|S| x 2n).
  BinMatrix symplectic_matrix() const;

  // Signed group membership: returns the sign s such that s*p_hermitian is
  // in the group, or nullopt if the unsigned Pauli is not in the rowspan.
  // I.e. for Hermitian p: +1 means p itself is a stabilizer, -1 means -p is.
  std::optional<int> group_sign(const Pauli& p) const;

  void apply(const GateOp& g);
  void apply(const CliffordCircuit& c);

  MeasureResult measure_z(std::size_t site, Rng* rng,
                          std::optional<int> forced = std::nullopt);

  // Ancilla in |0>: appends a qubit with generator +Z on it.
  void add_qubit();
  // Partial trace: keep the subgroup acting trivially on the given sites,
  // then drop those columns.
  void discard_qubits(const std::vector<std::size_t>& sites);

  // Generating set of the subgroup acting trivially outside `side_mask`.
  std::vector<Pauli> local_generators(const BitVec& side_mask) const;

  HalfInt stabilizer_entanglement(const Bipartition& cut) const;

  CanonicalSplit canonical_pairing(const Bipartition& cut) const;

  // Circuit U with U g_i U^dag = +Z_i for a reordering of the generators;
  // maps the state to |0>^{|S|} tensor (nu-qubit remainder) on the last
  // qubits.
  CliffordCircuit nullity_distillation() const;

  // Extends to n independent commuting generators containing this group.
  StabTableau stabilizer_completion() const;

  bool same_group(const StabTableau& other) const;

 private:
  std::size_t n_ = 0;
  std::vector<Pauli> gens_;
};

// Conjugation of a single Pauli by a Clifford gate, exact phases.
Pauli conjugate(const Pauli& p, const GateOp& g);
Pauli conjugate(const Pauli& p, const CliffordCircuit& c);

// Tableau text format: header "n=<int>", then one signed Pauli per line.
StabTableau parse_tableau(std::istream& in);
StabTableau parse_tableau_file(const std::string& path);
std::string to_string(const StabTableau& t);

}  // namespace stabent
