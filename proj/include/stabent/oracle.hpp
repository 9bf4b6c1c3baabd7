#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "stabent/circuit.hpp"
#include "stabent/doped.hpp"
#include "stabent/tableau.hpp"

namespace stabent {

// Dense statevector backend: ground truth at small n. Everything here is
// brute force on purpose.
struct DenseState {
  std::size_t n = 0;
  std::vector<std::complex<double>> amps;

  static DenseState zero_state(std::size_t n);
  double norm() const;
};

inline constexpr std::size_t kDenseCap = 14;
inline constexpr std::size_t kEnumCap = 10;

void apply_gate_dense(DenseState& s, const GateOp& g);
void apply_unitary_dense(DenseState& s, const Eigen::MatrixXcd& u,
                         const std::vector<std::size_t>& sites);
// Projective Z measurement with Born-rule sampling.
int measure_z_dense(DenseState& s, std::size_t site, Rng& rng);

// Exact simulation; NonClifford "HAAR" ops draw a Haar-random unitary from
// the rng, so tableau-side and dense-side runs must share seeds carefully.
DenseState simulate_dense(const Circuit& c, Rng& rng);

void apply_clifford_dense(DenseState& s, const CliffordCircuit& c);

// |psi> = U^dag |0...0> for a full-rank tableau (U = nullity distillation).
DenseState dense_from_tableau(const StabTableau& t);

Eigen::MatrixXcd pauli_matrix(const Pauli& p);
Eigen::MatrixXcd projector_matrix(const StabTableau& t);
Eigen::MatrixXcd density_matrix(const DenseState& s);
Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng& rng);

Eigen::MatrixXcd reduced_density(const DenseState& s, const BitVec& keep_mask);

// Renyi entropy in bits of the reduced state on side A of the cut.
// alpha: 0 (rank, threshold 1e-10), 1 (von Neumann), inf via
// std::numeric_limits<double>::infinity(), else general alpha > 0.
double renyi_entropy_dense(const DenseState& s, const Bipartition& cut,
                           double alpha);
double renyi_entropy_eigs(const Eigen::MatrixXcd& rho, double alpha);

double expectation(const DenseState& s, const Pauli& p);
double expectation(const Eigen::MatrixXcd& rho, const Pauli& p);
// Single-shot +-1 sample with the exact Born distribution.
int sample_pauli_shot(const Eigen::MatrixXcd& rho, const Pauli& p, Rng& rng);

// Full signed stabilizer group {P : P psi = psi}, rank-reduced.
StabTableau extract_stabilizer_group(const DenseState& s, double tol = 1e-8);

// Coset representatives h_i with coefficients tr(h_i psi).
DopedState extract_doped_decomposition(const DenseState& s, double tol = 1e-8);

struct Depolarized {
  Eigen::MatrixXcd rho;
  double trace_distance = 0.0;  // to the input pure state, exact
};
Depolarized depolarize(const DenseState& s, double strength);

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

// Named disjoint regions for S_topo = S_AB + S_BC - S_B - S_ABC.
struct RegionSet {
  std::vector<std::size_t> a, b, c;
};

double topo_entropy(const DenseState& s, const RegionSet& regions,
                    double alpha);
// Stabilizer-only variant: uses E(X|complement) in place of S_alpha
// (exact for full-rank tableaus).
double topo_entropy_stab(const StabTableau& t, const RegionSet& regions);

// Toric-code patch on an l1 x l2 periodic lattice (n = 2*l1*l2 qubits):
// star operators A_v = prod Z and plaquette operators B_p = prod X, one of
// each dropped, completed to full rank with two logical generators.
StabTableau toric_code_tableau(std::size_t l1, std::size_t l2);

}  // namespace stabent
