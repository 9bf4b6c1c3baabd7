#pragma once

#include "stabent/tableau.hpp"

namespace stabent {

// nu-compressible state: stabilizer tableau of rank n-nu plus coset data
// {(h_i, c_i = tr(h_i psi))} with h_0 = identity, c_0 = 1.
struct DopedState {
  StabTableau tab;
  std::vector<std::pair<Pauli, double>> cosets;

  std::size_t n() const { return tab.n(); }
  std::size_t nu() const { return tab.nullity(); }

  // Checks: h_0 = I with c_0 = 1, k+1 <= 2^{2nu}, all c_i != 0, no two h in
  // the same coset of the group. `pure` additionally checks sum c^2 = 2^nu.
  void validate(bool pure = true) const;
};

// Exact 2-Renyi entanglement entropy in bits:
//   S2 = (n_A - |S_A|) - log2(sum_i delta_i c_i^2),
// delta_i = 1 iff the B-restriction of h_i lies in the rowspan of the
// B-restricted tableau.
double renyi2_exact(const DopedState& s, const Bipartition& cut);

enum class EntropyClass {
  AllAlpha,  // every Renyi index: [E - 3nu/2, E + nu/2]
  UpToTwo,   // von Neumann and alpha <= 2: [E - nu/2, E + nu/2]
};

// Interval (lo, hi) in bits containing S_alpha; lo clipped at 0.
std::pair<double, double> entropy_interval(const StabTableau& tab,
                                           const Bipartition& cut,
                                           EntropyClass cls);

struct PhaseVerdict {
  bool ed = false;  // entanglement-dominated
  double nu = 0.0;
  double e = 0.0;
  double ratio = 0.0;  // nu / E (infinity encoded as ratio of raw values)
  bool unentangled_warning = false;
};

// Finite-size surrogate for the ED/MD classification: ED iff nu <= theta*E.
PhaseVerdict phase_classify(const StabTableau& tab, const Bipartition& cut,
                            double theta = 1.0);

// Same rule applied to a learned/extracted group.
PhaseVerdict phase_property_test(const StabTableau& learned_group,
                                 const Bipartition& cut, double theta = 1.0);

}  // namespace stabent
