#pragma once

#include <cstdint>
#include <string>

#include "stabent/f2.hpp"

namespace stabent {

// Signed n-qubit Pauli operator: i^phase_i_exp * prod_j X^{x_j} Z^{z_j},
// with X applied before Z on each qubit. Convention: Y = i*X*Z, so +Y on a
// single qubit is {x=1, z=1, phase_i_exp=1}.
struct Pauli {
  BitVec x, z;
  uint8_t phase_i_exp = 0;  // mod 4

  Pauli() = default;
  explicit Pauli(std::size_t n) : x(n), z(n) {}

  std::size_t n() const { return x.size(); }
  bool is_identity() const { return x.is_zero() && z.is_zero(); }

  // Hermitian iff phase_i_exp == y_count mod 2 (y_count = |x AND z|).
  bool is_hermitian() const;
  // For Hermitian Paulis: +1 or -1 such that *this == sign * (tensor of
  // I/X/Y/Z factors).
  int sign() const;
  void set_sign(int s);
  void negate() { phase_i_exp = (phase_i_exp + 2) & 3; }

  // Length-2n symplectic vector (x bits then z bits).
  BitVec symplectic() const;

  bool operator==(const Pauli& o) const {
    return x == o.x && z == o.z && phase_i_exp == o.phase_i_exp;
  }
};

// Exact group product a*b including phase.
Pauli multiply(const Pauli& a, const Pauli& b);

// Symplectic form a.x*b.z + a.z*b.x == 0.
bool commutes(const Pauli& a, const Pauli& b);

// Zero all x/z bits outside the mask; resulting phase is normalized so the
// restriction is Hermitian with + sign.
Pauli restrict_to(const Pauli& p, const BitVec& mask);

// Single-qubit Pauli at a site (kind: 0=I 1=X 2=Y 3=Z), Hermitian, +1 sign.
Pauli single_site(std::size_t n, std::size_t site, int kind);

// Hermitian Pauli with the given bits and sign.
Pauli from_bits(const BitVec& x, const BitVec& z, int sign);

// Text formats: dense "+XIZY" (emitted) and sparse "X0 Z2 Y3" (accepted).
// Dense parsing needs no qubit count; sparse uses n (pass 0 to infer from
// the largest index + 1).
std::string to_string(const Pauli& p);
Pauli parse_pauli(const std::string& text, std::size_t n = 0);

}  // namespace stabent
