#include "stabent/pauli.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace stabent {

bool Pauli::is_hermitian() const {
  return ((phase_i_exp ^ x.popcount_and(z)) & 1) == 0;
}

int Pauli::sign() const {
  // operator = sign * i^{y_count} * prod X^x Z^z
  unsigned y = x.popcount_and(z) & 3;
  unsigned s = (phase_i_exp - y) & 3;
  if (s == 0) return 1;
  if (s == 2) return -1;
  throw std::logic_error("sign() on non-Hermitian Pauli");
}

void Pauli::set_sign(int s) {
  unsigned y = x.popcount_and(z) & 3;
  phase_i_exp = static_cast<uint8_t>((y + (s < 0 ? 2 : 0)) & 3);
}

BitVec Pauli::symplectic() const {
  std::size_t nn = n();
  BitVec v(2 * nn);
  for (std::size_t j = 0; j < nn; ++j) {
    if (x.get(j)) v.set(j, true);
    if (z.get(j)) v.set(nn + j, true);
  }
  return v;
}

Pauli multiply(const Pauli& a, const Pauli& b) {
  if (a.n() != b.n()) throw std::invalid_argument("Pauli length mismatch");
  Pauli r(a.n());
  r.x = a.x;
  r.x.xor_with(b.x);
  r.z = a.z;
  r.z.xor_with(b.z);
  // per qubit: Z^{za} X^{xb} = (-1)^{za xb} X^{xb} Z^{za}
  unsigned swaps = a.z.popcount_and(b.x) & 1;
  r.phase_i_exp =
      static_cast<uint8_t>((a.phase_i_exp + b.phase_i_exp + 2 * swaps) & 3);
  return r;
}

bool commutes(const Pauli& a, const Pauli& b) {
  return (a.x.parity_and(b.z) ^ a.z.parity_and(b.x)) == 0;
}

Pauli restrict_to(const Pauli& p, const BitVec& mask) {
  Pauli r(p.n());
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (!mask.get(j)) continue;
    if (p.x.get(j)) r.x.set(j, true);
    if (p.z.get(j)) r.z.set(j, true);
  }
  r.set_sign(1);
  return r;
}

Pauli single_site(std::size_t n, std::size_t site, int kind) {
  Pauli p(n);
  if (kind == 1 || kind == 2) p.x.set(site, true);
  if (kind == 2 || kind == 3) p.z.set(site, true);
  p.set_sign(1);
  return p;
}

Pauli from_bits(const BitVec& x, const BitVec& z, int sign) {
  Pauli p;
  p.x = x;
  p.z = z;
  p.set_sign(sign);
  return p;
}

std::string to_string(const Pauli& p) {
  std::string s;
  s += p.sign() > 0 ? '+' : '-';
  for (std::size_t j = 0; j < p.n(); ++j) {
    bool xb = p.x.get(j), zb = p.z.get(j);
    s += xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return s;
}

static int letter_kind(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: return -1;
  }
}

Pauli parse_pauli(const std::string& text, std::size_t n) {
  std::size_t pos = 0;
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos])))
    ++pos;
  int sign = 1;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    if (text[pos] == '-') sign = -1;
    ++pos;
  }
  std::string body = text.substr(pos);
  while (!body.empty() && std::isspace(static_cast<unsigned char>(body.back())))
    body.pop_back();
  bool sparse = body.find_first_of("0123456789 \t") != std::string::npos;
  if (!sparse) {
    if (n == 0) n = body.size();
    if (body.size() != n)
      throw std::invalid_argument("Pauli string length != n: " + text);
    Pauli p(n);
    for (std::size_t j = 0; j < n; ++j) {
      int k = letter_kind(body[j]);
      if (k < 0) throw std::invalid_argument("bad Pauli letter in: " + text);
      if (k == 1 || k == 2) p.x.set(j, true);
      if (k == 2 || k == 3) p.z.set(j, true);
    }
    p.set_sign(sign);
    return p;
  }
  std::istringstream in(body);
  std::string tok;
  std::vector<std::pair<int, std::size_t>> terms;
  std::size_t max_site = 0;
  while (in >> tok) {
    int k = letter_kind(tok[0]);
    if (k <= 0 || tok.size() < 2)
      throw std::invalid_argument("bad sparse Pauli term: " + tok);
    std::size_t site = std::stoul(tok.substr(1));
    terms.emplace_back(k, site);
    max_site = std::max(max_site, site);
  }
  if (n == 0) n = terms.empty() ? 1 : max_site + 1;
  if (max_site >= n && !terms.empty())
    throw std::invalid_argument("Pauli site out of range: " + text);
  Pauli p(n);
  for (auto [k, site] : terms) {
    if (p.x.get(site) || p.z.get(site))
      throw std::invalid_argument("duplicate site in sparse Pauli: " + text);
    if (k == 1 || k == 2) p.x.set(site, true);
    if (k == 2 || k == 3) p.z.set(site, true);
  }
  p.set_sign(sign);
  return p;
}

}  // namespace stabent
