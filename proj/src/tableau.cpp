#include "stabent/tableau.hpp"

#include <algorithm>
#include <cassert>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stabent {

Bipartition Bipartition::from_sites(std::size_t n,
                                    const std::vector<std::size_t>& sites) {
  Bipartition b;
  b.a_mask = BitVec(n);
  for (auto s : sites) {
    if (s >= n) throw std::invalid_argument("cut site out of range");
    b.a_mask.set(s, true);
  }
  return b;
}

Bipartition Bipartition::half(std::size_t n) {
  Bipartition b;
  b.a_mask = BitVec(n);
  for (std::size_t i = 0; i < n / 2; ++i) b.a_mask.set(i, true);
  return b;
}

BitVec Bipartition::b_mask() const {
  BitVec m(a_mask.size());
  for (std::size_t i = 0; i < a_mask.size(); ++i) m.set(i, !a_mask.get(i));
  return m;
}

// ---- gate conjugation -------------------------------------------------

namespace {

// Image of X_site / Z_site (want_x selects) under conjugation by g.
Pauli gate_image(std::size_t n, const GateOp& g, std::size_t site, bool want_x) {
  Pauli p(n);
  auto set_xz = [&](std::size_t q, bool xb, bool zb) {
    if (xb) p.x.set(q, true);
    if (zb) p.z.set(q, true);
  };
  int sign = 1;
  switch (g.gate) {
    case Gate::H:
      set_xz(g.a, !want_x, want_x);
      break;
    case Gate::S:
      if (want_x)
        set_xz(g.a, true, true);  // X -> Y
      else
        set_xz(g.a, false, true);
      break;
    case Gate::X:
      set_xz(g.a, want_x, !want_x);
      if (!want_x) sign = -1;
      break;
    case Gate::Y:
      set_xz(g.a, want_x, !want_x);
      sign = -1;
      break;
    case Gate::Z:
      set_xz(g.a, want_x, !want_x);
      if (want_x) sign = -1;
      break;
    case Gate::CNOT:
      if (site == g.a) {
        if (want_x) {
          set_xz(g.a, true, false);
          set_xz(g.b, true, false);
        } else {
          set_xz(g.a, false, true);
        }
      } else {
        if (want_x) {
          set_xz(g.b, true, false);
        } else {
          set_xz(g.a, false, true);
          set_xz(g.b, false, true);
        }
      }
      break;
    case Gate::CZ: {
      std::size_t other = site == g.a ? g.b : g.a;
      if (want_x) {
        set_xz(site, true, false);
        set_xz(other, false, true);
      } else {
        set_xz(site, false, true);
      }
      break;
    }
    case Gate::SWAP: {
      std::size_t other = site == g.a ? g.b : g.a;
      set_xz(other, want_x, !want_x);
      break;
    }
  }
  p.set_sign(sign);
  return p;
}

std::vector<std::size_t> gate_sites(const GateOp& g) {
  if (is_two_qubit(g.gate)) {
    return g.a < g.b ? std::vector<std::size_t>{g.a, g.b}
                     : std::vector<std::size_t>{g.b, g.a};
  }
  return {g.a};
}

}  // namespace

Pauli conjugate(const Pauli& p, const GateOp& g) {
  std::vector<std::size_t> sites = gate_sites(g);
  bool touched = false;
  for (auto q : sites) touched |= p.x.get(q) || p.z.get(q);
  if (!touched) return p;
  Pauli res = p;
  for (auto q : sites) {
    res.x.set(q, false);
    res.z.set(q, false);
  }
  for (auto q : sites) {
    if (p.x.get(q)) res = multiply(res, gate_image(p.n(), g, q, true));
    if (p.z.get(q)) res = multiply(res, gate_image(p.n(), g, q, false));
  }
  return res;
}

Pauli conjugate(const Pauli& p, const CliffordCircuit& c) {
  Pauli res = p;
  for (const auto& g : c.gates) res = conjugate(res, g);
  return res;
}

// ---- StabTableau -------------------------------------------------------

StabTableau StabTableau::zero_state(std::size_t n) {
  StabTableau t(n);
  for (std::size_t i = 0; i < n; ++i) t.gens_.push_back(single_site(n, i, 3));
  return t;
}

void StabTableau::add_generator(const Pauli& p) {
  if (p.n() != n_) throw std::invalid_argument("generator size mismatch");
  if (!p.is_hermitian())
    throw std::invalid_argument("generator not Hermitian: " + to_string(p));
  for (const auto& g : gens_)
    if (!commutes(g, p))
      throw std::invalid_argument("generator anticommutes with " +
                                  to_string(g));
  if (gens_.size() >= n_) throw std::invalid_argument("tableau already full");
  if (in_rowspan(p.symplectic(), symplectic_matrix()))
    throw std::invalid_argument("generator dependent on existing set");
  gens_.push_back(p);
}

void StabTableau::validate() const {
  if (gens_.size() > n_) throw std::logic_error("|S| > n");
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (!gens_[i].is_hermitian()) throw std::logic_error("non-Hermitian gen");
    for (std::size_t j = i + 1; j < gens_.size(); ++j)
      if (!commutes(gens_[i], gens_[j]))
        throw std::logic_error("anticommuting generators");
  }
  if (rank(symplectic_matrix()) != gens_.size())
    throw std::logic_error("dependent generators");
}

BinMatrix StabTableau::symplectic_matrix() const {
  BinMatrix m(0, 2 * n_);
  for (const auto& g : gens_) m.append_row(g.symplectic());
  return m;
}

std::optional<int> StabTableau::group_sign(const Pauli& p) const {
  BitVec combo;
  if (!in_rowspan(p.symplectic(), symplectic_matrix(), &combo))
    return std::nullopt;
  Pauli prod(n_);
  prod.set_sign(1);
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (combo.get(i)) prod = multiply(prod, gens_[i]);
  return prod.sign() * p.sign();
}

void StabTableau::apply(const GateOp& g) {
  if (g.a >= n_ || (is_two_qubit(g.gate) && (g.b >= n_ || g.a == g.b)))
    throw std::invalid_argument("gate site out of range");
  for (auto& gen : gens_) gen = conjugate(gen, g);
}

void StabTableau::apply(const CliffordCircuit& c) {
  for (const auto& g : c.gates) apply(g);
}

MeasureResult StabTableau::measure_z(std::size_t site, Rng* rng,
                                     std::optional<int> forced) {
  if (site >= n_) throw std::invalid_argument("measured site out of range");
  auto random_outcome = [&]() -> int {
    if (forced) return *forced < 0 ? -1 : 1;
    if (!rng) throw std::invalid_argument("random measurement needs an rng");
    return ((*rng)() & 1) ? 1 : -1;
  };
  std::size_t anti = gens_.size();
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (gens_[i].x.get(site)) {
      anti = i;
      break;
    }
  Pauli zs = single_site(n_, site, 3);
  if (anti == gens_.size()) {
    if (auto s = group_sign(zs)) return {*s, false};
    int outcome = random_outcome();
    if (outcome < 0) zs.negate();
    gens_.push_back(zs);
    return {outcome, true};
  }
  for (std::size_t i = 0; i < gens_.size(); ++i)
    if (i != anti && gens_[i].x.get(site))
      gens_[i] = multiply(gens_[i], gens_[anti]);
  int outcome = random_outcome();
  if (outcome < 0) zs.negate();
  gens_[anti] = zs;
  return {outcome, true};
}

void StabTableau::add_qubit() {
  std::size_t nn = n_ + 1;
  for (auto& g : gens_) {
    Pauli e(nn);
    for (std::size_t j = 0; j < n_; ++j) {
      e.x.set(j, g.x.get(j));
      e.z.set(j, g.z.get(j));
    }
    e.phase_i_exp = g.phase_i_exp;
    g = e;
  }
  n_ = nn;
  gens_.push_back(single_site(n_, n_ - 1, 3));
}

void StabTableau::discard_qubits(const std::vector<std::size_t>& sites) {
  BitVec drop(n_);
  for (auto s : sites) {
    if (s >= n_) throw std::invalid_argument("discard site out of range");
    drop.set(s, true);
  }
  BitVec keep(n_);
  std::vector<std::size_t> kept;
  for (std::size_t j = 0; j < n_; ++j)
    if (!drop.get(j)) {
      keep.set(j, true);
      kept.push_back(j);
    }
  std::vector<Pauli> locals = local_generators(keep);
  std::size_t nn = kept.size();
  std::vector<Pauli> out;
  for (const auto& g : locals) {
    Pauli e(nn);
    for (std::size_t j = 0; j < nn; ++j) {
      e.x.set(j, g.x.get(kept[j]));
      e.z.set(j, g.z.get(kept[j]));
    }
    e.phase_i_exp = g.phase_i_exp;
    out.push_back(e);
  }
  n_ = nn;
  gens_ = std::move(out);
}

std::vector<Pauli> StabTableau::local_generators(const BitVec& side_mask) const {
  BitVec other(n_);
  for (std::size_t j = 0; j < n_; ++j) other.set(j, !side_mask.get(j));
  BinMatrix restricted(0, 2 * n_);
  for (const auto& g : gens_)
    restricted.append_row(restrict_to(g, other).symplectic());
  BinMatrix combos = kernel_basis(restricted.transposed());
  std::vector<Pauli> out;
  for (std::size_t r = 0; r < combos.n_rows(); ++r) {
    Pauli prod(n_);
    prod.set_sign(1);
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (combos.row(r).get(i)) prod = multiply(prod, gens_[i]);
    out.push_back(prod);
  }
  return out;
}

HalfInt StabTableau::stabilizer_entanglement(const Bipartition& cut) const {
  BinMatrix ra(0, 2 * n_), rb(0, 2 * n_);
  BitVec bm = cut.b_mask();
  for (const auto& g : gens_) {
    ra.append_row(restrict_to(g, cut.a_mask).symplectic());
    rb.append_row(restrict_to(g, bm).symplectic());
  }
  // |S_A| = |S| - rank(P_B), |S_B| = |S| - rank(P_A)
  long e2 = static_cast<long>(rank(ra)) + static_cast<long>(rank(rb)) -
            static_cast<long>(gens_.size());
  return {e2};
}

CanonicalSplit StabTableau::canonical_pairing(const Bipartition& cut) const {
  CanonicalSplit split;
  BitVec bm = cut.b_mask();
  split.s_a = local_generators(cut.a_mask);
  split.s_b = local_generators(bm);

  BinMatrix span_rows(0, 2 * n_);
  for (const auto& g : split.s_a) span_rows.append_row(g.symplectic());
  for (const auto& g : split.s_b) span_rows.append_row(g.symplectic());
  std::vector<Pauli> spanning;
  for (const auto& g : gens_) {
    BitVec v = g.symplectic();
    if (!in_rowspan(v, span_rows)) {
      span_rows.append_row(v);
      spanning.push_back(g);
    }
  }

  auto antic_a = [&](const Pauli& p, const Pauli& q) {
    return !commutes(restrict_to(p, cut.a_mask), restrict_to(q, cut.a_mask));
  };
  std::vector<Pauli> work = spanning;
  while (!work.empty()) {
    Pauli g = work.front();
    work.erase(work.begin());
    std::size_t partner = work.size();
    for (std::size_t j = 0; j < work.size(); ++j)
      if (antic_a(g, work[j])) {
        partner = j;
        break;
      }
    if (partner == work.size()) {
      split.unpaired.push_back(g);
      continue;
    }
    Pauli h = work[partner];
    work.erase(work.begin() + partner);
    for (auto& k : work) {
      bool ag = antic_a(k, g), ah = antic_a(k, h);
      if (ag) k = multiply(k, h);
      if (ah) k = multiply(k, g);
    }
    split.pairs.emplace_back(g, h);
  }
  return split;
}

CliffordCircuit StabTableau::nullity_distillation() const {
  CliffordCircuit circ;
  circ.n = n_;
  std::vector<Pauli> work = gens_;
  auto emit = [&](GateOp g) {
    circ.gates.push_back(g);
    for (auto& p : work) p = conjugate(p, g);
  };
  for (std::size_t i = 0; i < work.size(); ++i) {
    // placed generators j < i are +Z_j; clear their columns in work[i]
    for (std::size_t j = 0; j < i; ++j)
      if (work[i].z.get(j)) work[i] = multiply(work[i], work[j]);
    for (std::size_t j = 0; j < i; ++j)
      assert(!work[i].x.get(j) && !work[i].z.get(j));
    for (std::size_t q = i; q < n_; ++q) {
      if (work[i].x.get(q)) {
        if (work[i].z.get(q)) emit({Gate::S, q});  // Y -> -X
        emit({Gate::H, q});                        // X -> Z
      }
    }
    std::size_t pivot = n_;
    for (std::size_t q = i; q < n_; ++q)
      if (work[i].z.get(q)) {
        pivot = q;
        break;
      }
    if (pivot == n_) throw std::logic_error("dependent generator set");
    if (pivot != i) emit({Gate::SWAP, pivot, i});
    for (std::size_t q = i + 1; q < n_; ++q)
      if (work[i].z.get(q)) emit({Gate::CNOT, q, i});
    if (work[i].sign() < 0) emit({Gate::X, i});
    assert(work[i] == single_site(n_, i, 3));
  }
  return circ;
}

StabTableau StabTableau::stabilizer_completion() const {
  StabTableau out = *this;
  while (out.gens_.size() < out.n_) {
    BinMatrix swapped(0, 2 * n_);
    for (const auto& g : out.gens_) {
      BitVec row(2 * n_);
      for (std::size_t j = 0; j < n_; ++j) {
        if (g.z.get(j)) row.set(j, true);
        if (g.x.get(j)) row.set(n_ + j, true);
      }
      swapped.append_row(row);
    }
    BinMatrix candidates = kernel_basis(swapped);
    BinMatrix span = out.symplectic_matrix();
    bool added = false;
    for (std::size_t r = 0; r < candidates.n_rows(); ++r) {
      const BitVec& v = candidates.row(r);
      if (in_rowspan(v, span)) continue;
      Pauli p(n_);
      for (std::size_t j = 0; j < n_; ++j) {
        p.x.set(j, v.get(j));
        p.z.set(j, v.get(n_ + j));
      }
      p.set_sign(1);
      out.gens_.push_back(p);
      added = true;
      break;
    }
    if (!added) throw std::logic_error("completion failed");
  }
  return out;
}

bool StabTableau::same_group(const StabTableau& other) const {
  if (n_ != other.n_ || gens_.size() != other.gens_.size()) return false;
  for (const auto& g : other.gens_) {
    auto s = group_sign(g);
    if (!s || *s != 1) return false;
  }
  return true;
}

// ---- text format -------------------------------------------------------

StabTableau parse_tableau(std::istream& in) {
  std::string line;
  std::size_t n = 0;
  bool have_n = false;
  StabTableau t;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::string trimmed;
    for (char c : line)
      if (!std::isspace(static_cast<unsigned char>(c)) || !trimmed.empty())
        trimmed += c;
    while (!trimmed.empty() &&
           std::isspace(static_cast<unsigned char>(trimmed.back())))
      trimmed.pop_back();
    if (trimmed.empty()) continue;
    if (!have_n) {
      if (trimmed.rfind("n=", 0) != 0)
        throw std::invalid_argument("tableau file must start with n=<int>");
      n = std::stoul(trimmed.substr(2));
      t = StabTableau(n);
      have_n = true;
      continue;
    }
    t.add_generator(parse_pauli(trimmed, n));
  }
  if (!have_n) throw std::invalid_argument("empty tableau file");
  return t;
}

StabTableau parse_tableau_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open tableau file: " + path);
  return parse_tableau(in);
}

std::string to_string(const StabTableau& t) {
  std::ostringstream out;
  out << "n=" << t.n() << '\n';
  for (const auto& g : t.gens()) out << to_string(g) << '\n';
  return out.str();
}

}  // namespace stabent
