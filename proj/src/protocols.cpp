#include "stabent/protocols.hpp"

#include <algorithm>
#include <cmath>

#include "stabent/oracle.hpp"

namespace stabent {

namespace {

// Shared synthesis state: every emitted gate conjugates all live Paulis.
struct Synth {
  std::size_t n;
  CliffordCircuit circ;
  std::vector<Pauli> live;
  std::vector<bool> usable;       // qubits the circuit may touch
  std::vector<bool> locked_full;  // pair qubits: X and Z images pinned
  std::vector<bool> locked_z;     // isotropic qubits: Z image pinned

  explicit Synth(std::size_t n_, const std::vector<std::size_t>& allowed)
      : n(n_), usable(n_, allowed.empty()), locked_full(n_, false),
        locked_z(n_, false) {
    circ.n = n_;
    for (auto q : allowed) usable[q] = true;
  }

  bool free_qubit(std::size_t q) const {
    return usable[q] && !locked_full[q] && !locked_z[q];
  }

  void emit(GateOp g) {
    circ.gates.push_back(g);
    for (auto& p : live) p = conjugate(p, g);
  }

  // Rotate every free-qubit X/Y component of live[idx] into Z.
  void rotate_to_z(std::size_t idx) {
    for (std::size_t q = 0; q < n; ++q) {
      if (!free_qubit(q) || !live[idx].x.get(q)) continue;
      if (live[idx].z.get(q)) emit({Gate::S, q});  // Y -> -X
      emit({Gate::H, q});                          // X -> Z
    }
  }

  // Map live[idx] (trivial on locked_full qubits, Z-only on locked_z
  // qubits) to +Z_q. q must be free.
  void reduce_to_z(std::size_t idx, std::size_t q) {
    rotate_to_z(idx);
    std::size_t pivot = n;
    for (std::size_t j = 0; j < n; ++j)
      if (free_qubit(j) && live[idx].z.get(j)) {
        pivot = j;
        break;
      }
    if (pivot == n) throw std::invalid_argument("dependent constraint set");
    for (std::size_t j = 0; j < n; ++j) {
      if (j == pivot || !live[idx].z.get(j)) continue;
      if (locked_full[j]) throw std::logic_error("synthesis touched pair qubit");
      // CNOT(j, pivot) removes Z_j while fixing Z_j itself
      if (free_qubit(j) || locked_z[j]) emit({Gate::CNOT, j, pivot});
    }
    if (pivot != q) emit({Gate::SWAP, pivot, q});
    if (live[idx].sign() < 0) emit({Gate::X, q});
  }

  // Map live[idx] to +X_q while fixing Z_q; live[idx] anticommutes with
  // Z_q and is trivial on locked qubits other than q.
  void reduce_to_x(std::size_t idx, std::size_t q) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j == q || !free_qubit(j) || !live[idx].x.get(j)) continue;
      if (live[idx].z.get(j)) emit({Gate::S, j});
      emit({Gate::H, j});
    }
    if (live[idx].z.get(q)) emit({Gate::S, q});  // Y_q -> -X_q
    for (std::size_t j = 0; j < n; ++j)
      if (j != q && live[idx].z.get(j)) emit({Gate::CZ, q, j});
    if (live[idx].sign() < 0) emit({Gate::Z, q});
  }
};

// Symplectic Gram-Schmidt over full Paulis, applying identical row
// operations to a parallel list. Returns indices: pairs of (i, j) and
// isotropic singles, in processing order.
struct GramSchmidt {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<std::size_t> isotropic;
};

GramSchmidt gram_schmidt(std::vector<Pauli>& a, std::vector<Pauli>& b) {
  GramSchmidt out;
  std::vector<std::size_t> work(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) work[i] = i;
  while (!work.empty()) {
    std::size_t g = work.front();
    work.erase(work.begin());
    std::size_t pj = work.size();
    for (std::size_t j = 0; j < work.size(); ++j)
      if (!commutes(a[g], a[work[j]])) {
        pj = j;
        break;
      }
    if (pj == work.size()) {
      out.isotropic.push_back(g);
      continue;
    }
    std::size_t h = work[pj];
    work.erase(work.begin() + pj);
    for (auto k : work) {
      bool ag = !commutes(a[k], a[g]), ah = !commutes(a[k], a[h]);
      // identical row operations on both lists keep the map consistent
      if (ag) {
        a[k] = multiply(a[k], a[h]);
        b[k] = multiply(b[k], b[h]);
      }
      if (ah) {
        a[k] = multiply(a[k], a[g]);
        b[k] = multiply(b[k], b[g]);
      }
    }
    out.pairs.emplace_back(g, h);
  }
  return out;
}

}  // namespace

CliffordCircuit clifford_from_pauli_images(
    const std::vector<std::pair<Pauli, Pauli>>& constraints, std::size_t n,
    const std::vector<std::size_t>& allowed) {
  std::vector<Pauli> src, tgt;
  for (const auto& [s, t] : constraints) {
    if (s.n() != n || t.n() != n)
      throw std::invalid_argument("constraint size mismatch");
    if (!s.is_hermitian() || !t.is_hermitian())
      throw std::invalid_argument("constraints must be Hermitian Paulis");
    src.push_back(s);
    tgt.push_back(t);
  }
  if (!allowed.empty()) {
    BitVec ok(n);
    for (auto q : allowed) ok.set(q, true);
    for (const auto& [s, t] : constraints)
      for (std::size_t q = 0; q < n; ++q)
        if (!ok.get(q) && (s.x.get(q) || s.z.get(q) || t.x.get(q) || t.z.get(q)))
          throw std::invalid_argument("constraint support outside allowed set");
  }
  for (std::size_t i = 0; i < src.size(); ++i)
    for (std::size_t j = i + 1; j < src.size(); ++j)
      if (commutes(src[i], src[j]) != commutes(tgt[i], tgt[j]))
        throw std::invalid_argument(
            "commutation-relation mismatch between constraints " +
            std::to_string(i) + " and " + std::to_string(j));
  {
    BinMatrix ms(0, 2 * n), mt(0, 2 * n);
    for (const auto& p : src) ms.append_row(p.symplectic());
    for (const auto& p : tgt) mt.append_row(p.symplectic());
    if (rank(ms) != src.size())
      throw std::invalid_argument("sources are dependent");
    if (rank(mt) != tgt.size())
      throw std::invalid_argument("targets are dependent");
  }

  GramSchmidt gs;
  {
    auto s2 = src, t2 = tgt;
    gs = gram_schmidt(s2, t2);
    src = s2;
    tgt = t2;
  }

  std::vector<std::size_t> avail = allowed;
  if (avail.empty())
    for (std::size_t q = 0; q < n; ++q) avail.push_back(q);
  if (gs.pairs.size() + gs.isotropic.size() > avail.size())
    throw std::invalid_argument("not enough qubits for canonical form");

  auto canonicalize = [&](const std::vector<Pauli>& paulis) {
    Synth sy(n, allowed);
    sy.live = paulis;
    std::size_t next = 0;
    for (auto [gi, hi] : gs.pairs) {
      std::size_t q = avail[next++];
      sy.reduce_to_z(gi, q);
      sy.reduce_to_x(hi, q);
      sy.locked_full[q] = true;
    }
    for (auto ri : gs.isotropic) {
      std::size_t q = avail[next++];
      sy.reduce_to_z(ri, q);
      sy.locked_z[q] = true;
    }
    return sy.circ;
  };

  CliffordCircuit cs = canonicalize(src);
  CliffordCircuit u = cs;
  u.append(canonicalize(tgt).inverse());

  for (const auto& [s, t] : constraints)
    if (!(conjugate(s, u) == t))
      throw std::logic_error("image synthesis failed verification");
  return u;
}

DistillationResult synthesize_bipartite_distillation(const StabTableau& tab,
                                                     const Bipartition& cut,
                                                     double) {
  CanonicalSplit split = tab.canonical_pairing(cut);
  std::size_t n = tab.n();
  BitVec bm = cut.b_mask();
  std::vector<std::size_t> a_sites, b_sites;
  for (std::size_t q = 0; q < n; ++q)
    (cut.a_mask.get(q) ? a_sites : b_sites).push_back(q);

  DistillationResult res;
  res.m_plus = split.pairs.size();
  std::vector<std::pair<Pauli, Pauli>> ca, cb;
  for (std::size_t i = 0; i < res.m_plus; ++i) {
    std::size_t qa = a_sites[i], qb = b_sites[i];
    res.pair_sites.emplace_back(qa, qb);
    for (int which = 0; which < 2; ++which) {
      const Pauli& g = which == 0 ? split.pairs[i].first : split.pairs[i].second;
      Pauli ga = restrict_to(g, cut.a_mask);
      Pauli gb = restrict_to(g, bm);
      // g = sigma * ga * gb; fold sigma into the A-side target so the
      // conjugated generator comes out with + sign
      int sigma = multiply(ga, gb).sign() * g.sign();
      Pauli ta = single_site(n, qa, which == 0 ? 1 : 3);
      Pauli tb = single_site(n, qb, which == 0 ? 1 : 3);
      ta.set_sign(sigma);
      ca.emplace_back(ga, ta);
      cb.emplace_back(gb, tb);
    }
  }
  res.u_a = clifford_from_pauli_images(ca, n, a_sites);
  res.u_b = clifford_from_pauli_images(cb, n, b_sites);
  return res;
}

GhzResult ghz_distillable_count(
    const StabTableau& tab, const std::vector<std::vector<std::size_t>>& parts) {
  GhzResult res;
  StabTableau work = tab;
  std::vector<std::vector<std::size_t>> pp = parts;

  // Preprocess to full local rank: map any generator supported inside a
  // single part to a Z and drop that qubit.
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& part : pp) {
      if (part.empty()) continue;
      BitVec mask(work.n());
      for (auto q : part) mask.set(q, true);
      auto locals = work.local_generators(mask);
      if (locals.empty()) continue;
      std::vector<std::pair<Pauli, Pauli>> cons;
      Pauli target = single_site(work.n(), part[0], 3);
      cons.emplace_back(locals[0], target);
      work.apply(clifford_from_pauli_images(cons, work.n(), part));
      std::size_t dropped = part[0];
      work.discard_qubits({dropped});
      for (auto& other : pp) {
        std::erase(other, dropped);
        for (auto& q : other)
          if (q > dropped) --q;
      }
      ++res.stripped_qubits;
      changed = true;
      break;
    }
  }

  long nu = static_cast<long>(work.nullity());
  BinMatrix loc(0, 2 * work.n());
  for (const auto& part : pp) {
    BitVec comp(work.n());
    for (std::size_t q = 0; q < work.n(); ++q) comp.set(q, true);
    for (auto q : part) comp.set(q, false);
    for (const auto& g : work.local_generators(comp))
      loc.append_row(g.symplectic());
  }
  long s_loc = static_cast<long>(rank(loc));
  res.e_multi = static_cast<long>(work.num_gens()) - s_loc;
  res.p = std::max(0L, res.e_multi - nu);

  if (pp.size() == 3) {
    long sizes[3];
    for (int i = 0; i < 3; ++i) sizes[i] = static_cast<long>(pp[i].size());
    for (int i = 0; i < 3; ++i) {
      long nj = sizes[(i + 1) % 3], nk = sizes[(i + 2) % 3];
      long count = (nj + nk - sizes[i] - res.p) / 2 - nu;
      res.tripartite_bell_counts.push_back(std::max(0L, count));
    }
  }
  return res;
}

DilutionPlan dilution_plan(const StabTableau& tab, const Bipartition& cut) {
  DilutionPlan plan;
  DistillationResult dr = synthesize_bipartite_distillation(tab, cut);
  plan.u_a = dr.u_a;
  plan.u_b = dr.u_b;
  plan.m_plus = dr.m_plus;
  plan.pair_sites = dr.pair_sites;

  StabTableau work = tab;
  work.apply(dr.u_a);
  work.apply(dr.u_b);

  std::size_t n = tab.n();
  BitVec used(n);
  for (auto [qa, qb] : dr.pair_sites) {
    used.set(qa, true);
    used.set(qb, true);
  }
  auto side_residual = [&](bool a_side) {
    std::vector<std::size_t> sites;
    for (std::size_t q = 0; q < n; ++q)
      if (cut.a_mask.get(q) == a_side && !used.get(q)) sites.push_back(q);
    return sites;
  };
  auto nullity_on = [&](const std::vector<std::size_t>& sites,
                        CliffordCircuit& out_circ,
                        std::vector<std::size_t>& zeroed,
                        std::vector<std::size_t>& support) {
    BitVec mask(n);
    for (auto q : sites) mask.set(q, true);
    auto locals = work.local_generators(mask);
    std::vector<std::pair<Pauli, Pauli>> cons;
    for (std::size_t i = 0; i < locals.size(); ++i)
      cons.emplace_back(locals[i], single_site(n, sites[i], 3));
    out_circ = clifford_from_pauli_images(cons, n, sites);
    for (std::size_t i = 0; i < sites.size(); ++i)
      (i < locals.size() ? zeroed : support).push_back(sites[i]);
  };
  CliffordCircuit va, vb;
  nullity_on(side_residual(true), va, plan.zeroed_a, plan.support_a);
  work.apply(va);
  nullity_on(side_residual(false), vb, plan.zeroed_b, plan.support_b);
  work.apply(vb);
  plan.v_a = va;
  plan.v_b = vb;

  plan.teleport_qubits =
      std::min(plan.support_a.size(), plan.support_b.size());
  plan.cc_bits = plan.teleport_qubits;
  plan.ebits = plan.m_plus + plan.teleport_qubits;
  return plan;
}

WitnessPlan witness_plan(const StabTableau& tab,
                         const std::vector<Bipartition>& cuts, double e_level,
                         double eps, double delta) {
  if (cuts.empty()) throw std::invalid_argument("witness needs >= 1 cut");
  if (!(eps >= 0.0) || !(delta > 0.0 && delta < 1.0))
    throw std::invalid_argument("bad eps/delta");
  double nu = static_cast<double>(tab.nullity());
  double m = HUGE_VAL;
  for (const auto& cut : cuts)
    m = std::min(m,
                 std::floor(tab.stabilizer_entanglement(cut).value() - nu / 2));
  WitnessPlan plan;
  plan.m_of_b = static_cast<long>(m);
  plan.e_level = e_level;
  plan.extrapolated = e_level > 0.0;
  plan.threshold = std::exp2(-m + e_level);
  double slack = eps + plan.threshold;
  if (slack >= 1.0)
    throw InfeasibleError("infeasible witness plan: eps + 2^{-M+E} >= 1");
  plan.delta_margin = 1.0 - slack;
  plan.n_shots = static_cast<std::size_t>(std::ceil(
      2.0 * std::log(2.0 / delta) / (plan.delta_margin * plan.delta_margin)));
  return plan;
}

WitnessEstimate witness_estimate(const Eigen::MatrixXcd& rho,
                                 const StabTableau& tab, std::size_t n_shots,
                                 double threshold, Rng& rng) {
  if (n_shots == 0) throw std::invalid_argument("n_shots must be >= 1");
  double acc = 0.0;
  for (std::size_t s = 0; s < n_shots; ++s) {
    Pauli p(tab.n());
    p.set_sign(1);
    for (const auto& g : tab.gens())
      if (rng() & 1) p = multiply(p, g);
    acc += sample_pauli_shot(rho, p, rng);
  }
  WitnessEstimate est;
  est.pi_hat = acc / static_cast<double>(n_shots);
  est.entangled = threshold - est.pi_hat < 0.0;
  return est;
}

CoolResult entanglement_cool(const StabTableau& tab, const Bipartition& cut) {
  std::size_t n = tab.n();
  std::size_t nu = tab.nullity();
  if (2 * nu > n)
    throw InfeasibleError("entanglement_cool requires nu <= n/2");
  double pre_e = tab.stabilizer_entanglement(cut).value();

  CoolResult res;
  res.circuit = tab.nullity_distillation();
  res.circuit.n = n;
  StabTableau work = tab;
  work.apply(res.circuit);

  bool big_a = cut.n_a() >= cut.n_b();
  std::size_t s_size = tab.num_gens();
  std::vector<std::size_t> free_side;  // zeroed qubits in the big side
  for (std::size_t q = 0; q < s_size; ++q)
    if (cut.a_mask.get(q) == big_a) free_side.push_back(q);
  std::size_t next = 0;
  for (std::size_t r = s_size; r < n; ++r) {
    if (cut.a_mask.get(r) == big_a) continue;  // remainder already inside
    GateOp sw{Gate::SWAP, r, free_side.at(next++)};
    res.circuit.gates.push_back(sw);
    work.apply(sw);
  }
  res.post_e = work.stabilizer_entanglement(cut).value();
  res.ratio = pre_e > 0.0 ? res.post_e / pre_e : 0.0;
  return res;
}

}  // namespace stabent
