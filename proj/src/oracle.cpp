#include "stabent/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <unordered_map>

namespace stabent {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

uint64_t mask_of(const BitVec& v) {
  uint64_t m = 0;
  for (std::size_t j = 0; j < v.size(); ++j)
    if (v.get(j)) m |= uint64_t{1} << j;
  return m;
}

std::complex<double> i_pow(unsigned k) {
  switch (k & 3u) {
    case 0: return {1, 0};
    case 1: return {0, 1};
    case 2: return {-1, 0};
    default: return {0, -1};
  }
}

void check_dense_cap(std::size_t n) {
  if (n > kDenseCap) throw std::invalid_argument("dense cap exceeded");
}

}  // namespace

DenseState DenseState::zero_state(std::size_t n) {
  check_dense_cap(n);
  DenseState s;
  s.n = n;
  s.amps.assign(std::size_t{1} << n, 0.0);
  s.amps[0] = 1.0;
  return s;
}

double DenseState::norm() const {
  double t = 0;
  for (auto a : amps) t += std::norm(a);
  return std::sqrt(t);
}

void apply_gate_dense(DenseState& s, const GateOp& g) {
  const std::size_t dim = s.amps.size();
  const uint64_t ma = uint64_t{1} << g.a;
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  switch (g.gate) {
    case Gate::H:
      for (uint64_t j = 0; j < dim; ++j) {
        if (j & ma) continue;
        auto a0 = s.amps[j], a1 = s.amps[j | ma];
        s.amps[j] = inv_sqrt2 * (a0 + a1);
        s.amps[j | ma] = inv_sqrt2 * (a0 - a1);
      }
      break;
    case Gate::S:
      for (uint64_t j = 0; j < dim; ++j)
        if (j & ma) s.amps[j] *= kI;
      break;
    case Gate::X:
      for (uint64_t j = 0; j < dim; ++j)
        if (!(j & ma)) std::swap(s.amps[j], s.amps[j | ma]);
      break;
    case Gate::Y:
      for (uint64_t j = 0; j < dim; ++j)
        if (!(j & ma)) {
          auto a0 = s.amps[j], a1 = s.amps[j | ma];
          s.amps[j] = -kI * a1;
          s.amps[j | ma] = kI * a0;
        }
      break;
    case Gate::Z:
      for (uint64_t j = 0; j < dim; ++j)
        if (j & ma) s.amps[j] = -s.amps[j];
      break;
    case Gate::CNOT: {
      const uint64_t mb = uint64_t{1} << g.b;
      for (uint64_t j = 0; j < dim; ++j)
        if ((j & ma) && !(j & mb)) std::swap(s.amps[j], s.amps[j | mb]);
      break;
    }
    case Gate::CZ: {
      const uint64_t mb = uint64_t{1} << g.b;
      for (uint64_t j = 0; j < dim; ++j)
        if ((j & ma) && (j & mb)) s.amps[j] = -s.amps[j];
      break;
    }
    case Gate::SWAP: {
      const uint64_t mb = uint64_t{1} << g.b;
      for (uint64_t j = 0; j < dim; ++j)
        if ((j & ma) && !(j & mb)) std::swap(s.amps[j], s.amps[(j ^ ma) | mb]);
      break;
    }
  }
}

void apply_unitary_dense(DenseState& s, const Eigen::MatrixXcd& u,
                         const std::vector<std::size_t>& sites) {
  const std::size_t l = sites.size();
  const std::size_t sub = std::size_t{1} << l;
  if (static_cast<std::size_t>(u.rows()) != sub || u.rows() != u.cols())
    throw std::invalid_argument("unitary dimension mismatch");
  std::vector<uint64_t> site_mask(l);
  uint64_t all = 0;
  for (std::size_t i = 0; i < l; ++i) {
    site_mask[i] = uint64_t{1} << sites[i];
    all |= site_mask[i];
  }
  Eigen::VectorXcd in(sub), out(sub);
  for (uint64_t base = 0; base < s.amps.size(); ++base) {
    if (base & all) continue;
    for (uint64_t k = 0; k < sub; ++k) {
      uint64_t idx = base;
      for (std::size_t i = 0; i < l; ++i)
        if (k & (uint64_t{1} << i)) idx |= site_mask[i];
      in(k) = s.amps[idx];
    }
    out = u * in;
    for (uint64_t k = 0; k < sub; ++k) {
      uint64_t idx = base;
      for (std::size_t i = 0; i < l; ++i)
        if (k & (uint64_t{1} << i)) idx |= site_mask[i];
      s.amps[idx] = out(k);
    }
  }
}

int measure_z_dense(DenseState& s, std::size_t site, Rng& rng) {
  const uint64_t m = uint64_t{1} << site;
  double p0 = 0;
  for (uint64_t j = 0; j < s.amps.size(); ++j)
    if (!(j & m)) p0 += std::norm(s.amps[j]);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int outcome = u(rng) < p0 ? 1 : -1;
  double norm = std::sqrt(outcome > 0 ? p0 : 1.0 - p0);
  for (uint64_t j = 0; j < s.amps.size(); ++j) {
    bool keep = ((j & m) == 0) == (outcome > 0);
    s.amps[j] = keep ? s.amps[j] / norm : 0.0;
  }
  return outcome;
}

Eigen::MatrixXcd haar_unitary(std::size_t dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Eigen::MatrixXcd m(dim, dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) m(i, j) = {g(rng), g(rng)};
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(m);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < dim; ++j) {
    std::complex<double> d = r(j, j);
    q.col(j) *= d / std::abs(d);
  }
  return q;
}

DenseState simulate_dense(const Circuit& c, Rng& rng) {
  DenseState s = DenseState::zero_state(c.n);
  for (const auto& op : c.ops) {
    switch (op.kind) {
      case CircuitOp::Kind::Clifford:
        apply_gate_dense(s, op.gate);
        break;
      case CircuitOp::Kind::NonClifford:
        if (op.label == "T") {
          Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
          u(1, 1) = std::exp(kI * (M_PI / 4));
          apply_unitary_dense(s, u, op.sites);
        } else if (op.label == "RZ") {
          Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(2, 2);
          u(1, 1) = std::exp(kI * op.theta);
          apply_unitary_dense(s, u, op.sites);
        } else if (op.label == "HAAR") {
          apply_unitary_dense(
              s, haar_unitary(std::size_t{1} << op.sites.size(), rng),
              op.sites);
        } else {
          throw std::invalid_argument("unknown non-Clifford op: " + op.label);
        }
        break;
      case CircuitOp::Kind::MeasureZ:
        measure_z_dense(s, op.sites[0], rng);
        break;
    }
  }
  return s;
}

void apply_clifford_dense(DenseState& s, const CliffordCircuit& c) {
  for (const auto& g : c.gates) apply_gate_dense(s, g);
}

DenseState dense_from_tableau(const StabTableau& t) {
  if (t.nullity() != 0)
    throw std::invalid_argument("dense_from_tableau needs a full-rank tableau");
  DenseState s = DenseState::zero_state(t.n());
  apply_clifford_dense(s, t.nullity_distillation().inverse());
  return s;
}

Eigen::MatrixXcd pauli_matrix(const Pauli& p) {
  const std::size_t dim = std::size_t{1} << p.n();
  const uint64_t xm = mask_of(p.x), zm = mask_of(p.z);
  const std::complex<double> ph = i_pow(p.phase_i_exp);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (uint64_t j = 0; j < dim; ++j) {
    double sgn = (std::popcount(j & zm) & 1) ? -1.0 : 1.0;
    m(j ^ xm, j) = ph * sgn;
  }
  return m;
}

Eigen::MatrixXcd projector_matrix(const StabTableau& t) {
  const std::size_t dim = std::size_t{1} << t.n();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(dim, dim);
  for (const auto& g : t.gens()) m = 0.5 * (m + pauli_matrix(g) * m);
  return m;
}

Eigen::MatrixXcd density_matrix(const DenseState& s) {
  const std::size_t dim = s.amps.size();
  Eigen::VectorXcd v(dim);
  for (std::size_t j = 0; j < dim; ++j) v(j) = s.amps[j];
  return v * v.adjoint();
}

Eigen::MatrixXcd reduced_density(const DenseState& s, const BitVec& keep_mask) {
  std::vector<std::size_t> kept, traced;
  for (std::size_t j = 0; j < s.n; ++j)
    (keep_mask.get(j) ? kept : traced).push_back(j);
  const std::size_t da = std::size_t{1} << kept.size();
  const std::size_t db = std::size_t{1} << traced.size();
  auto full_index = [&](uint64_t a, uint64_t b) {
    uint64_t j = 0;
    for (std::size_t i = 0; i < kept.size(); ++i)
      if (a & (uint64_t{1} << i)) j |= uint64_t{1} << kept[i];
    for (std::size_t i = 0; i < traced.size(); ++i)
      if (b & (uint64_t{1} << i)) j |= uint64_t{1} << traced[i];
    return j;
  };
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(da, da);
  for (uint64_t b = 0; b < db; ++b)
    for (uint64_t a = 0; a < da; ++a) {
      auto va = s.amps[full_index(a, b)];
      if (va == std::complex<double>{}) continue;
      for (uint64_t a2 = 0; a2 < da; ++a2)
        rho(a, a2) += va * std::conj(s.amps[full_index(a2, b)]);
    }
  return rho;
}

double renyi_entropy_eigs(const Eigen::MatrixXcd& rho, double alpha) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho,
                                                     Eigen::EigenvaluesOnly);
  std::vector<double> lam;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    double l = es.eigenvalues()(i);
    if (l > 1e-12) lam.push_back(l);
  }
  if (lam.empty()) return 0.0;
  if (alpha == 0.0) {
    std::size_t r = 0;
    for (double l : lam)
      if (l > 1e-10) ++r;
    return std::log2(static_cast<double>(std::max<std::size_t>(r, 1)));
  }
  if (alpha == 1.0) {
    double h = 0;
    for (double l : lam) h -= l * std::log2(l);
    return std::max(0.0, h);
  }
  if (std::isinf(alpha)) {
    return -std::log2(*std::max_element(lam.begin(), lam.end()));
  }
  double t = 0;
  for (double l : lam) t += std::pow(l, alpha);
  return std::max(0.0, std::log2(t) / (1.0 - alpha));
}

double renyi_entropy_dense(const DenseState& s, const Bipartition& cut,
                           double alpha) {
  return renyi_entropy_eigs(reduced_density(s, cut.a_mask), alpha);
}

double expectation(const DenseState& s, const Pauli& p) {
  const uint64_t xm = mask_of(p.x), zm = mask_of(p.z);
  const std::complex<double> ph = i_pow(p.phase_i_exp);
  std::complex<double> acc = 0;
  for (uint64_t j = 0; j < s.amps.size(); ++j) {
    double sgn = (std::popcount(j & zm) & 1) ? -1.0 : 1.0;
    acc += std::conj(s.amps[j ^ xm]) * (ph * sgn) * s.amps[j];
  }
  return acc.real();
}

double expectation(const Eigen::MatrixXcd& rho, const Pauli& p) {
  const uint64_t xm = mask_of(p.x), zm = mask_of(p.z);
  const std::complex<double> ph = i_pow(p.phase_i_exp);
  std::complex<double> acc = 0;
  // tr(rho P) = sum_j (rho P)_{jj} = sum_j rho(j, j^x) * P(j^x, j)
  for (Eigen::Index j = 0; j < rho.rows(); ++j) {
    uint64_t src = static_cast<uint64_t>(j) ^ xm;
    double sgn = (std::popcount(static_cast<uint64_t>(j) & zm) & 1) ? -1.0
                                                                    : 1.0;
    acc += rho(j, src) * ph * sgn;
  }
  return acc.real();
}

int sample_pauli_shot(const Eigen::MatrixXcd& rho, const Pauli& p, Rng& rng) {
  double e = expectation(rho, p);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < 0.5 * (1.0 + e) ? 1 : -1;
}

namespace {

// Walsh-Hadamard transform over the Z index: after the call,
// v[z] = sum_j (-1)^{j.z} v_in[j].
void wht(std::vector<std::complex<double>>& v) {
  for (std::size_t h = 1; h < v.size(); h <<= 1)
    for (std::size_t i = 0; i < v.size(); i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        auto a = v[j], b = v[j + h];
        v[j] = a + b;
        v[j + h] = a - b;
      }
}

struct SpectrumEntry {
  uint64_t x, z;
  double c;  // expectation of the Hermitian-normalized Pauli
};

// All Paulis with |<P>| > tol, Hermitian-normalized, deterministic order.
std::vector<SpectrumEntry> pauli_spectrum(const DenseState& s, double tol) {
  if (s.n > kEnumCap) throw std::invalid_argument("enumeration cap exceeded");
  const std::size_t dim = s.amps.size();
  std::vector<SpectrumEntry> out;
  std::vector<std::complex<double>> v(dim);
  for (uint64_t x = 0; x < dim; ++x) {
    for (uint64_t j = 0; j < dim; ++j)
      v[j] = s.amps[j] * std::conj(s.amps[j ^ x]);
    wht(v);
    for (uint64_t z = 0; z < dim; ++z) {
      // Hermitian version is i^{|x&z|} X^x Z^z
      double c = (i_pow(std::popcount(x & z)) * v[z]).real();
      if (std::abs(c) > tol) out.push_back({x, z, c});
    }
  }
  return out;
}

Pauli pauli_from_masks(std::size_t n, uint64_t x, uint64_t z, int sign) {
  Pauli p(n);
  for (std::size_t j = 0; j < n; ++j) {
    if (x & (uint64_t{1} << j)) p.x.set(j, true);
    if (z & (uint64_t{1} << j)) p.z.set(j, true);
  }
  p.set_sign(sign);
  return p;
}

}  // namespace

StabTableau extract_stabilizer_group(const DenseState& s, double tol) {
  StabTableau t(s.n);
  for (const auto& e : pauli_spectrum(s, 1.0 - tol)) {
    if (e.x == 0 && e.z == 0) continue;
    Pauli p = pauli_from_masks(s.n, e.x, e.z, e.c > 0 ? 1 : -1);
    if (!in_rowspan(p.symplectic(), t.symplectic_matrix())) t.add_generator(p);
  }
  return t;
}

DopedState extract_doped_decomposition(const DenseState& s, double tol) {
  DopedState d;
  d.tab = extract_stabilizer_group(s, tol);
  RrefResult gr = rref(d.tab.symplectic_matrix());

  // canonical coset label: eliminate pivot columns of the group rowspan
  auto canonical = [&](const Pauli& p) {
    BitVec v = p.symplectic();
    for (std::size_t r = 0; r < gr.rank; ++r)
      if (v.get(gr.pivot_cols[r])) v.xor_with(gr.m.row(r));
    std::string key;
    for (uint64_t w : v.words()) key.append(reinterpret_cast<char*>(&w), 8);
    return key;
  };

  Pauli id(s.n);
  d.cosets.emplace_back(id, 1.0);
  std::unordered_map<std::string, std::size_t> seen;
  seen[canonical(id)] = 0;
  for (const auto& e : pauli_spectrum(s, tol)) {
    Pauli p = pauli_from_masks(s.n, e.x, e.z, 1);
    std::string key = canonical(p);
    if (seen.count(key)) continue;
    seen[key] = d.cosets.size();
    d.cosets.emplace_back(p, e.c);
  }
  return d;
}

Depolarized depolarize(const DenseState& s, double strength) {
  if (s.n > kEnumCap) throw std::invalid_argument("density-matrix cap exceeded");
  const std::size_t dim = s.amps.size();
  Depolarized out;
  out.rho = (1.0 - strength) * density_matrix(s) +
            (strength / static_cast<double>(dim)) *
                Eigen::MatrixXcd::Identity(dim, dim);
  // rho - psi = q*(I/d - psi): eigenvalues q/d (d-1 times) and q/d - q
  out.trace_distance =
      0.5 * (strength * (dim - 1) / dim + std::abs(strength / dim - strength));
  return out;
}

double trace_distance(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a - b,
                                                     Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

namespace {

BitVec union_mask(std::size_t n, std::initializer_list<const std::vector<std::size_t>*> parts) {
  BitVec m(n);
  for (const auto* p : parts)
    for (auto q : *p) m.set(q, true);
  return m;
}

}  // namespace

double topo_entropy(const DenseState& s, const RegionSet& r, double alpha) {
  auto ent = [&](const BitVec& mask) {
    return renyi_entropy_eigs(reduced_density(s, mask), alpha);
  };
  return ent(union_mask(s.n, {&r.a, &r.b})) +
         ent(union_mask(s.n, {&r.b, &r.c})) - ent(union_mask(s.n, {&r.b})) -
         ent(union_mask(s.n, {&r.a, &r.b, &r.c}));
}

double topo_entropy_stab(const StabTableau& t, const RegionSet& r) {
  auto ent = [&](const BitVec& mask) {
    Bipartition cut;
    cut.a_mask = mask;
    return t.stabilizer_entanglement(cut).value();
  };
  return ent(union_mask(t.n(), {&r.a, &r.b})) +
         ent(union_mask(t.n(), {&r.b, &r.c})) - ent(union_mask(t.n(), {&r.b})) -
         ent(union_mask(t.n(), {&r.a, &r.b, &r.c}));
}

StabTableau toric_code_tableau(std::size_t l1, std::size_t l2) {
  const std::size_t n = 2 * l1 * l2;
  auto h_edge = [&](std::size_t i, std::size_t j) {
    return 2 * ((i % l1) * l2 + (j % l2));
  };
  auto v_edge = [&](std::size_t i, std::size_t j) {
    return 2 * ((i % l1) * l2 + (j % l2)) + 1;
  };
  StabTableau t(n);
  // stars A_v = prod Z on the four edges meeting vertex (i,j)
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < l2; ++j) {
      if (i == l1 - 1 && j == l2 - 1) continue;  // product of all = identity
      Pauli p(n);
      p.z.flip(h_edge(i, j));
      p.z.flip(h_edge(i, j + l2 - 1));
      p.z.flip(v_edge(i, j));
      p.z.flip(v_edge(i + l1 - 1, j));
      p.set_sign(1);
      t.add_generator(p);
    }
  // plaquettes B_p = prod X on the boundary of face (i,j)
  for (std::size_t i = 0; i < l1; ++i)
    for (std::size_t j = 0; j < l2; ++j) {
      if (i == l1 - 1 && j == l2 - 1) continue;
      Pauli p(n);
      p.x.flip(h_edge(i, j));
      p.x.flip(h_edge(i + 1, j));
      p.x.flip(v_edge(i, j));
      p.x.flip(v_edge(i, j + 1));
      p.set_sign(1);
      t.add_generator(p);
    }
  return t.stabilizer_completion();
}

}  // namespace stabent
