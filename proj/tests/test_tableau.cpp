#include <cmath>
#include <sstream>

#include "doctest.h"
#include "stabent/dynamics.hpp"
#include "stabent/oracle.hpp"
#include "stabent/tableau.hpp"

using namespace stabent;

namespace {

StabTableau bell() {
  StabTableau t = StabTableau::zero_state(2);
  t.apply({Gate::H, 0});
  t.apply({Gate::CNOT, 0, 1});
  return t;
}

StabTableau ghz(std::size_t n) {
  StabTableau t = StabTableau::zero_state(n);
  t.apply({Gate::H, 0});
  for (std::size_t q = 1; q < n; ++q) t.apply({Gate::CNOT, 0, q});
  return t;
}

}  // namespace

TEST_CASE("conjugation basics") {
  StabTableau t = StabTableau::zero_state(1);
  t.apply({Gate::H, 0});
  CHECK(to_string(t.gen(0)) == "+X");
  StabTableau b = bell();
  CHECK(to_string(b.gen(0)) == "+XX");
  CHECK(to_string(b.gen(1)) == "+ZZ");
}

TEST_CASE("random clifford word: stabilizers have dense expectation +1") {
  Rng rng(2);
  for (int trial = 0; trial < 20; ++trial) {
    StabTableau t = StabTableau::zero_state(5);
    CliffordCircuit c = random_clifford(5, rng);
    t.apply(c);
    t.validate();
    DenseState d = DenseState::zero_state(5);
    apply_clifford_dense(d, c);
    for (const auto& g : t.gens())
      CHECK(expectation(d, g) == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("measure_z deterministic case") {
  StabTableau t = StabTableau::zero_state(1);
  auto r = t.measure_z(0, nullptr);
  CHECK(r.outcome == 1);
  CHECK_FALSE(r.was_random);
  CHECK(to_string(t.gen(0)) == "+Z");
}

TEST_CASE("measure_z on Bell: random outcome, correlated post-state") {
  Rng rng(6);
  for (int trial = 0; trial < 50; ++trial) {
    StabTableau t = bell();
    auto r = t.measure_z(0, &rng);
    CHECK(r.was_random);
    Pauli z0 = single_site(2, 0, 3), z1 = single_site(2, 1, 3);
    z0.set_sign(r.outcome);
    z1.set_sign(r.outcome);
    CHECK(t.group_sign(z0).value_or(0) == 1);
    CHECK(t.group_sign(z1).value_or(0) == 1);
  }
}

TEST_CASE("measurement statistics match dense Born probabilities") {
  Rng seed_rng(77);
  CliffordCircuit c = random_clifford(4, seed_rng);
  StabTableau base = StabTableau::zero_state(4);
  base.apply(c);
  DenseState d = DenseState::zero_state(4);
  apply_clifford_dense(d, c);
  for (std::size_t site = 0; site < 4; ++site) {
    double p_plus = 0.5 * (1.0 + expectation(d, single_site(4, site, 3)));
    Rng rng(1000 + site);
    int plus = 0;
    const int shots = 10000;
    for (int s = 0; s < shots; ++s) {
      StabTableau t = base;
      if (t.measure_z(site, &rng).outcome == 1) ++plus;
    }
    double freq = static_cast<double>(plus) / shots;
    double sigma = std::sqrt(std::max(p_plus * (1 - p_plus), 1e-12) / shots);
    CHECK(std::abs(freq - p_plus) <= std::max(3 * sigma, 1e-9));
  }
}

TEST_CASE("local generators") {
  Bipartition a0 = Bipartition::from_sites(2, {0});
  CHECK(bell().local_generators(a0.a_mask).empty());
  CHECK(bell().local_generators(a0.b_mask()).empty());

  StabTableau g = ghz(3);
  Bipartition cut = Bipartition::from_sites(3, {0});
  auto locals_b = g.local_generators(cut.b_mask());
  REQUIRE(locals_b.size() == 1);
  CHECK(to_string(locals_b[0]) == "+IZZ");

  StabTableau prod = StabTableau::zero_state(3);
  auto la = prod.local_generators(Bipartition::from_sites(3, {0, 2}).a_mask);
  auto lb = prod.local_generators(Bipartition::from_sites(3, {0, 2}).b_mask());
  CHECK(la.size() + lb.size() == 3);
}

TEST_CASE("stabilizer entanglement") {
  CHECK(bell().stabilizer_entanglement(Bipartition::half(2)).twice == 2);
  CHECK(StabTableau::zero_state(2)
            .stabilizer_entanglement(Bipartition::half(2))
            .twice == 0);
  // group of T(|+>) tensor |+> is {+X on qubit 1} only: E = 0 but the
  // per-side quantities differ
  StabTableau t(2);
  t.add_generator(parse_pauli("+IX"));
  Bipartition cut = Bipartition::from_sites(2, {0});
  CHECK(t.stabilizer_entanglement(cut).twice == 0);
  auto sa = t.local_generators(cut.a_mask).size();
  auto sb = t.local_generators(cut.b_mask()).size();
  CHECK(1 - static_cast<long>(sa) == 1);  // n_A - |S_A| = 1
  CHECK(1 - static_cast<long>(sb) == 0);  // n_B - |S_B| = 0
}

TEST_CASE("entanglement is invariant under local Cliffords") {
  Rng rng(8);
  for (int trial = 0; trial < 30; ++trial) {
    std::size_t n = 4 + rng() % 4;
    StabTableau t = StabTableau::zero_state(n);
    t.apply(random_clifford(n, rng));
    Bipartition cut = Bipartition::half(n);
    long e = t.stabilizer_entanglement(cut).twice;
    // a Clifford acting on side A only
    CliffordCircuit local = random_clifford(cut.n_a(), rng);
    for (auto& g : local.gates) {
      // sites already within [0, n_a); A = first half by construction
    }
    local.n = n;
    t.apply(local);
    CHECK(t.stabilizer_entanglement(cut).twice == e);
  }
}

TEST_CASE("canonical pairing") {
  auto split = bell().canonical_pairing(Bipartition::half(2));
  CHECK(split.pairs.size() == 1);
  CHECK(split.s_a.empty());
  CHECK(split.s_b.empty());
  CHECK(split.unpaired.empty());

  Rng rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    StabTableau t = StabTableau::zero_state(8);
    t.apply(random_clifford(8, rng));
    Bipartition cut = Bipartition::half(8);
    // pure state: no unpaired
    CHECK(t.canonical_pairing(cut).unpaired.empty());
    // drop two generators: nu = 2, unpaired <= 2
    StabTableau dropped(8);
    for (std::size_t i = 0; i + 2 < 8; ++i) dropped.add_generator(t.gen(i));
    auto sp = dropped.canonical_pairing(cut);
    CHECK(sp.unpaired.size() <= 2);
    BitVec am = cut.a_mask;
    for (const auto& [g, h] : sp.pairs)
      CHECK_FALSE(commutes(restrict_to(g, am), restrict_to(h, am)));
    // reassembly: locals + pairs + unpaired generate the same group
    StabTableau re(8);
    for (const auto& p : sp.s_a) re.add_generator(p);
    for (const auto& p : sp.s_b) re.add_generator(p);
    for (const auto& [g, h] : sp.pairs) {
      re.add_generator(g);
      re.add_generator(h);
    }
    for (const auto& p : sp.unpaired) re.add_generator(p);
    CHECK(re.same_group(dropped));
  }
}

TEST_CASE("nullity distillation") {
  // zero state: conjugation fixes {+Z_i}
  StabTableau z = StabTableau::zero_state(3);
  CliffordCircuit u = z.nullity_distillation();
  StabTableau z2 = z;
  z2.apply(u);
  CHECK(z2.same_group(StabTableau::zero_state(3)));

  // Bell: dense state after the circuit is |00>
  StabTableau b = bell();
  CliffordCircuit ub = b.nullity_distillation();
  DenseState d = dense_from_tableau(b);
  apply_clifford_dense(d, ub);
  CHECK(std::abs(d.amps[0]) == doctest::Approx(1.0).epsilon(1e-12));

  // 6-qubit |S|=4: output of form |0000> tensor phi
  Rng rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    CliffordCircuit c = random_clifford(6, rng);
    StabTableau t(6);
    for (std::size_t i = 0; i < 4; ++i) {
      StabTableau zi = StabTableau::zero_state(6);
      t.add_generator(conjugate(zi.gen(i), c));
    }
    // dense state: C (|0000> tensor haar phi on last 2 qubits)
    DenseState d6 = DenseState::zero_state(6);
    Eigen::MatrixXcd phi = haar_unitary(4, rng);
    apply_unitary_dense(d6, phi, {4, 5});
    apply_clifford_dense(d6, c);
    CliffordCircuit u6 = t.nullity_distillation();
    apply_clifford_dense(d6, u6);
    for (std::size_t q = 0; q < 4; ++q)
      CHECK(expectation(d6, single_site(6, q, 3)) ==
            doctest::Approx(1.0).epsilon(1e-10));
    // remaining 2-qubit factor is pure
    BitVec keep(6);
    keep.set(4, true);
    keep.set(5, true);
    Eigen::MatrixXcd rho = reduced_density(d6, keep);
    CHECK((rho * rho).trace().real() == doctest::Approx(1.0).epsilon(1e-10));
  }
}

TEST_CASE("stabilizer completion") {
  StabTableau full = bell();
  CHECK(full.stabilizer_completion().same_group(full));

  StabTableau empty(3);
  StabTableau comp = empty.stabilizer_completion();
  CHECK(comp.num_gens() == 3);
  comp.validate();

  Rng rng(14);
  for (int trial = 0; trial < 20; ++trial) {
    StabTableau t = StabTableau::zero_state(6);
    t.apply(random_clifford(6, rng));
    StabTableau part(6);
    for (std::size_t i = 0; i + 2 < 6; ++i) part.add_generator(t.gen(i));
    StabTableau done = part.stabilizer_completion();
    CHECK(done.num_gens() == 6);
    done.validate();
    // contains the original group
    for (const auto& g : part.gens()) CHECK(done.group_sign(g).has_value());
  }
}

TEST_CASE("add_generator rejects bad inputs") {
  StabTableau t(2);
  t.add_generator(parse_pauli("+XX"));
  CHECK_THROWS(t.add_generator(parse_pauli("+ZI")));  // anticommutes
  CHECK_THROWS(t.add_generator(parse_pauli("-XX")));  // dependent
  Pauli nonherm = parse_pauli("+XX");
  nonherm.phase_i_exp = 1;
  CHECK_THROWS(t.add_generator(nonherm));
  t.add_generator(parse_pauli("+ZZ"));
  CHECK_THROWS(t.add_generator(parse_pauli("-YY")));  // group is full
}

TEST_CASE("discard and add qubits") {
  StabTableau g = ghz(3);
  g.discard_qubits({2});
  CHECK(g.n() == 2);
  REQUIRE(g.num_gens() == 1);
  CHECK(to_string(g.gen(0)) == "+ZZ");
  g.add_qubit();
  CHECK(g.n() == 3);
  CHECK(g.num_gens() == 2);
  CHECK(to_string(g.gen(1)) == "+IIZ");
}

TEST_CASE("tableau text format round trip") {
  std::istringstream in("n=3\n+XXX\n+ZZI\nZ1 Z2\n");
  StabTableau t = parse_tableau(in);
  CHECK(t.num_gens() == 3);
  std::istringstream again(to_string(t));
  CHECK(parse_tableau(again).same_group(t));
  std::istringstream noheader("+XX\n");
  CHECK_THROWS(parse_tableau(noheader));
}
