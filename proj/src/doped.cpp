#include "stabent/doped.hpp"

#include <cmath>
#include <stdexcept>

namespace stabent {

void DopedState::validate(bool pure) const {
  tab.validate();
  if (cosets.empty() || !cosets[0].first.is_identity() ||
      std::abs(cosets[0].second - 1.0) > 1e-9)
    throw std::invalid_argument("cosets must start with (I, 1)");
  std::size_t v = nu();
  if (v < 32 && cosets.size() > (std::size_t{1} << (2 * v)))
    throw std::invalid_argument("more than 2^{2nu} cosets");
  BinMatrix span = tab.symplectic_matrix();
  double csum = 0.0;
  for (std::size_t i = 0; i < cosets.size(); ++i) {
    if (cosets[i].second == 0.0)
      throw std::invalid_argument("zero coset coefficient");
    csum += cosets[i].second * cosets[i].second;
    for (std::size_t j = i + 1; j < cosets.size(); ++j) {
      Pauli prod = multiply(cosets[i].first, cosets[j].first);
      if (in_rowspan(prod.symplectic(), span))
        throw std::invalid_argument("two representatives share a coset");
    }
  }
  if (pure && std::abs(csum - std::ldexp(1.0, static_cast<int>(v))) > 1e-6)
    throw std::invalid_argument("sum of c^2 != 2^nu for pure state");
}

double renyi2_exact(const DopedState& s, const Bipartition& cut) {
  const StabTableau& t = s.tab;
  BitVec bm = cut.b_mask();
  BinMatrix restricted_b(0, 2 * t.n());
  for (const auto& g : t.gens())
    restricted_b.append_row(restrict_to(g, bm).symplectic());
  // |S_A| = |S| - rank(P_B(T))
  std::size_t rb = rank(restricted_b);
  std::size_t s_a = t.num_gens() - rb;

  // Kahan-compensated sum of delta_i c_i^2; delta_0 = 1 forces sum >= 1.
  double sum = 0.0, comp = 0.0;
  for (const auto& [h, c] : s.cosets) {
    if (!in_rowspan(restrict_to(h, bm).symplectic(), restricted_b)) continue;
    double term = c * c - comp;
    double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
  }
  if (!(sum >= 1.0 - 1e-12))
    throw std::logic_error("renyi2_exact: coset sum < 1 (invariant breach)");
  return (static_cast<double>(cut.n_a()) - static_cast<double>(s_a)) -
         std::log2(sum);
}

std::pair<double, double> entropy_interval(const StabTableau& tab,
                                           const Bipartition& cut,
                                           EntropyClass cls) {
  double e = tab.stabilizer_entanglement(cut).value();
  double v = static_cast<double>(tab.nullity());
  double lo = cls == EntropyClass::AllAlpha ? e - 1.5 * v : e - 0.5 * v;
  return {std::max(0.0, lo), e + 0.5 * v};
}

PhaseVerdict phase_classify(const StabTableau& tab, const Bipartition& cut,
                            double theta) {
  PhaseVerdict v;
  v.nu = static_cast<double>(tab.nullity());
  v.e = tab.stabilizer_entanglement(cut).value();
  if (v.e < 0) throw std::invalid_argument("negative E");
  v.ratio = v.e > 0 ? v.nu / v.e : (v.nu > 0 ? HUGE_VAL : 0.0);
  if (v.e == 0.0 && v.nu == 0.0) {
    v.ed = false;
    v.unentangled_warning = true;
    return v;
  }
  v.ed = v.nu <= theta * v.e;
  return v;
}

PhaseVerdict phase_property_test(const StabTableau& learned_group,
                                 const Bipartition& cut, double theta) {
  return phase_classify(learned_group, cut, theta);
}

}  // namespace stabent
