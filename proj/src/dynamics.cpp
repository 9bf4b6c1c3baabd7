#include "stabent/dynamics.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stabent/protocols.hpp"

namespace stabent {

namespace mp = boost::multiprecision;

MonitorTrace monitor_circuit(const Circuit& c, const Bipartition& cut) {
  MonitorTrace trace;
  StabTableau tab = StabTableau::zero_state(c.n);
  std::size_t removed = 0;
  std::size_t step = 0;
  BitVec bm = cut.b_mask();

  auto record = [&]() {
    MonitorRecord r;
    r.step = step;
    r.s_size = tab.num_gens();
    BinMatrix rb(0, 2 * tab.n());
    for (const auto& g : tab.gens())
      rb.append_row(restrict_to(g, bm).symplectic());
    r.s_a = tab.num_gens() - rank(rb);
    r.nu_removed = removed;
    r.bound_hi = static_cast<double>(cut.n_a()) - static_cast<double>(r.s_a);
    r.bound_lo = std::max(0.0, r.bound_hi - 2.0 * static_cast<double>(
                                                tab.nullity()));
    trace.records.push_back(r);
  };

  record();
  for (const auto& op : c.ops) {
    ++step;
    switch (op.kind) {
      case CircuitOp::Kind::Clifford:
        tab.apply(op.gate);
        break;
      case CircuitOp::Kind::MeasureZ:
        throw std::invalid_argument(
            "monitor_circuit does not handle measurements");
      case CircuitOp::Kind::NonClifford: {
        // row-reduce so that at most 2|X| generators act on the gate sites,
        // then drop them
        std::vector<Pauli> gens(tab.gens());
        std::vector<bool> is_pivot(gens.size(), false);
        for (auto site : op.sites) {
          for (int which = 0; which < 2; ++which) {
            auto bit = [&](const Pauli& p) {
              return which == 0 ? p.x.get(site) : p.z.get(site);
            };
            std::size_t piv = gens.size();
            for (std::size_t i = 0; i < gens.size(); ++i)
              if (!is_pivot[i] && bit(gens[i])) {
                piv = i;
                break;
              }
            if (piv == gens.size()) continue;
            is_pivot[piv] = true;
            for (std::size_t i = 0; i < gens.size(); ++i)
              if (i != piv && !is_pivot[i] && bit(gens[i]))
                gens[i] = multiply(gens[i], gens[piv]);
          }
        }
        StabTableau next(tab.n());
        for (std::size_t i = 0; i < gens.size(); ++i)
          if (!is_pivot[i])
            next.add_generator(gens[i]);
          else
            ++removed;
        tab = next;
        break;
      }
    }
    record();
  }
  trace.final_tableau = tab;
  return trace;
}

namespace {

Pauli sample_tail_pauli(std::size_t n, std::size_t lo, Rng& rng) {
  for (;;) {
    Pauli p(n);
    bool nonzero = false;
    for (std::size_t q = lo; q < n; ++q) {
      bool xb = rng() & 1, zb = rng() & 1;
      if (xb) p.x.set(q, true);
      if (zb) p.z.set(q, true);
      nonzero |= xb || zb;
    }
    if (!nonzero) continue;
    p.set_sign((rng() & 1) ? 1 : -1);
    return p;
  }
}

}  // namespace

CliffordCircuit random_clifford(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("random_clifford needs n >= 1");
  CliffordCircuit total;
  total.n = n;
  std::vector<CliffordCircuit> blocks;
  for (std::size_t i = 0; i < n; ++i) {
    Pauli p = sample_tail_pauli(n, i, rng);
    Pauli q(n);
    do {
      q = sample_tail_pauli(n, i, rng);
    } while (commutes(p, q));
    std::vector<std::size_t> allowed;
    for (std::size_t j = i; j < n; ++j) allowed.push_back(j);
    std::vector<std::pair<Pauli, Pauli>> cons = {
        {p, single_site(n, i, 1)}, {q, single_site(n, i, 3)}};
    blocks.push_back(clifford_from_pauli_images(cons, n, allowed));
  }
  for (auto it = blocks.rbegin(); it != blocks.rend(); ++it)
    total.append(it->inverse());
  return total;
}

Circuit sample_mu_t(std::size_t n, std::size_t t, std::size_t l, Rng& rng) {
  Circuit c;
  c.n = n;
  std::vector<std::size_t> sites;
  for (std::size_t q = 0; q < l; ++q) sites.push_back(q);
  for (std::size_t k = 0; k <= t; ++k) {
    c.add(random_clifford(n, rng));
    if (k < t) c.haar(sites);
  }
  return c;
}

double hybrid_f(std::size_t n, std::size_t nu, bool approx) {
  if (approx) return 1.0 - std::exp2(static_cast<double>(nu) -
                                     static_cast<double>(n));
  mp::cpp_int four_n = mp::pow(mp::cpp_int(2), static_cast<unsigned>(2 * n));
  mp::cpp_int num = four_n - mp::pow(mp::cpp_int(2),
                                     static_cast<unsigned>(n + nu));
  mp::cpp_int den = four_n - 1;
  return num.convert_to<double>() / den.convert_to<double>();
}

namespace {

double adaptive_r(const ChainSpec& spec, std::size_t i) {
  // r(i) = r0 (2^i - 1) / (2^n - 2^{i-1})
  double num = std::exp2(static_cast<double>(i)) - 1.0;
  double den = std::exp2(static_cast<double>(spec.n)) -
               std::exp2(static_cast<double>(i) - 1.0);
  return spec.r0 * num / den;
}

double base_pm(const ChainSpec& spec) {
  return spec.p_m > 0.0 ? spec.p_m : 0.5;
}

}  // namespace

double hybrid_p_up(const ChainSpec& spec, std::size_t nu) {
  if (nu >= spec.n) return 0.0;
  double pt = spec.adaptive ? adaptive_r(spec, nu + 1) * base_pm(spec)
                            : spec.p_t;
  return pt * hybrid_f(spec.n, nu, spec.approx_f);
}

double hybrid_p_down(const ChainSpec& spec, std::size_t nu) {
  if (nu == 0) return 0.0;
  double pm = spec.adaptive ? base_pm(spec) : spec.p_m;
  return pm * (1.0 - hybrid_f(spec.n, nu, spec.approx_f)) *
         (1.0 - std::exp2(-static_cast<double>(nu)));
}

StationaryResult hybrid_stationary(const ChainSpec& spec) {
  StationaryResult res;
  res.pi.assign(spec.n + 1, 0.0);
  if (spec.adaptive) {
    // Thm.-14 convention: pi(nu) = prod_{i<=nu} r(i) p-ratio(i) for nu >= 1,
    // pi(0) the normalization remainder.
    double tail = 0.0;
    for (std::size_t nu = 1; nu <= spec.n; ++nu) {
      double ratio = 1.0;
      for (std::size_t i = 1; i <= nu; ++i) {
        double up = adaptive_r(spec, i) * hybrid_f(spec.n, i - 1, spec.approx_f);
        double down = (1.0 - hybrid_f(spec.n, i, spec.approx_f)) *
                      (1.0 - std::exp2(-static_cast<double>(i)));
        ratio *= up / down;
      }
      res.pi[nu] = ratio;
      tail += ratio;
    }
    if (tail >= 1.0)
      throw std::invalid_argument("adaptive rule does not normalize (r0 too large)");
    res.pi[0] = 1.0 - tail;
  } else if (spec.p_t <= 0.0) {
    res.pi[0] = 1.0;
  } else if (spec.p_m <= 0.0) {
    res.pi[spec.n] = 1.0;  // absorbing at nu = n
  } else {
    std::vector<double> logw(spec.n + 1, -HUGE_VAL);
    logw[0] = 0.0;
    for (std::size_t nu = 1; nu <= spec.n; ++nu) {
      double up = hybrid_p_up(spec, nu - 1);
      double down = hybrid_p_down(spec, nu);
      if (up <= 0.0 || !std::isfinite(logw[nu - 1])) break;
      logw[nu] = logw[nu - 1] + std::log(up) - std::log(down);
    }
    double mx = *std::max_element(logw.begin(), logw.end());
    double z = 0.0;
    for (double lw : logw) z += std::exp(lw - mx);
    for (std::size_t nu = 0; nu <= spec.n; ++nu)
      res.pi[nu] = std::exp(logw[nu] - mx) / z;
  }
  for (std::size_t nu = 0; nu <= spec.n; ++nu)
    res.mean_nu += static_cast<double>(nu) * res.pi[nu];
  return res;
}

McResult hybrid_mc(const ChainSpec& spec, Rng& rng, std::size_t start_nu) {
  if (spec.layers == 0) throw std::invalid_argument("layers must be >= 1");
  McResult res;
  res.histogram.assign(spec.n + 1, 0.0);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t nu = start_nu;
  for (std::size_t s = 0; s < spec.layers; ++s) {
    double up = hybrid_p_up(spec, nu);
    double down = hybrid_p_down(spec, nu);
    double x = u(rng);
    if (x < up)
      ++nu;
    else if (x < up + down)
      --nu;
    res.histogram[nu] += 1.0;
  }
  res.steps = spec.layers;
  for (std::size_t v = 0; v <= spec.n; ++v) {
    res.histogram[v] /= static_cast<double>(spec.layers);
    res.mean_nu += static_cast<double>(v) * res.histogram[v];
  }
  return res;
}

StepFrequencies hybrid_full_mode_frequencies(const ChainSpec& spec,
                                             std::size_t nu,
                                             std::size_t trials, Rng& rng) {
  if (nu > spec.n) throw std::invalid_argument("nu > n");
  StabTableau tab(spec.n);
  for (std::size_t i = 0; i + nu < spec.n; ++i)
    tab.add_generator(single_site(spec.n, i, 3));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::size_t ups = 0, downs = 0;
  BinMatrix span = tab.symplectic_matrix();
  for (std::size_t s = 0; s < trials; ++s) {
    Pauli p = sample_tail_pauli(spec.n, 0, rng);
    bool anti = false;
    for (const auto& g : tab.gens())
      if (!commutes(g, p)) {
        anti = true;
        break;
      }
    double x = u(rng);
    if (x < spec.p_t) {
      if (anti) ++ups;
    } else if (x < spec.p_t + spec.p_m) {
      if (!anti && !in_rowspan(p.symplectic(), span)) ++downs;
    }
  }
  return {static_cast<double>(ups) / static_cast<double>(trials),
          static_cast<double>(downs) / static_cast<double>(trials)};
}

StabTableau choi_state(std::size_t n) {
  StabTableau t(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    Pauli xx(2 * n), zz(2 * n);
    xx.x.set(i, true);
    xx.x.set(i + n, true);
    xx.set_sign(1);
    zz.z.set(i, true);
    zz.z.set(i + n, true);
    zz.set_sign(1);
    t.add_generator(xx);
    t.add_generator(zz);
  }
  return t;
}

namespace {

CliffordCircuit remap_two_qubit(const CliffordCircuit& c, std::size_t a,
                                std::size_t b, std::size_t n) {
  CliffordCircuit out;
  out.n = n;
  for (auto g : c.gates) {
    g.a = g.a == 0 ? a : b;
    if (is_two_qubit(g.gate)) g.b = g.b == 0 ? a : b;
    out.gates.push_back(g);
  }
  return out;
}

void fill_brickwork_defaults(BrickworkParams& p) {
  if (p.n_a == 0) p.n_a = p.n / 4;
  if (p.n_c == 0) p.n_c = 3 * p.n / 4;
  if (p.tau_hi == 0) p.tau_hi = p.n_a / 2;
}

}  // namespace

std::vector<double> brickwork_trace(const BrickworkParams& params, Rng& rng) {
  BrickworkParams p = params;
  fill_brickwork_defaults(p);
  StabTableau tab = choi_state(p.n);
  Bipartition cut;
  cut.a_mask = BitVec(2 * p.n);
  for (std::size_t q = 0; q < p.n_a; ++q) cut.a_mask.set(q, true);
  for (std::size_t q = 0; q < p.n_c; ++q) cut.a_mask.set(p.n + q, true);
  std::vector<double> trace;
  trace.push_back(tab.stabilizer_entanglement(cut).value());
  for (std::size_t tau = 1; tau <= p.layers; ++tau) {
    // one step = a full brick unit cell: even-offset then odd-offset bonds
    // on the periodic output ring
    for (std::size_t offset = 0; offset < 2; ++offset) {
      for (std::size_t j = offset; j + 1 < p.n; j += 2) {
        CliffordCircuit g2 = random_clifford(2, rng);
        tab.apply(remap_two_qubit(g2, p.n + j, p.n + j + 1, 2 * p.n));
      }
      if (offset == 1 && p.n % 2 == 0 && p.n > 2) {
        CliffordCircuit g2 = random_clifford(2, rng);
        tab.apply(remap_two_qubit(g2, 2 * p.n - 1, p.n, 2 * p.n));
      }
    }
    trace.push_back(tab.stabilizer_entanglement(cut).value());
  }
  return trace;
}

LyapunovResult lyapunov_from_trace(const std::vector<double>& trace,
                                   std::size_t tau_lo, std::size_t tau_hi) {
  if (tau_hi >= trace.size() || tau_lo >= tau_hi)
    throw std::invalid_argument("fit window empty or outside trace");
  std::size_t m = tau_hi - tau_lo + 1;
  double sx = 0, sy = 0;
  for (std::size_t t = tau_lo; t <= tau_hi; ++t) {
    sx += static_cast<double>(t);
    sy += trace[t];
  }
  double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t t = tau_lo; t <= tau_hi; ++t) {
    double dx = static_cast<double>(t) - mx, dy = trace[t] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LyapunovResult res;
  res.c_hat = sxy / sxx;
  double ss_res = 0;
  for (std::size_t t = tau_lo; t <= tau_hi; ++t) {
    double pred = my + res.c_hat * (static_cast<double>(t) - mx);
    ss_res += (trace[t] - pred) * (trace[t] - pred);
  }
  res.r_squared = syy > 1e-30 ? 1.0 - ss_res / syy : 1.0;
  res.stderr_slope =
      m > 2 ? std::sqrt(ss_res / (static_cast<double>(m - 2) * sxx)) : 0.0;
  double lam2 = 1.0 - std::exp2(-2.0 * res.c_hat);
  res.lambda_hat = std::sqrt(std::clamp(lam2, 0.0, 1.0));
  return res;
}

LyapunovResult lyapunov_estimate(const BrickworkParams& params, Rng& rng,
                                 std::size_t n_samples) {
  BrickworkParams p = params;
  fill_brickwork_defaults(p);
  if (p.layers == 0) throw std::invalid_argument("zero-depth trace: no slope");
  if (p.tau_hi > p.n_a / 2)
    throw std::invalid_argument("window violates tau_hi <= n_a/2");
  if (n_samples == 0) throw std::invalid_argument("n_samples must be >= 1");
  std::vector<double> mean(p.layers + 1, 0.0);
  for (std::size_t s = 0; s < n_samples; ++s) {
    std::vector<double> tr = brickwork_trace(p, rng);
    for (std::size_t t = 0; t < tr.size(); ++t) mean[t] += tr[t];
  }
  for (auto& v : mean) v /= static_cast<double>(n_samples);
  LyapunovResult res = lyapunov_from_trace(mean, p.tau_lo, p.tau_hi);
  res.mean_trace = mean;
  return res;
}

}  // namespace stabent
