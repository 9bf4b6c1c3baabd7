#pragma once

#include "stabent/circuit.hpp"
#include "stabent/tableau.hpp"

namespace stabent {

struct MonitorRecord {
  std::size_t step = 0;
  std::size_t s_size = 0;
  std::size_t s_a = 0;
  std::size_t nu_removed = 0;
  double bound_hi = 0.0;  // n_A - |S_A|
  double bound_lo = 0.0;  // max(0, n_A - |S_A| - 2 nu_removed)
};

struct MonitorTrace {
  std::vector<MonitorRecord> records;
  StabTableau final_tableau;
};

// Entanglement monitoring of a t-doped circuit: Clifford ops conjugate the
// tableau; each non-Clifford on sites X row-reduces so at most 2|X|
// generators act on X and removes them. Measurements are out of scope here.
MonitorTrace monitor_circuit(const Circuit& c, const Bipartition& cut);

// Uniformly random n-qubit Clifford, as a circuit (canonical-form sampling:
// images of X_i, Z_i drawn uniformly among valid anticommuting signed pairs).
CliffordCircuit random_clifford(std::size_t n, Rng& rng);

// Alternating global random Cliffords and l-qubit Haar placeholders on
// qubits {0..l-1}: t+1 Clifford layers, t non-Clifford ops.
Circuit sample_mu_t(std::size_t n, std::size_t t, std::size_t l, Rng& rng);

struct ChainSpec {
  std::size_t n = 0;
  double p_t = 0.0;
  double p_m = 0.0;
  bool adaptive = false;
  double r0 = 0.5;       // adaptive rate scale
  bool approx_f = false;  // use f ~ 1 - 2^{nu-n} instead of the exact ratio
  std::size_t layers = 0;
};

// Exact birth/death rates of the reduced nu-chain.
double hybrid_f(std::size_t n, std::size_t nu, bool approx = false);
double hybrid_p_up(const ChainSpec& spec, std::size_t nu);
double hybrid_p_down(const ChainSpec& spec, std::size_t nu);

struct StationaryResult {
  std::vector<double> pi;  // over nu in [0, n]
  double mean_nu = 0.0;
};

StationaryResult hybrid_stationary(const ChainSpec& spec);

struct McResult {
  std::vector<double> histogram;  // empirical distribution over nu
  double mean_nu = 0.0;
  std::size_t steps = 0;
};

McResult hybrid_mc(const ChainSpec& spec, Rng& rng, std::size_t start_nu = 0);

// Small-n full-tableau validator: empirical one-step up/down frequencies at
// fixed nu, to compare against p_up/p_down.
struct StepFrequencies {
  double up = 0.0, down = 0.0;
};
StepFrequencies hybrid_full_mode_frequencies(const ChainSpec& spec,
                                             std::size_t nu,
                                             std::size_t trials, Rng& rng);

// 2n-qubit Choi tableau {X_i X_{i+n}, Z_i Z_{i+n}}.
StabTableau choi_state(std::size_t n);

struct BrickworkParams {
  std::size_t n = 0;       // chain length (Choi state has 2n qubits)
  std::size_t layers = 0;
  std::size_t tau_lo = 1, tau_hi = 0;  // fit window (tau_hi <= n_a/2 enforced)
  std::size_t n_a = 0, n_c = 0;        // cut sizes; 0 -> defaults n/4, 3n/4
};

// E(tau) across the AC|BD Choi cut for one brickwork realization;
// entry [tau] for tau in [0, layers].
std::vector<double> brickwork_trace(const BrickworkParams& p, Rng& rng);

struct LyapunovResult {
  double c_hat = 0.0;
  double lambda_hat = 0.0;
  double r_squared = 0.0;
  double stderr_slope = 0.0;
  std::vector<double> mean_trace;
};

// OLS on the window of a trace; throws on empty/out-of-range windows.
LyapunovResult lyapunov_from_trace(const std::vector<double>& trace,
                                   std::size_t tau_lo, std::size_t tau_hi);

// Ensemble-averaged brickwork trace over n_samples seeds, then the fit.
LyapunovResult lyapunov_estimate(const BrickworkParams& p, Rng& rng,
                                 std::size_t n_samples);

}  // namespace stabent
