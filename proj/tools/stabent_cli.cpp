// stabent: stabilizer-entanglement analysis toolbox.
//
// Exit codes: 0 success, 2 infeasible plan, 1 input/usage error.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "stabent/dynamics.hpp"
#include "stabent/formats.hpp"
#include "stabent/oracle.hpp"
#include "stabent/protocols.hpp"

using namespace stabent;

namespace {

std::vector<std::size_t> parse_site_list(const std::string& text) {
  std::vector<std::size_t> sites;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok.empty()) continue;
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size() || v < 0)
      throw std::invalid_argument("bad site list: " + text);
    sites.push_back(static_cast<std::size_t>(v));
  }
  return sites;
}

// "--cut half" or "--cut 0,1,2|rest" (right side optional / checked)
Bipartition parse_cut(const std::string& spec, std::size_t n) {
  if (spec == "half") return Bipartition::half(n);
  auto bar = spec.find('|');
  std::string left = spec.substr(0, bar);
  auto sites = parse_site_list(left);
  Bipartition cut = Bipartition::from_sites(n, sites);
  if (bar != std::string::npos) {
    std::string right = spec.substr(bar + 1);
    if (right != "rest" && !right.empty()) {
      auto bsites = parse_site_list(right);
      if (bsites.size() + sites.size() != n)
        throw std::invalid_argument("cut does not cover all qubits: " + spec);
      for (auto s : bsites)
        if (cut.a_mask.get(s))
          throw std::invalid_argument("cut sides overlap: " + spec);
    }
  }
  return cut;
}

std::vector<std::vector<std::size_t>> parse_parts(const std::string& spec) {
  std::vector<std::vector<std::size_t>> parts;
  std::stringstream ss(spec);
  std::string tok;
  while (std::getline(ss, tok, '|')) parts.push_back(parse_site_list(tok));
  return parts;
}

Json cut_json(const std::string& spec) { return spec; }

void emit(const Json& report) { std::cout << report.dump(2) << "\n"; }

long long require_seed(long long seed) {
  if (seed < 0)
    throw std::invalid_argument(
        "--seed is required for stochastic commands (no env fallback)");
  return seed;
}

// Evaluate a (possibly doped) circuit densely and extract the decomposition.
struct CircuitAnalysis {
  DenseState dense;
  DopedState doped;
};

CircuitAnalysis analyze_circuit(const Circuit& c, long long seed) {
  if (c.n > kDenseCap)
    throw std::invalid_argument("dense analysis capped at 14 qubits");
  Rng rng(static_cast<uint64_t>(require_seed(seed)));
  CircuitAnalysis a{simulate_dense(c, rng), {}};
  a.doped = extract_doped_decomposition(a.dense);
  return a;
}

int run(int argc, char** argv) {
  CLI::App app{"stabilizer entanglement toolbox"};
  app.require_subcommand(1);

  std::string tableau_path, circuit_path, cut_spec = "half", parts_spec;
  std::string regions_spec, format = "json";
  long long seed = -1;
  double theta = 1.0, eps = 0.1, delta = 0.05, e_level = 0.0, alpha = 2.0;
  double noise = 0.0, p_t = 0.0, p_m = 0.0, r0 = 0.5;
  bool adaptive = false, approx_f = false, do_mc = false, estimate = false;
  std::size_t n = 0, layers = 0, t_count = 0, l_arity = 1, n_samples = 1;
  std::size_t tau_lo = 1, tau_hi = 0, n_shots_override = 0, start_nu = 0;

  auto add_tableau = [&](CLI::App* sub) {
    sub->add_option("--tableau", tableau_path, "tableau file")->required();
  };
  auto add_cut = [&](CLI::App* sub) {
    sub->add_option("--cut", cut_spec, "cut: 'half' or '0,1,2|rest'");
  };

  auto* entropy = app.add_subcommand(
      "entropy", "stabilizer entanglement / exact S2 and interval");
  entropy->add_option("--tableau", tableau_path, "tableau file");
  entropy->add_option("--circuit", circuit_path, "circuit file");
  add_cut(entropy);
  entropy->add_option("--seed", seed, "rng seed (circuit inputs)");

  auto* monitor = app.add_subcommand("monitor", "doped-circuit bound trace");
  monitor->add_option("--circuit", circuit_path)->required();
  add_cut(monitor);
  monitor->add_option("--format", format, "json|csv");

  auto* distill = app.add_subcommand("distill", "bipartite Bell distillation");
  add_tableau(distill);
  add_cut(distill);

  auto* dilute = app.add_subcommand("dilute-plan", "dilution resource plan");
  add_tableau(dilute);
  add_cut(dilute);

  auto* ghz = app.add_subcommand("ghz-count", "distillable GHZ count");
  add_tableau(ghz);
  ghz->add_option("--parts", parts_spec, "e.g. 0,1|2,3|4,5")->required();

  auto* witness = app.add_subcommand("witness", "entanglement witness plan");
  add_tableau(witness);
  witness->add_option("--cut", cut_spec);
  witness->add_option("--eps", eps, "state-preparation error budget");
  witness->add_option("--delta", delta, "failure probability");
  witness->add_option("--e-level", e_level, "extrapolation level E");
  witness->add_flag("--estimate", estimate, "run the sampling estimate");
  witness->add_option("--noise", noise, "depolarizing strength for --estimate");
  witness->add_option("--shots", n_shots_override, "override planned shots");
  witness->add_option("--seed", seed, "rng seed (--estimate)");

  auto* phase = app.add_subcommand("phase-test", "ED/MD classification");
  add_tableau(phase);
  add_cut(phase);
  phase->add_option("--theta", theta, "ED iff nu <= theta * E");

  auto* hybrid = app.add_subcommand("hybrid", "nullity birth-death chain");
  hybrid->add_option("--n", n, "qubit count")->required();
  hybrid->add_option("--p-t", p_t, "T-event probability");
  hybrid->add_option("--p-m", p_m, "measurement-event probability");
  hybrid->add_flag("--adaptive", adaptive, "adaptive rate rule");
  hybrid->add_option("--r0", r0, "adaptive rate scale");
  hybrid->add_flag("--approx-f", approx_f, "approximate anticommuting ratio");
  hybrid->add_flag("--mc", do_mc, "also run a Monte Carlo chain");
  hybrid->add_option("--layers", layers, "Monte Carlo steps");
  hybrid->add_option("--start-nu", start_nu, "Monte Carlo initial nullity");
  hybrid->add_option("--seed", seed, "rng seed (--mc)");

  auto* lyap = app.add_subcommand("lyapunov", "brickwork Choi-trace fit");
  lyap->add_option("--n", n, "chain length")->required();
  lyap->add_option("--layers", layers, "brickwork depth")->required();
  lyap->add_option("--tau-lo", tau_lo, "fit window start");
  lyap->add_option("--tau-hi", tau_hi, "fit window end (0: n_A/2)");
  lyap->add_option("--samples", n_samples, "ensemble size");
  lyap->add_option("--seed", seed, "rng seed")->required();
  lyap->add_option("--format", format, "json|csv");

  auto* topo = app.add_subcommand("topo", "topological entanglement entropy");
  add_tableau(topo);
  topo->add_option("--regions", regions_spec, "A|B|C site lists")->required();
  topo->add_option("--alpha", alpha, "Renyi index for the dense cross-check");

  auto* sample = app.add_subcommand("sample", "mu_t ensemble typicality");
  sample->add_option("--n", n, "qubit count")->required();
  sample->add_option("--t", t_count, "number of non-Clifford layers");
  sample->add_option("--l", l_arity, "non-Clifford arity");
  sample->add_option("--seeds", n_samples, "ensemble size");
  sample->add_option("--seed", seed, "rng seed")->required();
  add_cut(sample);

  auto* cool = app.add_subcommand("cool", "entanglement cooling circuit");
  add_tableau(cool);
  add_cut(cool);

  CLI11_PARSE(app, argc, argv);

  if (entropy->parsed()) {
    Json cfg{{"cut", cut_json(cut_spec)}, {"seed", seed}};
    Json body;
    if (!circuit_path.empty()) {
      Circuit c = parse_circuit_file(circuit_path);
      cfg["circuit"] = circuit_path;
      Bipartition cut = parse_cut(cut_spec, c.n);
      auto a = analyze_circuit(c, seed);
      body["nullity_count"] = a.doped.nu();
      body["entanglement_bits"] =
          a.doped.tab.stabilizer_entanglement(cut).value();
      body["s2_exact_bits"] = renyi2_exact(a.doped, cut);
      auto [lo, hi] =
          entropy_interval(a.doped.tab, cut, EntropyClass::AllAlpha);
      body["interval_all_alpha_bits"] = Json::array({lo, hi});
      body["state"] = doped_to_json(a.doped);
    } else if (!tableau_path.empty()) {
      StabTableau t = parse_tableau_file(tableau_path);
      cfg["tableau"] = tableau_path;
      Bipartition cut = parse_cut(cut_spec, t.n());
      body["nullity_count"] = t.nullity();
      body["entanglement_bits"] = t.stabilizer_entanglement(cut).value();
      auto [lo, hi] = entropy_interval(t, cut, EntropyClass::AllAlpha);
      body["interval_all_alpha_bits"] = Json::array({lo, hi});
      if (t.nullity() == 0)
        body["s2_exact_bits"] = t.stabilizer_entanglement(cut).value();
    } else {
      throw std::invalid_argument("entropy needs --circuit or --tableau");
    }
    emit(make_report("entropy", cfg, body));
  } else if (monitor->parsed()) {
    Circuit c = parse_circuit_file(circuit_path);
    Bipartition cut = parse_cut(cut_spec, c.n);
    auto tr = monitor_circuit(c, cut);
    if (format == "csv") {
      std::cout << monitor_trace_csv(tr);
    } else {
      Json cfg{{"circuit", circuit_path}, {"cut", cut_json(cut_spec)}};
      Json body;
      Json recs = Json::array();
      for (const auto& r : tr.records)
        recs.push_back(Json{{"step", r.step},
                            {"group_size_count", r.s_size},
                            {"local_a_count", r.s_a},
                            {"nullity_removed_count", r.nu_removed},
                            {"bound_lo_bits", r.bound_lo},
                            {"bound_hi_bits", r.bound_hi}});
      body["trace"] = recs;
      body["final_tableau"] = tableau_to_json(tr.final_tableau);
      emit(make_report("monitor", cfg, body));
    }
  } else if (distill->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    Bipartition cut = parse_cut(cut_spec, t.n());
    auto res = synthesize_bipartite_distillation(t, cut);
    Json cfg{{"tableau", tableau_path}, {"cut", cut_json(cut_spec)}};
    Json pairs = Json::array();
    for (auto [a, b] : res.pair_sites) pairs.push_back(Json::array({a, b}));
    Json body{{"bell_pairs_count", res.m_plus},
              {"pair_sites", pairs},
              {"circuit_a", circuit_to_json(res.u_a)},
              {"circuit_b", circuit_to_json(res.u_b)}};
    emit(make_report("distill", cfg, body));
  } else if (dilute->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    Bipartition cut = parse_cut(cut_spec, t.n());
    auto plan = dilution_plan(t, cut);
    Json cfg{{"tableau", tableau_path}, {"cut", cut_json(cut_spec)}};
    Json body{{"ebits_count", plan.ebits},
              {"classical_bits_count", plan.cc_bits},
              {"teleport_qubits_count", plan.teleport_qubits},
              {"bell_pairs_count", plan.m_plus},
              {"circuit_a", circuit_to_json(plan.u_a)},
              {"circuit_b", circuit_to_json(plan.u_b)},
              {"local_prep_a", circuit_to_json(plan.v_a)},
              {"local_prep_b", circuit_to_json(plan.v_b)}};
    emit(make_report("dilute-plan", cfg, body));
  } else if (ghz->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    auto parts = parse_parts(parts_spec);
    auto res = ghz_distillable_count(t, parts);
    Json cfg{{"tableau", tableau_path}, {"parts", parts_spec}};
    Json body{{"ghz_count", res.p},
              {"multipartite_entanglement_bits", res.e_multi},
              {"stripped_qubits_count", res.stripped_qubits}};
    if (!res.tripartite_bell_counts.empty())
      body["tripartite_bell_counts"] = res.tripartite_bell_counts;
    emit(make_report("ghz-count", cfg, body));
  } else if (witness->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    Bipartition cut = parse_cut(cut_spec, t.n());
    auto plan = witness_plan(t, {cut}, e_level, eps, delta);
    Json cfg{{"tableau", tableau_path}, {"cut", cut_json(cut_spec)},
             {"eps", eps},           {"delta", delta},
             {"e_level", e_level},   {"seed", seed}};
    Json body{{"m_of_b_count", plan.m_of_b},
              {"threshold_probability", plan.threshold},
              {"delta_margin_probability", plan.delta_margin},
              {"shots_count", plan.n_shots},
              {"extrapolated", plan.extrapolated}};
    if (estimate) {
      if (t.n() > kDenseCap)
        throw std::invalid_argument("--estimate capped at 14 qubits");
      Rng rng(static_cast<uint64_t>(require_seed(seed)));
      Depolarized dep = depolarize(dense_from_tableau(t), noise);
      std::size_t shots = n_shots_override ? n_shots_override : plan.n_shots;
      auto est = witness_estimate(dep.rho, t, shots, plan.threshold, rng);
      body["estimate"] = Json{{"pi_hat_probability", est.pi_hat},
                              {"entangled", est.entangled},
                              {"noise", noise},
                              {"trace_distance", dep.trace_distance}};
    }
    emit(make_report("witness", cfg, body));
  } else if (phase->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    Bipartition cut = parse_cut(cut_spec, t.n());
    auto v = phase_classify(t, cut, theta);
    Json cfg{{"tableau", tableau_path}, {"cut", cut_json(cut_spec)},
             {"theta", theta}};
    Json body{{"phase", v.ed ? "entanglement-dominated" : "magic-dominated"},
              {"nullity_count", v.nu},
              {"entanglement_bits", v.e},
              {"nullity_entanglement_ratio", v.ratio},
              {"unentangled_warning", v.unentangled_warning}};
    emit(make_report("phase-test", cfg, body));
  } else if (hybrid->parsed()) {
    ChainSpec spec{n, p_t, p_m, adaptive, r0, approx_f,
                   layers ? layers : 1000000};
    auto st = hybrid_stationary(spec);
    Json cfg{{"n", n},     {"p_t", p_t},   {"p_m", p_m},
             {"adaptive", adaptive}, {"r0", r0},
             {"approx_f", approx_f}, {"seed", seed}};
    Json body{{"stationary_probabilities", st.pi},
              {"mean_nullity_count", st.mean_nu}};
    if (do_mc) {
      Rng rng(static_cast<uint64_t>(require_seed(seed)));
      auto mc = hybrid_mc(spec, rng, start_nu);
      double tv = 0;
      for (std::size_t v = 0; v <= n; ++v)
        tv += 0.5 * std::abs(mc.histogram[v] - st.pi[v]);
      body["mc"] = Json{{"steps_count", mc.steps},
                        {"histogram_probabilities", mc.histogram},
                        {"mean_nullity_count", mc.mean_nu},
                        {"total_variation_probability", tv}};
    }
    emit(make_report("hybrid", cfg, body));
  } else if (lyap->parsed()) {
    BrickworkParams p{n, layers, tau_lo, tau_hi, 0, 0};
    Rng rng(static_cast<uint64_t>(require_seed(seed)));
    auto fit = lyapunov_estimate(p, rng, n_samples);
    if (format == "csv") {
      std::cout << trace_csv(fit.mean_trace);
    } else {
      Json cfg{{"n", n},           {"layers", layers},
               {"tau_lo", tau_lo}, {"tau_hi", tau_hi},
               {"samples", n_samples}, {"seed", seed}};
      Json body{{"slope_bits_per_layer", fit.c_hat},
                {"lyapunov_estimate", fit.lambda_hat},
                {"r_squared", fit.r_squared},
                {"slope_stderr_bits_per_layer", fit.stderr_slope},
                {"mean_trace_bits", fit.mean_trace}};
      emit(make_report("lyapunov", cfg, body));
    }
  } else if (topo->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    auto parts = parse_parts(regions_spec);
    if (parts.size() != 3)
      throw std::invalid_argument("--regions needs A|B|C");
    RegionSet regions{parts[0], parts[1], parts[2]};
    Json cfg{{"tableau", tableau_path}, {"regions", regions_spec}};
    Json body{{"s_topo_bits", topo_entropy_stab(t, regions)}};
    if (t.n() <= kDenseCap && t.nullity() == 0) {
      body["s_topo_dense_bits"] =
          topo_entropy(dense_from_tableau(t), regions, alpha);
      body["alpha"] = alpha;
    }
    emit(make_report("topo", cfg, body));
  } else if (sample->parsed()) {
    if (n > kDenseCap)
      throw std::invalid_argument("sample uses the dense oracle: n <= 14");
    Rng rng(static_cast<uint64_t>(require_seed(seed)));
    Bipartition cut = parse_cut(cut_spec, n);
    double na2 = static_cast<double>(cut.n_a()) / 2.0;
    std::size_t ed = 0;
    double mean_s2 = 0;
    for (std::size_t s = 0; s < n_samples; ++s) {
      Circuit c = sample_mu_t(n, t_count, l_arity, rng);
      DenseState d = simulate_dense(c, rng);
      double s2 = renyi_entropy_dense(d, cut, 2.0);
      mean_s2 += s2 / static_cast<double>(n_samples);
      if (s2 >= na2) ++ed;
    }
    Json cfg{{"n", n}, {"t", t_count},          {"l", l_arity},
             {"seeds", n_samples}, {"cut", cut_json(cut_spec)},
             {"seed", seed}};
    Json body{{"ed_fraction_probability",
               static_cast<double>(ed) / static_cast<double>(n_samples)},
              {"mean_s2_bits", mean_s2}};
    emit(make_report("sample", cfg, body));
  } else if (cool->parsed()) {
    StabTableau t = parse_tableau_file(tableau_path);
    Bipartition cut = parse_cut(cut_spec, t.n());
    auto res = entanglement_cool(t, cut);
    Json cfg{{"tableau", tableau_path}, {"cut", cut_json(cut_spec)}};
    Json body{{"post_entanglement_bits", res.post_e},
              {"cooling_ratio", res.ratio},
              {"circuit", circuit_to_json(res.circuit)}};
    emit(make_report("cool", cfg, body));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
