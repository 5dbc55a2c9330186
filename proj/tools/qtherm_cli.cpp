// Scenario runner: reproduces the toolkit's numerical experiments from flags
// or a config file and writes self-describing CSV.
//
// Exit status: 0 = all checks passed, 1 = a physics check failed or a run did
// not converge, 2 = usage/config error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qtherm/engine.hpp"
#include "qtherm/evolution.hpp"
#include "qtherm/generator.hpp"
#include "qtherm/model_io.hpp"
#include "qtherm/models.hpp"
#include "qtherm/random_states.hpp"
#include "qtherm/thermo.hpp"

using namespace qtherm;

namespace {

constexpr const char* kVersion = "qtherm 0.1.0";

// ----- parameter plumbing -----------------------------------------------

// Flags override config-file values, which override scenario defaults. The
// config file uses the same key-value lexical format as the model files:
// "<key> <value>" per line, '#' comments.
class Params {
 public:
  void load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("--config: cannot open " + path);
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
      ++line_no;
      std::istringstream ls(line);
      std::string key;
      if (!(ls >> key) || key[0] == '#') continue;
      std::string value;
      if (!(ls >> value)) {
        std::ostringstream os;
        os << path << ":" << line_no << ": key '" << key << "' without a value";
        throw std::invalid_argument(os.str());
      }
      config_[key] = value;
    }
  }

  void set_cli(const std::string& key, const std::string& value) { cli_[key] = value; }

  std::optional<std::string> raw(const std::string& key) const {
    if (auto it = cli_.find(key); it != cli_.end()) {
      effective_[key] = it->second;
      return it->second;
    }
    if (auto it = config_.find(key); it != config_.end()) {
      effective_[key] = it->second;
      return it->second;
    }
    return std::nullopt;
  }

  double number(const std::string& key, double fallback) {
    const auto v = raw(key);
    const double out = v ? std::stod(*v) : fallback;
    effective_[key] = format_double(out);
    return out;
  }

  long integer(const std::string& key, long fallback) {
    const auto v = raw(key);
    const long out = v ? std::stol(*v) : fallback;
    effective_[key] = std::to_string(out);
    return out;
  }

  std::string text(const std::string& key, const std::string& fallback) {
    const auto v = raw(key);
    const std::string out = v ? *v : fallback;
    effective_[key] = out;
    return out;
  }

  const std::map<std::string, std::string>& effective() const { return effective_; }

  // Unknown or out-of-scenario keys are a usage error; call after the
  // scenario has read everything it understands.
  void reject_unknown() const {
    auto meta = [](const std::string& k) {
      return k == "scenario" || k == "seed" || k == "dump-model" || k == "out";
    };
    for (const auto& m : {config_, cli_})
      for (const auto& [k, v] : m)
        if (!effective_.count(k) && !meta(k))
          throw std::invalid_argument("parameter '" + k + "' is not used by this scenario");
  }

 private:
  std::map<std::string, std::string> config_;
  std::map<std::string, std::string> cli_;
  mutable std::map<std::string, std::string> effective_;
};

struct CheckFailure {
  std::string message;
};

void metadata(CsvWriter& csv, const std::string& scenario, const Params& params) {
  csv.comment(kVersion);
  csv.comment("scenario " + scenario);
  for (const auto& [k, v] : params.effective()) csv.comment(k + " " + v);
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open output file " + path);
  return os;
}

DensityMatrix ground_state(int dim) {
  Mat rho = Mat::Zero(dim, dim);
  rho(0, 0) = 1.0;
  return DensityMatrix(rho);
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::string token;
  std::istringstream is(text);
  while (std::getline(is, token, ',')) {
    if (!token.empty()) out.push_back(std::stod(token));
  }
  return out;
}

CycleSpec cycle_spec_from(Params& p) {
  CycleSpec spec;
  spec.system = CycleSystem::two_qubit;
  spec.omega_h = p.number("omega-h", 2.0);
  spec.omega_c = p.number("omega-c", 1.0);
  spec.beta_h = p.number("beta-h", 0.6);
  spec.beta_c = p.number("beta-c", 1.5);
  spec.tau_h = p.number("tau-h", 0.5);
  spec.tau_c = p.number("tau-c", 1.0);
  spec.gamma0 = p.number("gamma0", 1.0);
  spec.stationarity_tol = p.number("stationarity-tol", 1e-10);
  return spec;
}

void maybe_dump_models(const Params& p, const LindbladModel& primary,
                       const LindbladModel* secondary) {
  const auto path = p.raw("dump-model");
  if (!path) return;
  save_model(*path, primary);
  if (secondary) save_model(*path + ".cold", *secondary);
}

// ----- scenarios ----------------------------------------------------------

int scenario_fig2(Params& p, const std::string& out_path) {
  CycleSpec spec = cycle_spec_from(p);
  spec.dt = p.number("dt", 5e-4);
  spec.sample_stride = static_cast<int>(p.integer("sample-stride", 5));
  const int max_cycles = static_cast<int>(p.integer("max-cycles", 300));
  p.reject_unknown();

  const BuiltModel hot = build_two_qubit_model(
      {spec.omega_h, spec.beta_h, spec.gamma0, spec.hbar, "H"});
  const BuiltModel cold = build_two_qubit_model(
      {spec.omega_c, spec.beta_c, spec.gamma0, spec.hbar, "C"});
  maybe_dump_models(p, hot.model, &cold.model);

  const CycleRunResult run = run_cycle(spec, ground_state(4), max_cycles);
  if (!run.converged) {
    std::cerr << "fig2: no stationary cycle within " << max_cycles << " cycles\n";
    return 1;
  }

  // Row invariants checked before anything is written.
  int exceed = 0, violations = 0;
  for (const ThermoSample& s : run.step1_samples) {
    if (s.sigma_dot < -1e-9 || s.a_cl < 0.0 || s.a_qm < 0.0) {
      std::cerr << "fig2: sample at t=" << s.t << " violates its invariants\n";
      return 1;
    }
    const double lhs = 2.0 * s.j_total * s.j_total;
    if (lhs > s.a_cl * s.sigma_dot + 1e-12) ++exceed;
    if (lhs > (s.a_cl + s.a_qm) * s.sigma_dot +
                  1e-9 * std::max(1.0, (s.a_cl + s.a_qm) * s.sigma_dot))
      ++violations;
  }

  auto os = open_out(out_path);
  CsvWriter csv(os);
  metadata(csv, "fig2", p);
  write_thermo_csv(os, run.step1_samples);
  if (violations > 0) {
    std::cerr << "fig2: quantum bound violated at " << violations << " samples\n";
    return 1;
  }
  if (exceed == 0) {
    std::cerr << "fig2: ratio never exceeded the classical bound\n";
    return 1;
  }
  std::cout << "fig2: " << run.step1_samples.size() << " samples, classical bound exceeded at "
            << exceed << ", quantum bound respected everywhere -> " << out_path << "\n";
  return 0;
}

int scenario_fig3(Params& p, const std::string& out_path) {
  CycleSpec spec = cycle_spec_from(p);
  spec.dt = p.number("dt", 1e-3);
  spec.sample_stride = 0;
  const int max_cycles = static_cast<int>(p.integer("max-cycles", 300));
  const double tc_min = p.number("tau-c-min", 0.2);
  const double tc_max = p.number("tau-c-max", 3.0);
  const double tc_step = p.number("tau-c-step", 0.1);
  p.reject_unknown();
  if (tc_step <= 0.0 || tc_max < tc_min)
    throw std::invalid_argument("need tau-c-min <= tau-c-max and tau-c-step > 0");

  const BuiltModel hot = build_two_qubit_model(
      {spec.omega_h, spec.beta_h, spec.gamma0, spec.hbar, "H"});
  maybe_dump_models(p, hot.model, nullptr);

  std::vector<double> taus;
  for (double tc = tc_min; tc <= tc_max + 1e-12; tc += tc_step) taus.push_back(tc);

  const auto coherent = sweep(spec, "tau_c", taus, ground_state(4), max_cycles);

  std::vector<CycleRecord> coherent_records, dephased_records;
  int exceed = 0, violations = 0, failures = 0;
  for (size_t i = 0; i < taus.size(); ++i) {
    CycleSpec s = spec;
    s.tau_c = taus[i];
    if (!coherent[i].ok) {
      std::cerr << "fig3: coherent run failed at tau_c=" << taus[i] << ": " << coherent[i].error
                << "\n";
      ++failures;
      continue;
    }
    CycleRunResult dep;
    try {
      dep = run_dephased_cycle(s, ground_state(4), max_cycles);
    } catch (const std::exception& e) {
      std::cerr << "fig3: dephased run failed at tau_c=" << taus[i] << ": " << e.what() << "\n";
      ++failures;
      continue;
    }
    if (!dep.converged) {
      std::cerr << "fig3: dephased run did not converge at tau_c=" << taus[i] << "\n";
      ++failures;
      continue;
    }
    const CycleRecord& rec = coherent[i].record;
    const CycleRecord& drec = dep.records.back();
    for (const CycleRecord* r : {&rec, &drec}) {
      const bool first_law = std::abs(r->w - (r->q_h - r->q_c)) <=
                             1e-9 * std::max(1.0, std::abs(r->q_h));
      const bool carnot_ok = r->q_h <= 0.0 || r->eta <= r->eta_car + 1e-9;
      if (!first_law || !carnot_ok) {
        std::cerr << "fig3: record at tau_c=" << taus[i] << " violates its invariants\n";
        ++failures;
      }
    }
    coherent_records.push_back(rec);
    dephased_records.push_back(drec);

    if (rec.p > rec.abar_cl) ++exceed;
    if (rec.p > rec.abar_cl + rec.abar_qm + 1e-9 * std::max(1.0, rec.abar_cl + rec.abar_qm))
      ++violations;
    if (drec.p > drec.abar_cl + 1e-9 * std::max(1.0, drec.abar_cl)) ++violations;
  }

  {
    auto os = open_out(out_path);
    CsvWriter csv(os);
    metadata(csv, "fig3", p);
    write_cycle_csv(os, coherent_records);
  }
  {
    auto os = open_out(out_path + ".dephased.csv");
    CsvWriter csv(os);
    metadata(csv, "fig3-dephased", p);
    write_cycle_csv(os, dephased_records);
  }

  if (failures > 0) return 1;
  if (violations > 0) {
    std::cerr << "fig3: performance bound violated at " << violations << " points\n";
    return 1;
  }
  if (exceed == 0) {
    std::cerr << "fig3: no tau_c with P above the classical bound\n";
    return 1;
  }
  std::cout << "fig3: " << coherent_records.size() << " points, P exceeds Abar_cl at " << exceed
            << " -> " << out_path << "\n";
  return 0;
}

int scenario_scaling2n(Params& p, const std::string& out_path) {
  const double omega0 = p.number("omega0", 1.0);
  const double gamma_down = p.number("gamma-down", 1.0);
  const double beta = p.number("beta", 1.0);
  std::vector<double> ns = {1, 2, 4, 8, 16, 32, 64, 128};
  if (const auto single = p.raw("n")) ns = {std::stod(*single)};
  if (const auto list = p.raw("n-list")) ns = parse_list(*list);
  p.reject_unknown();

  auto os = open_out(out_path);
  CsvWriter csv(os);
  metadata(csv, "scaling2n", p);
  csv.header({"n", "p_e", "j_sim", "j_analytic", "sigma_sim", "sigma_analytic", "a_cl", "a_qm"});

  int violations = 0;
  for (double nd : ns) {
    const int n = static_cast<int>(nd);
    const TwoNModelSpec ms{n, omega0, gamma_down, beta};
    const PlusStateSpec ps(ms, 1.0 / n);
    const BuiltModel bm = build_2n_model(ms);
    if (ns.size() == 1) maybe_dump_models(p, bm.model, nullptr);
    const DensityMatrix rho = build_plus_state(ps);
    const AnalyticObservables ref = analytic_2n_observables(ms, ps);

    const double j = heat_current(bm.model, rho.mat());
    const double sigma = entropy_production_rate(bm.model, rho.mat()).value;
    const CoherenceReport coh = coherence_report(bm.model, rho.mat(), bm.basis);
    csv.row({CsvWriter::cell(n), CsvWriter::cell(ps.p_e()), CsvWriter::cell(j),
             CsvWriter::cell(ref.j), CsvWriter::cell(sigma), CsvWriter::cell(ref.sigma_dot),
             CsvWriter::cell(coh.a_cl), CsvWriter::cell(coh.a_qm)});

    if (std::abs(j - ref.j) > 1e-8 * std::abs(ref.j)) {
      std::cerr << "scaling2n: current mismatch at N=" << n << "\n";
      ++violations;
    }
    if (std::abs(sigma - ref.sigma_dot) > 1e-8 * std::abs(ref.sigma_dot)) {
      std::cerr << "scaling2n: entropy production mismatch at N=" << n << "\n";
      ++violations;
    }
    if (n == 1) {
      // Nondegenerate case: block and strict dephasing coincide, A_qm = 0.
      Rng rng(1);
      const Mat probe = random_density_matrix(2, rng).mat();
      if (max_abs(block_diagonalize(probe, bm.basis) - strict_diagonalize(probe, bm.basis)) >
              1e-14 ||
          coh.a_qm > 1e-14) {
        std::cerr << "scaling2n: N=1 should have rho_bd = rho_sd and A_qm = 0\n";
        ++violations;
      }
    }
  }
  if (violations == 0)
    std::cout << "scaling2n: " << ns.size() << " sizes match the closed forms -> " << out_path
              << "\n";
  return violations == 0 ? 0 : 1;
}

int scenario_carnot2n(Params& p, const std::string& out_path) {
  CarnotCycleSpec base;
  base.omega_c = p.number("omega-c", 1.0);
  base.beta_h = p.number("beta-h", 0.6);
  base.beta_c = p.number("beta-c", 1.5);
  base.gamma_down = p.number("gamma-down", 1.0);
  std::vector<double> ns = {8, 16, 32, 64, 128, 256};
  if (const auto list = p.raw("n-list")) ns = parse_list(*list);
  if (const auto single = p.raw("n")) ns = {std::stod(*single)};
  const double a_n_override = p.number("a-n", 0.0);  // 0 means a_n = 1/N
  p.reject_unknown();

  auto os = open_out(out_path);
  CsvWriter csv(os);
  metadata(csv, "carnot2n", p);
  csv.header({"n", "omega_h", "eta", "eta_car", "eta_analytic", "power", "cycle_time",
              "relaxation_ratio", "entropy_production", "work", "heat_in", "cycle_closure"});

  int violations = 0;
  for (double nd : ns) {
    CarnotCycleSpec spec = base;
    spec.n = static_cast<int>(nd);
    spec.a_n = a_n_override > 0.0 ? a_n_override : 1.0 / spec.n;
    try {
      const CarnotResult r = run_carnot_2n(spec);
      csv.row({CsvWriter::cell(spec.n), CsvWriter::cell(r.omega_h), CsvWriter::cell(r.eta),
               CsvWriter::cell(r.eta_car), CsvWriter::cell(r.eta_analytic),
               CsvWriter::cell(r.power), CsvWriter::cell(r.cycle_time),
               CsvWriter::cell(r.relaxation_ratio), CsvWriter::cell(r.entropy_production),
               CsvWriter::cell(r.work), CsvWriter::cell(r.heat_in),
               CsvWriter::cell(r.cycle_closure)});
      if (std::abs(r.eta - r.eta_analytic) > 1e-6 * std::abs(r.eta_analytic)) {
        std::cerr << "carnot2n: efficiency mismatch at N=" << spec.n << "\n";
        ++violations;
      }
      if (r.relaxation_ratio >= 0.5) {
        std::cerr << "carnot2n: contact not faster than half the relaxation time at N="
                  << spec.n << "\n";
        ++violations;
      }
    } catch (const std::exception& e) {
      std::cerr << "carnot2n: N=" << nd << " failed: " << e.what() << "\n";
      ++violations;
    }
  }
  if (violations == 0)
    std::cout << "carnot2n: " << ns.size() << " sizes -> " << out_path << "\n";
  return violations == 0 ? 0 : 1;
}

int scenario_steady(Params& p, const std::string& out_path, TwoBathVariant variant) {
  TwoBathTwoNSpec base;
  base.variant = variant;
  base.omega = p.number("omega", 1.0);
  base.gamma_down = p.number("gamma-down", 1.0);
  if (variant == TwoBathVariant::temperature)
    base.beta_ref = p.number("beta-ref", 1.0);
  else {
    base.beta = p.number("beta", 1.0);
    base.mu_ref = p.number("mu-ref", 0.0);
  }
  std::vector<double> ns = {2, 8, 32, 64};
  if (const auto list = p.raw("n-list")) ns = parse_list(*list);
  if (const auto single = p.raw("n")) ns = {std::stod(*single)};
  p.reject_unknown();

  const std::string name =
      variant == TwoBathVariant::temperature ? "steady_temp" : "steady_chem";
  auto os = open_out(out_path);
  CsvWriter csv(os);
  metadata(csv, name, p);
  csv.header({"n", "residual", "j_hot", "j_cold", "sigma_sim", "sigma_analytic"});

  int violations = 0;
  for (double nd : ns) {
    TwoBathTwoNSpec spec = base;
    spec.n = static_cast<int>(nd);
    try {
      const TwoBathTwoN tb = build_two_bath_2n(spec);
      if (ns.size() == 1) maybe_dump_models(p, tb.model, nullptr);
      const double residual = max_abs(apply_generator(tb.model, tb.steady.mat()));
      const double jh = heat_current(tb.model, tb.steady.mat(), tb.model.baths[0].label);
      const double jc = heat_current(tb.model, tb.steady.mat(), tb.model.baths[1].label);
      const double sigma = entropy_production_rate(tb.model, tb.steady.mat()).value;
      csv.row({CsvWriter::cell(spec.n), CsvWriter::cell(residual), CsvWriter::cell(jh),
               CsvWriter::cell(jc), CsvWriter::cell(sigma),
               CsvWriter::cell(tb.analytic_sigma_dot)});
      if (residual >= 1e-10) {
        std::cerr << name << ": steady-state residual " << residual << " at N=" << spec.n
                  << "\n";
        ++violations;
      }
      if (std::abs(jh + jc) >= 1e-10) {
        std::cerr << name << ": current antisymmetry broken at N=" << spec.n << "\n";
        ++violations;
      }
      if (std::abs(sigma - tb.analytic_sigma_dot) >
          1e-9 * std::max(1.0, tb.analytic_sigma_dot)) {
        std::cerr << name << ": entropy production off the closed form at N=" << spec.n << "\n";
        ++violations;
      }
    } catch (const std::exception& e) {
      std::cerr << name << ": N=" << nd << " failed: " << e.what() << "\n";
      ++violations;
    }
  }
  if (violations == 0)
    std::cout << name << ": " << ns.size() << " sizes -> " << out_path << "\n";
  return violations == 0 ? 0 : 1;
}

int scenario_verify(Params& p, const std::string& out_path, std::uint64_t seed) {
  const long cases = p.integer("cases", 500);
  p.reject_unknown();

  struct Counter {
    std::string name;
    long checked = 0;
    long violated = 0;
    std::uint64_t first_seed = 0;
  };
  std::vector<Counter> counters = {
      {"current_dephasing_invariance"}, {"dissipation_monotonicity"},
      {"tradeoff_theorem_1"},           {"tradeoff_classical_bound"},
      {"tradeoff_quantum_bound"},       {"generator_trace_preservation"},
      {"generator_hermiticity"},        {"pauli_cross_check"},
      {"second_law"},
  };
  auto tally = [&](int idx, bool ok, std::uint64_t case_seed) {
    ++counters[idx].checked;
    if (!ok) {
      if (counters[idx].violated == 0) counters[idx].first_seed = case_seed;
      ++counters[idx].violated;
    }
  };

  for (long k = 0; k < cases; ++k) {
    const std::uint64_t case_seed = seed + static_cast<std::uint64_t>(k);
    Rng rng(case_seed);
    BuiltModel bm = (k % 2 == 0)
                        ? build_2n_model({1 + static_cast<int>(rng.next_u64() % 8),
                                          rng.uniform(0.5, 2.0), rng.uniform(0.3, 1.5),
                                          rng.uniform(0.3, 1.5)})
                        : build_two_qubit_model({rng.uniform(0.8, 2.5), rng.uniform(0.3, 1.5),
                                                 rng.uniform(0.5, 1.5)});
    const Mat rho = random_density_matrix(bm.model.dim(), rng).mat();
    const TradeoffRecord rec = tradeoff_check(bm.model, rho, bm.basis);

    tally(0, std::abs(rec.j_rho - rec.j_bd) <= 1e-10 * std::max(1.0, std::abs(rec.j_rho)),
          case_seed);
    tally(1, rec.sigma_rho >= rec.sigma_bd - 1e-9, case_seed);
    tally(2, rec.ineq2_ok, case_seed);
    tally(3, rec.ineq3_ok, case_seed);
    tally(4, rec.ineq4_ok, case_seed);

    const Mat g = apply_generator(bm.model, rho);
    tally(5, std::abs(g.trace()) < 1e-12 * bm.model.dim(), case_seed);
    tally(6, hermiticity_residual(g) < 1e-12, case_seed);

    const DensityMatrix bd = random_block_diagonal_state(bm.basis, rng);
    const double defn = entropy_production_rate(bm.model, bd.mat()).value;
    const double pauli = pauli_entropy_production(bm.model, bd.mat(), bm.basis).value;
    tally(7, std::abs(defn - pauli) <= 1e-8 * std::max(1.0, std::abs(defn)), case_seed);
    tally(8, rec.sigma_rho >= -1e-9 && defn >= -1e-9, case_seed);
  }

  auto os = open_out(out_path);
  CsvWriter csv(os);
  metadata(csv, "verify", p);
  csv.header({"check", "checked", "violated", "first_violation_seed"});
  bool any = false;
  for (const auto& c : counters) {
    csv.row({c.name, CsvWriter::cell(c.checked), CsvWriter::cell(c.violated),
             CsvWriter::cell(static_cast<long>(c.first_seed))});
    if (c.violated > 0) {
      any = true;
      std::cerr << "verify: check '" << c.name << "' violated " << c.violated
                << " times; replay with --seed " << c.first_seed << " --cases 1\n";
    }
  }
  std::cout << "verify: " << cases << " cases -> " << out_path << (any ? " (VIOLATIONS)" : "")
            << "\n";
  return any ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{std::string(kVersion) +
               " - Lindblad thermodynamics scenarios (fig2, fig3, scaling2n, carnot2n, "
               "steady_temp, steady_chem, verify)"};

  std::string scenario, config_path, out_path;
  std::uint64_t seed = 12345;
  app.add_option("--scenario", scenario, "one of fig2, fig3, scaling2n, carnot2n, steady_temp, steady_chem, verify");
  app.add_option("--config", config_path, "key-value config file (same lexical format as model files)");
  app.add_option("--out", out_path, "output CSV path (default <scenario>.csv)");
  auto* seed_opt = app.add_option("--seed", seed, "random seed for the verify scenario");

  // Scenario parameter overrides; each maps to a config key of the same name.
  std::map<std::string, std::pair<CLI::Option*, double>> dbl;
  auto add_dbl = [&](const std::string& key, const std::string& help) {
    auto& entry = dbl[key];
    entry.first = app.add_option("--" + key, entry.second, help);
  };
  add_dbl("omega", "2N/two-bath gap frequency");
  add_dbl("omega0", "2N gap frequency");
  add_dbl("omega-h", "hot-contact gap frequency");
  add_dbl("omega-c", "cold-contact gap frequency");
  add_dbl("beta", "inverse temperature");
  add_dbl("beta-h", "hot-bath inverse temperature");
  add_dbl("beta-c", "cold-bath inverse temperature");
  add_dbl("beta-ref", "two-bath population anchor (temperature variant)");
  add_dbl("mu-ref", "two-bath chemical-potential anchor");
  add_dbl("tau-h", "hot contact duration");
  add_dbl("tau-c", "cold contact duration");
  add_dbl("tau-c-min", "fig3 sweep start");
  add_dbl("tau-c-max", "fig3 sweep end");
  add_dbl("tau-c-step", "fig3 sweep step");
  add_dbl("gamma0", "two-qubit bare rate");
  add_dbl("gamma-down", "collective decay rate");
  add_dbl("a-n", "near-Carnot control parameter (default 1/N)");
  add_dbl("dt", "integrator step");
  add_dbl("stationarity-tol", "stationary-cycle trace-distance tolerance");

  std::map<std::string, std::pair<CLI::Option*, long>> ints;
  auto add_int = [&](const std::string& key, const std::string& help) {
    auto& entry = ints[key];
    entry.first = app.add_option("--" + key, entry.second, help);
  };
  add_int("n", "degeneracy N");
  add_int("cases", "verify: number of random cases");
  add_int("max-cycles", "engine warm-up cycle cap");
  add_int("sample-stride", "thermo-sample stride (fig2)");

  std::string n_list, dump_model;
  auto* n_list_opt = app.add_option("--n-list", n_list, "comma-separated N sweep values");
  auto* dump_opt = app.add_option("--dump-model", dump_model,
                                  "write the scenario's model(s) in the text format");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    Params params;
    if (!config_path.empty()) params.load_config(config_path);
    if (scenario.empty()) {
      if (auto s = params.raw("scenario")) scenario = *s;
    }
    if (scenario.empty()) {
      std::cerr << "usage error: --scenario is required (or 'scenario' in the config file)\n";
      return 2;
    }
    for (auto& [key, entry] : dbl)
      if (entry.first->count() > 0) params.set_cli(key, format_double(entry.second));
    for (auto& [key, entry] : ints)
      if (entry.first->count() > 0) params.set_cli(key, std::to_string(entry.second));
    if (n_list_opt->count() > 0) params.set_cli("n-list", n_list);
    if (dump_opt->count() > 0) params.set_cli("dump-model", dump_model);
    if (seed_opt->count() > 0) params.set_cli("seed", std::to_string(seed));
    if (auto s = params.raw("seed")) seed = std::stoull(*s);

    if (out_path.empty()) out_path = scenario + ".csv";

    if (scenario == "fig2") return scenario_fig2(params, out_path);
    if (scenario == "fig3") return scenario_fig3(params, out_path);
    if (scenario == "scaling2n") return scenario_scaling2n(params, out_path);
    if (scenario == "carnot2n") return scenario_carnot2n(params, out_path);
    if (scenario == "steady_temp")
      return scenario_steady(params, out_path, TwoBathVariant::temperature);
    if (scenario == "steady_chem")
      return scenario_steady(params, out_path, TwoBathVariant::chemical_potential);
    if (scenario == "verify") {
      params.integer("seed", static_cast<long>(seed));
      return scenario_verify(params, out_path, seed);
    }
    std::cerr << "usage error: unknown scenario '" << scenario << "'\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
