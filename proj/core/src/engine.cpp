#include "qtherm/engine.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qtherm/evolution.hpp"
#include "qtherm/generator.hpp"

namespace qtherm {

namespace {

void validate_cycle_spec(const CycleSpec& spec) {
  if (!(spec.omega_h > spec.omega_c && spec.omega_c > 0.0))
    throw std::invalid_argument("CycleSpec: need omega_h > omega_c > 0");
  if (!(spec.beta_c > spec.beta_h && spec.beta_h > 0.0))
    throw std::invalid_argument("CycleSpec: need beta_c > beta_h > 0");
  if (spec.tau_h <= 0.0 || spec.tau_c <= 0.0)
    throw std::invalid_argument("CycleSpec: contact durations must be > 0");
  if (spec.dt <= 0.0) throw std::invalid_argument("CycleSpec: dt must be > 0");
}

BuiltModel build_contact(const CycleSpec& spec, bool hot) {
  const double omega = hot ? spec.omega_h : spec.omega_c;
  const double beta = hot ? spec.beta_h : spec.beta_c;
  const std::string label = hot ? "H" : "C";
  if (spec.system == CycleSystem::two_qubit) {
    TwoQubitSpec tq{omega, beta, spec.gamma0, spec.hbar, label};
    return build_two_qubit_model(tq);
  }
  TwoNModelSpec tn{spec.n, omega, spec.gamma0, beta, spec.hbar, label};
  return build_2n_model(tn);
}

struct ContactTotals {
  double heat = 0.0;     // int J dt
  double int_acl = 0.0;  // int A_cl dt
  double int_aqm = 0.0;
};

// Evolves `state` in place over `duration` and accumulates the trapezoid
// integrals of J, A_cl and A_qm on the RK4 grid.
ContactTotals run_contact(const BuiltModel& bm, Mat& state, double duration, double dt,
                          bool dephase, const Mat& x_op, double cx,
                          std::vector<ThermoSample>* samples, int sample_stride) {
  ContactTotals totals;
  const auto& basis = bm.basis;

  auto pointwise = [&](const Mat& rho, double& j, double& acl, double& aqm) {
    j = heat_current(bm.model, rho);
    const Mat rho_sd = strict_diagonalize(rho, basis);
    acl = (x_op * rho_sd).trace().real();
    aqm = cx * l1_coherence(block_diagonalize(rho, basis), basis);
  };

  double j_prev, acl_prev, aqm_prev;
  pointwise(state, j_prev, acl_prev, aqm_prev);
  if (samples && sample_stride > 0) samples->push_back(thermo_sample(bm.model, state, basis, 0.0));

  long step = 0;
  double t = 0.0;
  while (t < duration - 1e-15 * duration) {
    const double h = std::min(dt, duration - t);
    state = rk4_step(bm.model, state, h);
    if (dephase) state = strict_diagonalize(state, basis);
    t += h;
    ++step;

    double j, acl, aqm;
    pointwise(state, j, acl, aqm);
    totals.heat += 0.5 * h * (j_prev + j);
    totals.int_acl += 0.5 * h * (acl_prev + acl);
    totals.int_aqm += 0.5 * h * (aqm_prev + aqm);
    j_prev = j;
    acl_prev = acl;
    aqm_prev = aqm;

    if (samples && sample_stride > 0 && (step % sample_stride == 0 || t >= duration))
      samples->push_back(thermo_sample(bm.model, state, basis, t));
  }
  return totals;
}

CycleRecord make_record(const CycleSpec& spec, int index, const ContactTotals& hot,
                        const ContactTotals& cold, bool converged) {
  CycleRecord rec;
  rec.cycle_index = index;
  rec.q_h = hot.heat;
  rec.q_c = -cold.heat;
  rec.w = rec.q_h - rec.q_c;
  rec.tau = spec.tau_h + spec.tau_c;
  rec.eta_car = 1.0 - spec.beta_h / spec.beta_c;
  rec.eta = rec.q_h != 0.0 ? rec.w / rec.q_h : 0.0;
  rec.abar_cl = (hot.int_acl + cold.int_acl) / rec.tau;
  rec.abar_qm = (hot.int_aqm + cold.int_aqm) / rec.tau;
  rec.converged = converged;
  const PerformanceResult perf = performance(rec, spec.beta_c);
  rec.p = perf.value;
  rec.p_flag = perf.flag;
  return rec;
}

CycleRunResult run_cycle_impl(const CycleSpec& spec, const DensityMatrix& rho0, int max_cycles,
                              bool dephase) {
  validate_cycle_spec(spec);
  const BuiltModel hot = build_contact(spec, true);
  const BuiltModel cold = build_contact(spec, false);
  if (rho0.dim() != hot.model.dim())
    throw std::invalid_argument("run_cycle: initial state dimension mismatch");

  const Mat x_hot = x_operator(hot.model);
  const Mat x_cold = x_operator(cold.model);
  const double cx_hot = c_x(x_hot, hot.basis);
  const double cx_cold = c_x(x_cold, cold.basis);

  CycleRunResult out;
  Mat state = rho0.mat();
  if (dephase) state = strict_diagonalize(state, hot.basis);

  bool converged = false;
  for (int cycle = 0; cycle < max_cycles && !converged; ++cycle) {
    const Mat start = state;
    // Step 1: hot contact. Step 2: quench omega_h -> omega_c (state
    // unchanged, the Hamiltonians commute). Step 3: cold contact. Step 4:
    // quench back.
    const ContactTotals th =
        run_contact(hot, state, spec.tau_h, spec.dt, dephase, x_hot, cx_hot, nullptr, 0);
    const ContactTotals tc =
        run_contact(cold, state, spec.tau_c, spec.dt, dephase, x_cold, cx_cold, nullptr, 0);
    converged = trace_distance(state, start) < spec.stationarity_tol;
    out.records.push_back(make_record(spec, cycle, th, tc, false));
  }

  if (converged) {
    // Re-run the stationary cycle with sampling; this is the cycle the
    // records describe.
    const ContactTotals th = run_contact(hot, state, spec.tau_h, spec.dt, dephase, x_hot, cx_hot,
                                         &out.step1_samples, spec.sample_stride);
    const ContactTotals tc =
        run_contact(cold, state, spec.tau_c, spec.dt, dephase, x_cold, cx_cold, nullptr, 0);
    out.records.push_back(
        make_record(spec, static_cast<int>(out.records.size()), th, tc, true));
    out.converged = true;
  }
  out.final_state = state;
  return out;
}

}  // namespace

CycleRunResult run_cycle(const CycleSpec& spec, const DensityMatrix& rho0, int max_cycles) {
  return run_cycle_impl(spec, rho0, max_cycles, false);
}

CycleRunResult run_dephased_cycle(const CycleSpec& spec, const DensityMatrix& rho0,
                                  int max_cycles) {
  return run_cycle_impl(spec, rho0, max_cycles, true);
}

PerformanceResult performance(const CycleRecord& record, double beta_c) {
  PerformanceResult out;
  if (record.w == 0.0) {
    out.value = 0.0;
    out.flag = PerformanceFlag::zero_work;
    return out;
  }
  if (record.w < 0.0) {
    out.flag = PerformanceFlag::engine_mode_violation;
    return out;
  }
  const double eta = record.eta;
  const double eta_car = record.eta_car;
  if (eta <= 0.0 || eta > eta_car) {
    out.flag = PerformanceFlag::efficiency_undefined;
    return out;
  }
  if (eta == eta_car) {
    out.flag = PerformanceFlag::divergent;
    out.value = std::numeric_limits<double>::infinity();
    return out;
  }
  out.value = (record.w / record.tau) * 2.0 * (2.0 - eta) * (2.0 - eta) /
              (beta_c * eta * (eta_car - eta));
  return out;
}

namespace {

struct ContactOutcome {
  double duration = 0.0;
  double rate = 0.0;  // relaxation rate N^2 (Gamma_down + Gamma_up)
};

double anchor_ratio(const LindbladModel& model, const Mat& rho, const Vec& u, const Vec& w) {
  const double rho_gg = (u.adjoint() * rho * u).value().real();
  const double rho_ee = (w.adjoint() * rho * w).value().real();
  const double gd = model.baths[0].channels[0].rate;  // +omega channel first
  const double gu = model.baths[0].channels[1].rate;
  return (gu * rho_gg) / (gd * rho_ee);
}

// Evolves until the anchor ratio y = Gamma_up rho_gg / (Gamma_down rho_ee)
// crosses `target`; refines the crossing by bisection on the final partial
// step. Throws if the target is not reached.
ContactOutcome contact_until_anchor(const BuiltModel& bm, Mat& state, double target,
                                    bool decreasing, const Vec& u, const Vec& w,
                                    const CarnotCycleSpec& spec) {
  const auto& model = bm.model;
  const double gd = model.baths[0].channels[0].rate;
  const double gu = model.baths[0].channels[1].rate;
  const double n2 = static_cast<double>(spec.n) * spec.n;
  const double rate = n2 * (gd + gu);

  auto y_of = [&](const Mat& rho) { return anchor_ratio(model, rho, u, w); };
  auto crossed = [&](double y) { return decreasing ? y <= target : y >= target; };

  const double y0 = y_of(state);
  if (crossed(y0)) return {0.0, rate};

  // Planning estimate: the flux Gamma_up rho_gg - Gamma_down rho_ee decays
  // exactly at `rate`, so the crossing sits near log(phi0/phit)/rate.
  const double phi0 = std::abs(y0 - 1.0);
  const double phit = std::abs(target - 1.0);
  const double est = std::log(std::max(phi0 / phit, 1.0 + 1e-9)) / rate;
  const double dt = std::max(est, 1e-12) / std::max(1, spec.steps_per_contact);

  double t = 0.0;
  const double t_max = 50.0 / rate;
  while (t < t_max) {
    const Mat prev = state;
    state = rk4_step(model, state, dt);
    t += dt;
    double y = y_of(state);
    if (!crossed(y)) continue;

    // Locate the crossing inside the final step by Illinois regula falsi on
    // delta -> y(rk4_step(prev, delta)) - target, bracketed by [0, dt].
    const double tol = 0.5 * spec.anchor_tol * std::max(1.0, std::abs(target));
    double lo = 0.0, g_lo = y_of(prev) - target;
    double hi = dt, g_hi = y - target;
    double delta = hi;
    for (int it = 0; it < 60 && std::abs(y - target) > tol; ++it) {
      delta = lo - g_lo * (hi - lo) / (g_hi - g_lo);
      if (!(delta > lo && delta < hi)) delta = 0.5 * (lo + hi);
      state = rk4_step(model, prev, delta);
      y = y_of(state);
      const double g = y - target;
      if ((g > 0.0) == (g_lo > 0.0)) {
        lo = delta;
        g_lo = g;
        g_hi *= 0.5;  // Illinois trick keeps the far endpoint moving
      } else {
        hi = delta;
        g_hi = g;
        g_lo *= 0.5;
      }
    }
    t += delta - dt;
    if (std::abs(y - target) > spec.anchor_tol * std::max(1.0, std::abs(target))) {
      std::ostringstream os;
      os << "run_carnot_2n: anchor ratio " << y << " missed target " << target;
      throw std::runtime_error(os.str());
    }
    return {t, rate};
  }
  throw std::runtime_error("run_carnot_2n: anchor target not reached");
}

Mat plus_family_state(int n, double p_g, double p_e) {
  const Vec u = plus_ground_vector(n);
  const Vec w = plus_excited_vector(n);
  return p_g * (u * u.adjoint()) + p_e * (w * w.adjoint());
}

}  // namespace

CarnotResult run_carnot_2n(const CarnotCycleSpec& spec) {
  if (spec.n < 2) throw std::invalid_argument("run_carnot_2n: n must be >= 2");
  if (spec.a_n <= 0.0) throw std::invalid_argument("run_carnot_2n: a_n must be > 0");
  if (!(spec.beta_c > spec.beta_h && spec.beta_h > 0.0))
    throw std::invalid_argument("run_carnot_2n: need beta_c > beta_h > 0");
  if (spec.omega_c <= 0.0) throw std::invalid_argument("run_carnot_2n: omega_c must be > 0");

  const double log1a = std::log1p(spec.a_n);
  const double omega_h = (spec.beta_c * spec.omega_c - log1a / spec.hbar) / spec.beta_h;
  if (omega_h <= spec.omega_c)
    throw std::invalid_argument("run_carnot_2n: derived omega_h must exceed omega_c");

  const BuiltModel hot = build_2n_model({spec.n, omega_h, spec.gamma_down, spec.beta_h,
                                         spec.hbar, "H"});
  const BuiltModel cold = build_2n_model({spec.n, spec.omega_c, spec.gamma_down, spec.beta_c,
                                          spec.hbar, "C"});
  const Vec u = plus_ground_vector(spec.n);
  const Vec w = plus_excited_vector(spec.n);

  // Anchor states: rho'^C has Gamma_up^C rho_gg = Gamma_down^C rho_ee/(1+al),
  // rho'^H has Gamma_up^H rho_gg = (1+al) Gamma_down^H rho_ee, al = 0.45 a_N.
  const double al = spec.anchor_low * spec.a_n;
  const double r_cold = std::exp(spec.beta_c * spec.hbar * spec.omega_c) / (1.0 + al);
  const double pe_cold = 1.0 / (1.0 + r_cold);
  const double y_hot_target = 1.0 + al;
  const double y_cold_target = 1.0 / (1.0 + al);

  Mat state = plus_family_state(spec.n, 1.0 - pe_cold, pe_cold);
  const Mat cycle_start = state;

  const double e_before_hot = (hot.model.hamiltonian * state).trace().real();
  const ContactOutcome hot_out =
      contact_until_anchor(hot, state, y_hot_target, /*decreasing=*/true, u, w, spec);
  const double e_after_hot = (hot.model.hamiltonian * state).trace().real();
  if (auto err = DensityMatrix::check(state, StateTolerances{1e-8, 1e-8, 1e-8}))
    throw std::runtime_error("run_carnot_2n: invalid state after hot contact: " + *err);

  const double e_before_cold = (cold.model.hamiltonian * state).trace().real();
  const ContactOutcome cold_out =
      contact_until_anchor(cold, state, y_cold_target, /*decreasing=*/false, u, w, spec);
  const double e_after_cold = (cold.model.hamiltonian * state).trace().real();

  if (auto err = DensityMatrix::check(state, StateTolerances{1e-8, 1e-8, 1e-8}))
    throw std::runtime_error("run_carnot_2n: invalid end state: " + *err);

  CarnotResult res;
  res.omega_h = omega_h;
  res.eta_car = 1.0 - spec.beta_h / spec.beta_c;
  res.eta_analytic = res.eta_car - log1a / (spec.beta_c * spec.hbar * omega_h);
  res.heat_in = e_after_hot - e_before_hot;                    // Q_H
  const double q_c = -(e_after_cold - e_before_cold);          // heat released
  res.work = res.heat_in - q_c;
  res.eta = res.heat_in != 0.0 ? res.work / res.heat_in : 0.0;
  res.cycle_time = hot_out.duration + cold_out.duration;
  res.power = res.cycle_time > 0.0 ? res.work / res.cycle_time : 0.0;
  res.relaxation_ratio_hot = hot_out.duration * hot_out.rate;
  res.relaxation_ratio_cold = cold_out.duration * cold_out.rate;
  res.relaxation_ratio = std::max(res.relaxation_ratio_hot, res.relaxation_ratio_cold);
  res.entropy_production = spec.beta_c * q_c - spec.beta_h * res.heat_in;
  res.cycle_closure = trace_distance(state, cycle_start);
  return res;
}

std::vector<CycleSweepRow> sweep(const CycleSpec& base, const std::string& parameter,
                                 const std::vector<double>& values, const DensityMatrix& rho0,
                                 int max_cycles) {
  std::vector<CycleSweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    CycleSweepRow row;
    row.value = v;
    CycleSpec spec = base;
    try {
      if (parameter == "tau_c")
        spec.tau_c = v;
      else if (parameter == "tau_h")
        spec.tau_h = v;
      else if (parameter == "omega_h")
        spec.omega_h = v;
      else if (parameter == "omega_c")
        spec.omega_c = v;
      else if (parameter == "n")
        spec.n = static_cast<int>(std::llround(v));
      else
        throw std::invalid_argument("sweep: unknown cycle parameter '" + parameter + "'");
      const CycleRunResult run = run_cycle(spec, rho0, max_cycles);
      if (!run.converged) throw std::runtime_error("cycle did not reach stationarity");
      row.record = run.records.back();
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<CarnotSweepRow> sweep(const CarnotCycleSpec& base, const std::string& parameter,
                                  const std::vector<double>& values) {
  std::vector<CarnotSweepRow> rows;
  rows.reserve(values.size());
  for (double v : values) {
    CarnotSweepRow row;
    row.value = v;
    CarnotCycleSpec spec = base;
    try {
      if (parameter == "n")
        spec.n = static_cast<int>(std::llround(v));
      else if (parameter == "a_n")
        spec.a_n = v;
      else if (parameter == "omega_c")
        spec.omega_c = v;
      else if (parameter == "beta_h")
        spec.beta_h = v;
      else if (parameter == "beta_c")
        spec.beta_c = v;
      else
        throw std::invalid_argument("sweep: unknown carnot parameter '" + parameter + "'");
      row.result = run_carnot_2n(spec);
      row.ok = true;
    } catch (const std::exception& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace qtherm
