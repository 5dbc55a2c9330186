#include "qtherm/thermo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "qtherm/generator.hpp"

namespace qtherm {

namespace {

constexpr double kFluxFloor = 1e-14;
constexpr double kLeakTol = 1e-9;

double slack(double lhs, double rhs) { return 1e-9 * std::max({1.0, std::abs(lhs), std::abs(rhs)}); }

// J^2/sigma with the 0/0 and x/0 conventions.
void fill_ratio(double j, double sigma, double& ratio, bool& divergent) {
  if (sigma > kFluxFloor) {
    ratio = j * j / sigma;
    divergent = false;
  } else if (std::abs(j) < 1e-12) {
    ratio = 0.0;
    divergent = false;
  } else {
    ratio = std::numeric_limits<double>::infinity();
    divergent = true;
  }
}

// Excitation current into the system from one bath: each channel at omega
// moves the system down by hbar*omega, exchanging one bath quantum.
double excitation_current(const BathSpec& bath, const Mat& rho) {
  double nu = 0.0;
  for (const auto& ch : bath.channels) {
    if (ch.rate == 0.0 || ch.omega == 0.0) continue;
    const double flux = ch.rate * (ch.op_dag_op * rho).trace().real();
    nu -= (ch.omega > 0.0 ? 1.0 : -1.0) * flux;
  }
  return nu;
}

}  // namespace

double heat_current(const LindbladModel& model, const Mat& rho,
                    const std::optional<std::string>& bath) {
  const Mat d = apply_dissipator(model, rho, bath);
  return (model.hamiltonian * d).trace().real();
}

EntropyRate entropy_rate(const LindbladModel& model, const Mat& rho, double floor) {
  if (rho.rows() != model.dim() || rho.cols() != model.dim())
    throw std::invalid_argument("entropy_rate: dimension mismatch");
  const Mat g = apply_generator(model, rho);
  Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(rho));
  const Eigen::VectorXd lam = es.eigenvalues();
  const Mat& v = es.eigenvectors();

  EntropyRate out;
  double leak = 0.0;
  for (Eigen::Index i = 0; i < lam.size(); ++i) {
    const double w = (v.col(i).adjoint() * g * v.col(i)).value().real();
    if (lam[i] > floor) {
      out.value -= w * std::log(lam[i]);
    } else {
      leak += std::abs(w);
    }
  }
  out.divergent = leak > kLeakTol;
  return out;
}

EntropyRate entropy_production_rate(const LindbladModel& model, const Mat& rho, double floor) {
  EntropyRate out = entropy_rate(model, rho, floor);
  for (const auto& bath : model.baths) {
    const double j = heat_current(model, rho, bath.label);
    double bath_term = bath.beta * j;
    if (bath.mu != 0.0) bath_term -= bath.beta * bath.mu * excitation_current(bath, rho);
    out.value -= bath_term;
  }
  return out;
}

TransitionRateTable transition_rate_table(const LindbladModel& model, const Mat& rho_bd,
                                          const EnergyBasis& basis) {
  if (rho_bd.rows() != model.dim() || basis.dim() != model.dim())
    throw std::invalid_argument("transition_rate_table: dimension mismatch");

  const int n = model.dim();
  TransitionRateTable table;
  table.populations.resize(n);
  table.eigvecs.resize(n, n);

  // Diagonalize per level so every |n> stays an H eigenstate even when the
  // state is degenerate across levels.
  const Mat r = basis.to_basis(rho_bd);
  int col = 0;
  for (const auto& level : basis.levels()) {
    const int k = static_cast<int>(level.states.size());
    Mat sub(k, k);
    for (int a = 0; a < k; ++a)
      for (int b = 0; b < k; ++b) sub(a, b) = r(level.states[a], level.states[b]);
    Eigen::SelfAdjointEigenSolver<Mat> es(hermitian_part(sub));
    for (int a = 0; a < k; ++a) {
      table.populations[col + a] = es.eigenvalues()[a];
      Vec v = Vec::Zero(n);
      for (int b = 0; b < k; ++b) v[level.states[b]] = es.eigenvectors()(b, a);
      table.eigvecs.col(col + a) = basis.is_computational() ? v : Vec(basis.states() * v);
    }
    col += k;
  }

  std::vector<std::pair<int, int>> location;  // (bath, channel-in-bath) per table entry
  for (size_t bi = 0; bi < model.baths.size(); ++bi) {
    const auto& bath = model.baths[bi];
    for (size_t ci = 0; ci < bath.channels.size(); ++ci) {
      const auto& ch = bath.channels[ci];
      TransitionRateTable::ChannelRates rates;
      rates.bath = static_cast<int>(bi);
      rates.omega = ch.omega;
      const double sgn = ch.omega > 0.0 ? 1.0 : (ch.omega < 0.0 ? -1.0 : 0.0);
      rates.affinity = bath.beta * (model.hbar * ch.omega - sgn * bath.mu);
      const Mat elem = table.eigvecs.adjoint() * ch.op * table.eigvecs;
      rates.w = ch.rate * elem.cwiseAbs2();
      table.channels.push_back(std::move(rates));
      location.emplace_back(static_cast<int>(bi), static_cast<int>(ci));
    }
  }

  // Pair each channel with its adjoint partner at -omega within the bath.
  for (size_t i = 0; i < table.channels.size(); ++i) {
    for (size_t j = 0; j < table.channels.size(); ++j) {
      if (location[i].first != location[j].first) continue;
      const auto& a = model.baths[location[i].first].channels[location[i].second];
      const auto& b = model.baths[location[j].first].channels[location[j].second];
      if (std::abs(a.omega + b.omega) > 1e-12 * std::max(1.0, std::abs(a.omega))) continue;
      if (max_abs(b.op - a.op.adjoint()) > 1e-8) continue;
      table.channels[i].partner = static_cast<int>(j);
      break;
    }
  }
  return table;
}

EntropyRate pauli_entropy_production(const LindbladModel& model, const Mat& rho_bd,
                                     const EnergyBasis& basis) {
  if (max_abs(rho_bd - block_diagonalize(rho_bd, basis)) > 1e-10)
    throw std::invalid_argument("pauli_entropy_production: state is not block-diagonal");

  const TransitionRateTable table = transition_rate_table(model, rho_bd, basis);
  const int n = static_cast<int>(table.populations.size());

  EntropyRate out;
  for (const auto& ch : table.channels) {
    if (ch.partner < 0) {
      out.divergent = true;
      continue;
    }
    const auto& rev = table.channels[ch.partner];
    for (int m = 0; m < n; ++m) {
      for (int nn = 0; nn < n; ++nn) {
        if (ch.omega == 0.0 && m == nn) continue;  // primed sum
        const double fwd = ch.w(m, nn) * std::max(table.populations[nn], 0.0);
        const double bwd = rev.w(nn, m) * std::max(table.populations[m], 0.0);
        if (fwd < kFluxFloor && bwd < kFluxFloor) continue;
        if (fwd < kFluxFloor || bwd < kFluxFloor) {
          out.divergent = true;
          continue;
        }
        out.value += fwd * std::log(fwd / bwd);
      }
    }
  }
  return out;
}

TradeoffRecord tradeoff_check(const LindbladModel& model, const Mat& rho,
                              const EnergyBasis& basis) {
  TradeoffRecord rec;
  const Mat rho_bd = block_diagonalize(rho, basis);
  const Mat rho_sd = strict_diagonalize(rho, basis);

  rec.j_rho = heat_current(model, rho);
  rec.j_bd = heat_current(model, rho_bd);
  rec.j_sd = heat_current(model, rho_sd);
  rec.sigma_rho = entropy_production_rate(model, rho).value;
  rec.sigma_bd = entropy_production_rate(model, rho_bd).value;
  rec.sigma_sd = entropy_production_rate(model, rho_sd).value;

  fill_ratio(rec.j_rho, rec.sigma_rho, rec.ratio_rho, rec.ratio_rho_divergent);
  fill_ratio(rec.j_bd, rec.sigma_bd, rec.ratio_bd, rec.ratio_bd_divergent);
  fill_ratio(rec.j_sd, rec.sigma_sd, rec.ratio_sd, rec.ratio_sd_divergent);

  const CoherenceReport coh = coherence_report(model, rho, basis);
  rec.a_cl = coh.a_cl;
  rec.a_qm = coh.a_qm;
  rec.bound_cl = 0.5 * coh.a_cl;
  rec.bound_q = 0.5 * (coh.a_cl + coh.a_qm);

  {
    const double lhs = rec.j_rho * rec.j_rho * rec.sigma_bd;
    const double rhs = rec.j_bd * rec.j_bd * rec.sigma_rho;
    rec.ineq2_ok = lhs <= rhs + slack(lhs, rhs);
  }
  {
    const double lhs = 2.0 * rec.j_sd * rec.j_sd;
    const double rhs = rec.a_cl * rec.sigma_sd;
    rec.ineq3_ok = lhs <= rhs + slack(lhs, rhs);
  }
  {
    const double lhs = 2.0 * rec.j_bd * rec.j_bd;
    const double rhs = (rec.a_cl + rec.a_qm) * rec.sigma_bd;
    rec.ineq4_ok = lhs <= rhs + slack(lhs, rhs);
  }
  return rec;
}

ThermoSample thermo_sample(const LindbladModel& model, const Mat& rho, const EnergyBasis& basis,
                           double t) {
  ThermoSample s;
  s.t = t;
  for (const auto& bath : model.baths) {
    const double j = heat_current(model, rho, bath.label);
    s.j_per_bath.emplace_back(bath.label, j);
    s.j_total += j;
  }
  const EntropyRate sr = entropy_rate(model, rho);
  const EntropyRate sp = entropy_production_rate(model, rho);
  s.entropy_rate = sr.value;
  s.sigma_dot = sp.value;
  s.entropy_divergent = sr.divergent || sp.divergent;
  fill_ratio(s.j_total, s.sigma_dot, s.ratio, s.ratio_divergent);

  const CoherenceReport coh = coherence_report(model, rho, basis);
  s.a_cl = coh.a_cl;
  s.a_qm = coh.a_qm;
  s.c_l1 = coh.c_l1;
  return s;
}

}  // namespace qtherm
