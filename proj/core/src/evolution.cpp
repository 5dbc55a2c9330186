#include "qtherm/evolution.hpp"

#include <cmath>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "qtherm/generator.hpp"

namespace qtherm {

Mat rk4_step(const LindbladModel& model, const Mat& rho, double dt) {
  const Mat k1 = apply_generator(model, rho);
  const Mat k2 = apply_generator(model, rho + (0.5 * dt) * k1);
  const Mat k3 = apply_generator(model, rho + (0.5 * dt) * k2);
  const Mat k4 = apply_generator(model, rho + dt * k3);
  return rho + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
}

double dt_stability_bound(const LindbladModel& model) {
  double worst = 0.0;
  for (const auto& b : model.baths)
    for (const auto& ch : b.channels) worst = std::max(worst, ch.rate * ch.op_norm_sq);
  if (worst == 0.0) return std::numeric_limits<double>::infinity();
  return 0.1 / worst;
}

namespace {

bool warn_dt(const LindbladModel& model, const EvolutionConfig& config) {
  const double bound = dt_stability_bound(model);
  if (config.dt < bound) return false;
  std::cerr << "qtherm: evolve dt=" << config.dt
            << " exceeds the stability heuristic 0.1/max(gamma*||L||^2)=" << bound << "\n";
  return true;
}

void validate_state(const Mat& rho, double t, double positivity_slack) {
  const double herm = hermiticity_residual(rho);
  if (herm > 1e-8) {
    std::ostringstream os;
    os << "evolve: hermiticity residual " << herm << " at t=" << t;
    throw std::runtime_error(os.str());
  }
  const double min_eig = min_eigenvalue(hermitian_part(rho));
  if (min_eig < -positivity_slack) {
    std::ostringstream os;
    os << "evolve: eigenvalue " << min_eig << " below -" << positivity_slack << " at t=" << t;
    throw std::runtime_error(os.str());
  }
}

}  // namespace

Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0,
                  const EvolutionConfig& config) {
  if (config.dt <= 0.0) throw std::invalid_argument("evolve: dt must be > 0");
  if (rho0.dim() != model.dim()) throw std::invalid_argument("evolve: state dimension mismatch");

  Trajectory traj;
  traj.dt_warning = warn_dt(model, config);

  const long n_steps = static_cast<long>(std::ceil(config.max_time / config.dt - 1e-12));
  const int record_stride = std::max(1, config.record_stride);
  const int validate_stride = std::max(1, config.validate_stride);

  Mat rho = rho0.mat();
  traj.times.push_back(0.0);
  traj.states.push_back(rho);

  long recorded = 1;
  for (long step = 1; step <= n_steps; ++step) {
    rho = rk4_step(model, rho, config.dt);
    const double t = static_cast<double>(step) * config.dt;

    const double drift = std::abs(rho.trace() - Complex(1.0));
    if (drift > config.trace_drift_tol) {
      std::ostringstream os;
      os << "evolve: trace drift " << drift << " at t=" << t;
      throw std::runtime_error(os.str());
    }

    if (step % record_stride == 0 || step == n_steps) {
      if (recorded % validate_stride == 0) validate_state(rho, t, config.positivity_slack);
      traj.times.push_back(t);
      traj.states.push_back(rho);
      ++recorded;
    }
  }
  // The final state is always fully validated.
  validate_state(traj.states.back(), traj.times.back(), config.positivity_slack);
  return traj;
}

SteadyStateResult steady_state(const LindbladModel& model, const DensityMatrix& rho0,
                               const EvolutionConfig& config) {
  if (config.dt <= 0.0) throw std::invalid_argument("steady_state: dt must be > 0");
  if (rho0.dim() != model.dim())
    throw std::invalid_argument("steady_state: state dimension mismatch");
  warn_dt(model, config);

  Mat rho = rho0.mat();
  double t = 0.0;
  long steps = 0;
  while (true) {
    // The residual reuses the RK4 k1 slope, so checking stationarity is free.
    const Mat k1 = apply_generator(model, rho);
    const double residual = max_abs(k1);
    if (residual < config.stationarity_tol) {
      validate_state(rho, t, config.positivity_slack);
      return {DensityMatrix::unchecked(rho), t, steps, residual};
    }
    if (t >= config.max_time) {
      std::ostringstream os;
      os << "steady_state: no convergence within max_time=" << config.max_time
         << " (residual " << residual << ")";
      throw std::runtime_error(os.str());
    }
    const Mat k2 = apply_generator(model, rho + (0.5 * config.dt) * k1);
    const Mat k3 = apply_generator(model, rho + (0.5 * config.dt) * k2);
    const Mat k4 = apply_generator(model, rho + config.dt * k3);
    rho += (config.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    t += config.dt;
    ++steps;
    const double drift = std::abs(rho.trace() - Complex(1.0));
    if (drift > config.trace_drift_tol)
      throw std::runtime_error("steady_state: trace drift exceeded tolerance");
  }
}

}  // namespace qtherm
