#pragma once

#include <vector>

#include "qtherm/density_matrix.hpp"
#include "qtherm/model.hpp"

namespace qtherm {

/// Fixed-step RK4 is the only integrator; the dt heuristic below warns and
/// never silently adapts.
enum class Integrator { rk4_fixed };

struct EvolutionConfig {
  double dt = 1e-3;
  Integrator method = Integrator::rk4_fixed;
  double max_time = 10.0;
  double stationarity_tol = 1e-10;

  int record_stride = 1;        // keep every k-th step in the trajectory
  double trace_drift_tol = 1e-8;
  double positivity_slack = 1e-8;  // RK4 is not CPTP per step
  int validate_stride = 1;      // full (eigenvalue) validation every k-th recorded state
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Mat> states;
  bool dt_warning = false;  // dt exceeded 0.1 / max_a gamma_a ||L_a||^2
};

/// One RK4 step of the Lindblad generator.
Mat rk4_step(const LindbladModel& model, const Mat& rho, double dt);

/// dt stability heuristic bound 0.1 / max over channels of gamma*||L||^2,
/// infinite when all rates vanish.
double dt_stability_bound(const LindbladModel& model);

/// Integrates rho0 over [0, max_time]. Every recorded state is re-validated
/// (Hermiticity, trace, positivity within the trajectory slack); violations
/// abort with a diagnostic. Trace drift is monitored every step.
Trajectory evolve(const LindbladModel& model, const DensityMatrix& rho0,
                  const EvolutionConfig& config);

struct SteadyStateResult {
  DensityMatrix state;
  double elapsed_time = 0.0;
  long steps = 0;
  double residual = 0.0;  // ||generator(state)||_max at return
};

/// Evolves until ||generator(rho)||_max < stationarity_tol; throws on
/// non-convergence within max_time.
SteadyStateResult steady_state(const LindbladModel& model, const DensityMatrix& rho0,
                               const EvolutionConfig& config);

}  // namespace qtherm
